"""Finite presheaves on a finite category, natural transformations between
them, and the finite limits the rest of the package is built from.

Element labels are strings.  A presheaf ``X`` stores, for every morphism
``m: a -> b``, the restriction ``X.restrict[m]`` as a dict from ``X(b)`` to
``X(a)``.  Values are never mutated after construction, so two presheaves
are equal exactly when their data are equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .errors import (BaseMismatch, MalformedPresheaf, NotNatural,
                     SizeLimitExceeded, UnknownObject)
from .fincat import FiniteCategory, hom_into

DEFAULT_MAX_NODES = 200_000


def pair_label(x, y):
    return f"({x},{y})"


class Element(NamedTuple):
    at: str
    value: str


def _freeze(d):
    return tuple(sorted((k, tuple(sorted(v.items())) if isinstance(v, dict) else v)
                        for k, v in d.items()))


@dataclass(frozen=True, eq=True)
class Presheaf:
    base: FiniteCategory
    carrier: dict
    restrict: dict

    def __hash__(self):
        try:
            return self.__dict__["_hash"]
        except KeyError:
            h = hash((self.base, _freeze(self.carrier), _freeze(self.restrict)))
            object.__setattr__(self, "_hash", h)
            return h

    def at(self, obj):
        try:
            return self.carrier[obj]
        except KeyError:
            raise UnknownObject(f"unknown object {obj!r}") from None

    def act(self, m, x):
        """Restrict ``x`` along the morphism ``m``."""
        return self.restrict[m][x]

    def size(self):
        return sum(len(xs) for xs in self.carrier.values())

    def max_carrier(self):
        return max((len(xs) for xs in self.carrier.values()), default=0)


@dataclass(frozen=True, eq=True)
class NatTrans:
    source: Presheaf
    target: Presheaf
    components: dict

    def __hash__(self):
        try:
            return self.__dict__["_hash"]
        except KeyError:
            h = hash((self.source, self.target, _freeze(self.components)))
            object.__setattr__(self, "_hash", h)
            return h

    def __call__(self, obj, x):
        return self.components[obj][x]


@dataclass(frozen=True, eq=True)
class Subpresheaf:
    """A subobject of ``of`` held as literal, carrier-ordered subsets."""

    of: Presheaf
    subsets: dict

    def __hash__(self):
        try:
            return self.__dict__["_hash"]
        except KeyError:
            h = hash((self.of, _freeze(self.subsets)))
            object.__setattr__(self, "_hash", h)
            return h

    def contains(self, obj, x):
        return x in self.subsets[obj]

    def as_presheaf(self):
        X = self.of
        restrict = {}
        for m, a, b in X.base.morphisms:
            restrict[m] = {x: X.restrict[m][x] for x in self.subsets[b]}
        return Presheaf(X.base, dict(self.subsets), restrict)

    def inclusion(self):
        P = self.as_presheaf()
        return NatTrans(P, self.of, {o: {x: x for x in xs} for o, xs in P.carrier.items()})

    def is_full(self):
        return all(len(self.subsets[o]) == len(xs) for o, xs in self.of.carrier.items())


def mk_presheaf(base, carrier, restrict):
    """Validate functoriality and build a presheaf.

    Restrictions along identities may be omitted; every other morphism
    needs a total restriction map.
    """
    carrier = {o: tuple(carrier.get(o, ())) for o in base.objects}
    for o, xs in carrier.items():
        if len(set(xs)) != len(xs):
            raise MalformedPresheaf(f"duplicate labels at {o!r}")
    extra = set(_keys(carrier)) - set(base.objects)
    if extra:
        raise MalformedPresheaf(f"carrier at undeclared objects {sorted(extra)}")
    full = {}
    for m, a, b in base.morphisms:
        if m in restrict:
            r = dict(restrict[m])
        elif base.identity[a] == m:
            r = {x: x for x in carrier[a]}
        else:
            raise MalformedPresheaf(f"no restriction given along {m!r}")
        if set(r) != set(carrier[b]):
            raise MalformedPresheaf(f"restriction along {m!r} is not total on {b!r}")
        for x, y in r.items():
            if y not in carrier[a]:
                raise MalformedPresheaf(
                    f"restriction along {m!r} sends {x!r} outside the carrier at {a!r}")
        full[m] = r
    for o in base.objects:
        i = base.identity[o]
        if any(full[i][x] != x for x in carrier[o]):
            raise MalformedPresheaf(f"restriction along identity {i!r} is not the identity")
    for (g, f), h in base.compose_table.items():
        rg, rf, rh = full[g], full[f], full[h]
        for x in carrier[base.target(g)]:
            if rh[x] != rf[rg[x]]:
                raise MalformedPresheaf(
                    f"restriction is not functorial on {g!r} . {f!r} at {x!r}")
    return Presheaf(base, carrier, full)


def _keys(d):
    return list(d.keys())


def yoneda(cat, obj):
    """The representable presheaf ``hom(-, obj)``."""
    into = hom_into(cat, obj)
    carrier = {o: tuple(m for m in into if cat.source(m) == o) for o in cat.objects}
    restrict = {}
    for f, a, b in cat.morphisms:
        restrict[f] = {g: cat.compose_table[(g, f)] for g in carrier[b]}
    return Presheaf(cat, carrier, restrict)


def terminal(cat):
    carrier = {o: ("*",) for o in cat.objects}
    return Presheaf(cat, carrier, {m: {"*": "*"} for m in cat.morphism_ids()})


def empty_presheaf(cat):
    return Presheaf(cat, {o: () for o in cat.objects}, {m: {} for m in cat.morphism_ids()})


def _same_base(*xs):
    base = xs[0].base
    for x in xs[1:]:
        if x.base != base:
            raise BaseMismatch("presheaves live over different base categories")
    return base


def product(X, Y):
    """Binary product with its two projections; carriers are lexicographic pairs."""
    base = _same_base(X, Y)
    carrier, p1, p2 = {}, {}, {}
    for o in base.objects:
        labels = []
        c1, c2 = {}, {}
        for x in X.carrier[o]:
            for y in Y.carrier[o]:
                z = pair_label(x, y)
                labels.append(z)
                c1[z], c2[z] = x, y
        carrier[o] = tuple(labels)
        p1[o], p2[o] = c1, c2
    restrict = {}
    for m, a, b in base.morphisms:
        restrict[m] = {pair_label(x, y): pair_label(X.restrict[m][x], Y.restrict[m][y])
                       for x in X.carrier[b] for y in Y.carrier[b]}
    P = Presheaf(base, carrier, restrict)
    return P, NatTrans(P, X, p1), NatTrans(P, Y, p2)


def mk_nat(source, target, components):
    """Validate naturality and build a natural transformation."""
    base = _same_base(source, target)
    comps = {}
    for o in base.objects:
        c = dict(components.get(o, {}))
        if set(c) != set(source.carrier[o]):
            raise MalformedPresheaf(f"component at {o!r} is not total")
        for x, y in c.items():
            if y not in target.carrier[o]:
                raise MalformedPresheaf(
                    f"component at {o!r} sends {x!r} outside the target")
        comps[o] = c
    for m, a, b in base.morphisms:
        for x in source.carrier[b]:
            if target.restrict[m][comps[b][x]] != comps[a][source.restrict[m][x]]:
                raise NotNatural(m)
    return NatTrans(source, target, comps)


def identity_nat(X):
    return NatTrans(X, X, {o: {x: x for x in xs} for o, xs in X.carrier.items()})


def compose_nat(g, f):
    """``g . f`` for ``f: X -> Y`` and ``g: Y -> Z``."""
    _same_base(f.source, g.target)
    if f.target != g.source:
        raise BaseMismatch("middle presheaves of the composite differ")
    comps = {o: {x: g.components[o][y] for x, y in c.items()}
             for o, c in f.components.items()}
    return NatTrans(f.source, g.target, comps)


def to_terminal(X):
    T = terminal(X.base)
    return NatTrans(X, T, {o: {x: "*" for x in xs} for o, xs in X.carrier.items()})


def pairing(f, g):
    """The map ``<f, g>: X -> Y x Z`` into the canonical product."""
    if f.source != g.source:
        raise BaseMismatch("pairing needs a common source")
    P, _, _ = product(f.target, g.target)
    comps = {o: {x: pair_label(f.components[o][x], g.components[o][x]) for x in xs}
             for o, xs in f.source.carrier.items()}
    return NatTrans(f.source, P, comps)


def product_map(f, g):
    """``f x g: X x Y -> X' x Y'``."""
    P, _, _ = product(f.source, g.source)
    Q, _, _ = product(f.target, g.target)
    comps = {}
    for o in P.base.objects:
        comps[o] = {pair_label(x, y): pair_label(f.components[o][x], g.components[o][y])
                    for x in f.source.carrier[o] for y in g.source.carrier[o]}
    return NatTrans(P, Q, comps)


def pullback(f, g):
    """Canonical pullback of ``f: X -> Z`` and ``g: Y -> Z``.

    Carrier at ``o`` is ``{(x, y) | f(x) = g(y)}`` in lexicographic order of
    the carriers of ``X`` and ``Y``.
    """
    base = _same_base(f.source, g.source, f.target, g.target)
    if f.target != g.target:
        raise BaseMismatch("pullback legs must share a target")
    X, Y = f.source, g.source
    carrier, c1, c2 = {}, {}, {}
    for o in base.objects:
        fo, go = f.components[o], g.components[o]
        labels, p1, p2 = [], {}, {}
        for x in X.carrier[o]:
            for y in Y.carrier[o]:
                if fo[x] == go[y]:
                    z = pair_label(x, y)
                    labels.append(z)
                    p1[z], p2[z] = x, y
        if len(set(labels)) != len(labels):
            raise MalformedPresheaf(f"element labels collide when pairing at {o!r}")
        carrier[o] = tuple(labels)
        c1[o], c2[o] = p1, p2
    restrict = {}
    for m, a, b in base.morphisms:
        restrict[m] = {z: pair_label(X.restrict[m][c1[b][z]], Y.restrict[m][c2[b][z]])
                       for z in carrier[b]}
    P = Presheaf(base, carrier, restrict)
    return P, NatTrans(P, X, c1), NatTrans(P, Y, c2)


def is_mono(f):
    """Monomorphisms of presheaves are exactly the pointwise injections."""
    return all(len(set(c.values())) == len(c) for c in f.components.values())


def mk_subpresheaf(of, subsets):
    """Build a subobject from arbitrary iterables, checking restriction closure."""
    canon = {}
    for o in of.base.objects:
        chosen = set(subsets.get(o, ()))
        if not chosen <= set(of.carrier[o]):
            raise MalformedPresheaf(f"subset at {o!r} is not inside the carrier")
        canon[o] = tuple(x for x in of.carrier[o] if x in chosen)
    for m, a, b in of.base.morphisms:
        for x in canon[b]:
            if of.restrict[m][x] not in canon[a]:
                raise MalformedPresheaf(
                    f"subset is not closed under restriction along {m!r} at {x!r}")
    return Subpresheaf(of, canon)


def image(f):
    """Pointwise image of ``f`` as a subobject of its target."""
    Y = f.target
    subsets = {}
    for o in Y.base.objects:
        hit = set(f.components[o].values())
        subsets[o] = tuple(y for y in Y.carrier[o] if y in hit)
    for m, a, b in Y.base.morphisms:
        assert all(Y.restrict[m][y] in subsets[a] for y in subsets[b])
    return Subpresheaf(Y, subsets)


def enumerate_elements(X):
    return [Element(o, x) for o in X.base.objects for x in X.carrier[o]]


def probe(X, element):
    """The Yoneda transform ``y(j) -> X`` of an element ``x in X(j)``."""
    j, x = element
    Y = yoneda(X.base, j)
    comps = {o: {g: X.restrict[g][x] for g in gs} for o, gs in Y.carrier.items()}
    return NatTrans(Y, X, comps)


# -- search for natural maps -------------------------------------------------

def _search_order(base):
    return sorted(base.objects, key=lambda o: -len(hom_into(base, o)))


def _solve(X, Y, domain, rng=None, max_nodes=DEFAULT_MAX_NODES):
    """Yield component dicts of natural maps ``X -> Y`` by backtracking.

    ``domain(obj, x)`` lists the allowed images of ``x``.  With ``rng`` the
    candidate order is shuffled.  Cost is exponential in the carrier sizes.
    """
    base = _same_base(X, Y)
    variables = [(o, x) for o in _search_order(base) for x in X.carrier[o]]
    position = {v: i for i, v in enumerate(variables)}
    # constraints checked when the later of the two variables is assigned
    checks = [[] for _ in variables]
    for m, a, b in base.morphisms:
        if base.identity.get(a) == m:
            continue
        for x in X.carrier[b]:
            hi, lo = (b, x), (a, X.restrict[m][x])
            later = max(position[hi], position[lo])
            checks[later].append((m, hi, lo))
    domains = []
    for o, x in variables:
        d = list(domain(o, x))
        if rng is not None:
            rng.shuffle(d)
        domains.append(d)

    assignment = {}
    nodes = 0

    def consistent(i):
        for m, hi, lo in checks[i]:
            if Y.restrict[m][assignment[hi]] != assignment[lo]:
                return False
        return True

    def go(i):
        nonlocal nodes
        if i == len(variables):
            comps = {o: {} for o in base.objects}
            for (o, x), y in assignment.items():
                comps[o][x] = y
            yield comps
            return
        v = variables[i]
        for y in domains[i]:
            nodes += 1
            if nodes > max_nodes:
                raise SizeLimitExceeded(
                    f"search for natural maps exceeded {max_nodes} nodes")
            assignment[v] = y
            if consistent(i):
                yield from go(i + 1)
        assignment.pop(v, None)

    yield from go(0)


def iter_nat_maps(X, Y, max_nodes=DEFAULT_MAX_NODES):
    """All natural maps ``X -> Y`` in a deterministic order."""
    for comps in _solve(X, Y, lambda o, x: Y.carrier[o], max_nodes=max_nodes):
        yield NatTrans(X, Y, comps)


def random_nat(X, Y, rng, max_nodes=DEFAULT_MAX_NODES):
    """Some natural map ``X -> Y`` chosen with ``rng``, or None if there is none."""
    for comps in _solve(X, Y, lambda o, x: Y.carrier[o], rng=rng, max_nodes=max_nodes):
        return NatTrans(X, Y, comps)
    return None
