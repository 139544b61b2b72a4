"""Finite categories presented by explicit composition tables."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .errors import MalformedCategory, NotComposable, UnknownBase, UnknownObject


@dataclass(frozen=True, eq=False)
class FiniteCategory:
    """A finite category.

    ``morphisms`` holds ``(id, source, target)`` triples in declaration
    order.  ``compose_table[(g, f)]`` is ``g . f`` (first ``f``, then ``g``)
    and is defined exactly on composable pairs.
    """

    objects: tuple
    morphisms: tuple
    identity: dict
    compose_table: dict = field(repr=False)

    @cached_property
    def _src(self):
        return {m: s for m, s, _ in self.morphisms}

    @cached_property
    def _tgt(self):
        return {m: t for m, _, t in self.morphisms}

    @cached_property
    def _hom_into(self):
        into = {o: [] for o in self.objects}
        for m, _, t in self.morphisms:
            into[t].append(m)
        return {o: tuple(ms) for o, ms in into.items()}

    @cached_property
    def _order(self):
        return {m: i for i, (m, _, _) in enumerate(self.morphisms)}

    def source(self, m):
        try:
            return self._src[m]
        except KeyError:
            raise MalformedCategory(f"unknown morphism {m!r}") from None

    def target(self, m):
        try:
            return self._tgt[m]
        except KeyError:
            raise MalformedCategory(f"unknown morphism {m!r}") from None

    def morphism_ids(self):
        return tuple(m for m, _, _ in self.morphisms)

    def morphism_index(self, m):
        return self._order[m]

    def non_identities(self):
        ids = set(self.identity.values())
        return tuple(m for m, _, _ in self.morphisms if m not in ids)

    def _key(self):
        return (self.objects, self.morphisms,
                tuple(sorted(self.compose_table.items())))

    def __eq__(self, other):
        if not isinstance(other, FiniteCategory):
            return NotImplemented
        return self is other or self._key() == other._key()

    def __hash__(self):
        return hash((self.objects, self.morphisms))


def mk_category(objects, morphisms, compose_table=None, identities=None):
    """Validate and build a finite category.

    Identities default to the morphisms named ``id_<obj>``.  Composites
    involving an identity may be left out of ``compose_table``; every other
    composable pair must be listed.
    """
    objects = tuple(objects)
    morphisms = tuple(tuple(m) for m in morphisms)
    if not objects:
        raise MalformedCategory("a category needs at least one object")
    if len(set(objects)) != len(objects):
        raise MalformedCategory("duplicate object ids")
    ids = [m for m, _, _ in morphisms]
    if len(set(ids)) != len(ids):
        raise MalformedCategory("duplicate morphism ids")
    obj_set = set(objects)
    src, tgt = {}, {}
    for m, s, t in morphisms:
        if s not in obj_set or t not in obj_set:
            raise MalformedCategory(f"morphism {m!r} references an undeclared object")
        src[m], tgt[m] = s, t

    if identities is None:
        identities = {o: f"id_{o}" for o in objects}
    identity = dict(identities)
    for o in objects:
        i = identity.get(o)
        if i is None or i not in src:
            raise MalformedCategory(f"missing identity for object {o!r}")
        if src[i] != o or tgt[i] != o:
            raise MalformedCategory(f"identity {i!r} is not an endomorphism of {o!r}")

    table = {}
    for (g, f), h in dict(compose_table or {}).items():
        for x in (g, f, h):
            if x not in src:
                raise MalformedCategory(f"table references undeclared morphism {x!r}")
        if tgt[f] != src[g]:
            raise MalformedCategory(f"table entry for non-composable pair ({g!r}, {f!r})")
        if src[h] != src[f] or tgt[h] != tgt[g]:
            raise MalformedCategory(f"composite {g!r} . {f!r} = {h!r} is ill-typed")
        table[(g, f)] = h
    for f in ids:
        for pair in ((identity[tgt[f]], f), (f, identity[src[f]])):
            if table.setdefault(pair, f) != f:
                raise MalformedCategory(
                    f"identity law fails: {pair[0]!r} . {pair[1]!r} != {f!r}")

    for g in ids:
        for f in ids:
            if tgt[f] == src[g] and (g, f) not in table:
                raise MalformedCategory(f"missing composite for ({g!r}, {f!r})")
    for h in ids:
        for g in ids:
            if tgt[g] != src[h]:
                continue
            for f in ids:
                if tgt[f] != src[g]:
                    continue
                if table[(h, table[(g, f)])] != table[(table[(h, g)], f)]:
                    raise MalformedCategory(
                        f"composition is not associative on ({h!r}, {g!r}, {f!r})")
    return FiniteCategory(objects, morphisms, identity, table)


def _poset_category(objects, arrows):
    """Build a finite poset from named generating arrows ``(name, a, b)``
    whose transitive closure is given explicitly in ``arrows``."""
    morphisms = [(f"id_{o}", o, o) for o in objects] + list(arrows)
    by_ends = {(s, t): m for m, s, t in morphisms}
    table = {}
    for g, gs, gt in morphisms:
        for f, fs, ft in morphisms:
            if ft == gs:
                table[(g, f)] = by_ends[(fs, gt)]
    return mk_category(objects, morphisms, table)


BUILTIN_BASES = ("pt", "arr", "span", "chain3")


def builtin_base(name):
    """Return one of the named test categories ``pt``, ``arr``, ``span``, ``chain3``."""
    if name == "pt":
        return _poset_category(["o"], [])
    if name == "arr":
        return _poset_category(["a", "b"], [("f", "a", "b")])
    if name == "span":
        return _poset_category(["s", "a", "b"], [("l", "s", "a"), ("r", "s", "b")])
    if name == "chain3":
        return _poset_category(
            ["0", "1", "2"],
            [("m01", "0", "1"), ("m12", "1", "2"), ("m02", "0", "2")])
    raise UnknownBase(f"unknown base category {name!r}")


def compose(cat, g, f):
    """``g . f``; raises NotComposable unless target(f) == source(g)."""
    if cat.target(f) != cat.source(g):
        raise NotComposable(f"cannot compose {g!r} after {f!r}")
    return cat.compose_table[(g, f)]


def hom_into(cat, obj):
    """Morphisms with target ``obj``, in declaration order."""
    try:
        return list(cat._hom_into[obj])
    except KeyError:
        raise UnknownObject(f"unknown object {obj!r}") from None


def hom(cat, a, b):
    return [m for m in hom_into(cat, b) if cat.source(m) == a]
