"""The subobject classifier of a finite presheaf topos and the Heyting
algebra of subobjects."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product as cartesian

from .errors import AmbientMismatch, TargetNotOmega
from .fincat import hom_into
from .presheaf import (NatTrans, Presheaf, Subpresheaf, compose_nat,
                       mk_subpresheaf, terminal, to_terminal)


@dataclass(frozen=True)
class Sieve:
    at: str
    members: tuple

    @property
    def label(self):
        return "{" + ",".join(self.members) + "}"


def _principal(cat, g):
    """Morphisms of the form ``g . h``."""
    return {cat.compose_table[(g, h)] for h in hom_into(cat, cat.source(g))}


@lru_cache(maxsize=None)
def _sieves(cat, obj):
    into = hom_into(cat, obj)
    # every sieve is a union of principal sieves; close under adding one
    found = {frozenset()}
    frontier = [frozenset()]
    principal = [frozenset(_principal(cat, g)) for g in into]
    while frontier:
        nxt = []
        for s in frontier:
            for p in principal:
                u = s | p
                if u not in found:
                    found.add(u)
                    nxt.append(u)
        frontier = nxt
    order = {m: i for i, m in enumerate(into)}

    def key(s):
        return (len(s), sorted(order[m] for m in s))

    return tuple(Sieve(obj, tuple(sorted(s, key=order.__getitem__)))
                 for s in sorted(found, key=key))


def sieves_on(cat, obj):
    """All sieves on ``obj``, ordered by size and then lexicographically
    by declaration index of their members."""
    return list(_sieves(cat, obj))


@lru_cache(maxsize=None)
def omega(cat):
    """The subobject classifier: ``omega(j)`` is the set of sieves on ``j``."""
    carrier, by_label = {}, {}
    for o in cat.objects:
        ss = _sieves(cat, o)
        carrier[o] = tuple(s.label for s in ss)
        by_label[o] = {s.label: frozenset(s.members) for s in ss}
    label_of = {o: {frozenset(s.members): s.label for s in _sieves(cat, o)}
                for o in cat.objects}
    restrict = {}
    for f, a, b in cat.morphisms:
        into_a = hom_into(cat, a)
        r = {}
        for lab, members in by_label[b].items():
            pulled = frozenset(g for g in into_a if cat.compose_table[(f, g)] in members)
            r[lab] = label_of[a][pulled]
        restrict[f] = r
    return Presheaf(cat, carrier, restrict)


def full_sieve_label(cat, obj):
    return _sieves(cat, obj)[-1].label


def truth(cat):
    """``1 -> omega`` picking the maximal sieve at every object."""
    return NatTrans(terminal(cat), omega(cat),
                    {o: {"*": full_sieve_label(cat, o)} for o in cat.objects})


def classify(P):
    """Characteristic map ``Gamma -> omega`` of a subobject."""
    G = P.of
    cat = G.base
    Om = omega(cat)
    label_of = {o: {frozenset(s.members): s.label for s in _sieves(cat, o)}
                for o in cat.objects}
    comps = {}
    for j in cat.objects:
        into = hom_into(cat, j)
        c = {}
        for x in G.carrier[j]:
            members = frozenset(f for f in into
                                if G.restrict[f][x] in P.subsets[cat.source(f)])
            c[x] = label_of[j][members]
        comps[j] = c
    return NatTrans(G, Om, comps)


def subobject_of_char(chi):
    """Inverse of :func:`classify`: elements sent to the maximal sieve."""
    cat = chi.source.base
    if chi.target != omega(cat):
        raise TargetNotOmega("characteristic map must land in omega of its base")
    subsets = {o: [x for x, s in chi.components[o].items()
                   if s == full_sieve_label(cat, o)]
               for o in cat.objects}
    return mk_subpresheaf(chi.source, subsets)


def _ambient(P, Q):
    if P.of != Q.of:
        raise AmbientMismatch("subobjects of different presheaves")
    return P.of


def sub_leq(P, Q):
    _ambient(P, Q)
    return all(set(P.subsets[o]) <= set(Q.subsets[o]) for o in P.subsets)


def sub_eq(P, Q):
    _ambient(P, Q)
    return P.subsets == Q.subsets


def top(G):
    return Subpresheaf(G, dict(G.carrier))


def bottom(G):
    return Subpresheaf(G, {o: () for o in G.carrier})


def _pointwise(G, keep):
    return Subpresheaf(G, {o: tuple(x for x in xs if keep(o, x))
                           for o, xs in G.carrier.items()})


def meet(P, Q):
    G = _ambient(P, Q)
    return _pointwise(G, lambda o, x: x in P.subsets[o] and x in Q.subsets[o])


def join(P, Q):
    G = _ambient(P, Q)
    return _pointwise(G, lambda o, x: x in P.subsets[o] or x in Q.subsets[o])


def implies(P, Q):
    """Relative pseudo-complement: ``x`` is in ``P => Q`` when every
    restriction of ``x`` that lies in ``P`` also lies in ``Q``."""
    G = _ambient(P, Q)
    cat = G.base

    def keep(j, x):
        for f in hom_into(cat, j):
            k = cat.source(f)
            y = G.restrict[f][x]
            if y in P.subsets[k] and y not in Q.subsets[k]:
                return False
        return True

    return _pointwise(G, keep)


def negate(P):
    return implies(P, bottom(P.of))


def all_subobjects(G):
    """Every subobject of ``G``, by brute force over all subset families.

    Exponential in the total carrier size; intended for desk-scale checks.
    """
    objs = G.base.objects
    choices = []
    for o in objs:
        xs = G.carrier[o]
        choices.append([tuple(x for i, x in enumerate(xs) if mask >> i & 1)
                        for mask in range(1 << len(xs))])
    out = []
    for pick in cartesian(*choices):
        subsets = dict(zip(objs, pick))
        if all(G.restrict[m][x] in subsets[a]
               for m, a, b in G.base.morphisms for x in subsets[b]):
            out.append(Subpresheaf(G, subsets))
    return out


def char_of_top(G):
    return compose_nat(truth(G.base), to_terminal(G))
