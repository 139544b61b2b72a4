"""The local-universes natural model over a finite presheaf topos.

A type over a context ``G`` is a diagram ``G --f--> V <--p-- E``.  Its
extension ``G.A`` is the canonical pullback of ``p`` along ``f``, and a
term is a section of the projection ``G.A -> G``.  Substitution only
precomposes the anchor ``f``, so the substitution laws hold as literal
equality of data.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

from .errors import BaseMismatch, EndpointMismatch, NotASection
from .presheaf import (DEFAULT_MAX_NODES, NatTrans, Presheaf, _solve,
                       compose_nat, identity_nat, pair_label, pairing, product,
                       product_map, pullback)


@dataclass(frozen=True, eq=True)
class LocalType:
    ctx: Presheaf
    base_obj: Presheaf
    total: Presheaf
    proj: NatTrans
    anchor: NatTrans

    def __hash__(self):
        try:
            return self.__dict__["_hash"]
        except KeyError:
            h = hash((self.ctx, self.base_obj, self.total, self.proj, self.anchor))
            object.__setattr__(self, "_hash", h)
            return h


@dataclass(frozen=True, eq=True)
class Term:
    of: LocalType
    section: NatTrans

    def __hash__(self):
        return hash((self.of, self.section))


class Extension(NamedTuple):
    ext: Presheaf
    proj: NatTrans
    snd: NatTrans


def mk_type(ctx, V, E, p, f):
    if not (ctx.base == V.base == E.base == p.source.base == f.source.base):
        raise BaseMismatch("type diagram mixes base categories")
    if p.source != E or p.target != V:
        raise EndpointMismatch("display map p must go from E to V")
    if f.source != ctx or f.target != V:
        raise EndpointMismatch("anchor f must go from the context to V")
    return LocalType(ctx, V, E, p, f)


def subst_type(A, sigma):
    """``A[sigma]`` for ``sigma: D -> G``: recompose the anchor, keep V, E, p."""
    if sigma.target != A.ctx:
        raise EndpointMismatch("substitution does not land in the type's context")
    return LocalType(sigma.source, A.base_obj, A.total, A.proj,
                     compose_nat(A.anchor, sigma))


@lru_cache(maxsize=4096)
def ctx_extend(A):
    ext, proj, snd = pullback(A.anchor, A.proj)
    return Extension(ext, proj, snd)


def is_subsingleton(A):
    """True when the extension projection is a monomorphism."""
    proj = ctx_extend(A).proj
    return all(len(set(c.values())) == len(c) for c in proj.components.values())


def mk_term(A, section):
    ext, proj, _ = ctx_extend(A)
    if section.source != A.ctx or section.target != ext:
        raise NotASection("section must be a map from the context to the extension")
    if compose_nat(proj, section) != identity_nat(A.ctx):
        raise NotASection("section composed with the projection is not the identity")
    return Term(A, section)


def subst_term(t, sigma):
    """``t[sigma]``, with section ``d |-> (d, e_t(sigma(d)))``."""
    B = subst_type(t.of, sigma)
    snd = ctx_extend(t.of).snd
    comps = {}
    for o, c in sigma.components.items():
        comps[o] = {d: pair_label(d, snd.components[o][t.section.components[o][x]])
                    for d, x in c.items()}
    return Term(B, NatTrans(sigma.source, ctx_extend(B).ext, comps))


def _fibres(A):
    ext, proj, _ = ctx_extend(A)
    fib = {o: {x: [] for x in xs} for o, xs in A.ctx.carrier.items()}
    for o, zs in ext.carrier.items():
        for z in zs:
            fib[o][proj.components[o][z]].append(z)
    return ext, fib


def _sections(A, rng=None, max_nodes=DEFAULT_MAX_NODES):
    ext, fib = _fibres(A)
    for comps in _solve(A.ctx, ext, lambda o, x: fib[o][x], rng=rng, max_nodes=max_nodes):
        yield Term(A, NatTrans(A.ctx, ext, comps))


def terms_of(A, max_nodes=DEFAULT_MAX_NODES):
    """All terms of ``A`` by exhaustive section search.

    Raises SizeLimitExceeded once the search visits more than ``max_nodes``
    candidate assignments.
    """
    return list(_sections(A, max_nodes=max_nodes))


def has_term(A, max_nodes=DEFAULT_MAX_NODES):
    return next(_sections(A, max_nodes=max_nodes), None) is not None


def random_term(A, rng, max_nodes=DEFAULT_MAX_NODES):
    return next(_sections(A, rng=rng, max_nodes=max_nodes), None)


def pair_type(A, B):
    """Fibrewise product: the type whose terms are pairs of terms of A and B."""
    if A.ctx != B.ctx:
        raise EndpointMismatch("pair_type needs types over one context")
    V, _, _ = product(A.base_obj, B.base_obj)
    E, _, _ = product(A.total, B.total)
    return LocalType(A.ctx, V, E, product_map(A.proj, B.proj),
                     pairing(A.anchor, B.anchor))
