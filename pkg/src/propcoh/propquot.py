"""A universe of propositions interpreted by the subobject classifier.

Before the quotient, ``el`` and ``name`` form only a retract: ``name(el(c))``
is ``c`` but ``el(name(A))`` is generally a different diagram from ``A``.
Identifying subsingleton types whose associated subobjects of the context
agree turns the retract into an isomorphism.  Equivalence classes are
represented by canonical forms (:class:`Raw` or :class:`Prop`), so
quotient equality is a structural comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .errors import (AmbientMismatch, EndpointMismatch, NotAProposition,
                     WrongType)
from .fincat import builtin_base
from .natmodel import (LocalType, Term, ctx_extend, has_term, is_subsingleton,
                       mk_type, subst_type, terms_of)
from .presheaf import (Element, NatTrans, Presheaf, Subpresheaf,
                       enumerate_elements, identity_nat, image, mk_nat,
                       mk_presheaf, pair_label, probe, terminal, to_terminal)
from .topos import (classify, implies, meet, omega, sub_eq, sub_leq,
                    subobject_of_char, top)


@dataclass(frozen=True, eq=True)
class PropCode:
    ctx: Presheaf
    char: NatTrans

    def __hash__(self):
        return hash(self.char)

    @property
    def subobject(self):
        return subobject_of_char(self.char)


def code_of_subobject(P):
    return PropCode(P.of, classify(P))


@dataclass(frozen=True)
class Raw:
    type: LocalType


@dataclass(frozen=True)
class Prop:
    sub: Subpresheaf


CanonicalType = Union[Raw, Prop]


@dataclass(frozen=True)
class SupportFamily:
    """Whether the type has an element at each representable probe of its context."""

    ctx: Presheaf
    support: tuple

    def __post_init__(self):
        G = self.ctx
        table = dict(self.support)
        for m, a, b in G.base.morphisms:
            for x in G.carrier[b]:
                if table[Element(b, x)]:
                    assert table[Element(a, G.restrict[m][x])], (m, x)

    def as_dict(self):
        return dict(self.support)


def prop_universe(G):
    """The candidate universe ``G -> 1 <- omega``."""
    cat = G.base
    T = terminal(cat)
    Om = omega(cat)
    return LocalType(G, T, Om, to_terminal(Om), to_terminal(G))


def code_of_term(t):
    G = t.of.ctx
    if t.of != prop_universe(G):
        raise WrongType("term is not of the propositional universe")
    snd = ctx_extend(t.of).snd
    comps = {o: {x: snd.components[o][z] for x, z in c.items()}
             for o, c in t.section.components.items()}
    return PropCode(G, NatTrans(G, omega(G.base), comps))


def term_of_code(c):
    U = prop_universe(c.ctx)
    ext = ctx_extend(U).ext
    comps = {o: {x: pair_label(x, s) for x, s in comp.items()}
             for o, comp in c.char.components.items()}
    return Term(U, NatTrans(c.ctx, ext, comps))


def el(c):
    """``G --id--> G <-- P`` for the subobject ``P`` classified by ``c``."""
    P = subobject_of_char(c.char)
    return LocalType(c.ctx, c.ctx, P.as_presheaf(), P.inclusion(), identity_nat(c.ctx))


def support_subobject(A):
    """Image of the extension projection of ``A``."""
    return image(ctx_extend(A).proj)


def _require_prop(A):
    if not is_subsingleton(A):
        raise NotAProposition("type has more than one element over some point")


def name(A):
    """Code of a subsingleton type: the classifying map of its support."""
    _require_prop(A)
    return code_of_subobject(support_subobject(A))


def canon(A):
    if is_subsingleton(A):
        return Prop(support_subobject(A))
    return Raw(A)


def types_equal_q(A, B):
    if A.ctx != B.ctx:
        raise AmbientMismatch("types live over different contexts")
    return canon(A) == canon(B)


def judgemental_iso(A, B):
    _require_prop(A)
    _require_prop(B)
    return sub_eq(support_subobject(A), support_subobject(B))


def support_family(A):
    """Independent route to the support: search for a term of ``A`` pulled
    back along each representable probe of the context."""
    _require_prop(A)
    items = tuple((e, has_term(subst_type(A, probe(A.ctx, e))))
                  for e in enumerate_elements(A.ctx))
    return SupportFamily(A.ctx, items)


def quotient_subst_stable(A, B, sigma):
    if sigma.target != A.ctx or sigma.target != B.ctx:
        raise EndpointMismatch("substitution does not land in the types' context")
    if not types_equal_q(A, B):
        return True
    return types_equal_q(subst_type(A, sigma), subst_type(B, sigma))


def probe_term_counts(A):
    return {e: len(terms_of(subst_type(A, probe(A.ctx, e))))
            for e in enumerate_elements(A.ctx)}


def quotient_term_unique(A):
    _require_prop(A)
    return all(n <= 1 for n in probe_term_counts(A).values())


def top_code(G):
    return code_of_subobject(top(G))


def _same_ctx(c1, c2):
    if c1.ctx != c2.ctx:
        raise AmbientMismatch("codes over different contexts")


def meet_code(c1, c2):
    _same_ctx(c1, c2)
    return code_of_subobject(meet(c1.subobject, c2.subobject))


def implies_code(c1, c2):
    _same_ctx(c1, c2)
    return code_of_subobject(implies(c1.subobject, c2.subobject))


def propext_hypothesis(A, B):
    """Both implications between the names of A and B have a global term."""
    a, b = name(A), name(B)
    return has_term(el(implies_code(a, b))) and has_term(el(implies_code(b, a)))


def propext_check(A, B):
    """Mutually implying propositions are equal in the quotient.

    Vacuously true when the hypothesis fails.
    """
    if not propext_hypothesis(A, B):
        return True
    return types_equal_q(A, B)


def retract_counterexample():
    """A subsingleton type ``A`` with ``el(name(A))`` a different diagram.

    Over the one-point context of ``pt``, ``A`` is ``* -> {t, u} <- {e}``
    with ``e`` and ``*`` both sent to ``t``.
    """
    cat = builtin_base("pt")
    G1 = mk_presheaf(cat, {"o": ["*"]}, {})
    V = mk_presheaf(cat, {"o": ["t", "u"]}, {})
    E = mk_presheaf(cat, {"o": ["e"]}, {})
    p = mk_nat(E, V, {"o": {"e": "t"}})
    f = mk_nat(G1, V, {"o": {"*": "t"}})
    A = mk_type(G1, V, E, p, f)
    return A, el(name(A))


def propositional_canon_forms(G, subobjects):
    """``c |-> canon(el(c))`` over the given subobjects of ``G``."""
    return {P: canon(el(code_of_subobject(P))) for P in subobjects}


def subobjects_leq(A, B):
    return sub_leq(support_subobject(A), support_subobject(B))
