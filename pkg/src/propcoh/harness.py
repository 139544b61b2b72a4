"""Random desk-scale instances and the randomized law harness."""

from __future__ import annotations

import random

from .errors import MalformedPresheaf
from .fincat import builtin_base
from .natmodel import (LocalType, is_subsingleton, mk_term,
                       random_term, subst_term, subst_type)
from .presheaf import (NatTrans, Subpresheaf, compose_nat, identity_nat,
                       mk_presheaf, pairing, product, pullback, random_nat,
                       terminal, to_terminal, image)
from .propquot import (code_of_subobject, el, judgemental_iso, name,
                       propext_check, propext_hypothesis,
                       quotient_subst_stable, quotient_term_unique,
                       support_family, types_equal_q)
from .report import Report
from .topos import (classify, implies, meet, omega, sub_leq,
                    subobject_of_char, truth)


def case_rng(seed, base, index):
    return random.Random(f"{seed}:{base}:{index}")


# -- generators --------------------------------------------------------------

def random_presheaf(cat, rng, max_carrier=4, min_carrier=0, prefix="x"):
    """A random presheaf with at most ``max_carrier`` elements per object.

    Restrictions along composites of already-chosen morphisms are derived,
    the rest are drawn at random; draws that break functoriality are retried.
    """
    ids = set(cat.identity.values())
    for _ in range(200):
        carrier = {o: tuple(f"{prefix}{o}{i}" for i in range(rng.randint(min_carrier, max_carrier)))
                   for o in cat.objects}
        restrict = {}
        ok = True
        for m, a, b in cat.morphisms:
            if m in ids:
                continue
            derived = None
            for (g, f), h in cat.compose_table.items():
                if h == m and g not in ids and f not in ids and g in restrict and f in restrict:
                    derived = {x: restrict[f][restrict[g][x]] for x in carrier[b]}
                    break
            if derived is None:
                if carrier[b] and not carrier[a]:
                    ok = False
                    break
                derived = {x: rng.choice(carrier[a]) for x in carrier[b]}
            restrict[m] = derived
        if not ok:
            continue
        try:
            return mk_presheaf(cat, carrier, restrict)
        except MalformedPresheaf:
            continue
    return terminal(cat)


def random_subobject(G, rng, density=None):
    """Restriction-closure of a random set of elements."""
    if density is None:
        density = rng.random()
    chosen = {o: {x for x in xs if rng.random() < density} for o, xs in G.carrier.items()}
    changed = True
    while changed:
        changed = False
        for m, a, b in G.base.morphisms:
            for x in list(chosen[b]):
                y = G.restrict[m][x]
                if y not in chosen[a]:
                    chosen[a].add(y)
                    changed = True
    return Subpresheaf(G, {o: tuple(x for x in xs if x in chosen[o])
                           for o, xs in G.carrier.items()})


def random_subst(G, rng, max_carrier=3):
    """A random substitution ``D -> G``."""
    cat = G.base
    for _ in range(20):
        D = random_presheaf(cat, rng, max_carrier=max_carrier, prefix="d")
        sigma = random_nat(D, G, rng)
        if sigma is not None:
            return sigma
    return random_subobject(G, rng).inclusion()


def random_general_type(G, rng, max_v=3):
    cat = G.base
    for _ in range(50):
        V = random_presheaf(cat, rng, max_carrier=max_v, min_carrier=1, prefix="v")
        E = random_presheaf(cat, rng, max_carrier=3, prefix="e")
        f = random_nat(G, V, rng)
        p = random_nat(E, V, rng)
        if f is not None and p is not None:
            return LocalType(G, V, E, p, f)
    return random_prop_type(G, rng)


def random_type_with_term(G, rng, max_v=3):
    """A type guaranteed to have a term: E is V x W for W with a global element."""
    cat = G.base
    for _ in range(50):
        V = random_presheaf(cat, rng, max_carrier=max_v, min_carrier=1, prefix="v")
        f = random_nat(G, V, rng)
        if f is None:
            continue
        W = omega(cat) if rng.random() < 0.5 else random_presheaf(cat, rng, 2, 1, prefix="w")
        if random_nat(terminal(cat), W, rng) is None:
            continue
        E, p, _ = product(V, W)
        return LocalType(G, V, E, p, f)
    U_like = product(terminal(cat), omega(cat))[0]
    return LocalType(G, terminal(cat), U_like, to_terminal(U_like), to_terminal(G))


def inflate(P, rng):
    """A subsingleton presentation of ``P`` that is not its el-form.

    V is ``G x W`` for some ``W`` with a global element ``w``; E is the set of
    pairs ``(x, w)`` with ``x`` in ``P``.
    """
    G = P.of
    cat = G.base
    for _ in range(20):
        W = random_presheaf(cat, rng, 3, 1, prefix="w")
        w = random_nat(terminal(cat), W, rng)
        if w is not None:
            break
    else:
        W = omega(cat)
        w = truth(cat)
    V, _, _ = product(G, W)
    f = pairing(identity_nat(G), compose_nat(w, to_terminal(G)))
    E = image(_restrict_map(f, P))
    E_ps = E.as_presheaf()
    return LocalType(G, V, E_ps, E.inclusion(), f)


def _restrict_map(f, P):
    comps = {o: {x: f.components[o][x] for x in P.subsets[o]} for o in P.of.base.objects}
    return NatTrans(P.as_presheaf(), f.target, comps)


def random_prop_type(G, rng, max_v=3):
    """A random subsingleton type in one of several presentations."""
    cat = G.base
    kind = rng.randrange(3)
    if kind == 0:
        return el(code_of_subobject(random_subobject(G, rng)))
    if kind == 1:
        return inflate(random_subobject(G, rng), rng)
    for _ in range(20):
        V = random_presheaf(cat, rng, max_carrier=max_v, min_carrier=1, prefix="v")
        f = random_nat(G, V, rng)
        if f is None:
            continue
        S = random_subobject(V, rng)
        return LocalType(G, V, S.as_presheaf(), S.inclusion(), f)
    return el(code_of_subobject(random_subobject(G, rng)))


def random_context(cat, rng, max_carrier=4):
    return random_presheaf(cat, rng, max_carrier=max_carrier, prefix="g")


# -- laws --------------------------------------------------------------------

def law_cwf_strict(G, rng):
    A = random_type_with_term(G, rng)
    sigma = random_subst(G, rng)
    delta = random_subst(sigma.source, rng)
    t = random_term(A, rng)
    if t is None:
        return "generated type has no term"
    t = mk_term(A, t.section)
    checks = {
        "A[id] = A": subst_type(A, identity_nat(G)) == A,
        "A[s][d] = A[s.d]": subst_type(subst_type(A, sigma), delta)
        == subst_type(A, compose_nat(sigma, delta)),
        "t[id] = t": subst_term(t, identity_nat(G)) == t,
        "t[s][d] = t[s.d]": subst_term(subst_term(t, sigma), delta)
        == subst_term(t, compose_nat(sigma, delta)),
    }
    bad = [k for k, v in checks.items() if not v]
    return ", ".join(bad) or None


def law_classifier(G, rng):
    P = random_subobject(G, rng)
    chi = classify(P)
    if subobject_of_char(chi) != P:
        return "subobject_of_char(classify(P)) != P"
    chi2 = classify(random_subobject(G, rng))
    if classify(subobject_of_char(chi2)) != chi2:
        return "classify(subobject_of_char(chi)) != chi"
    _, leg, _ = pullback(chi, truth(G.base))
    if image(leg) != P:
        return "pullback of truth along classify(P) does not have image P"
    return None


def law_heyting(G, rng):
    R, P, Q = (random_subobject(G, rng) for _ in range(3))
    if sub_leq(meet(R, P), Q) != sub_leq(R, implies(P, Q)):
        return "meet(R,P) <= Q disagrees with R <= (P => Q)"
    return None


def _mixed_type(G, rng):
    r = rng.random()
    if r < 0.4:
        return random_prop_type(G, rng)
    if r < 0.6:
        return random_general_type(G, rng)
    A = random_prop_type(G, rng)
    return el(name(A))


def law_equivalence(G, rng):
    A = _mixed_type(G, rng)
    B = el(name(A)) if is_subsingleton(A) and rng.random() < 0.5 else _mixed_type(G, rng)
    C = inflate(name(B).subobject, rng) if is_subsingleton(B) else _mixed_type(G, rng)
    if not types_equal_q(A, A):
        return "not reflexive"
    if types_equal_q(A, B) != types_equal_q(B, A):
        return "not symmetric"
    if types_equal_q(A, B) and types_equal_q(B, C) and not types_equal_q(A, C):
        return "not transitive"
    return None


def _prop_pair(G, rng):
    A = random_prop_type(G, rng)
    if rng.random() < 0.5:
        B = inflate(name(A).subobject, rng)
    else:
        B = random_prop_type(G, rng)
    return A, B


def law_subst_stable(G, rng):
    if rng.random() < 0.7:
        A, B = _prop_pair(G, rng)
    else:
        A, B = _mixed_type(G, rng), _mixed_type(G, rng)
    sigma = random_subst(G, rng)
    if not quotient_subst_stable(A, B, sigma):
        return "equal types became unequal after substitution"
    return None


def law_oracle(G, rng):
    A, B = _prop_pair(G, rng)
    if judgemental_iso(A, B) != (support_family(A) == support_family(B)):
        return "subobject criterion disagrees with the support-family oracle"
    return None


def law_coquand(G, rng):
    A = random_prop_type(G, rng)
    if not types_equal_q(el(name(A)), A):
        return "el(name(A)) not quotient-equal to A"
    c = code_of_subobject(random_subobject(G, rng))
    if name(el(c)) != c:
        return "name(el(c)) != c"
    B = inflate(name(A).subobject, rng)
    if types_equal_q(A, B) and name(A) != name(B):
        return "name does not respect quotient classes"
    return None


def law_propext(G, rng):
    A, B = _prop_pair(G, rng)
    if propext_hypothesis(A, B) and not propext_check(A, B):
        return "mutually implying propositions are not quotient-equal"
    return None


def law_term_unique(G, rng):
    A = random_prop_type(G, rng)
    if not quotient_term_unique(A):
        return "subsingleton type has two terms over some probe"
    return None


LAWS = {
    "cwf-strict": law_cwf_strict,
    "classifier-roundtrip": law_classifier,
    "heyting-adjunction": law_heyting,
    "quotient-equivalence": law_equivalence,
    "subst-stability": law_subst_stable,
    "oracle-agreement": law_oracle,
    "quotient-coquand": law_coquand,
    "propext": law_propext,
    "term-uniqueness": law_term_unique,
}


def run_law(law, base, cases, seed, max_carrier=4):
    """Run one law over ``cases`` random contexts; returns failure notes by case."""
    cat = builtin_base(base)
    check = LAWS[law]
    failures = []
    for i in range(cases):
        rng = case_rng(seed, f"{base}:{law}", i)
        G = random_context(cat, rng, max_carrier=max_carrier)
        note = check(G, rng)
        if note:
            failures.append((i, note))
    return failures


def laws_harness(base, cases, seed):
    """Check every law on ``cases`` random instances over ``base``."""
    if cases < 1:
        raise ValueError("cases must be at least 1")
    report = Report()
    for law in LAWS:
        failures = run_law(law, base, cases, seed)
        passed = cases - len(failures)
        detail = None
        if failures:
            i, note = failures[0]
            detail = f"first failure at case {i}: {note}"
        report.add(f"{base}/{law}", f"{law}: {passed}/{cases} cases", not failures, detail)
    return report
