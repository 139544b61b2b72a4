"""Canned constructions printed by ``propcoh demo``."""

from __future__ import annotations

from .errors import UnknownDemo
from .fincat import builtin_base
from .natmodel import has_term, mk_type, terms_of
from .presheaf import mk_nat, mk_presheaf, mk_subpresheaf, yoneda
from .propquot import (code_of_subobject, code_of_term, el, name,
                       prop_universe, propext_check, propext_hypothesis,
                       retract_counterexample, types_equal_q)
from .report import Report
from .show import show_sub, show_type
from .topos import negate, sub_eq, sub_leq

DEMOS = ("retract", "propext", "negneg")


def _block(title, body):
    return f"{title}\n" + "\n".join("  " + line for line in body.splitlines())


def gamma3():
    return mk_presheaf(builtin_base("pt"), {"o": ["0", "1", "2"]}, {})


def retract_demo():
    A, B = retract_counterexample()
    out = [_block("A", show_type(A)), _block("el(name(A))", show_type(B))]
    report = Report()
    report.add("retract", "el(name(A)) differs from A as a diagram", A != B)
    report.add("retract", "el(name(A)) and A are equal in the quotient", types_equal_q(A, B))
    report.add("retract", "name(A) = name(el(name(A)))", name(A) == name(B))
    G3 = gamma3()
    codes = [code_of_term(t) for t in terms_of(prop_universe(G3))]
    bad = [c for c in codes if name(el(c)) != c]
    report.add("retract", f"name(el(c)) = c for all {len(codes)} codes over G3",
               not bad and len(codes) == 8,
               f"{len(bad)} codes fail" if bad else f"found {len(codes)} codes")
    return "\n".join(out) + "\n", report


def propext_demo():
    """The subobject {0, 1} of G3 presented twice: as its el-form and as
    ``G3 -> G3 x {t, u} <- {(0,t), (1,t)}``."""
    cat = builtin_base("pt")
    G3 = gamma3()
    P01 = mk_subpresheaf(G3, {"o": ["0", "1"]})
    A = el(code_of_subobject(P01))
    V = mk_presheaf(cat, {"o": [f"({x},{w})" for x in "012" for w in "tu"]}, {})
    E = mk_presheaf(cat, {"o": ["(0,t)", "(1,t)"]}, {})
    p = mk_nat(E, V, {"o": {"(0,t)": "(0,t)", "(1,t)": "(1,t)"}})
    f = mk_nat(G3, V, {"o": {x: f"({x},t)" for x in "012"}})
    B = mk_type(G3, V, E, p, f)
    out = [_block("A = el({0,1})", show_type(A)), _block("B", show_type(B))]
    report = Report()
    report.add("propext", "A and B are different diagrams", A != B)
    report.add("propext", "A -> B and B -> A are both inhabited", propext_hypothesis(A, B))
    report.add("propext", "A and B are equal in the quotient", propext_check(A, B)
               and types_equal_q(A, B))
    return "\n".join(out) + "\n", report


def negneg_demo():
    cat = builtin_base("arr")
    yb = yoneda(cat, "b")
    P = mk_subpresheaf(yb, {"a": ["f"]})
    notP = negate(P)
    nnP = negate(notP)
    out = [f"context yb   {show_sub(mk_subpresheaf(yb, yb.carrier))}",
           f"P            {show_sub(P)}",
           f"not P        {show_sub(notP)}",
           f"not not P    {show_sub(nnP)}"]
    A, B = el(code_of_subobject(P)), el(code_of_subobject(nnP))
    report = Report()
    report.add("negneg", "not P is empty", not any(notP.subsets.values()))
    report.add("negneg", "not not P is the whole context", nnP.is_full())
    report.add("negneg", "P != not not P", not sub_eq(P, nnP))
    report.add("negneg", "P <= not not P", sub_leq(P, nnP))
    report.add("negneg", "not (not not P <= P)", not sub_leq(nnP, P))
    report.add("negneg", "propext makes no claim and el(P), el(not not P) stay apart",
               not propext_hypothesis(A, B) and not types_equal_q(A, B))
    report.add("negneg", "el(not not P) has a global term, el(P) has none",
               has_term(B) and not has_term(A))
    return "\n".join(out) + "\n", report


def demo_cmd(which):
    runners = {"retract": retract_demo, "propext": propext_demo, "negneg": negneg_demo}
    if which not in runners:
        raise UnknownDemo(f"unknown demo {which!r}; choose one of {', '.join(DEMOS)}")
    return runners[which]()
