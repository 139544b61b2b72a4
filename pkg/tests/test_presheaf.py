import random

import pytest
from hypothesis import given, settings, strategies as st

from propcoh.errors import BaseMismatch, MalformedPresheaf, NotNatural
from propcoh.fincat import BUILTIN_BASES, builtin_base
from propcoh.harness import random_presheaf
from propcoh.presheaf import (Element, compose_nat, empty_presheaf,
                              enumerate_elements, identity_nat, image, is_mono,
                              iter_nat_maps, mk_nat, mk_presheaf,
                              mk_subpresheaf, product, pullback, terminal,
                              to_terminal, yoneda)
from propcoh.topos import all_subobjects, classify, truth

from oracles import all_nat_maps


def test_discrete_presheaf(g3):
    assert g3.carrier == {"o": ("0", "1", "2")}
    assert g3.restrict["id_o"] == {"0": "0", "1": "1", "2": "2"}


def test_yoneda_b_matches_explicit(arr, yb):
    explicit = mk_presheaf(arr, {"a": ["f"], "b": ["id_b"]}, {"f": {"id_b": "f"}})
    assert explicit == yb


def test_bad_restriction_rejected(arr):
    with pytest.raises(MalformedPresheaf):
        mk_presheaf(arr, {"a": ["x"], "b": ["y"]}, {"f": {"y": "nope"}})
    with pytest.raises(MalformedPresheaf):
        mk_presheaf(arr, {"a": ["x"], "b": ["y"]}, {})


def test_non_functorial_rejected():
    chain = builtin_base("chain3")
    carrier = {"0": ["p", "q"], "1": ["r"], "2": ["s"]}
    restrict = {"m01": {"r": "p"}, "m12": {"s": "r"}, "m02": {"s": "q"}}
    with pytest.raises(MalformedPresheaf, match="functorial"):
        mk_presheaf(chain, carrier, restrict)


def test_yoneda_examples(pt, arr, span):
    assert yoneda(pt, "o").carrier == {"o": ("id_o",)}
    assert yoneda(arr, "b").carrier == {"a": ("f",), "b": ("id_b",)}
    assert yoneda(span, "a").carrier == {"s": ("l",), "a": ("id_a",), "b": ()}


def test_terminal_and_products(arr, g3, yb):
    assert terminal(arr).carrier == {"a": ("*",), "b": ("*",)}
    P, p1, p2 = product(g3, g3)
    assert len(P.carrier["o"]) == 9
    Q, q1, _ = product(yb, terminal(arr))
    assert {o: len(xs) for o, xs in Q.carrier.items()} == {"a": 1, "b": 1}
    assert q1.components == {"a": {"(f,*)": "f"}, "b": {"(id_b,*)": "id_b"}}
    with pytest.raises(BaseMismatch):
        product(g3, yb)


def test_nat_trans_examples(arr, g3, yb):
    assert identity_nat(g3) == mk_nat(g3, g3, {"o": {x: x for x in "012"}})
    mk_nat(yb, terminal(arr), {"a": {"f": "*"}, "b": {"id_b": "*"}})


def test_naturality_violation_reports_witness(arr):
    X = mk_presheaf(arr, {"a": ["x0", "x1"], "b": ["y"]}, {"f": {"y": "x0"}})
    # brute force: every family of functions X -> X failing naturality blames f
    bad = 0
    for c_a in (["x0", "x0"], ["x0", "x1"], ["x1", "x0"], ["x1", "x1"]):
        comps = {"a": dict(zip(["x0", "x1"], c_a)), "b": {"y": "y"}}
        try:
            mk_nat(X, X, comps)
        except NotNatural as exc:
            assert exc.witness == "f"
            bad += 1
    assert bad == 2


def test_compose_nat_componentwise(g3, g1):
    pick2 = mk_nat(g1, g3, {"o": {"*": "2"}})
    const = mk_nat(g3, g1, {"o": {x: "*" for x in "012"}})
    assert compose_nat(const, pick2) == identity_nat(g1)


def test_pullback_examples(pt, g1, g3, p01):
    D, _, _ = pullback(identity_nat(g3), identity_nat(g3))
    assert D.carrier["o"] == ("(0,0)", "(1,1)", "(2,2)")
    zero = mk_nat(g1, g3, {"o": {"*": "0"}})
    one = mk_nat(g1, g3, {"o": {"*": "1"}})
    E, _, _ = pullback(zero, one)
    assert E.carrier == {"o": ()}
    P, leg, _ = pullback(classify(p01), truth(pt))
    assert len(P.carrier["o"]) == 2
    assert image(leg) == p01


def test_pullback_lexicographic(g3):
    X = mk_presheaf(g3.base, {"o": ["b", "a"]}, {})
    f = mk_nat(X, g3, {"o": {"b": "0", "a": "0"}})
    g = mk_nat(g3, g3, {"o": {"0": "0", "1": "1", "2": "0"}})
    P, _, _ = pullback(f, g)
    assert P.carrier["o"] == ("(b,0)", "(b,2)", "(a,0)", "(a,2)")


def test_is_mono_examples(g3, g1, p01, pt):
    assert is_mono(p01.inclusion())
    assert not is_mono(to_terminal(g3))
    assert is_mono(next(iter_nat_maps(empty_presheaf(pt), g3)))


def test_image_examples(arr, yb, g3, p01):
    assert image(p01.inclusion()).subsets == {"o": ("0", "1")}
    assert image(to_terminal(g3)).is_full()
    only_a = mk_presheaf(arr, {"a": ["f"], "b": []}, {"f": {}})
    inc = mk_nat(only_a, yb, {"a": {"f": "f"}, "b": {}})
    assert image(inc).subsets == {"a": ("f",), "b": ()}


def test_enumerate_elements(g3, yb, pt):
    assert enumerate_elements(g3) == [Element("o", "0"), Element("o", "1"), Element("o", "2")]
    assert enumerate_elements(yb) == [Element("a", "f"), Element("b", "id_b")]
    assert enumerate_elements(empty_presheaf(pt)) == []


def test_subpresheaf_closure(yb):
    with pytest.raises(MalformedPresheaf):
        mk_subpresheaf(yb, {"b": ["id_b"]})


def _random_pair(base, seed):
    rng = random.Random(seed)
    cat = builtin_base(base)
    return (random_presheaf(cat, rng, max_carrier=2),
            random_presheaf(cat, rng, max_carrier=2), rng)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(BUILTIN_BASES), st.integers(0, 10**6))
def test_iter_nat_maps_matches_brute_force(base, seed):
    X, Y, _ = _random_pair(base, seed)
    found = list(iter_nat_maps(X, Y))
    expected = all_nat_maps(X, Y)
    assert len(found) == len(expected)
    assert set(found) == set(expected)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(BUILTIN_BASES), st.integers(0, 10**6))
def test_is_mono_agrees_with_kernel_pair(base, seed):
    X, Y, rng = _random_pair(base, seed)
    maps = all_nat_maps(X, Y)
    if not maps:
        return
    f = rng.choice(maps)
    K, k1, k2 = pullback(f, f)
    diagonal_only = all(k1.components[o][z] == k2.components[o][z]
                        for o, zs in K.carrier.items() for z in zs)
    assert is_mono(f) == diagonal_only


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["pt", "arr", "span"]), st.integers(0, 10**6))
def test_pullback_universal_property(base, seed):
    rng = random.Random(seed)
    cat = builtin_base(base)
    X = random_presheaf(cat, rng, max_carrier=2)
    Y = random_presheaf(cat, rng, max_carrier=2)
    Z = random_presheaf(cat, rng, max_carrier=2, min_carrier=1)
    fs, gs = all_nat_maps(X, Z), all_nat_maps(Y, Z)
    if not fs or not gs:
        return
    f, g = rng.choice(fs), rng.choice(gs)
    P, p1, p2 = pullback(f, g)
    assert compose_nat(f, p1) == compose_nat(g, p2)
    for W in [terminal(cat)] + [yoneda(cat, o) for o in cat.objects]:
        for u in all_nat_maps(W, X):
            for v in all_nat_maps(W, Y):
                if compose_nat(f, u) != compose_nat(g, v):
                    continue
                mediators = [m for m in all_nat_maps(W, P)
                             if compose_nat(p1, m) == u and compose_nat(p2, m) == v]
                assert len(mediators) == 1


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(BUILTIN_BASES), st.integers(0, 10**6))
def test_image_factorisation(base, seed):
    X, Y, rng = _random_pair(base, seed)
    maps = all_nat_maps(X, Y)
    if not maps:
        return
    f = rng.choice(maps)
    im = image(f)
    for o, c in f.components.items():
        assert set(c.values()) == set(im.subsets[o])
    # least subobject through which f factors
    for S in all_subobjects(Y):
        through = all(y in S.subsets[o] for o, c in f.components.items() for y in c.values())
        if through:
            assert all(set(im.subsets[o]) <= set(S.subsets[o]) for o in S.subsets)
