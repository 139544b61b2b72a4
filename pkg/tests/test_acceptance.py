"""Acceptance gate: one test per criterion, each printing a pass/fail line."""

import io
import time
from contextlib import contextmanager
from pathlib import Path

from conftest import ACCEPTANCE_LINES
from oracles import closed_subset_sieves
from propcoh.cli import main
from propcoh.fincat import BUILTIN_BASES, builtin_base
from propcoh.harness import (_prop_pair, case_rng, inflate, law_classifier,
                             law_cwf_strict, law_oracle, law_subst_stable,
                             random_context, random_prop_type)
from propcoh.natmodel import has_term, is_subsingleton, terms_of
from propcoh.presheaf import yoneda, mk_subpresheaf
from propcoh.propquot import (Prop, canon, code_of_subobject, code_of_term,
                              el, implies_code, name, probe_term_counts,
                              prop_universe, propext_hypothesis, types_equal_q)
from propcoh.topos import all_subobjects, negate, sub_eq

MODELS = Path(__file__).resolve().parent.parent / "models"
SEED = 20240


@contextmanager
def criterion(number, limit, what):
    state = {"note": ""}
    start = time.perf_counter()
    try:
        yield state
    except AssertionError as exc:
        elapsed = time.perf_counter() - start
        ACCEPTANCE_LINES.append(f"criterion {number}: FAIL {what} ({elapsed:.2f}s) {exc}")
        raise
    elapsed = time.perf_counter() - start
    ok = elapsed < limit
    status = "PASS" if ok else "FAIL"
    line = f"criterion {number}: {status} {what} {state['note']} ({elapsed:.2f}s < {limit}s)"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, f"took {elapsed:.2f}s, limit {limit}s"


def cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    return main(list(argv), out, err), out.getvalue(), err.getvalue()


def run_cases(law, per_base, tag, max_carrier=4):
    failures = []
    for base in BUILTIN_BASES:
        cat = builtin_base(base)
        for i in range(per_base):
            rng = case_rng(SEED, f"{tag}:{base}", i)
            G = random_context(cat, rng, max_carrier)
            note = law(G, rng)
            if note:
                failures.append((base, i, note))
    return failures


def test_criterion_01_omega_tables():
    expected = {"pt": [2], "arr": [2, 3], "span": [2, 3, 3], "chain3": [2, 3, 4]}
    with criterion(1, 1.0, "omega sieve counts") as st:
        for base, counts in expected.items():
            code, out, _ = cli("omega", "--base", base)
            assert code == 0
            got = [int(line.split()[1]) for line in out.splitlines()]
            cat = builtin_base(base)
            brute = [len(closed_subset_sieves(cat, o)) for o in cat.objects]
            assert got == counts == brute, (base, got, brute)
        st["note"] = "match brute force on 4 bases"


def test_criterion_02_classifier_bijection():
    with criterion(2, 10.0, "classifier bijection and pullback image") as st:
        failures = run_cases(law_classifier, 100, "c2")
        assert not failures, failures[:3]
        st["note"] = "400 contexts, 0 failures"


def test_criterion_03_strict_cwf_laws():
    with criterion(3, 30.0, "strict substitution laws") as st:
        failures = run_cases(law_cwf_strict, 250, "c3")
        assert not failures, failures[:3]
        st["note"] = "1000 cases, 0 failures"


def test_criterion_04_retract_demo():
    with criterion(4, 1.0, "retract demo") as st:
        code, out, _ = cli("demo", "retract")
        assert code == 0, out
        assert "PASS retract el(name(A)) differs from A as a diagram" in out
        assert "PASS retract name(el(c)) = c for all 8 codes over G3" in out
        st["note"] = "structural inequality shown, 8/8 codes"


def test_criterion_05_quotient_coquand_laws():
    with criterion(5, 30.0, "quotient Coquand laws") as st:
        types, related = 0, 0
        for base in BUILTIN_BASES:
            cat = builtin_base(base)
            for i in range(60):
                rng = case_rng(SEED, f"c5:{base}", i)
                G = random_context(cat, rng)
                A = random_prop_type(G, rng)
                assert is_subsingleton(A)
                assert types_equal_q(el(name(A)), A), (base, i)
                types += 1
                for B in (inflate(name(A).subobject, rng), random_prop_type(G, rng)):
                    if types_equal_q(A, B):
                        related += 1
                        assert name(A) == name(B), (base, i)
        assert types >= 200
        st["note"] = f"{types} types, {related} related pairs, 0 failures"


def test_criterion_06_propext():
    with criterion(6, 10.0, "propositional extensionality") as st:
        held, tried = 0, 0
        while held < 200:
            base = BUILTIN_BASES[tried % 4]
            rng = case_rng(SEED, f"c6:{base}", tried)
            tried += 1
            assert tried < 5000, "too few pairs satisfy the hypothesis"
            A, B = _prop_pair(random_context(builtin_base(base), rng), rng)
            if not propext_hypothesis(A, B):
                continue
            held += 1
            assert types_equal_q(A, B), (base, tried)
        code, out, _ = cli("demo", "negneg")
        assert code == 0, out
        yb = yoneda(builtin_base("arr"), "b")
        P = mk_subpresheaf(yb, {"a": ["f"]})
        nnP = negate(negate(P))
        assert not sub_eq(P, nnP)
        assert not types_equal_q(el(code_of_subobject(P)), el(code_of_subobject(nnP)))
        assert not has_term(el(implies_code(code_of_subobject(nnP), code_of_subobject(P))))
        st["note"] = f"{held} pairs ({tried} drawn), P != not-not-P over yb"


def test_criterion_07_subst_stability():
    with criterion(7, 30.0, "substitution stability") as st:
        failures = run_cases(law_subst_stable, 125, "c7")
        assert not failures, failures[:3]
        st["note"] = "500 cases, 0 failures"


def test_criterion_08_oracle_agreement():
    with criterion(8, 30.0, "oracle agreement") as st:
        failures = run_cases(law_oracle, 125, "c8")
        assert not failures, failures[:3]
        st["note"] = "500 pairs, 0 failures"


def test_criterion_09_term_uniqueness():
    with criterion(9, 10.0, "term uniqueness over probes") as st:
        types, probes = 0, 0
        for base in BUILTIN_BASES:
            cat = builtin_base(base)
            for i in range(100):
                rng = case_rng(SEED, f"c9:{base}", i)
                A = random_prop_type(random_context(cat, rng), rng)
                counts = probe_term_counts(A)
                assert all(n <= 1 for n in counts.values()), (base, i, counts)
                types += 1
                probes += len(counts)
        st["note"] = f"{types} types, {probes} probes, 0 failures"


def test_criterion_10_prop_iso_tilde_u():
    with criterion(10, 10.0, "canon(el(-)) bijection onto Prop classes") as st:
        contexts, subs_total, crossed = 0, 0, 0
        for base in BUILTIN_BASES:
            cat = builtin_base(base)
            for i in range(12):
                rng = case_rng(SEED, f"c10:{base}", i)
                G = random_context(cat, rng, max_carrier=3)
                subs = all_subobjects(G)
                images = [canon(el(code_of_subobject(P))) for P in subs]
                assert len(set(images)) == len(subs), (base, i)
                assert set(images) == {Prop(P) for P in subs}, (base, i)
                # every Prop-classed type lands in the image
                for _ in range(5):
                    assert canon(random_prop_type(G, rng)) in set(images)
                # the codes are exactly the global elements of the universe
                if G.size() <= 4:
                    codes = {code_of_term(t).subobject for t in terms_of(prop_universe(G))}
                    assert codes == set(subs), (base, i)
                    crossed += 1
                contexts += 1
                subs_total += len(subs)
        st["note"] = (f"{contexts} contexts, {subs_total} subobjects, "
                      f"{crossed} cross-checked against universe terms")


def test_criterion_11_cli_round_trip():
    with criterion(11, 30.0, "CLI corpus round trip") as st:
        corpus = sorted(MODELS.glob("*.prop"))
        assert len(corpus) >= 6
        for path in corpus:
            code, out, _ = cli("check", str(path))
            assert code == 0, (path.name, out)
        code, out, _ = cli("check", str(MODELS / "failing" / "structural_eq.prop"))
        assert code == 1 and "left:" in out and "right:" in out
        malformed = sorted((MODELS / "malformed").glob("*.prop"))
        assert malformed
        for path in malformed:
            code, out, err = cli("check", str(path))
            assert code == 2 and err, path.name
        st["note"] = f"{len(corpus)} files exit 0, failing exits 1, {len(malformed)} malformed exit 2"

