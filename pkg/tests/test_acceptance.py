"""The ten acceptance criteria, each with its stated time limit.

Every criterion records a PASS/FAIL line that is printed in the terminal
summary (and to stdout, visible with ``-s``)."""

import itertools
import time
from math import comb, factorial

import pytest

from conftest import ACCEPTANCE
from invsemi.corpus import documents, load
from invsemi.pbij import Finite, PartialBijection, all_permutations, compose, enumerate_all
from invsemi.quotient import Embedding, lift, project
from invsemi.sequences import Schedule
from invsemi.suites import recheck, run_suite, slack_table
from invsemi.topology import V, member


@pytest.fixture
def criterion():
    """``record(num, limit_seconds)`` returns a context that times the body,
    records PASS/FAIL and enforces the time limit."""
    class Record:
        def __init__(self, num, limit):
            self.num, self.limit, self.notes = num, limit, []

        def __enter__(self):
            self.t0 = time.perf_counter()
            return self

        def __exit__(self, exc_type, exc, tb):
            dt = time.perf_counter() - self.t0
            within = self.limit is None or dt < self.limit
            ok = exc_type is None and within
            bound = f" < {self.limit:g}s" if self.limit is not None else ""
            why = "" if exc_type is None else f"  [{exc_type.__name__}: {exc}]"
            detail = f"{dt:.2f}s{bound}; " + "; ".join(self.notes) + why
            ACCEPTANCE[self.num] = (ok, detail)
            print(f"criterion {self.num}: {'PASS' if ok else 'FAIL'}  {detail}")
            if exc_type is None and not within:
                pytest.fail(f"criterion {self.num} took {dt:.2f}s, limit {self.limit}s")
            return False

    return Record


def assert_clean(res, *names):
    for name in names:
        row = res.checks[name]
        assert row["failed"] == 0 and row["passed"] > 0, (res.suite, name, row)
    assert res.ok, [c.to_json() for c in res.counterexamples]
    assert all(recheck(c) for c in res.counterexamples)


def test_criterion_01_enumeration(criterion):
    with criterion(1, 5) as c:
        counts = [len(enumerate_all(n)) for n in range(6)]
        formula = [sum(comb(n, k) ** 2 * factorial(k) for k in range(n + 1)) for n in range(6)]
        assert counts == formula == [1, 2, 7, 34, 209, 1546]
        for n in range(6):
            assert len(set(enumerate_all(n))) == counts[n]
        c.notes.append(f"counts {counts}")


def test_criterion_02_algebra(criterion):
    with criterion(2, 30) as c:
        res = run_suite("algebra")
        assert_clean(res, "associativity", "unique_inverse", "inverse_of_product")
        assert res.checks["associativity"]["passed"] >= 34 ** 3
        assert res.checks["unique_inverse"]["passed"] >= 34
        assert res.checks["inverse_of_product"]["passed"] >= 209 ** 2
        # independent pass: associativity on every triple over Finite(3)
        els = enumerate_all(3)
        prod = {(f, g): compose(f, g) for f in els for g in els}
        assert all(prod[prod[f, g], h] == prod[f, prod[g, h]] for f, g, h in itertools.product(els, repeat=3))
        c.notes.append(f"{res.passed} checks, 0 failures")


def test_criterion_03_preimages(criterion):
    with criterion(3, 10) as c:
        res = run_suite("preimages", 3)
        assert_clean(res, "compose_preimage", "inverse_preimage", "clopen_v", "closed_w1", "closed_w2",
                     "algebraic_membership")
        assert res.checks["compose_preimage"]["passed"] >= 34 ** 2 * 15
        c.notes.append(f"{res.passed} checks, 0 failures")


def test_criterion_04_separation(criterion):
    with criterion(4, None) as c:
        res = run_suite("separation", 3)
        assert_clean(res, "separation", "empty_not_in_v")
        assert res.checks["separation"]["passed"] == 34 * 33 * 4
        empty = PartialBijection((), None, Finite(3))
        assert not any(member(empty, V(x, y)) for x in range(3) for y in range(3))
        c.notes.append(f"{res.checks['separation']['passed']} certified witnesses")


def test_criterion_05_metrics(criterion):
    with criterion(5, 60) as c:
        res = run_suite("metrics")
        assert_clean(res, "symmetry", "indiscernibles", "triangle", "bounds", "d_of_idempotents")
        assert res.bounds["n_triple"] == 3 and res.bounds["n_pair"] == 4
        tri = res.extra["exhaustive_triangle"]
        assert tri == {m: {"checked": 34 ** 3, "failed": 0} for m in ("rho", "rho_star", "d")}
        assert res.checks["d_of_idempotents"]["passed"] >= 16 * 16
        c.notes.append("triangle on 34^3 triples for rho, rho*, d")


def test_criterion_06_compatibility(criterion):
    with criterion(6, None) as c:
        docs = documents()
        names = {d["name"] for d in docs}
        assert len(docs) >= 12
        assert {"initial_segment", "moving_image", "moving_point", "constant"} <= names
        mixed = [s for s, _ in load() if isinstance(s.tail, Schedule)
                 and len(s.tail.segments) >= 2 and any(seg.hi is None for seg in s.tail.segments)]
        assert mixed
        res = run_suite("convergence")
        assert_clean(res, "metric_agreement", "declared_limit", "verdict_coherence")
        c.notes.append(f"{len(docs)} specs, {res.checks['metric_agreement']['passed']} agreements")


GOLDEN_SLACK = {1: 0, 2: 2, 3: 0, 4: 0, 5: 0, 6: 2, 7: 0, 8: 2, 9: 0, 10: 0, 11: 2}


def test_criterion_07_identities(criterion):
    with criterion(7, 120) as c:
        res = run_suite("identities", 4)
        assert_clean(res, "identity_inclusion", "slack_at_most_two", "all_items_dispatched")
        assert res.checks["identity_inclusion"]["passed"] == 24 ** 2
        table = slack_table(4)
        assert table == GOLDEN_SLACK and max(table.values()) <= 2
        c.notes.append(f"slack {table}")


def test_criterion_08_open_map(criterion):
    with criterion(8, 300) as c:
        res = run_suite("openmap", 4)
        assert_clean(res, "open_map_right", "open_map_left")
        anchors = 209
        assert res.checks["open_map_right"]["passed"] >= res.extra["nonempty_basics"] * anchors
        c.notes.append(f"{res.extra['nonempty_basics']} basics x {anchors} anchors, both sides")


def test_criterion_09_quotient(criterion):
    with criterion(9, 60) as c:
        res = run_suite("quotient", None, 5, 2)
        assert_clean(res, "lift_projects_back", "subhom_inclusion", "not_onto", "pi_preimage", "pi_image")
        e = Embedding(3, 6)
        assert all(project(lift(g, e), e) == g for g in enumerate_all(3))
        e = Embedding(2, 3)
        hit = {project(f, e) for f in all_permutations(3)}
        assert PartialBijection((), None, Finite(2)) not in hit
        assert res.checks["subhom_inclusion"]["passed"] == 24 ** 2
        c.notes.append(f"{res.passed} checks, 0 failures")


def test_criterion_10_limit_laws(criterion):
    with criterion(10, None) as c:
        res = run_suite("convergence")
        assert_clean(res, "inverse_limit_law", "almost_convergence", "almost_convergence_nonvacuous")
        c.notes.append(f"{res.checks['inverse_limit_law']['passed']} inverse-pair cases, "
                       f"{res.extra['almost_convergence_hypotheses']} almost-convergence hypotheses")
