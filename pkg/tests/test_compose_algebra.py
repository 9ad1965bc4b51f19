import itertools

import pytest

from invsemi.compose_algebra import (
    AtomResult,
    CosetDescriptor,
    Intersection,
    Side,
    WholeSpace,
    atom_compose,
    coset_member,
    coset_oracle,
    lf_image,
    member_mask,
    restrict_map,
    rf_image,
    setwise_compose_oracle,
)
from invsemi.pbij import Finite, PartialBijection, Subset, compose, enumerate_all, parse_partial
from invsemi.suites import slack_table
from invsemi.topology import V, W1, W2, Basic, member
from invsemi.universe import universe

F3, F4 = Finite(3), Finite(4)


def test_atom_compose_examples():
    assert atom_compose(V(1, 2), V(0, 1)) == (AtomResult(V(0, 2)), 1)
    assert atom_compose(W1(0), W2(1)) == (WholeSpace(), 6)
    assert atom_compose(W2(0), W1(1)) == (Intersection(W2(0), W1(1)), 5)


def test_setwise_oracle_examples():
    empty = PartialBijection((), None, F3)
    assert setwise_compose_oracle({empty}, {empty}, F3) == {empty}
    got = setwise_compose_oracle(V(0, 1), V(2, 0), F3)
    uni = universe(3)
    assert got == frozenset(uni.elements_of(member_mask(V(2, 1), 3)))


def test_w1_after_w2_is_small_domains_at_slack_two():
    got = setwise_compose_oracle(W1(0), W2(1), F4)
    assert all(len(f.pairs()) <= 2 for f in got)
    assert {f for f in enumerate_all(4) if len(f.pairs()) <= 2} <= got


def atoms(n):
    return [V(x, y) for x in range(n) for y in range(n)] + [W1(x) for x in range(n)] + [W2(x) for x in range(n)]


def test_inclusions_exhaustive_finite_four():
    uni = universe(4)
    items = set()
    for a, b in itertools.product(atoms(4), repeat=2):
        res, item = atom_compose(a, b)
        items.add(item)
        lhs = uni.setwise(member_mask(a, 4), member_mask(b, 4))
        assert lhs & ~member_mask(res, 4) == 0, (a, b, item)
    assert items == set(range(1, 12))


GOLDEN_SLACK = {1: 0, 2: 2, 3: 0, 4: 0, 5: 0, 6: 2, 7: 0, 8: 2, 9: 0, 10: 0, 11: 2}


@pytest.mark.parametrize("n", [3, 4])
def test_slack_table_is_golden(n):
    assert slack_table(n) == GOLDEN_SLACK


def test_coset_criterion_matches_oracle():
    els = enumerate_all(3)
    for f in els:
        for side in Side:
            c = CosetDescriptor(side, f)
            oracle = coset_oracle(c, 3)
            assert frozenset(h for h in els if coset_member(h, c)) == oracle
            assert f in oracle and els[0] in oracle


def test_restrict_map():
    f = parse_partial("{0->1, 2->3}")
    assert restrict_map(f, Subset.of([0])) == parse_partial("{0->1}")
    assert restrict_map(f, Subset.of([0, 2, 5])) == f


def test_open_map_formula_sampled():
    els = enumerate_all(4)
    basics = [Basic(frozenset()), Basic(frozenset([V(0, 1)])), Basic(frozenset([W1(2), W2(0)])),
              Basic(frozenset([V(1, 1), V(2, 3), W2(0)])), Basic(frozenset([V(0, 2), W1(3)]))]
    for U in basics:
        if not any(member(g, U) for g in els):
            continue
        for f in els[::7]:
            Uset = [g for g in els if member(g, U)]
            right = {compose(g, f) for g in Uset}
            Q = rf_image(U, f)
            R = CosetDescriptor(Side.RIGHT, f)
            assert right == {h for h in els if member(h, Q) and coset_member(h, R)}
            left = {compose(f, g) for g in Uset}
            L = CosetDescriptor(Side.LEFT, f)
            assert left == {h for h in els if member(h, lf_image(U, f)) and coset_member(h, L)}
