from math import comb, factorial

import pytest
from hypothesis import given

from invsemi.pbij import (
    NATURALS,
    UNDEFINED,
    Finite,
    IdentityTail,
    PartialBijection,
    Subset,
    compose,
    empty_map,
    enumerate_all,
    idempotent_on,
    identity,
    parse_partial,
    restricts,
    singleton_map,
)
from strategies import elements


def test_compose_examples():
    assert compose(parse_partial("{1->2}"), parse_partial("{0->1}")) == parse_partial("{0->2}")
    A, B = Subset.of([0, 1, 5]), Subset.all_but([1, 7])
    assert compose(idempotent_on(A), idempotent_on(B)) == idempotent_on(A & B)


def test_conjugating_by_u_outside_domain_gives_empty():
    u = singleton_map(0, 1)
    f = parse_partial("{2->3, 1->1}")
    assert 0 not in f.dom()
    assert compose(u, compose(f, u)) == empty_map()


def test_inverse_examples():
    assert parse_partial("{0->3, 2->1}").inverse() == parse_partial("{3->0, 1->2}")
    e = idempotent_on(Subset.all_but([2, 9]))
    assert e.inverse() == e


def test_idempotent_canonical_forms():
    empty = idempotent_on(Subset.of())
    assert empty == empty_map()
    f = parse_partial("{0->4, 4->0}")
    assert compose(empty, f) == compose(f, empty) == empty
    e = idempotent_on(Subset.all_but([5]))
    alt = PartialBijection([(x, x) for x in range(5)], IdentityTail(6))
    assert e == alt
    assert e(5) is UNDEFINED and e(4) == 4 and e(10**6) == 10**6


def test_dom_im_and_eval():
    u = singleton_map(3, 7)
    assert u.dom() == Subset.of([3]) and u.im() == Subset.of([7])
    A = Subset.of([1, 2])
    for x in range(5):
        assert (idempotent_on(A)(x) == x) == (x in A)


def test_restricts_examples():
    assert restricts(parse_partial("{0->1}"), parse_partial("{0->1, 2->3}"))
    assert not restricts(parse_partial("{0->1}"), parse_partial("{0->2}"))
    assert restricts(empty_map(), parse_partial("{2->2}; id from 4"))


def test_puncture_below_start_rejected():
    with pytest.raises(ValueError):
        PartialBijection([], IdentityTail(4, frozenset({2})))


def test_non_injective_rejected():
    with pytest.raises(ValueError):
        PartialBijection([(0, 1), (2, 1)])


def test_ground_mismatch_rejected():
    with pytest.raises(ValueError):
        compose(identity(Finite(2)), identity(Finite(3)))


@pytest.mark.parametrize("n", range(6))
def test_enumeration_count_and_distinctness(n):
    els = enumerate_all(n)
    assert len(els) == sum(comb(n, k) ** 2 * factorial(k) for k in range(n + 1))
    assert len(set(els)) == len(els)
    assert els[0] == empty_map(Finite(n))


def test_enumeration_bound():
    with pytest.raises(ValueError):
        enumerate_all(6)


def test_exhaustive_dom_of_composite_and_order_criterion():
    els = enumerate_all(3)
    for f in els:
        for g in els:
            dom_fg = {x for x in g.dom().points if g(x) in f.dom()}
            assert compose(f, g).dom() == Subset.of(dom_fg)
            assert restricts(f, g) == (f == compose(compose(f, f.inverse()), g))


def test_u_conjugation_detects_value():
    for f in enumerate_all(4):
        for x in range(4):
            for y in range(4):
                u = singleton_map(y, x, Finite(4))
                assert (compose(u, compose(f, u)) == u) == (f(x) == y)


def test_literal_round_trip():
    for text in ["{}", "{0->3, 3->0}; id from 4 except {6}", "{}; id from 0"]:
        assert str(parse_partial(text)) == text


@given(elements(), elements(), elements())
def test_semigroup_laws_over_naturals(f, g, h):
    assert compose(f, compose(g, h)) == compose(compose(f, g), h)
    assert compose(f, g).inverse() == compose(g.inverse(), f.inverse())
    assert compose(compose(f, f.inverse()), f) == f
    assert parse_partial(str(f)) == f


@given(elements(), elements())
def test_restricts_matches_algebraic_criterion(f, g):
    assert restricts(f, g) == (f == compose(compose(f, f.inverse()), g))


def test_naturals_default_ground():
    assert parse_partial("{0->1}").ground == NATURALS
