import itertools

import pytest
from hypothesis import given

from invsemi.pbij import Finite, Permutation, Subset, compose, empty_map, enumerate_all, identity, parse_partial
from invsemi.topology import (
    U,
    V,
    W1,
    W2,
    Basic,
    TopologyKind,
    dom_im_image_of_basic,
    is_empty,
    member,
    nowhere_dense_witness,
    nowhere_dense_witness_w1,
    preimage_compose,
    preimage_inverse,
    separate,
    translate_w1,
    witness,
)
from strategies import elements

KINDS = (TopologyKind.TAU0, TopologyKind.TAU1, TopologyKind.TAU2, TopologyKind.TAUPP)


def basic(*atoms, neg=()):
    return Basic(frozenset(atoms), frozenset(neg))


def test_membership():
    f = parse_partial("{0->1}")
    assert member(f, basic(V(0, 1), W1(2)))
    assert not member(f, W1(0))
    assert member(f, W2(0))
    assert not member(f, basic(V(0, 1), neg=[V(0, 1)]))


def test_emptiness_examples():
    assert is_empty(basic(V(0, 1), W1(0)))
    assert is_empty(basic(V(0, 1), V(2, 1)))
    b = basic(V(0, 1), W1(2), W2(3))
    w = witness(b, Finite(4))
    assert w == parse_partial("{0->1}", Finite(4)) and member(w, b)


def test_emptiness_matches_enumeration_on_finite_three():
    atoms = [V(x, y) for x in range(3) for y in range(3)] + [W1(x) for x in range(3)] + [W2(y) for y in range(3)]
    els = enumerate_all(3)
    for k in (1, 2, 3):
        for sel in itertools.combinations(atoms, k):
            bb = basic(*sel)
            brute = not any(member(f, bb) for f in els)
            assert is_empty(bb, Finite(3)) == brute
    with pytest.raises(ValueError):
        is_empty(basic(V(0, 1), neg=[W1(2)]))


@pytest.mark.parametrize("atom", [V(0, 1), V(2, 2), W1(1), W2(0)])
def test_preimage_under_composition_exhaustive(atom):
    els = enumerate_all(3)
    pu = preimage_compose(atom, Finite(3))
    for f, g in itertools.product(els, repeat=2):
        assert pu.contains(f, g) == member(compose(f, g), atom)


def test_preimage_under_inversion():
    assert preimage_inverse(V(0, 1)) == V(1, 0)
    assert preimage_inverse(W1(2)) == W2(2)
    for f in enumerate_all(3):
        for a in (V(0, 1), W1(2), W2(1)):
            assert member(f.inverse(), a) == member(f, preimage_inverse(a))


def test_separation_examples():
    f = parse_partial("{0->1}")
    assert (separate(f, empty_map(), TopologyKind.TAU1).first, separate(f, empty_map(), TopologyKind.TAU1).second) == (
        basic(V(0, 1)), basic(W1(0)))
    w = separate(f, parse_partial("{0->2}"), TopologyKind.TAU1)
    assert (w.first, w.second) == (basic(V(0, 1)), basic(V(0, 2)))


def test_separation_certified_on_finite_three():
    els = enumerate_all(3)
    for kind in KINDS:
        for f, g in itertools.permutations(els, 2):
            assert separate(f, g, kind).certify(f, g)


def test_empty_map_in_no_v_atom():
    for x, y in itertools.product(range(5), repeat=2):
        assert not member(empty_map(), V(x, y))


def test_nowhere_density_examples():
    w = nowhere_dense_witness(basic(V(0, 1)), 1)
    assert w.fresh is None and w.certify()
    w = nowhere_dense_witness(basic(V(0, 1), W1(2)), 3)
    assert w.fresh == 4
    assert w.refined == basic(V(0, 1), W1(2), V(4, 3))
    assert w.certify()
    assert nowhere_dense_witness_w1(basic(V(0, 1)), 3).certify()


def test_translates_of_w1():
    assert translate_w1(0, identity(Finite(3))).y == 0
    r = translate_w1(0, Permutation([1, 0, 2]))
    assert r.y == 1 and r.exhaustive and not r.failures


def test_dom_im_cylinders():
    d, i = dom_im_image_of_basic(basic(V(0, 1)))
    assert d.required == {0} and not d.forbidden and i.required == {1}
    d, i = dom_im_image_of_basic(basic(W1(0), W2(1)))
    assert d.forbidden == {0} and i.forbidden == {1}
    assert d.contains(Subset.of([2])) and not d.contains(Subset.of([0]))


def test_u_atoms_not_admissible_over_partial_maps():
    assert not TopologyKind.TAUPP.admits(U(0, 1))
    assert TopologyKind.TAU1.admits(basic(V(0, 1), W1(3)))
    assert not TopologyKind.TAU1.admits(W2(0))


@given(elements(), elements())
def test_separation_over_naturals(f, g):
    if f == g:
        return
    for kind in KINDS:
        assert separate(f, g, kind).certify(f, g)
