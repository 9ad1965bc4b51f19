import itertools

import pytest

from invsemi.pbij import Finite, PartialBijection, Permutation, all_permutations, enumerate_all
from invsemi.quotient import (
    Embedding,
    lift,
    non_surjectivity_witness,
    pi_image_contains,
    pi_image_of_basic,
    pi_preimage,
    project,
    subhom_check,
)
from invsemi.topology import U, V, W1, W2, Basic, member


def test_projection_examples():
    e = Embedding(2, 4)
    assert project(Permutation(range(4)), e) == PartialBijection([(0, 0), (1, 1)], None, Finite(2))
    assert project(Permutation([2, 3, 0, 1]), e) == PartialBijection((), None, Finite(2))
    assert project(Permutation([1, 0, 2, 3]), e) == PartialBijection([(0, 1), (1, 0)], None, Finite(2))


@pytest.mark.parametrize("xs,ys", [(3, 6), (2, 4), (2, 5), (0, 0), (1, 3)])
def test_lift_projects_back(xs, ys):
    e = Embedding(xs, ys)
    for g in enumerate_all(xs):
        assert project(lift(g, e), e) == g


def test_lift_of_identity_fixes_x():
    e = Embedding(2, 5)
    f = lift(PartialBijection([(0, 0), (1, 1)], None, Finite(2)), e)
    assert f(0) == 0 and f(1) == 1


def test_subhomomorphism():
    e = Embedding(2, 4)
    for f, g in itertools.product(all_permutations(4), repeat=2):
        assert subhom_check(f, g, e).inclusion
    sw = Permutation([1, 0])
    r = subhom_check(sw, sw, Embedding(1, 2))
    assert r.inclusion and not r.equal and r.witness == 0


def test_not_onto_when_x_outnumbers_the_rest():
    e = Embedding(2, 3)
    g = non_surjectivity_witness(e)
    assert g == PartialBijection((), None, Finite(2))
    assert all(project(f, e) != g for f in all_permutations(3))
    with pytest.raises(ValueError):
        lift(g, e)
    assert non_surjectivity_witness(Embedding(2, 4)) is None


def test_idempotents_other_than_empty_are_hit():
    # 1_A with A nonempty is a projection even when pi is not onto
    e = Embedding(2, 3)
    hit = {project(f, e) for f in all_permutations(3)}
    assert PartialBijection([(0, 0)], None, Finite(2)) in hit
    assert project(Permutation([0, 2, 1]), e) == PartialBijection([(0, 0)], None, Finite(2))


def test_pi_preimage_examples():
    e = Embedding(2, 4)
    for a in (V(0, 1), W1(0), W2(1)):
        pre = pi_preimage(a, e)
        for f in all_permutations(4):
            assert member(project(f, e), a) == member(f, pre)
    assert {str(b) for b in pi_preimage(W1(0), e).basics} == {"u(0,2)", "u(0,3)"}


def test_pi_image_of_basic():
    e = Embedding(2, 5)
    assert pi_image_of_basic(Basic(frozenset([U(0, 1)])), e) == Basic(frozenset([V(0, 1)]))
    assert pi_image_of_basic(Basic(frozenset([U(0, 3)])), e) == Basic(frozenset([W1(0)]))
    perms = all_permutations(5)
    for b in (Basic(frozenset([U(0, 1)])), Basic(frozenset([U(3, 4), U(4, 3)])), Basic(frozenset([U(2, 0), U(1, 3)]))):
        image = {project(f, e) for f in perms if member(f, b)}
        assert image == {g for g in enumerate_all(2) if pi_image_contains(b, e, g)}
