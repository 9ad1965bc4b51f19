"""Hypothesis strategies for elements over the naturals and finite sets."""

from hypothesis import strategies as st

from invsemi.pbij import Finite, IdentityTail, PartialBijection, Subset

REACH = 8


@st.composite
def partial_injections(draw, reach=REACH):
    xs = draw(st.lists(st.integers(0, reach - 1), unique=True, max_size=reach))
    ys = draw(st.lists(st.integers(0, reach - 1), unique=True, min_size=len(xs), max_size=len(xs)))
    return list(zip(xs, ys))


@st.composite
def elements(draw, reach=REACH):
    """Eventually trivial elements of I(N): pairs below ``reach`` and an
    optional identity tail from ``reach`` on with a few punctures."""
    pairs = draw(partial_injections(reach))
    tail = None
    if draw(st.booleans()):
        punct = draw(st.frozensets(st.integers(reach, reach + 5), max_size=3))
        tail = IdentityTail(reach, punct)
    return PartialBijection(pairs, tail)


def finite_elements(n):
    return partial_injections(n).map(lambda ps: PartialBijection(ps, None, Finite(n)))


@st.composite
def subsets(draw, reach=10):
    pts = draw(st.frozensets(st.integers(0, reach - 1)))
    if draw(st.booleans()):
        return Subset.all_but(pts)
    return Subset.of(pts)
