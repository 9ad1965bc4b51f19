import pytest

from invsemi.corpus import NOT_CAUCHY, UNCERTIFIED, UNREPRESENTABLE, by_name, documents, load
from invsemi.dyadic import Dyadic
from invsemi.metrics import MetricKind, NotCauchy, cauchy_limit, distance, distance_limit
from invsemi.pbij import Subset, compose, empty_map, idempotent_on, identity, parse_partial, singleton_map
from invsemi.sequences import (
    Constant,
    Generator,
    InvalidSequence,
    LimitNotRepresentable,
    Lin,
    PointwiseAnalysis,
    Schedule,
    Segment,
    SequenceSpec,
    UncertifiedSequence,
)


def moving_image():
    # u_{0,k}
    return SequenceSpec((), Schedule((Segment(Lin(0), Lin(1), Lin(0, 1)),)), "u0k")


def initial_segment():
    # 1_{[0,k)}
    return SequenceSpec((), Schedule((Segment(Lin(0), Lin(0, 1)),)), "init")


def test_terms():
    s = moving_image()
    assert [s.term(k) for k in range(3)] == [singleton_map(0, k) for k in range(3)]
    assert s.inverse().term(4) == singleton_map(4, 0)
    t = initial_segment()
    assert t.term(3) == idempotent_on(Subset.of(range(3)))


def test_constant_limit():
    f = parse_partial("{0->3, 3->0}; id from 4 except {6}")
    s = SequenceSpec((), Constant(f))
    for m in (MetricKind.RHO, MetricKind.RHO_STAR, MetricKind.D):
        assert cauchy_limit(s, m) == f


def test_initial_segments_converge_to_identity():
    s = initial_segment()
    assert cauchy_limit(s, MetricKind.RHO) == identity()
    for k in range(10):
        assert distance(s.term(k), identity(), MetricKind.RHO) == Dyadic(1, k)


def test_moving_image_not_cauchy_under_rho():
    out = cauchy_limit(moving_image(), MetricKind.RHO)
    assert isinstance(out, NotCauchy)
    assert out.point == 0
    assert cauchy_limit(moving_image(), MetricKind.RHO_STAR) == empty_map()


def test_unrepresentable_limit():
    # x -> x+1 on [0, k): the pointwise limit is the successor map
    s = SequenceSpec((), Schedule((Segment(Lin(0), Lin(0, 1), Lin(1)),)))
    assert s.term(3) == parse_partial("{0->1, 1->2, 2->3}")
    for m in (MetricKind.RHO, MetricKind.RHO_STAR, MetricKind.D):
        with pytest.raises(LimitNotRepresentable):
            cauchy_limit(s, m)
    spec, _ = by_name("opaque_moving_image")
    with pytest.raises(UncertifiedSequence):
        cauchy_limit(spec, MetricKind.RHO)


def outcome(spec, metric):
    try:
        out = cauchy_limit(spec, metric)
    except LimitNotRepresentable:
        return UNREPRESENTABLE
    except UncertifiedSequence:
        return UNCERTIFIED
    return NOT_CAUCHY if isinstance(out, NotCauchy) else str(out)


def test_json_round_trip_and_declared_limits():
    seen = set()
    for spec, limits in load():
        assert SequenceSpec.from_json(spec.to_json()).to_json() == spec.to_json()
        for key, lim in limits.items():
            got = outcome(spec, MetricKind(key))
            assert got == lim, (spec.name, key)
            seen.add(lim if lim in (NOT_CAUCHY, UNREPRESENTABLE, UNCERTIFIED) else "limit")
    assert seen == {NOT_CAUCHY, UNREPRESENTABLE, UNCERTIFIED, "limit"}
    assert len(documents()) >= 12


def test_inverse_and_compositions_match_termwise():
    g = parse_partial("{0->2, 2->0}; id from 3")
    for spec, _ in load():
        if not spec.certified:
            continue
        inv, right, left = spec.inverse(), spec.compose_right(g), spec.compose_left(g)
        for k in range(12):
            assert inv.term(k) == spec.term(k).inverse()
            assert right.term(k) == compose(spec.term(k), g)
            assert left.term(k) == compose(g, spec.term(k))


def test_distance_limit_envelope():
    s = moving_image()
    lim = distance_limit(s, empty_map(), MetricKind.RHO)
    assert lim.value == Dyadic(1, 1)
    for k in range(lim.index, lim.index + 10):
        gap = distance(s.term(k), empty_map(), MetricKind.RHO).abs_diff(lim.value)
        assert gap <= Dyadic(1, lim.bound + k - lim.index)


def test_pointwise_analysis_of_moving_point():
    spec, _ = by_name("moving_point")
    pa = PointwiseAnalysis(spec)
    assert pa.limit() == empty_map()


def test_generator_is_uncertified():
    spec, _ = by_name("opaque_moving_image")
    assert isinstance(spec.tail, Generator) and not spec.certified
    assert spec.horizon == 64


def test_malformed_documents_rejected():
    with pytest.raises((InvalidSequence, ValueError)):
        SequenceSpec.from_json({"prefix": [], "tail": {"kind": "Bogus"}})
    with pytest.raises((InvalidSequence, ValueError)):
        SequenceSpec.from_json({"prefix": ["{0->1, 2->1}"], "tail": {"kind": "Constant", "value": "{}"}})
