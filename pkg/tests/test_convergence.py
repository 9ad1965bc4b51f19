import pytest

from invsemi.convergence import (
    converges,
    converges_tau1,
    converges_tau2,
    converges_taupp,
    metric_convergence_agrees,
    metric_verdict,
)
from invsemi.corpus import by_name, declared, load
from invsemi.metrics import MetricKind
from invsemi.pbij import Subset, compose, empty_map, idempotent_on, identity, parse_partial
from invsemi.sequences import Constant, SequenceSpec
from invsemi.topology import TopologyKind

PAIRS = [(TopologyKind.TAU1, MetricKind.RHO), (TopologyKind.TAU2, MetricKind.RHO_STAR),
         (TopologyKind.TAUPP, MetricKind.D)]


def test_constant_converges_everywhere():
    f = parse_partial("{0->2, 2->0}; id from 3")
    s = SequenceSpec((), Constant(f))
    for top, met in PAIRS:
        assert converges(s, f, top).converges
        assert metric_verdict(s, f, met).converges


def test_initial_segments():
    s, _ = by_name("initial_segment")
    assert converges_tau1(s, identity()).converges
    assert metric_convergence_agrees(s, identity(), MetricKind.RHO).agree


def test_moving_image():
    s, _ = by_name("moving_image")
    v = converges_tau1(s, empty_map())
    assert v.status == "diverges" and v.point == 0 and "never stabilizes" in v.reason
    assert converges_tau2(s, empty_map()).converges
    assert not converges_taupp(s, empty_map()).converges
    agree = metric_convergence_agrees(s, empty_map(), MetricKind.RHO)
    assert agree.agree and agree.metric.status == "diverges"
    assert metric_verdict(s, empty_map(), MetricKind.RHO_STAR).converges


def test_moving_point_is_the_mirror_case():
    s, _ = by_name("moving_point")
    assert converges_tau1(s, empty_map()).converges
    assert not converges_tau2(s, empty_map()).converges


def test_tau0_has_no_verdicts():
    s, _ = by_name("constant")
    with pytest.raises(ValueError):
        converges(s, empty_map(), TopologyKind.TAU0)


def test_generator_verdicts_are_horizon_qualified():
    s, _ = by_name("opaque_moving_image")
    for top, met in PAIRS:
        v = converges(s, empty_map(), top)
        assert v.status == "undetermined" and v.horizon == s.horizon
        assert metric_verdict(s, empty_map(), met).status == "undetermined"


TARGETS = [empty_map(), identity(), idempotent_on(Subset.all_but([0])), parse_partial("{0->1}")]


@pytest.mark.parametrize("spec,limits", load(), ids=lambda v: getattr(v, "name", ""))
def test_topological_and_metric_verdicts_agree(spec, limits):
    if not spec.certified:
        return
    targets = list(TARGETS)
    for lim in limits.values():
        d = declared(lim)
        if hasattr(d, "pairs") and d not in targets:
            targets.append(d)
    for f in targets:
        for top, met in PAIRS:
            a = metric_convergence_agrees(spec, f, met)
            assert a.agree, (spec.name, str(f), top.value)
            assert a.topological.status == converges(spec, f, top).status
        tp = converges_taupp(spec, f).converges
        assert tp == (converges_tau1(spec, f).converges and converges_tau2(spec, f).converges)
        assert converges_tau2(spec, f).converges == converges_tau1(spec.inverse(), f.inverse()).converges


def test_almost_convergence_instance():
    # f_k = 1_{[0,k)} restricted by 1_{N - {0}} still converges
    s, _ = by_name("initial_segment")
    A = idempotent_on(Subset.all_but([0]))
    r = s.compose_right(A)
    assert metric_verdict(r, compose(identity(), A), MetricKind.D).converges
    assert metric_verdict(s, identity(), MetricKind.D).converges
