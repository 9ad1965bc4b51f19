"""Convergence verdicts for sequences in I(N).

Topological verdicts come from the pointwise criterion: ``f_k -> f`` in
tau1 iff every point eventually has the same status under ``f_k`` as under
``f`` (in the domain with the same value, or outside it).  tau2 is tau1 for
the inverse sequence, and tau_pp is their conjunction.

Metric verdicts are computed independently from exact distances (see
:func:`metrics.distance_limit`), so comparing the two is a real check.
"""

from __future__ import annotations

from dataclasses import dataclass

from .dyadic import Dyadic
from .metrics import MetricKind, distance, distance_limit
from .pbij import UNDEFINED, PartialBijection
from .sequences import Eventual, PointwiseAnalysis, SequenceSpec
from .topology import TopologyKind

CONVERGES = "converges"
DIVERGES = "diverges"
UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class Verdict:
    status: str
    mode: str
    target: PartialBijection
    point: int | None = None
    reason: str = ""
    horizon: int | None = None
    distance: Dyadic | None = None

    @property
    def converges(self) -> bool:
        return self.status == CONVERGES

    def to_json(self) -> dict:
        out = {"mode": self.mode, "status": self.status, "target": str(self.target)}
        if self.point is not None:
            out["point"] = self.point
        if self.reason:
            out["reason"] = self.reason
        if self.horizon is not None:
            out["horizon"] = self.horizon
        if self.distance is not None:
            out["distance_limit"] = str(self.distance)
        return out

    def __str__(self):
        if self.status == CONVERGES:
            return f"{self.mode}: converges to {self.target}"
        if self.status == UNDETERMINED:
            return f"{self.mode}: undetermined within horizon {self.horizon}"
        return f"{self.mode}: diverges at {self.point} ({self.reason})"


def _mismatch(ev: Eventual, x: int, y) -> str | None:
    if ev.kind == "moving":
        return "value never stabilizes"
    if ev.kind == "outside":
        if y is UNDEFINED:
            return None
        return f"{x} eventually leaves the domain but the target maps it to {y}"
    if y is UNDEFINED:
        return f"{x} eventually maps to {ev.value} but is outside the target's domain"
    if ev.value != y:
        return f"{x} eventually maps to {ev.value}, target value {y}"
    return None


def _undetermined(seq: SequenceSpec, f: PartialBijection, mode: str) -> Verdict:
    return Verdict(UNDETERMINED, mode, f, horizon=seq.horizon,
                   reason=f"opaque tail; only {seq.horizon} terms are ever inspected")


def converges_tau1(seq: SequenceSpec, f: PartialBijection, mode: str = "tau1") -> Verdict:
    if not seq.certified:
        return _undetermined(seq, f, mode)
    an = PointwiseAnalysis(seq)
    B = max(an.bound, f.support_bound())
    for x in range(B):
        reason = _mismatch(an.status(x), x, f(x))
        if reason is not None:
            return Verdict(DIVERGES, mode, f, x, reason)
    g = an.generic
    y = f(B)
    if g.kind == "moving":
        return Verdict(DIVERGES, mode, f, B, "value never stabilizes")
    if g.kind == "outside":
        ev = Eventual("outside")
    else:
        ev = Eventual("maps", B + g.shift.c)
    reason = _mismatch(ev, B, y)
    if reason is not None:
        return Verdict(DIVERGES, mode, f, B, reason)
    return Verdict(CONVERGES, mode, f)


def converges_tau2(seq: SequenceSpec, f: PartialBijection) -> Verdict:
    inner = converges_tau1(seq.inverse(), f.inverse(), "tau2")
    if inner.status != DIVERGES:
        return Verdict(inner.status, "tau2", f, horizon=inner.horizon, reason=inner.reason)
    return Verdict(DIVERGES, "tau2", f, inner.point, f"inverse sequence: {inner.reason}")


def converges_taupp(seq: SequenceSpec, f: PartialBijection) -> Verdict:
    a = converges_tau1(seq, f)
    b = converges_tau2(seq, f)
    for v in (a, b):
        if v.status == DIVERGES:
            return Verdict(DIVERGES, "taupp", f, v.point, f"{v.mode}: {v.reason}")
    if a.status == UNDETERMINED or b.status == UNDETERMINED:
        return Verdict(UNDETERMINED, "taupp", f, horizon=seq.horizon, reason=a.reason or b.reason)
    return Verdict(CONVERGES, "taupp", f)


def converges(seq: SequenceSpec, f: PartialBijection, kind: TopologyKind) -> Verdict:
    if kind is TopologyKind.TAU1:
        return converges_tau1(seq, f)
    if kind is TopologyKind.TAU2:
        return converges_tau2(seq, f)
    if kind is TopologyKind.TAUPP:
        return converges_taupp(seq, f)
    raise ValueError("tau0 is not Hausdorff; no convergence verdicts are offered for it")


METRIC_FOR = {
    TopologyKind.TAU1: MetricKind.RHO,
    TopologyKind.TAU2: MetricKind.RHO_STAR,
    TopologyKind.TAUPP: MetricKind.D,
}
TOPOLOGY_FOR = {m: t for t, m in METRIC_FOR.items()}


def metric_verdict(seq: SequenceSpec, f: PartialBijection, metric: MetricKind) -> Verdict:
    """Whether ``dist(f_k, f) -> 0``, decided from the exact limit of the
    distances."""
    mode = metric.value
    if not seq.certified:
        last = distance(seq.term(seq.horizon - 1), f, metric)
        return Verdict(UNDETERMINED, mode, f, horizon=seq.horizon, distance=last,
                       reason=f"distance {last} at the horizon")
    lim = distance_limit(seq, f, metric)
    if lim.value:
        return Verdict(DIVERGES, mode, f, reason=f"distance tends to {lim.value}", distance=lim.value)
    return Verdict(CONVERGES, mode, f, distance=lim.value)


@dataclass(frozen=True)
class Agreement:
    agree: bool
    topological: Verdict
    metric: Verdict

    def to_json(self) -> dict:
        return {"agree": self.agree, "topological": self.topological.to_json(),
                "metric": self.metric.to_json()}


def metric_convergence_agrees(seq: SequenceSpec, f: PartialBijection, metric: MetricKind) -> Agreement:
    """Compare the metric verdict with the verdict of the topology the
    metric is meant to induce (rho/tau1, rho*/tau2, d/tau_pp)."""
    top = converges(seq, f, TOPOLOGY_FOR[metric])
    met = metric_verdict(seq, f, metric)
    return Agreement(top.status == met.status, top, met)
