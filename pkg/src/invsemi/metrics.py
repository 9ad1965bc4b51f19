"""Exact dyadic metrics on I(X).

Weights are ``w(n) = 2**-(n+1)`` so every metric value is an exact
:class:`Dyadic` and ``rho <= 1``, ``d <= 2``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .dyadic import ZERO, Dyadic
from .pbij import UNDEFINED, GroundSetMismatch, PartialBijection, Subset
from .sequences import (
    Lin,
    PointwiseAnalysis,
    SequenceSpec,
    UncertifiedSequence,
)


class MetricKind(enum.Enum):
    RHO = "rho"
    RHO_STAR = "rho_star"
    D = "d"
    ETA = "eta"


def disagreement(f: PartialBijection, g: PartialBijection, n: int) -> tuple[int, int]:
    """``(a_n, b_n)``: ``a`` flags a domain mismatch at ``n``, ``b`` a value
    mismatch where both are defined."""
    if f.ground != g.ground:
        raise GroundSetMismatch(f"{f.ground} vs {g.ground}")
    if n not in f.ground:
        raise ValueError(f"{n} is not in {f.ground}")
    x, y = f(n), g(n)
    if (x is UNDEFINED) != (y is UNDEFINED):
        return 1, 0
    if x is UNDEFINED or x == y:
        return 0, 0
    return 0, 1


def rho(f: PartialBijection, g: PartialBijection) -> Dyadic:
    if f.ground != g.ground:
        raise GroundSetMismatch(f"{f.ground} vs {g.ground}")
    bound = max(f.support_bound(), g.support_bound())
    if f.ground.is_finite:
        bound = f.ground.size
    num = 0
    # sum of ind(n) * 2^-(n+1) for n < bound, as an integer over 2^bound
    for n in range(bound):
        if f(n) != g(n):
            num += 1 << (bound - n - 1)
    out = Dyadic(num, bound)
    if not f.ground.is_finite and (f.tail is None) != (g.tail is None):
        # every point >= bound is in exactly one domain
        out = out + Dyadic.tail_weight(bound)
    return out


def rho_star(f: PartialBijection, g: PartialBijection) -> Dyadic:
    return rho(f.inverse(), g.inverse())


def d_metric(f: PartialBijection, g: PartialBijection) -> Dyadic:
    return rho(f, g) + rho_star(f, g)


def eta(A: Subset, B: Subset) -> Dyadic:
    """Cantor-style distance: the weight of the symmetric difference."""
    diff = A ^ B
    total = ZERO
    for n in diff.points:
        total = total + Dyadic.weight(n)
    if diff.cofinite:
        # complement of a finite set: 1 minus the missing weights
        missing = total
        return Dyadic(1) - missing
    return total


def distance(f: PartialBijection, g: PartialBijection, kind: MetricKind) -> Dyadic:
    if kind is MetricKind.RHO:
        return rho(f, g)
    if kind is MetricKind.RHO_STAR:
        return rho_star(f, g)
    if kind is MetricKind.D:
        return d_metric(f, g)
    raise ValueError("eta compares sets, not partial bijections")


# -- sequences ----------------------------------------------------------------


@dataclass(frozen=True)
class NotCauchy:
    """``rho(f_j, f_k) >= epsilon`` is certified for arbitrarily late
    ``j < k``; ``(j, k)`` is the first such pair past the settling index
    and ``point`` is where the terms keep disagreeing."""

    j: int
    k: int
    point: int
    epsilon: Dyadic
    metric: MetricKind

    def __str__(self):
        return (f"not Cauchy under {self.metric.value}: value at {self.point} never "
                f"stabilizes (distance >= {self.epsilon} at k={self.j},{self.k} and later)")


@dataclass(frozen=True)
class DistanceLimit:
    """Exact limit ``C`` of ``rho(f_k, f)``.

    For every ``k >= index`` the distance is within ``2**-(bound + k - index)``
    of ``value``, and ``value`` is a multiple of ``2**-bound``.
    """

    value: Dyadic
    index: int
    bound: int


def _root_passed(p: Lin, target: int, k0: int) -> int:
    """Index from which ``p(k) != target`` (``p`` nonconstant)."""
    num = target - p.c
    if num % p.s == 0:
        return max(k0, num // p.s + 1)
    return k0


def _rho_distance_limit(seq: SequenceSpec, f: PartialBijection) -> DistanceLimit:
    an = PointwiseAnalysis(seq)
    B = max(an.bound, f.support_bound())
    K = seq.start
    for x in range(B):
        ev, T = an.eventual(x)
        K = max(K, T)
        if ev.kind == "moving":
            y = f(x)
            if y is not UNDEFINED:
                K = _root_passed(Lin(x) + ev.shift, y, K)
    if an.generic.kind == "moving" and f.tail is not None:
        K = _root_passed(an.generic.shift, 0, K)
    for seg in an.family:
        for p in (seg.lo, seg.hi):
            if p is not None and p.s > 0 and p.at(K) < B:
                K = max(K, -((p.c - B) // p.s))
    # Past K the indicator is settled below B and each point >= B only
    # disagrees while a moving endpoint sweeps past it, which costs at most
    # 2^-(B + k - K) in total.
    probe = K + 2
    dist = rho(seq.term(probe), f)
    value = dist.round_to(B)
    for k in (K + 2, K + 3):
        err = rho(seq.term(k), f).abs_diff(value)
        if err > Dyadic.tail_weight(B + k - K):
            raise AssertionError(f"distance at k={k} is off the certified envelope")
    return DistanceLimit(value, K, B)


def distance_limit(seq: SequenceSpec, f: PartialBijection, kind: MetricKind) -> DistanceLimit:
    """``lim_k dist(f_k, f)`` computed from exact distances of a certified
    sequence."""
    if kind is MetricKind.RHO:
        return _rho_distance_limit(seq, f)
    if kind is MetricKind.RHO_STAR:
        return _rho_distance_limit(seq.inverse(), f.inverse())
    if kind is MetricKind.D:
        a = _rho_distance_limit(seq, f)
        b = _rho_distance_limit(seq.inverse(), f.inverse())
        return DistanceLimit(a.value + b.value, max(a.index, b.index), min(a.bound, b.bound))
    raise ValueError("eta does not apply to sequences of partial bijections")


def cauchy_limit(seq: SequenceSpec, metric: MetricKind):
    """The limit of ``seq`` under ``metric``, or a :class:`NotCauchy`
    certificate.

    The limit is the pointwise one: the domain is the limit of the domains
    and each value is the eventual value at that point.  Raises
    :class:`UncertifiedSequence` for generator tails and
    :class:`LimitNotRepresentable` when the limit exists but shifts a
    cofinite set.
    """
    if metric is MetricKind.ETA:
        raise ValueError("eta does not apply to sequences of partial bijections")
    if not seq.certified:
        raise UncertifiedSequence("generator tails only admit horizon-bounded verdicts")
    if metric is MetricKind.RHO_STAR:
        out = cauchy_limit(seq.inverse(), MetricKind.RHO)
        if isinstance(out, NotCauchy):
            return NotCauchy(out.j, out.k, out.point, out.epsilon, metric)
        return out.inverse()
    if metric is MetricKind.D:
        a = cauchy_limit(seq, MetricKind.RHO)
        if isinstance(a, NotCauchy):
            return NotCauchy(a.j, a.k, a.point, a.epsilon, metric)
        b = cauchy_limit(seq, MetricKind.RHO_STAR)
        if isinstance(b, NotCauchy):
            return NotCauchy(b.j, b.k, b.point, b.epsilon, metric)
        if a != b:
            raise AssertionError(f"rho-limit {a} and rho*-limit {b} disagree")
        return a
    an = PointwiseAnalysis(seq)
    x = an.first_unsettled()
    if x is not None:
        _, T = an.eventual(x)
        j = max(T, seq.start)
        # a moving value differs between consecutive terms
        return NotCauchy(j, j + 1, x, Dyadic.weight(x), metric)
    return an.limit()
