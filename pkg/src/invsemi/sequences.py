"""Finitely described sequences ``(f_k)`` in I(N).

A :class:`SequenceSpec` is an explicit prefix ``f_0 .. f_{P-1}`` followed by
one of three tails:

``Constant(f)``
    ``f_k = f`` from then on.
``Schedule(segments)``
    each term is a disjoint union of translated intervals whose endpoints
    and shifts are affine in ``k``: the segment ``(lo, hi, shift)`` sends
    ``x`` to ``x + shift(k)`` for ``max(lo(k), 0) <= x < hi(k)`` (``hi``
    may be infinite, in which case the shift must be zero).  ``1_[0,k)``,
    ``u_{0,k}``, ``u_{k,0}`` and the transposition ``(k k+1)`` all fit.
``Generator(rule, horizon)``
    an opaque named rule; nothing beyond the first ``horizon`` terms is
    ever claimed about it.

Constant and Schedule tails are *certified*: every point's eventual
behaviour, and the index from which it holds, is computable exactly.  The
class is closed under inversion and under composition with a fixed
element on either side.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable

from .pbij import (
    NATURALS,
    UNDEFINED,
    IdentityTail,
    PartialBijection,
    compose,
    idempotent_on,
    parse_partial,
    singleton_map,
)


class InvalidSequence(ValueError):
    """A tail description that does not produce partial bijections."""


class UncertifiedSequence(ValueError):
    """Raised when an exact answer is requested for a Generator tail."""


class LimitNotRepresentable(ValueError):
    """The pointwise limit exists in I(N) but is not eventually trivial."""


@dataclass(frozen=True)
class Lin:
    """The affine function ``k -> c + s*k``."""

    c: int
    s: int = 0

    def at(self, k: int) -> int:
        return self.c + self.s * k

    def __add__(self, other):
        if isinstance(other, int):
            return Lin(self.c + other, self.s)
        return Lin(self.c + other.c, self.s + other.s)

    def __sub__(self, other):
        if isinstance(other, int):
            return Lin(self.c - other, self.s)
        return Lin(self.c - other.c, self.s - other.s)

    def __neg__(self):
        return Lin(-self.c, -self.s)

    def to_json(self):
        return [self.c, self.s]

    def __str__(self):
        if self.s == 0:
            return str(self.c)
        k = "k" if self.s == 1 else "-k" if self.s == -1 else f"{self.s}k"
        if self.c == 0:
            return k
        return f"{k}{self.c:+d}"


ZERO = Lin(0)


def _lin(value) -> Lin:
    if isinstance(value, Lin):
        return value
    if isinstance(value, int):
        return Lin(value)
    c, s = value
    return Lin(int(c), int(s))


def eventually_nonneg(p: Lin, k0: int) -> tuple[bool, int]:
    """Whether ``p(k) >= 0`` for all large ``k``, and an index ``>= k0``
    from which the answer holds for every later ``k``."""
    if p.s == 0:
        return p.c >= 0, k0
    if p.s > 0:
        return True, max(k0, -(p.c // p.s))
    return False, max(k0, p.c // (-p.s) + 1)


@dataclass(frozen=True)
class Segment:
    lo: Lin
    hi: Lin | None
    shift: Lin = ZERO

    def inverse(self) -> "Segment":
        hi = None if self.hi is None else self.hi + self.shift
        return Segment(self.lo + self.shift, hi, -self.shift)

    def at(self, k: int) -> tuple[int, int | None, int]:
        hi = None if self.hi is None else self.hi.at(k)
        return max(self.lo.at(k), 0), hi, self.shift.at(k)

    def to_json(self):
        return {
            "lo": self.lo.to_json(),
            "hi": None if self.hi is None else self.hi.to_json(),
            "shift": self.shift.to_json(),
        }

    @classmethod
    def from_json(cls, d) -> "Segment":
        hi = d.get("hi")
        return cls(_lin(d["lo"]), None if hi is None else _lin(hi), _lin(d.get("shift", 0)))

    def __str__(self):
        hi = "oo" if self.hi is None else str(self.hi)
        return f"[{self.lo},{hi})+{self.shift}"


def evaluate_segments(segments, k: int, x: int):
    for seg in segments:
        lo, hi, t = seg.at(k)
        if x >= lo and (hi is None or x < hi):
            return x + t
    return UNDEFINED


def term_of_segments(segments, k: int) -> PartialBijection:
    pairs = []
    tail = None
    for seg in segments:
        lo, hi, t = seg.at(k)
        if hi is None:
            if t != 0:
                raise InvalidSequence(f"infinite segment {seg} has a nonzero shift")
            if tail is not None:
                raise InvalidSequence(f"two infinite segments overlap at k={k}")
            tail = lo
            continue
        for x in range(lo, hi):
            if x + t < 0:
                raise InvalidSequence(f"segment {seg} maps {x} below 0 at k={k}")
            pairs.append((x, x + t))
    try:
        return PartialBijection(pairs, None if tail is None else IdentityTail(tail), NATURALS)
    except ValueError as exc:
        raise InvalidSequence(f"term {k} is not a partial bijection: {exc}") from None


def settle(segments, k0: int) -> tuple[tuple[Segment, ...], int]:
    """Normalise a segment family and find ``K >= k0`` such that for every
    ``k >= K`` all lower ends are ``>= 0``, every kept segment is nonempty,
    images are ``>= 0`` and all domains and images are pairwise disjoint.

    Raises :class:`InvalidSequence` when the family is eventually invalid.
    """
    K = k0
    norm = []
    for seg in segments:
        lo = seg.lo
        if lo.s < 0 or (lo.s == 0 and lo.c < 0):
            _, t = eventually_nonneg(lo, K)
            K = max(K, t)
            lo = ZERO
        elif lo.c < 0:
            _, t = eventually_nonneg(lo, K)
            K = max(K, t)
        if seg.hi is None:
            if seg.shift != ZERO:
                raise InvalidSequence(f"infinite segment {seg} must have zero shift")
        else:
            ok, t = eventually_nonneg(seg.hi - lo - 1, K)
            K = max(K, t)
            if not ok:
                continue
        ok, t = eventually_nonneg(lo + seg.shift, K)
        if not ok:
            raise InvalidSequence(f"segment {seg} eventually maps below 0")
        K = max(K, t)
        norm.append(Segment(lo, seg.hi, seg.shift))

    def disjoint(a1, b1, a2, b2, what):
        nonlocal K
        if b1 is not None:
            ok, t = eventually_nonneg(a2 - b1, K)
            if ok:
                K = max(K, t)
                return
        if b2 is not None:
            ok, t = eventually_nonneg(a1 - b2, K)
            if ok:
                K = max(K, t)
                return
        raise InvalidSequence(f"segments overlap in {what} for all large k")

    for i in range(len(norm)):
        for j in range(i + 1, len(norm)):
            s1, s2 = norm[i], norm[j]
            disjoint(s1.lo, s1.hi, s2.lo, s2.hi, "domain")
            i1, i2 = s1.inverse(), s2.inverse()
            disjoint(i1.lo, i1.hi, i2.lo, i2.hi, "image")
    return tuple(norm), K


def segments_of(f: PartialBijection) -> tuple[Segment, ...]:
    """Constant family describing the fixed element ``f``."""
    if f.ground.is_finite:
        raise InvalidSequence("sequences live on the naturals")
    segs = [Segment(Lin(x), Lin(x + 1), Lin(y - x)) for x, y in f.pairs()]
    if f.tail is not None:
        start = f.tail.start
        for p in sorted(f.tail.punctures):
            if p > start:
                segs.append(Segment(Lin(start), Lin(p)))
            start = p + 1
        segs.append(Segment(Lin(start), None))
    return tuple(segs)


def _lin_max(p: Lin, q: Lin, K: int) -> tuple[Lin, int]:
    ge, t = eventually_nonneg(p - q, K)
    return (p if ge else q), max(K, t)


def _lin_min(p: Lin | None, q: Lin | None, K: int) -> tuple[Lin | None, int]:
    if p is None:
        return q, K
    if q is None:
        return p, K
    ge, t = eventually_nonneg(q - p, K)
    return (p if ge else q), max(K, t)


def compose_segments(outer, inner, k0: int) -> tuple[tuple[Segment, ...], int]:
    """Segments of ``outer_k o inner_k`` valid from the returned index on."""
    K = k0
    out = []
    for g in inner:
        for f in outer:
            lo, K = _lin_max(g.lo, f.lo - g.shift, K)
            fhi = None if f.hi is None else f.hi - g.shift
            hi, K = _lin_min(g.hi, fhi, K)
            out.append(Segment(lo, hi, g.shift + f.shift))
    return tuple(out), K


# -- tails --------------------------------------------------------------------


@dataclass(frozen=True)
class Constant:
    value: PartialBijection


@dataclass(frozen=True)
class Schedule:
    segments: tuple[Segment, ...]


def _rule_moving_image(k, x=0, offset=0):
    return singleton_map(x, k + offset)


def _rule_moving_point(k, y=0, offset=0):
    return singleton_map(k + offset, y)


def _rule_initial_segment(k):
    return idempotent_on(range(k))


def _rule_final_segment(k):
    return PartialBijection((), IdentityTail(k))


RULES: dict[str, Callable[..., PartialBijection]] = {
    "moving_image": _rule_moving_image,
    "moving_point": _rule_moving_point,
    "initial_segment": _rule_initial_segment,
    "final_segment": _rule_final_segment,
}


@dataclass(frozen=True)
class Generator:
    rule: str
    horizon: int
    args: tuple = ()
    ops: tuple = field(default=(), compare=False)

    def __post_init__(self):
        if self.rule not in RULES:
            raise InvalidSequence(f"unknown generator rule {self.rule!r}")
        if self.horizon < 1:
            raise InvalidSequence("generator horizon must be >= 1")

    def term(self, k: int) -> PartialBijection:
        f = RULES[self.rule](k, **dict(self.args))
        for op in self.ops:
            if op == "inverse":
                f = f.inverse()
            elif op[0] == "right":
                f = compose(f, op[1])
            else:
                f = compose(op[1], f)
        return f


# -- sequence specs -----------------------------------------------------------


class SequenceSpec:
    """A sequence in I(N): explicit prefix plus a tail rule."""

    def __init__(self, prefix=(), tail=None, name: str = ""):
        self.name = name
        prefix = tuple(prefix)
        for f in prefix:
            if f.ground.is_finite:
                raise InvalidSequence("sequences live on the naturals")
        if tail is None:
            raise InvalidSequence("a sequence needs a tail")
        self.tail = tail
        self.family: tuple[Segment, ...] | None = None
        if isinstance(tail, Constant):
            self.family = segments_of(tail.value)
        elif isinstance(tail, Schedule):
            norm, K = settle(tail.segments, len(prefix))
            extra = tuple(term_of_segments(tail.segments, k) for k in range(len(prefix), K))
            prefix = prefix + extra
            self.family = norm
        elif not isinstance(tail, Generator):
            raise InvalidSequence(f"unknown tail {tail!r}")
        self.prefix = prefix
        self.start = len(prefix)

    @property
    def certified(self) -> bool:
        return self.family is not None

    @property
    def horizon(self) -> int | None:
        return self.tail.horizon if isinstance(self.tail, Generator) else None

    def term(self, k: int) -> PartialBijection:
        if k < 0:
            raise IndexError(k)
        if k < self.start:
            return self.prefix[k]
        if isinstance(self.tail, Constant):
            return self.tail.value
        if isinstance(self.tail, Generator):
            return self.tail.term(k)
        return term_of_segments(self.family, k)

    def value_at(self, k: int, x: int):
        """``f_k(x)`` without building the whole term."""
        if k < self.start or not self.certified:
            return self.term(k)(x)
        return evaluate_segments(self.family, k, x)

    def terms(self, count: int) -> list[PartialBijection]:
        return [self.term(k) for k in range(count)]

    # -- derived sequences ----------------------------------------------------

    def inverse(self) -> "SequenceSpec":
        prefix = [f.inverse() for f in self.prefix]
        name = f"{self.name}^-1" if self.name else ""
        if isinstance(self.tail, Generator):
            t = self.tail
            return SequenceSpec(prefix, Generator(t.rule, t.horizon, t.args, t.ops + ("inverse",)), name)
        if isinstance(self.tail, Constant):
            return SequenceSpec(prefix, Constant(self.tail.value.inverse()), name)
        return SequenceSpec(prefix, Schedule(tuple(s.inverse() for s in self.family)), name)

    def compose_right(self, g: PartialBijection) -> "SequenceSpec":
        """The sequence ``f_k o g``."""
        return self._compose(g, right=True)

    def compose_left(self, g: PartialBijection) -> "SequenceSpec":
        """The sequence ``g o f_k``."""
        return self._compose(g, right=False)

    def _compose(self, g, right):
        op = (lambda f: compose(f, g)) if right else (lambda f: compose(g, f))
        prefix = [op(f) for f in self.prefix]
        name = self.name
        if isinstance(self.tail, Generator):
            t = self.tail
            tag = ("right", g) if right else ("left", g)
            return SequenceSpec(prefix, Generator(t.rule, t.horizon, t.args, t.ops + (tag,)), name)
        if isinstance(self.tail, Constant):
            return SequenceSpec(prefix, Constant(op(self.tail.value)), name)
        if right:
            segs, K = compose_segments(self.family, segments_of(g), self.start)
        else:
            segs, K = compose_segments(segments_of(g), self.family, self.start)
        prefix += [op(self.term(k)) for k in range(self.start, K)]
        return SequenceSpec(prefix, Schedule(segs), name)

    # -- serialisation --------------------------------------------------------

    def to_json(self) -> dict:
        if isinstance(self.tail, Constant):
            tail = {"kind": "Constant", "value": str(self.tail.value)}
        elif isinstance(self.tail, Schedule):
            tail = {"kind": "Schedule", "segments": [s.to_json() for s in self.tail.segments]}
        else:
            if self.tail.ops:
                raise ValueError("derived generator sequences have no JSON form")
            tail = {"kind": "Generator", "rule": self.tail.rule,
                    "args": dict(self.tail.args), "horizon": self.tail.horizon}
        return {"name": self.name, "prefix": [str(f) for f in self.prefix], "tail": tail}

    @classmethod
    def from_json(cls, doc) -> "SequenceSpec":
        if isinstance(doc, str):
            doc = json.loads(doc)
        try:
            prefix = [parse_partial(p) for p in doc.get("prefix", [])]
            t = doc["tail"]
            kind = t["kind"]
            if kind == "Constant":
                tail = Constant(parse_partial(t["value"]))
            elif kind == "Schedule":
                tail = Schedule(tuple(Segment.from_json(s) for s in t["segments"]))
            elif kind == "Generator":
                args = tuple(sorted((str(a), int(v)) for a, v in t.get("args", {}).items()))
                tail = Generator(t["rule"], int(t["horizon"]), args)
            else:
                raise InvalidSequence(f"unknown tail kind {kind!r}")
        except (KeyError, TypeError) as exc:
            raise InvalidSequence(f"malformed sequence spec: {exc}") from None
        return cls(prefix, tail, doc.get("name", ""))

    def __repr__(self):
        return f"<SequenceSpec {self.name or '?'} prefix={len(self.prefix)} tail={type(self.tail).__name__}>"


# -- pointwise analysis -------------------------------------------------------


@dataclass(frozen=True)
class Eventual:
    """Eventual behaviour of ``f_k`` at one point.

    ``kind`` is ``"maps"`` (to ``value``), ``"outside"`` or ``"moving"``
    (in the domain, value ``x + shift(k)`` never settles).
    """

    kind: str
    value: int | None = None
    shift: Lin | None = None

    def agrees_with(self, y) -> bool:
        if self.kind == "outside":
            return y is UNDEFINED
        if self.kind == "maps":
            return y == self.value
        return False

    def __str__(self):
        if self.kind == "maps":
            return f"maps to {self.value}"
        if self.kind == "moving":
            return f"moves ({self.shift} offset)"
        return "outside"


@dataclass(frozen=True)
class Generic:
    """Common eventual behaviour of every point ``x >= bound``."""

    bound: int
    kind: str  # "outside", "translate", "moving"
    shift: Lin | None = None


class PointwiseAnalysis:
    """Exact per-point eventual behaviour of a certified sequence."""

    def __init__(self, seq: SequenceSpec):
        if not seq.certified:
            raise UncertifiedSequence(f"{seq!r} has an opaque tail; only horizon-bounded answers exist")
        self.seq = seq
        self.family = seq.family
        self.start = seq.start
        b = 0
        for s in self.family:
            if s.lo.s == 0:
                b = max(b, s.lo.c)
            if s.hi is not None and s.hi.s == 0:
                b = max(b, s.hi.c)
        gens = [s for s in self.family if s.lo.s == 0 and (s.hi is None or s.hi.s > 0)]
        if len(gens) > 1:
            raise InvalidSequence("two segments contain every large point")
        if not gens:
            self.generic = Generic(b, "outside")
        elif gens[0].shift.s == 0:
            self.generic = Generic(b, "translate", gens[0].shift)
        else:
            self.generic = Generic(b, "moving", gens[0].shift)

    @property
    def bound(self) -> int:
        return self.generic.bound

    def eventual(self, x: int) -> tuple[Eventual, int]:
        """Eventual status at ``x`` and an index from which membership in
        every segment is settled."""
        T = self.start
        found = None
        for seg in self.family:
            in_lo, t1 = eventually_nonneg(Lin(x) - seg.lo, self.start)
            if seg.hi is None:
                in_hi, t2 = True, self.start
            else:
                in_hi, t2 = eventually_nonneg(seg.hi - x - 1, self.start)
            T = max(T, t1, t2)
            if in_lo and in_hi:
                if found is not None:
                    raise InvalidSequence(f"point {x} eventually in two segments")
                found = seg
        if found is None:
            return Eventual("outside"), T
        if found.shift.s == 0:
            return Eventual("maps", x + found.shift.c), T
        return Eventual("moving", shift=found.shift), T

    def status(self, x: int) -> Eventual:
        return self.eventual(x)[0]

    def stabilization_index(self, x: int) -> int | None:
        """Least ``k0`` with ``f_k(x)`` equal to its eventual value for every
        ``k >= k0``; ``None`` when the value never settles."""
        ev, T = self.eventual(x)
        if ev.kind == "moving":
            return None
        for k in range(T - 1, -1, -1):
            if not ev.agrees_with(self.seq.value_at(k, x)):
                return k + 1
        return 0

    def schedule(self, points) -> list[tuple[int, int | None, Eventual]]:
        """``(point, stabilization index, eventual status)`` triples."""
        return [(x, self.stabilization_index(x), self.status(x)) for x in points]

    def first_unsettled(self) -> int | None:
        """Least point whose value never stabilizes, if any."""
        for x in range(self.bound):
            if self.status(x).kind == "moving":
                return x
        if self.generic.kind == "moving":
            return self.bound
        return None

    def limit(self) -> PartialBijection:
        """The pointwise limit; raises when some point never settles or the
        limit is not eventually trivial."""
        x = self.first_unsettled()
        if x is not None:
            raise ValueError(f"value at {x} never stabilizes")
        g = self.generic
        if g.kind == "translate" and g.shift.c != 0:
            raise LimitNotRepresentable(
                f"limit shifts every point >= {g.bound} by {g.shift.c}; not eventually trivial")
        pairs = {}
        for x in range(g.bound):
            ev = self.status(x)
            if ev.kind == "maps":
                pairs[x] = ev.value
        if g.kind == "outside":
            return PartialBijection(pairs)
        n = max([g.bound] + [y + 1 for y in pairs.values()])
        for x in range(g.bound, n):
            pairs[x] = x
        return PartialBijection(pairs, IdentityTail(n))
