"""Partial bijections, the elements of the symmetric inverse semigroup I(X).

Two carriers are supported:

* ``Finite(n)`` -- the ground set ``{0, ..., n-1}``; every element is a
  finite list of pairs.
* ``NATURALS`` -- the ground set of all naturals.  Only the *eventually
  trivial* elements are representable: finitely many pairs below a start
  ``N`` and the identity on ``[N, oo)`` minus finitely many punctures.
  This class is closed under composition and inversion and contains
  ``1_A`` for every finite or cofinite ``A``.

Elements are immutable and stored in canonical form, so ``==`` is
equality of functions.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

ENUMERATION_BOUND = 5


class GroundSetMismatch(ValueError):
    pass


class _Undefined:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Undefined"

    def __bool__(self):
        return False


UNDEFINED = _Undefined()


@dataclass(frozen=True)
class GroundSet:
    """``size=None`` is the naturals, otherwise ``{0, ..., size-1}``."""

    size: int | None = None

    def __post_init__(self):
        if self.size is not None and self.size < 0:
            raise ValueError("finite ground set needs size >= 0")

    @property
    def is_finite(self) -> bool:
        return self.size is not None

    def __contains__(self, x) -> bool:
        return isinstance(x, int) and x >= 0 and (self.size is None or x < self.size)

    def points(self) -> range:
        if self.size is None:
            raise ValueError("cannot list the points of an infinite ground set")
        return range(self.size)

    def __str__(self):
        return "N" if self.size is None else f"Finite({self.size})"


NATURALS = GroundSet()


def Finite(n: int) -> GroundSet:
    return GroundSet(n)


@dataclass(frozen=True)
class Subset:
    """A finite subset of the naturals, or (``cofinite=True``) the
    complement of a finite one."""

    points: frozenset = frozenset()
    cofinite: bool = False

    @classmethod
    def of(cls, items: Iterable[int] = ()) -> "Subset":
        return cls(frozenset(items))

    @classmethod
    def all_but(cls, items: Iterable[int] = ()) -> "Subset":
        return cls(frozenset(items), True)

    def __contains__(self, x) -> bool:
        return (x in self.points) != self.cofinite

    @property
    def is_finite(self) -> bool:
        return not self.cofinite

    def __len__(self):
        if self.cofinite:
            raise ValueError("cofinite set has no finite length")
        return len(self.points)

    def __iter__(self):
        if self.cofinite:
            raise ValueError("cannot iterate over a cofinite set")
        return iter(sorted(self.points))

    def complement(self, ground: GroundSet = NATURALS) -> "Subset":
        if ground.is_finite:
            if self.cofinite:
                return Subset(frozenset(p for p in self.points if p < ground.size))
            return Subset(frozenset(ground.points()) - self.points)
        return Subset(self.points, not self.cofinite)

    def __and__(self, other: "Subset") -> "Subset":
        if not self.cofinite and not other.cofinite:
            return Subset(self.points & other.points)
        if not self.cofinite:
            return Subset(self.points - other.points)
        if not other.cofinite:
            return Subset(other.points - self.points)
        return Subset(self.points | other.points, True)

    def __or__(self, other: "Subset") -> "Subset":
        if not self.cofinite and not other.cofinite:
            return Subset(self.points | other.points)
        if not self.cofinite:
            return Subset(other.points - self.points, True)
        if not other.cofinite:
            return Subset(self.points - other.points, True)
        return Subset(self.points & other.points, True)

    def __sub__(self, other: "Subset") -> "Subset":
        return self & Subset(other.points, not other.cofinite)

    def __xor__(self, other: "Subset") -> "Subset":
        return (self - other) | (other - self)

    def __le__(self, other: "Subset") -> bool:
        d = self - other
        return not d.cofinite and not d.points

    def is_empty(self) -> bool:
        return not self.cofinite and not self.points

    def __str__(self):
        body = "{" + ",".join(str(p) for p in sorted(self.points)) + "}"
        if self.cofinite:
            return "N" if not self.points else f"N-{body}"
        return body


@dataclass(frozen=True)
class IdentityTail:
    """Identity on ``[start, oo)`` except on the finite set ``punctures``."""

    start: int
    punctures: frozenset = frozenset()

    def __post_init__(self):
        if self.start < 0:
            raise ValueError("tail start must be >= 0")
        if any(p < self.start for p in self.punctures):
            raise ValueError("punctures must lie in [start, oo)")


class PartialBijection:
    """An injective partial map on a ground set.

    ``pairs`` is an iterable of ``(x, y)`` or a dict.  ``tail`` is ``None``
    (finite domain) or an :class:`IdentityTail`; tails are only allowed on
    the naturals.
    """

    __slots__ = ("ground", "tail", "_map", "_inv", "_key", "_hash")

    def __init__(self, pairs=(), tail: IdentityTail | None = None, ground: GroundSet = NATURALS):
        items = pairs.items() if isinstance(pairs, dict) else pairs
        fwd: dict[int, int] = {}
        inv: dict[int, int] = {}
        for x, y in items:
            if x in fwd:
                raise ValueError(f"point {x} mapped twice")
            if y in inv:
                raise ValueError(f"point {y} hit twice")
            if x not in ground or y not in ground:
                raise ValueError(f"pair ({x}, {y}) outside ground set {ground}")
            fwd[x] = y
            inv[y] = x
        if tail is not None:
            if ground.is_finite:
                raise ValueError("identity tails exist only on the naturals")
            tail = _canonical_tail(fwd, inv, tail)
        self.ground = ground
        self.tail = tail
        self._map = fwd
        self._inv = inv
        self._key = (ground.size, tuple(sorted(fwd.items())), tail)
        self._hash = hash(self._key)

    # -- construction helpers -------------------------------------------------

    @classmethod
    def _raw(cls, fwd: dict, inv: dict, tail, ground) -> "PartialBijection":
        self = cls.__new__(cls)
        self.ground = ground
        self.tail = tail
        self._map = fwd
        self._inv = inv
        self._key = (ground.size, tuple(sorted(fwd.items())), tail)
        self._hash = hash(self._key)
        return self

    # -- evaluation -----------------------------------------------------------

    def __call__(self, x: int):
        y = self._map.get(x)
        if y is not None:
            return y
        t = self.tail
        if t is not None and x >= t.start and x not in t.punctures:
            return x
        return UNDEFINED

    def eval(self, x: int):
        return self(x)

    def preimage(self, y: int):
        x = self._inv.get(y)
        if x is not None:
            return x
        t = self.tail
        if t is not None and y >= t.start and y not in t.punctures:
            return y
        return UNDEFINED

    def dom(self) -> Subset:
        if self.tail is None:
            return Subset(frozenset(self._map))
        t = self.tail
        missing = (set(range(t.start)) - set(self._map)) | set(t.punctures)
        return Subset(frozenset(missing), True)

    def im(self) -> Subset:
        if self.tail is None:
            return Subset(frozenset(self._inv))
        t = self.tail
        missing = (set(range(t.start)) - set(self._inv)) | set(t.punctures)
        return Subset(frozenset(missing), True)

    def pairs(self) -> tuple[tuple[int, int], ...]:
        """The explicit pairs (those below the tail start)."""
        return self._key[1]

    def support_bound(self) -> int:
        """Every point ``>= support_bound()`` is treated uniformly: fixed if
        there is a tail, outside the domain otherwise."""
        b = 0
        if self._map:
            b = max(max(self._map), max(self._inv)) + 1
        if self.tail is not None:
            b = max(b, self.tail.start)
            if self.tail.punctures:
                b = max(b, max(self.tail.punctures) + 1)
        return b

    def dom_size(self) -> int:
        if self.tail is not None:
            raise ValueError("domain is cofinite")
        return len(self._map)

    # -- algebra --------------------------------------------------------------

    def inverse(self) -> "PartialBijection":
        return PartialBijection._raw(dict(self._inv), dict(self._map), self.tail, self.ground)

    def __mul__(self, other: "PartialBijection") -> "PartialBijection":
        return compose(self, other)

    def is_idempotent(self) -> bool:
        return compose(self, self) == self

    # -- comparison / printing ------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, PartialBijection):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return self._hash

    def __str__(self):
        body = "{" + ", ".join(f"{x}->{y}" for x, y in self.pairs()) + "}"
        if self.tail is None:
            return body
        t = self.tail
        out = f"{body}; id from {t.start}"
        if t.punctures:
            out += " except {" + ",".join(str(p) for p in sorted(t.punctures)) + "}"
        return out

    def __repr__(self):
        g = "" if self.ground.size is None else f" over {self.ground}"
        return f"<PartialBijection {self}{g}>"


def _canonical_tail(fwd: dict, inv: dict, tail: IdentityTail) -> IdentityTail:
    n = tail.start
    punctures = set(tail.punctures)
    for x, y in fwd.items():
        if x >= n or y >= n:
            raise ValueError(f"pair ({x}, {y}) is not below the tail start {n}")
    # Lower the start while the point just below it is a fixed point or
    # untouched; the minimal start makes the representation unique.
    while n > 0:
        p = n - 1
        if fwd.get(p) == p:
            del fwd[p]
            del inv[p]
        elif p not in fwd and p not in inv:
            punctures.add(p)
        else:
            break
        n = p
    return IdentityTail(n, frozenset(punctures))


def compose(f: PartialBijection, g: PartialBijection) -> PartialBijection:
    """``f o g`` (apply ``g`` first), with domain ``g^-1(dom f & im g)``."""
    if f.ground != g.ground:
        raise GroundSetMismatch(f"cannot compose over {f.ground} and {g.ground}")
    fm = f._map
    if f.tail is None and g.tail is None:
        fwd = {}
        inv = {}
        for x, y in g._map.items():
            z = fm.get(y)
            if z is not None:
                fwd[x] = z
                inv[z] = x
        return PartialBijection._raw(fwd, inv, None, f.ground)
    if g.tail is None:
        pairs = []
        for x, y in g._map.items():
            z = f(y)
            if z is not UNDEFINED:
                pairs.append((x, z))
        return PartialBijection(pairs, None, f.ground)
    if f.tail is None:
        pairs = []
        for y, z in fm.items():
            x = g.preimage(y)
            if x is not UNDEFINED:
                pairs.append((x, z))
        return PartialBijection(pairs, None, f.ground)
    m = max(f.tail.start, g.tail.start)
    punctures = frozenset(p for p in f.tail.punctures | g.tail.punctures if p >= m)
    pairs = []
    for x in range(m):
        y = g(x)
        if y is UNDEFINED:
            continue
        z = f(y)
        if z is not UNDEFINED:
            pairs.append((x, z))
    return PartialBijection(pairs, IdentityTail(m, punctures), f.ground)


def inverse(f: PartialBijection) -> PartialBijection:
    return f.inverse()


def dom(f: PartialBijection) -> Subset:
    return f.dom()


def im(f: PartialBijection) -> Subset:
    return f.im()


def evaluate(f: PartialBijection, x: int):
    return f(x)


def idempotent_on(A, ground: GroundSet = NATURALS) -> PartialBijection:
    """``1_A``.  ``A`` is a :class:`Subset` or an iterable of points."""
    if not isinstance(A, Subset):
        A = Subset.of(A)
    if A.cofinite:
        if ground.is_finite:
            A = A & Subset.of(ground.points())
        else:
            return PartialBijection((), IdentityTail(0, A.points), ground)
    return PartialBijection(((a, a) for a in A.points), None, ground)


def empty_map(ground: GroundSet = NATURALS) -> PartialBijection:
    return PartialBijection((), None, ground)


def identity(ground: GroundSet = NATURALS) -> PartialBijection:
    if ground.is_finite:
        return idempotent_on(ground.points(), ground)
    return PartialBijection((), IdentityTail(0), ground)


def singleton_map(x: int, y: int, ground: GroundSet = NATURALS) -> PartialBijection:
    """``u_{x,y}``: domain ``{x}``, image ``{y}``."""
    return PartialBijection(((x, y),), None, ground)


def restricts(f: PartialBijection, g: PartialBijection) -> bool:
    """The natural order ``f <= g``: ``f`` is a restriction of ``g``."""
    if f.ground != g.ground:
        raise GroundSetMismatch(f"{f.ground} vs {g.ground}")
    if not f.dom() <= g.dom():
        return False
    # beyond both support bounds f is empty or the identity, and so is g
    bound = max(f.support_bound(), g.support_bound())
    for x in range(bound):
        y = f(x)
        if y is not UNDEFINED and g(x) != y:
            return False
    return True


def first_difference(f: PartialBijection, g: PartialBijection) -> int | None:
    """Least point where ``f`` and ``g`` differ (domain or value)."""
    if f.ground != g.ground:
        raise GroundSetMismatch(f"{f.ground} vs {g.ground}")
    bound = max(f.support_bound(), g.support_bound())
    for x in range(bound):
        if f(x) != g(x):
            return x
    if f.ground.is_finite:
        return None
    # beyond the bound both are uniform
    return bound if (f.tail is None) != (g.tail is None) else None


def enumerate_all(n: int, bound: int = ENUMERATION_BOUND) -> tuple[PartialBijection, ...]:
    """Every element of ``I(Finite(n))`` exactly once.

    Order: domain subset (colex, i.e. by bitmask), then image subset of the
    same size (colex), then the bijection (lexicographic images of the
    sorted domain).
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if n > bound:
        raise ValueError(f"n={n} exceeds the enumeration bound {bound}")
    return _enumerate(n)


@lru_cache(maxsize=None)
def _enumerate(n: int) -> tuple[PartialBijection, ...]:
    ground = Finite(n)
    by_size: dict[int, list[tuple[int, ...]]] = {}
    for mask in range(1 << n):
        pts = tuple(i for i in range(n) if mask >> i & 1)
        by_size.setdefault(len(pts), []).append(pts)
    out = []
    for mask in range(1 << n):
        domain = tuple(i for i in range(n) if mask >> i & 1)
        for image in by_size[len(domain)]:
            for perm in itertools.permutations(image):
                out.append(PartialBijection(zip(domain, perm), None, ground))
    return tuple(out)


def iter_subsets(n: int) -> Iterator[Subset]:
    for mask in range(1 << n):
        yield Subset.of(i for i in range(n) if mask >> i & 1)


# -- permutations -------------------------------------------------------------


class Permutation:
    """A bijection of ``{0, ..., m-1}`` given by its image list."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int]):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"{list(images)} is not a permutation")
        self.images = images
        self._hash = hash(images)

    @classmethod
    def identity(cls, m: int) -> "Permutation":
        return cls(range(m))

    @classmethod
    def transposition(cls, m: int, a: int, b: int) -> "Permutation":
        imgs = list(range(m))
        imgs[a], imgs[b] = imgs[b], imgs[a]
        return cls(imgs)

    @property
    def size(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.size != other.size:
            raise GroundSetMismatch("permutations of different sizes")
        return Permutation(self.images[i] for i in other.images)

    def inverse(self) -> "Permutation":
        inv = [0] * self.size
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(inv)

    def to_partial(self) -> PartialBijection:
        return PartialBijection(enumerate(self.images), None, Finite(self.size))

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.images == other.images

    def __hash__(self):
        return self._hash

    def __str__(self):
        return "[" + ", ".join(map(str, self.images)) + "]"

    def __repr__(self):
        return f"Permutation({list(self.images)})"


def all_permutations(m: int) -> tuple[Permutation, ...]:
    return tuple(Permutation(p) for p in itertools.permutations(range(m)))


# -- literals -----------------------------------------------------------------

_PAIR = re.compile(r"^(\d+)->(\d+)$")
_TAIL = re.compile(r"^idfrom(\d+)(?:except\{([\d,]*)\})?$")


def parse_partial(text: str, ground: GroundSet = NATURALS) -> PartialBijection:
    """Parse ``{x1->y1, ...}`` optionally followed by
    ``; id from N except {p1,...}``."""
    s = "".join(text.split())
    head, sep, rest = s.partition(";")
    if not (head.startswith("{") and head.endswith("}")):
        raise ValueError(f"expected '{{...}}' in {text!r}")
    pairs = []
    body = head[1:-1]
    if body:
        for item in body.split(","):
            m = _PAIR.match(item)
            if m is None:
                raise ValueError(f"bad pair {item!r} in {text!r}")
            pairs.append((int(m.group(1)), int(m.group(2))))
    tail = None
    if sep:
        m = _TAIL.match(rest)
        if m is None:
            raise ValueError(f"bad tail clause {rest!r} in {text!r}")
        punct = frozenset(int(p) for p in (m.group(2) or "").split(",") if p)
        tail = IdentityTail(int(m.group(1)), punct)
    return PartialBijection(pairs, tail, ground)


def parse_permutation(text: str) -> Permutation:
    s = "".join(text.split())
    if not (s.startswith("[") and s.endswith("]")):
        raise ValueError(f"expected '[...]' in {text!r}")
    body = s[1:-1]
    return Permutation(int(p) for p in body.split(",")) if body else Permutation(())


def parse_subset(text: str) -> Subset:
    """``{0,2}``, ``N`` or ``N-{5,7}``."""
    s = "".join(text.split())
    if s == "N":
        return Subset.all_but()
    cof = s.startswith("N-")
    if cof:
        s = s[2:]
    if not (s.startswith("{") and s.endswith("}")):
        raise ValueError(f"bad set literal {text!r}")
    pts = frozenset(int(p) for p in s[1:-1].split(",") if p)
    return Subset(pts, cof)
