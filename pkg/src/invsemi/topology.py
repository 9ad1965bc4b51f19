"""Subbasic sets of the topologies on I(X) and symbolic set expressions.

Atoms::

    v(x,y)  = {f : x in dom f and f(x) = y}
    w1(x)   = {f : x not in dom f}
    w2(y)   = {f : y not in im f}
    u(x,y)  = {f in S(Y) : f(x) = y}      (permutation carriers only)

A :class:`Basic` is a finite intersection of atoms (optionally some
complemented), an :class:`Expr` a finite union of basics.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable

from .pbij import (
    NATURALS,
    UNDEFINED,
    GroundSet,
    PartialBijection,
    Permutation,
    Subset,
    compose,
    empty_map,
    enumerate_all,
    first_difference,
    idempotent_on,
    identity,
    singleton_map,
)

KINDS = ("v", "w1", "w2", "u")


@dataclass(frozen=True, order=True)
class Atom:
    kind: str
    x: int
    y: int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown atom kind {self.kind!r}")
        binary = self.kind in ("v", "u")
        if binary != (self.y is not None):
            raise ValueError(f"atom {self.kind} takes {'two' if binary else 'one'} argument(s)")
        for p in (self.x, self.y):
            if p is not None and p < 0:
                raise ValueError("atom coordinates are naturals")

    def points(self) -> tuple[int, ...]:
        return (self.x,) if self.y is None else (self.x, self.y)

    def __str__(self):
        if self.y is None:
            return f"{self.kind}({self.x})"
        return f"{self.kind}({self.x},{self.y})"


def V(x: int, y: int) -> Atom:
    return Atom("v", x, y)


def W1(x: int) -> Atom:
    return Atom("w1", x)


def W2(y: int) -> Atom:
    return Atom("w2", y)


def U(x: int, y: int) -> Atom:
    return Atom("u", x, y)


def atom_member(f, a: Atom) -> bool:
    if isinstance(f, Permutation):
        if a.kind != "u":
            raise ValueError(f"atom {a} is not admissible over permutations")
        return a.x < f.size and f(a.x) == a.y
    if a.kind == "u":
        raise ValueError(f"atom {a} is only admissible over permutations")
    if a.kind == "v":
        return f(a.x) == a.y
    if a.kind == "w1":
        return f(a.x) is UNDEFINED
    return f.preimage(a.x) is UNDEFINED


@dataclass(frozen=True)
class Basic:
    """Intersection of the ``pos`` atoms and the complements of ``neg``."""

    pos: frozenset = frozenset()
    neg: frozenset = frozenset()

    @classmethod
    def of(cls, *atoms: Atom) -> "Basic":
        return cls(frozenset(atoms))

    @property
    def atoms(self) -> frozenset:
        return self.pos | self.neg

    @property
    def positive(self) -> bool:
        return not self.neg

    def __and__(self, other) -> "Basic":
        if isinstance(other, Atom):
            other = Basic.of(other)
        return Basic(self.pos | other.pos, self.neg | other.neg)

    def of_kind(self, kind: str) -> list[Atom]:
        return sorted(a for a in self.pos if a.kind == kind)

    def points(self) -> set[int]:
        return {p for a in self.atoms for p in a.points()}

    def __str__(self):
        parts = [str(a) for a in sorted(self.pos)] + [f"~{a}" for a in sorted(self.neg)]
        return " & ".join(parts) if parts else "I"


@dataclass(frozen=True)
class Expr:
    """Finite union of basics; ``Expr(())`` is empty, ``WHOLE`` everything."""

    basics: tuple = ()

    @classmethod
    def of(cls, *items) -> "Expr":
        return cls(tuple(as_basic(b) for b in items))

    def __or__(self, other) -> "Expr":
        return Expr(self.basics + as_expr(other).basics)

    def atoms(self) -> set[Atom]:
        return {a for b in self.basics for a in b.atoms}

    def __str__(self):
        if not self.basics:
            return "{}"
        return " | ".join(str(b) for b in self.basics)


WHOLE = Expr((Basic(),))
EMPTY = Expr(())


def as_basic(obj) -> Basic:
    if isinstance(obj, Basic):
        return obj
    if isinstance(obj, Atom):
        return Basic.of(obj)
    raise TypeError(f"expected an atom or basic, got {obj!r}")


def as_expr(obj) -> Expr:
    if isinstance(obj, Expr):
        return obj
    return Expr((as_basic(obj),))


def member(f, obj) -> bool:
    """Membership of a partial bijection (or permutation) in an atom,
    basic or expression."""
    if isinstance(obj, Atom):
        return atom_member(f, obj)
    if isinstance(obj, Basic):
        return all(atom_member(f, a) for a in obj.pos) and not any(atom_member(f, a) for a in obj.neg)
    if isinstance(obj, Expr):
        return any(member(f, b) for b in obj.basics)
    raise TypeError(f"cannot test membership in {obj!r}")


class TopologyKind(enum.Enum):
    TAU0 = "tau0"
    TAU1 = "tau1"
    TAU2 = "tau2"
    TAUPP = "taupp"

    @property
    def kinds(self) -> frozenset:
        return {
            "tau0": frozenset({"v"}),
            "tau1": frozenset({"v", "w1"}),
            "tau2": frozenset({"v", "w2"}),
            "taupp": frozenset({"v", "w1", "w2"}),
        }[self.value]

    def admits(self, obj) -> bool:
        atoms = {obj} if isinstance(obj, Atom) else as_expr(obj).atoms()
        return all(a.kind in self.kinds for a in atoms)


# -- emptiness ----------------------------------------------------------------


def witness(b: Basic, ground: GroundSet = NATURALS) -> PartialBijection | None:
    """The partial map assembled from the ``v`` constraints of ``b`` if it
    lies in ``b``, else ``None`` (then ``b`` is empty)."""
    if not b.positive:
        raise ValueError("emptiness is decided for all-positive basics only")
    fwd: dict[int, int] = {}
    inv: dict[int, int] = {}
    for a in b.of_kind("v"):
        if a.x not in ground or a.y not in ground:
            return None
        if fwd.get(a.x, a.y) != a.y or inv.get(a.y, a.x) != a.x:
            return None
        fwd[a.x] = a.y
        inv[a.y] = a.x
    if b.of_kind("u"):
        raise ValueError("u atoms live over permutations")
    f = PartialBijection(fwd, None, ground)
    return f if member(f, b) else None


def is_empty(b: Basic, ground: GroundSet = NATURALS) -> bool:
    return witness(b, ground) is None


# -- preimages under composition and inversion --------------------------------


@dataclass(frozen=True)
class ProductUnion:
    """``c^-1(atom) = {(f, g) : f o g in atom}`` as a union of products.

    ``terms()`` lists ``(left, right)`` basics; it needs a finite ground set
    because the union runs over every middle point ``z``.
    """

    atom: Atom
    ground: GroundSet = NATURALS

    def terms(self) -> list[tuple[Basic, Basic]]:
        if not self.ground.is_finite:
            raise ValueError(f"{self}: the union over z is infinite; only the symbolic form exists")
        a, zs = self.atom, self.ground.points()
        if a.kind == "v":
            return [(Basic.of(V(z, a.y)), Basic.of(V(a.x, z))) for z in zs]
        if a.kind == "w1":
            return [(Basic(), Basic.of(W1(a.x)))] + [(Basic.of(W1(z)), Basic.of(V(a.x, z))) for z in zs]
        if a.kind == "w2":
            return [(Basic.of(W2(a.x)), Basic())] + [(Basic.of(V(z, a.x)), Basic.of(W2(z))) for z in zs]
        raise ValueError(f"no composition preimage for {a}")

    def contains(self, f: PartialBijection, g: PartialBijection) -> bool:
        """Membership read off the union; only the term with ``z`` equal to
        the relevant point can apply, so this also works on the naturals."""
        a = self.atom
        if a.kind == "v":
            z = g(a.x)
            return z is not UNDEFINED and member(f, V(z, a.y))
        if a.kind == "w1":
            z = g(a.x)
            return z is UNDEFINED or member(f, W1(z))
        if a.kind == "w2":
            if member(f, W2(a.x)):
                return True
            z = f.preimage(a.x)
            return member(g, W2(z))
        raise ValueError(f"no composition preimage for {a}")

    def __str__(self):
        a = self.atom
        if a.kind == "v":
            return f"U_z v(z,{a.y}) x v({a.x},z)"
        if a.kind == "w1":
            return f"(I x w1({a.x})) | U_z w1(z) x v({a.x},z)"
        return f"(w2({a.x}) x I) | U_z v(z,{a.x}) x w2(z)"


def preimage_compose(a: Atom, ground: GroundSet = NATURALS) -> ProductUnion:
    if a.kind == "u":
        raise ValueError("u atoms live over permutations")
    return ProductUnion(a, ground)


def preimage_inverse(a: Atom) -> Atom:
    """``i^-1(a) = {f : f^-1 in a}``."""
    if a.kind == "v":
        return V(a.y, a.x)
    if a.kind == "w1":
        return W2(a.x)
    if a.kind == "w2":
        return W1(a.x)
    raise ValueError("u atoms live over permutations")


def invert_basic(b: Basic) -> Basic:
    return Basic(frozenset(map(preimage_inverse, b.pos)), frozenset(map(preimage_inverse, b.neg)))


def invert_expr(e: Expr) -> Expr:
    return Expr(tuple(invert_basic(b) for b in e.basics))


# -- separation ---------------------------------------------------------------


@dataclass(frozen=True)
class SeparationWitness:
    """``first`` contains ``f``; for Hausdorff kinds ``second`` contains
    ``g`` and the two are disjoint.  For tau0 ``second`` is ``None`` and
    ``first`` contains exactly one of the two."""

    kind: TopologyKind
    point: int
    first: Basic
    second: Basic | None = None

    def certify(self, f: PartialBijection, g: PartialBijection) -> bool:
        if not (self.kind.admits(self.first) and (self.second is None or self.kind.admits(self.second))):
            return False
        if self.second is None:
            return member(f, self.first) != member(g, self.first)
        return (member(f, self.first) and member(g, self.second)
                and is_empty(self.first & self.second, f.ground))

    def __str__(self):
        if self.second is None:
            return f"{self.first}"
        return f"({self.first}, {self.second})"


def _tau1_pair(f, g, x) -> tuple[Basic, Basic]:
    fx, gx = f(x), g(x)
    if gx is UNDEFINED:
        return Basic.of(V(x, fx)), Basic.of(W1(x))
    if fx is UNDEFINED:
        return Basic.of(W1(x)), Basic.of(V(x, gx))
    return Basic.of(V(x, fx)), Basic.of(V(x, gx))


def separate(f: PartialBijection, g: PartialBijection, kind: TopologyKind) -> SeparationWitness:
    if f == g:
        raise ValueError("cannot separate an element from itself")
    if kind is TopologyKind.TAU2:
        inner = separate(f.inverse(), g.inverse(), TopologyKind.TAU1)
        return SeparationWitness(kind, inner.point, invert_basic(inner.first), invert_basic(inner.second))
    x = first_difference(f, g)
    if kind is TopologyKind.TAU0:
        fx = f(x)
        y = fx if fx is not UNDEFINED else g(x)
        return SeparationWitness(kind, x, Basic.of(V(x, y)))
    first, second = _tau1_pair(f, g, x)
    return SeparationWitness(kind, x, first, second)


# -- nowhere density ----------------------------------------------------------


@dataclass(frozen=True)
class NowhereDenseWitness:
    """Evidence that ``b`` is not contained in the closure of the dual
    atom: either ``b`` itself misses it (``fresh is None``) or the refined
    basic ``refined`` is a nonempty subset of ``b`` missing it."""

    basic: Basic
    target: Atom
    fresh: int | None
    refined: Basic
    member: PartialBijection

    def certify(self, ground: GroundSet = NATURALS) -> bool:
        if not (self.refined.pos >= self.basic.pos):
            return False
        return (member(self.member, self.refined)
                and is_empty(self.refined & self.target, ground))


def _fresh_point(b: Basic, extra: Iterable[int], ground: GroundSet) -> int:
    used = b.points() | set(extra)
    x = 0
    while x in used:
        x += 1
    if x not in ground:
        raise ValueError(f"no fresh point left in {ground}")
    return x


def nowhere_dense_witness(b: Basic, y: int, ground: GroundSet = NATURALS) -> NowhereDenseWitness:
    """For ``b`` a nonempty tau1 basic: a nonempty basic inside ``b``
    disjoint from ``w2(y)``."""
    if not b.positive or not TopologyKind.TAU1.admits(b):
        raise ValueError(f"{b} is not an all-positive tau1 basic")
    if is_empty(b, ground):
        raise ValueError(f"{b} is empty")
    target = W2(y)
    if any(a.y == y for a in b.of_kind("v")):
        return NowhereDenseWitness(b, target, None, b, witness(b, ground))
    x = _fresh_point(b, (y,), ground)
    refined = b & V(x, y)
    return NowhereDenseWitness(b, target, x, refined, witness(refined, ground))


def nowhere_dense_witness_w1(b: Basic, x: int, ground: GroundSet = NATURALS) -> NowhereDenseWitness:
    """Mirror statement for ``w1(x)`` and tau2 basics, via inversion."""
    if not b.positive or not TopologyKind.TAU2.admits(b):
        raise ValueError(f"{b} is not an all-positive tau2 basic")
    inner = nowhere_dense_witness(invert_basic(b), x, ground)
    return NowhereDenseWitness(b, W1(x), inner.fresh, invert_basic(inner.refined), inner.member.inverse())


# -- translating w1 -----------------------------------------------------------


@dataclass(frozen=True)
class TranslateReport:
    x: int
    y: int
    checked: int
    failures: tuple = ()
    exhaustive: bool = True

    @property
    def ok(self) -> bool:
        return not self.failures


def _as_total(g) -> PartialBijection:
    if isinstance(g, Permutation):
        return g.to_partial()
    if g.ground.is_finite:
        total = len(g.pairs()) == g.ground.size
    else:
        everything = Subset.all_but()
        total = g.dom() == everything and g.im() == everything
    if not total:
        raise ValueError(f"{g} is not a total bijection of its ground set")
    return g


def _sample(reach: int) -> list[PartialBijection]:
    out = [empty_map(), identity()]
    out += [idempotent_on(Subset.all_but([p])) for p in range(reach)]
    out += [singleton_map(p, q) for p in range(reach) for q in range(reach)]
    return out


def translate_w1(x: int, g) -> TranslateReport:
    """Check ``f o g in w1(x)`` iff ``f in w1(g(x))``: exhaustively on a
    finite carrier, on a sample covering the support of ``g`` on the
    naturals."""
    g = _as_total(g)
    y = g(x)
    if g.ground.is_finite:
        fs, exhaustive = enumerate_all(g.ground.size), True
    else:
        reach = max(g.support_bound(), x + 1, y + 1) + 1
        fs, exhaustive = _sample(reach), False
    bad = tuple(f for f in fs if member(compose(f, g), W1(x)) != member(f, W1(y)))
    return TranslateReport(x, y, len(fs), bad, exhaustive)


# -- dom / im images of basics ------------------------------------------------


@dataclass(frozen=True)
class Cylinder:
    """``{A : required <= A, A & forbidden = {}, |A| <= max_size}`` in 2^X."""

    required: frozenset
    forbidden: frozenset
    max_size: int | None = None

    def contains(self, A) -> bool:
        pts = set(A.points) if hasattr(A, "points") else set(A)
        if getattr(A, "cofinite", False):
            return (self.required.isdisjoint(pts) and self.forbidden <= pts
                    and self.max_size is None)
        return (self.required <= pts and self.forbidden.isdisjoint(pts)
                and (self.max_size is None or len(pts) <= self.max_size))

    def __str__(self):
        parts = [f"{p} in A" for p in sorted(self.required)]
        parts += [f"{p} not in A" for p in sorted(self.forbidden)]
        if self.max_size is not None:
            parts.append(f"|A| <= {self.max_size}")
        return "{A : " + ", ".join(parts) + "}" if parts else "2^X"


def dom_im_image_of_basic(b: Basic, ground: GroundSet = NATURALS) -> tuple[Cylinder, Cylinder]:
    """``{dom f : f in b}`` and ``{im f : f in b}`` for a nonempty
    all-positive basic.  On a finite carrier a domain must leave room for
    the image to avoid the ``w2`` points (and symmetrically)."""
    if not b.positive or is_empty(b, ground):
        raise ValueError(f"{b} is empty or not all-positive")
    vs, z1, z2 = b.of_kind("v"), b.of_kind("w1"), b.of_kind("w2")
    dom_max = im_max = None
    if ground.is_finite:
        dom_max = ground.size - len({a.x for a in z2})
        im_max = ground.size - len({a.x for a in z1})
    dom_c = Cylinder(frozenset(a.x for a in vs), frozenset(a.x for a in z1), dom_max)
    im_c = Cylinder(frozenset(a.y for a in vs), frozenset(a.x for a in z2), im_max)
    return dom_c, im_c
