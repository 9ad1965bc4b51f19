"""Set-wise composition of subbasic sets, translates, and the open-map
construction for right and left translations.

``A o B`` means ``{g o h : g in A, h in B}``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .pbij import (
    UNDEFINED,
    GroundSet,
    PartialBijection,
    Subset,
    compose,
    idempotent_on,
)
from .topology import (
    W1,
    W2,
    Atom,
    Basic,
    V,
    as_expr,
    invert_basic,
    member,
)
from .universe import universe

# -- symbolic composition of atoms --------------------------------------------


@dataclass(frozen=True)
class AtomResult:
    atom: Atom

    def contains(self, f) -> bool:
        return member(f, self.atom)

    def __str__(self):
        return str(self.atom)


@dataclass(frozen=True)
class ComplementOf:
    atom: Atom

    def contains(self, f) -> bool:
        return not member(f, self.atom)

    def __str__(self):
        return f"I \\ {self.atom}"


@dataclass(frozen=True)
class Intersection:
    first: Atom
    second: Atom

    def contains(self, f) -> bool:
        return member(f, self.first) and member(f, self.second)

    def __str__(self):
        return f"{self.first} & {self.second}"


@dataclass(frozen=True)
class WholeSpace:
    def contains(self, f) -> bool:
        return True

    def __str__(self):
        return "I"


@dataclass(frozen=True)
class InverseWrapped:
    """``{f^-1 : f in inner}``."""

    inner: object

    def contains(self, f) -> bool:
        return self.inner.contains(f.inverse())

    def __str__(self):
        return f"[{self.inner}]^-1"


def atom_compose(a: Atom, b: Atom):
    """Symbolic value of ``a o b`` for ``v``/``w1``/``w2`` atoms, together
    with the number of the identity that produces it.

    Returns ``(result, item)``.
    """
    ka, kb = a.kind, b.kind
    if "u" in (ka, kb):
        raise ValueError("u atoms live over permutations")
    if ka == "v" and kb == "v":
        # v(x,y) o v(z,w)
        if b.y == a.x:
            return AtomResult(V(b.x, a.y)), 1
        return ComplementOf(V(b.x, a.y)), 2
    if ka == "w1" and kb == "w1":
        return AtomResult(W1(b.x)), 3
    if ka == "w2" and kb == "w2":
        return AtomResult(W2(a.x)), 4
    if ka == "w2" and kb == "w1":
        return Intersection(W2(a.x), W1(b.x)), 5
    if ka == "w1" and kb == "w2":
        return WholeSpace(), 6
    if ka == "w1" and kb == "v":
        # w1(z) o v(x,y)
        if a.x == b.y:
            return AtomResult(W1(b.x)), 7
        return WholeSpace(), 8
    if ka == "v" and kb == "w1":
        return AtomResult(W1(b.x)), 9
    if ka == "w2" and kb == "v":
        # w2(z) o v(x,y) = [v(y,x) o w1(z)]^-1 = [w1(z)]^-1
        return InverseWrapped(AtomResult(W1(a.x))), 10
    # v(x,y) o w2(z) = [w1(z) o v(y,x)]^-1
    inner, _ = atom_compose(W1(b.x), V(a.y, a.x))
    return InverseWrapped(inner), 11


# -- brute-force referee ------------------------------------------------------


def member_mask(obj, n: int) -> int:
    """Bitset over ``I(Finite(n))`` of the members of an atom, basic,
    expression or compose result."""
    uni = universe(n)
    if hasattr(obj, "contains"):
        return uni.mask(obj.contains)
    expr = as_expr(obj)
    return uni.mask(lambda f: member(f, expr))


def setwise_compose_oracle(S1, S2, ground: GroundSet) -> frozenset:
    """``{g o h : g in S1, h in S2}`` by enumeration.  ``S1``/``S2`` are
    expressions, compose results or explicit collections of elements."""
    if not ground.is_finite:
        raise ValueError("the oracle needs a finite ground set")
    uni = universe(ground.size)

    def mask(S):
        if isinstance(S, (set, frozenset, list, tuple)):
            return uni.to_mask(uni.index[f] for f in S)
        return member_mask(S, ground.size)

    return frozenset(uni.elements_of(uni.setwise(mask(S1), mask(S2))))


# -- cosets -------------------------------------------------------------------


class Side(enum.Enum):
    RIGHT = "right"
    LEFT = "left"


@dataclass(frozen=True)
class CosetDescriptor:
    """``RIGHT``: ``R_f = {g o f}``; ``LEFT``: ``L_f = {f o g}``."""

    side: Side
    anchor: PartialBijection


def coset_member(h: PartialBijection, c: CosetDescriptor) -> bool:
    f = c.anchor
    fi = f.inverse()
    if c.side is Side.RIGHT:
        return h.dom() <= f.dom() and compose(compose(h, fi), f) == h
    return h.im() <= f.im() and compose(f, compose(fi, h)) == h


def coset_oracle(c: CosetDescriptor, n: int) -> frozenset:
    uni = universe(n)
    i = uni.index[c.anchor]
    if c.side is Side.RIGHT:
        return frozenset(uni.elements[int(j)] for j in set(uni.table[:, i].tolist()))
    return frozenset(uni.elements[int(j)] for j in set(uni.table[i, :].tolist()))


def restrict_map(f: PartialBijection, A) -> PartialBijection:
    """``r_A(f) = f o 1_A``."""
    if not isinstance(A, Subset):
        A = Subset.of(A)
    return compose(f, idempotent_on(A, f.ground))


# -- open-map construction ----------------------------------------------------


def rf_atom_image(a: Atom, f: PartialBijection) -> Atom | None:
    """The constraint one atom of ``U`` places on ``U o f`` inside
    ``R_f``; ``None`` means no constraint."""
    if a.kind == "v":
        pre = f.preimage(a.x)
        if pre is UNDEFINED:
            return W2(a.y)
        return V(pre, a.y)
    if a.kind == "w1":
        pre = f.preimage(a.x)
        if pre is UNDEFINED:
            return None
        return W1(pre)
    if a.kind == "w2":
        return a
    raise ValueError(f"{a} is not admissible over I(X)")


def rf_image(U: Basic, f: PartialBijection) -> Basic:
    """``Q`` with ``U o f = Q & R_f``."""
    if not U.positive:
        raise ValueError("U must be all-positive")
    atoms = (rf_atom_image(a, f) for a in U.pos)
    return Basic(frozenset(a for a in atoms if a is not None))


def lf_image(U: Basic, f: PartialBijection) -> Basic:
    """``Q`` with ``f o U = Q & L_f``, by inverting the right-hand case."""
    return invert_basic(rf_image(invert_basic(U), f.inverse()))
