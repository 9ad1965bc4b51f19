"""The projection ``pi : S(Y) -> I(X)`` for ``X = {0..x-1}`` inside
``Y = {0..y-1}``: ``pi(f)`` is ``f`` restricted to the points of ``X`` that
it keeps inside ``X``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .pbij import (
    Finite,
    PartialBijection,
    Permutation,
    compose,
    restricts,
)
from .topology import U, Atom, Basic, Expr, V, W1, W2


@dataclass(frozen=True)
class Embedding:
    x_size: int
    y_size: int

    def __post_init__(self):
        if not 0 <= self.x_size <= self.y_size:
            raise ValueError("need 0 <= x_size <= y_size")

    @property
    def outside(self) -> range:
        """``Y \\ X``."""
        return range(self.x_size, self.y_size)

    @property
    def liftable(self) -> bool:
        """Every element of I(X) is a projection exactly when this holds."""
        return self.x_size <= self.y_size - self.x_size


def project(f: Permutation, e: Embedding) -> PartialBijection:
    if f.size != e.y_size:
        raise ValueError(f"permutation of size {f.size} is not a permutation of Y (size {e.y_size})")
    xs = e.x_size
    return PartialBijection(((x, f(x)) for x in range(xs) if f(x) < xs), None, Finite(xs))


def lift(g: PartialBijection, e: Embedding) -> Permutation:
    """A permutation of ``Y`` projecting to ``g``.

    Points of ``X`` outside ``dom g`` go to the least points of ``Y \\ X``
    in increasing order, the least points of ``Y \\ X`` fill ``X \\ im g``
    in increasing order, and the remaining points of ``Y \\ X`` are matched
    in increasing order.
    """
    if g.ground != Finite(e.x_size):
        raise ValueError(f"{g!r} is not an element of I(X) with |X| = {e.x_size}")
    xs = e.x_size
    out = list(e.outside)
    missing_dom = [x for x in range(xs) if x not in g.dom()]
    missing_im = [y for y in range(xs) if y not in g.im()]
    if len(missing_dom) > len(out):
        raise ValueError(
            f"{g} moves {len(missing_dom)} points of X out of X but |Y \\ X| = {len(out)}; "
            "when |X| > |Y \\ X| no permutation of Y projects to 1_{} and pi is not onto")
    k = len(missing_dom)
    images = [None] * e.y_size
    for x, y in g.pairs():
        images[x] = y
    for x, c in zip(missing_dom, out[:k]):
        images[x] = c
    for d, y in zip(out[:k], missing_im):
        images[d] = y
    for d, c in zip(out[k:], out[k:]):
        images[d] = c
    return Permutation(images)


@dataclass(frozen=True)
class SubhomReport:
    """``pi(f) o pi(g) <= pi(f o g)``; ``witness`` is a point where the
    right-hand side is defined and the left is not."""

    inclusion: bool
    equal: bool
    witness: int | None = None


def subhom_check(f: Permutation, g: Permutation, e: Embedding) -> SubhomReport:
    left = compose(project(f, e), project(g, e))
    right = project(f * g, e)
    inclusion = restricts(left, right)
    equal = left == right
    witness = None
    if not equal:
        witness = min(x for x in range(e.x_size) if left(x) != right(x))
    return SubhomReport(inclusion, equal, witness)


def pi_preimage(a: Atom, e: Embedding) -> Expr:
    """``pi^-1(a)`` as a union of ``u`` atoms over S(Y)."""
    if a.kind == "v":
        return Expr.of(U(a.x, a.y))
    if a.kind == "w1":
        return Expr.of(*(U(a.x, y) for y in e.outside))
    if a.kind == "w2":
        return Expr.of(*(U(x, a.x) for x in e.outside))
    raise ValueError(f"{a} is not an atom over I(X)")


def _split(b: Basic, e: Embedding):
    if not b.positive or any(a.kind != "u" for a in b.pos):
        raise ValueError("expected an all-positive basic of u atoms")
    fwd: dict[int, int] = {}
    inv: dict[int, int] = {}
    for a in sorted(b.pos):
        if a.x >= e.y_size or a.y >= e.y_size:
            raise ValueError(f"{a} mentions a point outside Y")
        if fwd.get(a.x, a.y) != a.y or inv.get(a.y, a.x) != a.x:
            raise ValueError(f"u constraints of {b} are not a partial injection; the basic is empty")
        fwd[a.x] = a.y
        inv[a.y] = a.x
    xs = e.x_size
    cases = {1: [], 2: [], 3: [], 4: []}
    for x, y in sorted(fwd.items()):
        key = (1 if y < xs else 2) if x < xs else (3 if y < xs else 4)
        cases[key].append((x, y))
    return cases


def pi_image_of_basic(b: Basic, e: Embedding) -> Basic:
    """``pi`` of a basic of ``u`` atoms: pairs inside ``X`` stay, a point of
    ``X`` sent outside leaves the domain, a point of ``X`` reached from
    outside leaves the image, pairs outside ``X`` impose nothing."""
    cases = _split(b, e)
    atoms = [V(x, y) for x, y in cases[1]]
    atoms += [W1(x) for x, _ in cases[2]]
    atoms += [W2(y) for _, y in cases[3]]
    return Basic(frozenset(atoms))


def pi_image_room(b: Basic, e: Embedding) -> int:
    """On a finite ``Y`` an element ``g`` of the image basic is hit iff
    ``|X \\ dom g|`` is at most this number: the points of ``Y \\ X`` not
    already tied up by constraints lying wholly outside ``X``."""
    return e.y_size - e.x_size - len(_split(b, e)[4])


def pi_image_contains(b: Basic, e: Embedding, g: PartialBijection) -> bool:
    from .topology import member

    return member(g, pi_image_of_basic(b, e)) and e.x_size - len(g.pairs()) <= pi_image_room(b, e)


def non_surjectivity_witness(e: Embedding) -> PartialBijection | None:
    """``1_{}`` when ``|X| > |Y \\ X|``: every point of ``X`` would have to
    leave ``X``, which needs ``|X|`` points outside.  ``None`` otherwise."""
    if e.liftable:
        return None
    return PartialBijection((), None, Finite(e.x_size))
