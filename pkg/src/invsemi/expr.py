"""Expression language for ``invsemi eval``.

Grammar::

    expr    := call | literal | opens | INT
    call    := NAME '(' [arg (',' arg)*] ')'
    arg     := opens | expr
    literal := '{' '}'                       empty map or empty set
             | '{' INT '->' INT (',' ...)* '}' [';' 'id' 'from' INT ['except' '{' INTS '}']]
             | '{' INT (',' INT)* '}'         finite set
             | 'N' ['-' '{' INTS '}']           cofinite set
    opens   := basic ('|' basic)*
    basic   := atom ('&' atom)*
    atom    := ['~'] ('v'|'u') '(' INT ',' INT ')' | ['~'] ('w1'|'w2') '(' INT ')'
"""

from __future__ import annotations

from dataclasses import dataclass

from .dyadic import Dyadic
from .metrics import d_metric, eta, rho, rho_star
from .pbij import (
    NATURALS,
    UNDEFINED,
    GroundSet,
    IdentityTail,
    PartialBijection,
    Subset,
    compose,
    idempotent_on,
    restricts,
)
from .topology import Atom, Basic, Expr, is_empty, member


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.message = message
        self.position = position


@dataclass(frozen=True)
class _EmptyBraces:
    """``{}``: the empty map or the empty set, depending on use."""


_ATOM_NAMES = {"v": 2, "u": 2, "w1": 1, "w2": 1}


class _Parser:
    def __init__(self, text: str, ground: GroundSet):
        self.s = text
        self.i = 0
        self.ground = ground

    # -- lexing helpers -------------------------------------------------------

    def ws(self):
        while self.i < len(self.s) and self.s[self.i].isspace():
            self.i += 1

    def peek(self, tok: str) -> bool:
        self.ws()
        return self.s.startswith(tok, self.i)

    def eat(self, tok: str):
        self.ws()
        if not self.s.startswith(tok, self.i):
            found = self.s[self.i] if self.i < len(self.s) else "end of input"
            raise ParseError(f"expected {tok!r}, found {found!r}", self.i)
        self.i += len(tok)

    def integer(self) -> int:
        self.ws()
        j = self.i
        while j < len(self.s) and self.s[j].isdigit():
            j += 1
        if j == self.i:
            raise ParseError("expected a natural number", self.i)
        val = int(self.s[self.i:j])
        self.i = j
        return val

    def name(self) -> str:
        self.ws()
        j = self.i
        while j < len(self.s) and (self.s[j].isalnum() or self.s[j] == "_"):
            j += 1
        return self.s[self.i:j]

    # -- grammar --------------------------------------------------------------

    def parse(self):
        val = self.expr()
        self.ws()
        if self.i != len(self.s):
            raise ParseError(f"unexpected {self.s[self.i]!r}", self.i)
        return val

    def expr(self):
        self.ws()
        start = self.i
        if self.peek("{"):
            return self.brace()
        if self.peek("~"):
            return self.opens()
        word = self.name()
        if not word:
            raise ParseError("expected an expression", self.i)
        if word in _ATOM_NAMES:
            return self.opens()
        if word.isdigit():
            return self.integer()
        if word == "N":
            self.i += 1
            return self.cofinite()
        self.i += len(word)
        if word not in FUNCTIONS:
            raise ParseError(f"unknown function {word!r}", start)
        self.eat("(")
        args = []
        if not self.peek(")"):
            args.append(self.expr())
            while self.peek(","):
                self.eat(",")
                args.append(self.expr())
        self.eat(")")
        try:
            return FUNCTIONS[word](self, *args)
        except ParseError:
            raise
        except (TypeError, ValueError) as exc:
            raise ParseError(f"{word}: {exc}", start) from None

    def ints_until_brace(self) -> list[int]:
        out = []
        if self.peek("}"):
            return out
        out.append(self.integer())
        while self.peek(","):
            self.eat(",")
            out.append(self.integer())
        return out

    def brace(self):
        start = self.i
        self.eat("{")
        if self.peek("}"):
            self.eat("}")
            if self.peek(";"):
                return self.tail({}, start)
            return _EmptyBraces()
        first = self.integer()
        if not self.peek("->"):
            pts = [first]
            while self.peek(","):
                self.eat(",")
                pts.append(self.integer())
            self.eat("}")
            return Subset.of(pts)
        self.eat("->")
        pairs = [(first, self.integer())]
        while self.peek(","):
            self.eat(",")
            x = self.integer()
            self.eat("->")
            pairs.append((x, self.integer()))
        self.eat("}")
        if self.peek(";"):
            return self.tail(pairs, start)
        try:
            return PartialBijection(pairs, None, self.ground)
        except ValueError as exc:
            raise ParseError(str(exc), start) from None

    def tail(self, pairs, start):
        self.eat(";")
        self.eat("id")
        self.eat("from")
        n = self.integer()
        punct = []
        if self.peek("except"):
            self.eat("except")
            self.eat("{")
            punct = self.ints_until_brace()
            self.eat("}")
        try:
            return PartialBijection(pairs, IdentityTail(n, frozenset(punct)), self.ground)
        except ValueError as exc:
            raise ParseError(str(exc), start) from None

    def cofinite(self) -> Subset:
        if self.peek("-"):
            self.eat("-")
            self.eat("{")
            pts = self.ints_until_brace()
            self.eat("}")
            return Subset.all_but(pts)
        return Subset.all_but()

    def atom(self) -> tuple[Atom, bool]:
        negated = False
        if self.peek("~"):
            self.eat("~")
            negated = True
        start = self.i
        word = self.name()
        if word not in _ATOM_NAMES:
            raise ParseError("expected an atom v(x,y), w1(x), w2(y) or u(x,y)", start)
        self.i += len(word)
        self.eat("(")
        args = [self.integer()]
        for _ in range(_ATOM_NAMES[word] - 1):
            self.eat(",")
            args.append(self.integer())
        self.eat(")")
        return Atom(word, *args), negated

    def basic(self) -> Basic:
        pos, neg = set(), set()
        while True:
            a, negated = self.atom()
            (neg if negated else pos).add(a)
            if not self.peek("&"):
                return Basic(frozenset(pos), frozenset(neg))
            self.eat("&")

    def opens(self):
        basics = [self.basic()]
        while self.peek("|"):
            self.eat("|")
            basics.append(self.basic())
        if len(basics) == 1:
            b = basics[0]
            if len(b.atoms) == 1 and not b.neg:
                (a,) = b.pos
                return a
            return b
        return Expr(tuple(basics))


# -- coercions and functions --------------------------------------------------


def _pb(p: _Parser, v) -> PartialBijection:
    if isinstance(v, _EmptyBraces):
        return PartialBijection((), None, p.ground)
    if isinstance(v, Subset) and not v.cofinite and not v.points:
        return PartialBijection((), None, p.ground)
    if not isinstance(v, PartialBijection):
        raise TypeError(f"expected a partial bijection, got {show(v)}")
    return v


def _set(p: _Parser, v) -> Subset:
    if isinstance(v, _EmptyBraces):
        return Subset.of()
    if not isinstance(v, Subset):
        raise TypeError(f"expected a set, got {show(v)}")
    if p.ground.is_finite:
        v = v & Subset.of(p.ground.points())
    return v


def _opens(v):
    if isinstance(v, (Atom, Basic, Expr)):
        return v
    raise TypeError(f"expected an atom, basic or union of basics, got {show(v)}")


def _compose(p, *args):
    if len(args) < 2:
        raise TypeError("compose needs at least two arguments")
    maps = [_pb(p, a) for a in args]
    out = maps[-1]
    for f in reversed(maps[:-1]):
        out = compose(f, out)
    return out


def _apply(p, f, x):
    if not isinstance(x, int):
        raise TypeError("apply needs a point")
    return _pb(p, f)(x)


def _is_empty(p, b):
    b = _opens(b)
    if isinstance(b, Atom):
        b = Basic.of(b)
    if not isinstance(b, Basic):
        raise TypeError("is_empty takes a single basic")
    return is_empty(b, p.ground)


FUNCTIONS = {
    "compose": _compose,
    "inverse": lambda p, f: _pb(p, f).inverse(),
    "rho": lambda p, f, g: rho(_pb(p, f), _pb(p, g)),
    "rho_star": lambda p, f, g: rho_star(_pb(p, f), _pb(p, g)),
    "d": lambda p, f, g: d_metric(_pb(p, f), _pb(p, g)),
    "eta": lambda p, a, b: eta(_set(p, a), _set(p, b)),
    "member": lambda p, f, e: member(_pb(p, f), _opens(e)),
    "dom": lambda p, f: _pb(p, f).dom(),
    "im": lambda p, f: _pb(p, f).im(),
    "restricts": lambda p, f, g: restricts(_pb(p, f), _pb(p, g)),
    "idempotent": lambda p, a: idempotent_on(_set(p, a), p.ground),
    "apply": _apply,
    "is_empty": _is_empty,
}


def evaluate(text: str, ground: GroundSet = NATURALS):
    """Parse and evaluate; raises :class:`ParseError` with a position."""
    return _Parser(text, ground).parse()


def show(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is UNDEFINED:
        return "undefined"
    if isinstance(value, _EmptyBraces):
        return "{}"
    if isinstance(value, (Dyadic, PartialBijection, Subset, Atom, Basic, Expr, int)):
        return str(value)
    return repr(value)
