"""Parser for the knot description language.

    knot := term ("#" term)* | "unknot"
    term := "2b(" INT "/" INT ")" ("^" INT)? | "seifert(" rows ")"
    rows := "[" row ("," row)* "]"      row := "[" INT ("," INT)* "]"

Whitespace is ignored.  A ``ribbon`` token may follow any term (or
``unknot``) and marks the whole knot as ribbon.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .abelian import determinant
from .knots import KnotSpec, SeifertMatrix, TwoBridgeKnot

E_PARSE = "E_PARSE"
E_EVEN_P = "E_EVEN_P"
E_GCD = "E_GCD"
E_Q_RANGE = "E_Q_RANGE"
E_NONSQUARE = "E_NONSQUARE"
E_NONUNIMODULAR = "E_NONUNIMODULAR"

MAX_POWER = 10**6

_TOKEN = re.compile(r"\s*(?:(?P<tb>2\s*b\s*\()|(?P<int>-?\d+)|(?P<word>[A-Za-z]+)|(?P<sym>[#()/^\[\],]))")


class ParseError(ValueError):
    def __init__(self, message: str, position: int, code: str = E_PARSE):
        super().__init__(f"{code} at position {position}: {message}")
        self.message = message
        self.position = position
        self.code = code


@dataclass
class _Tok:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks, i = [], 0
    while True:
        while i < len(text) and text[i].isspace():
            i += 1
        if i >= len(text):
            break
        m = _TOKEN.match(text, i)
        if not m or m.end() == i:
            raise ParseError(f"unexpected character {text[i]!r}", i)
        kind = m.lastgroup
        value = m.group(kind)
        toks.append(_Tok(kind, value.lower() if kind == "word" else value, m.start(kind)))
        i = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0
        self.ribbon = False

    @property
    def cur(self) -> _Tok:
        return self.toks[self.i]

    def take(self, kind: str, text: str | None = None) -> _Tok:
        t = self.cur
        if t.kind != kind or (text is not None and t.text != text):
            want = text if text is not None else kind
            got = t.text or "end of input"
            raise ParseError(f"expected {want!r}, found {got!r}", t.pos)
        self.i += 1
        return t

    def at(self, kind: str, text: str | None = None) -> bool:
        t = self.cur
        return t.kind == kind and (text is None or t.text == text)

    def integer(self) -> tuple[int, int]:
        t = self.take("int")
        return int(t.text), t.pos

    def maybe_ribbon(self) -> None:
        if self.at("word", "ribbon"):
            self.i += 1
            self.ribbon = True

    def knot(self) -> KnotSpec:
        if self.at("word", "unknot"):
            self.i += 1
            self.maybe_ribbon()
            self.take("end")
            return KnotSpec((), self.ribbon or None)
        summands = list(self.term())
        while self.at("sym", "#"):
            self.i += 1
            summands.extend(self.term())
        self.take("end")
        return KnotSpec(tuple(summands), self.ribbon or None)

    def term(self):
        t = self.cur
        if t.kind == "tb":
            self.i += 1
            out = self.two_bridge(t.pos)
        elif t.kind == "word" and t.text == "seifert":
            self.i += 1
            out = [self.seifert(t.pos)]
        else:
            raise ParseError(f"expected '2b(' or 'seifert(', found {t.text or 'end of input'!r}",
                             t.pos)
        self.maybe_ribbon()
        return out

    def two_bridge(self, start: int) -> list[TwoBridgeKnot]:
        p, ppos = self.integer()
        self.take("sym", "/")
        q, qpos = self.integer()
        self.take("sym", ")")
        if p < 3 or p % 2 == 0:
            raise ParseError(f"p must be odd and at least 3, got p={p}", ppos, E_EVEN_P)
        if not 0 < q < p:
            raise ParseError(f"q must satisfy 0 < q < p, got q={q}", qpos, E_Q_RANGE)
        if math.gcd(p, q) != 1:
            raise ParseError(f"gcd(p, q) must be 1, got gcd({p},{q})={math.gcd(p, q)}", start, E_GCD)
        k = 1
        if self.at("sym", "^"):
            self.i += 1
            k, kpos = self.integer()
            if not 1 <= k <= MAX_POWER:
                raise ParseError(f"exponent must lie in [1, {MAX_POWER}], got {k}", kpos)
        return [TwoBridgeKnot(p, q)] * k

    def seifert(self, start: int) -> SeifertMatrix:
        self.take("sym", "(")
        self.take("sym", "[")
        rows = [self.row()]
        while self.at("sym", ","):
            self.i += 1
            rows.append(self.row())
        self.take("sym", "]")
        self.take("sym", ")")
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ParseError(f"Seifert matrix must be square, got {n} rows of lengths "
                             f"{[len(r) for r in rows]}", start, E_NONSQUARE)
        skew = [[rows[i][j] - rows[j][i] for j in range(n)] for i in range(n)]
        if n % 2 or determinant(skew) != 1:
            raise ParseError("Seifert matrix must satisfy det(V - V^T) = 1", start, E_NONUNIMODULAR)
        return SeifertMatrix(tuple(map(tuple, rows)))

    def row(self) -> list[int]:
        self.take("sym", "[")
        vals = [self.integer()[0]]
        while self.at("sym", ","):
            self.i += 1
            vals.append(self.integer()[0])
        self.take("sym", "]")
        return vals


def parse_knot(text: str, ribbon: bool = False) -> KnotSpec:
    """Parse ``text``; ``ribbon=True`` has the same effect as a ``ribbon`` token."""
    spec = _Parser(text).knot()
    if ribbon and not spec.ribbon:
        spec = KnotSpec(spec.summands, True)
    return spec
