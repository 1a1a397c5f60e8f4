"""Textual form of exponential-polynomials and vector fields.

Grammar (whitespace-insensitive)::

    field   := ["+"|"-"] term (("+"|"-") term)*
    term    := factor ("*" factor)*
    factor  := rational | "i" | var ["^" nat] | "exp" "(" linform ")" | dir
             | "(" field ")"
    linform := ["+"|"-"] sterm (("+"|"-") sterm)*
    sterm   := [rational "*"] var
    var     := "x" nat          dir := "d" nat          rational := int ["/" nat]

After distribution every term of a vector field carries exactly one ``dir``
factor; a scalar expression carries none. The printer only emits strings the
parser accepts, and ``parse(format(v)) == v`` for every canonical value.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .coeffring import ExpMonomial, ExpPoly, GaussianRational


class ParseError(ValueError):
    def __init__(self, message: str, text: str = "", offset: int = 0):
        self.text = text
        self.offset = offset
        self.line = text.count("\n", 0, offset) + 1
        self.column = offset - (text.rfind("\n", 0, offset) + 1) + 1
        super().__init__(f"{message} (line {self.line}, column {self.column})")
        self.message = message


# -- printing ---------------------------------------------------------------


def _format_linform(freq) -> str:
    out = []
    for j, q in enumerate(freq):
        if not q:
            continue
        mag = abs(q)
        body = f"x{j + 1}" if mag == 1 else f"{mag}*x{j + 1}"
        if not out:
            out.append(("-" if q < 0 else "") + body)
        else:
            out.append((" - " if q < 0 else " + ") + body)
    return "".join(out)


def _format_factors(mono: ExpMonomial, direction: int | None) -> list[str]:
    parts = []
    for j, p in enumerate(mono.pow):
        if p == 1:
            parts.append(f"x{j + 1}")
        elif p:
            parts.append(f"x{j + 1}^{p}")
    if any(mono.freq):
        parts.append(f"exp({_format_linform(mono.freq)})")
    if direction is not None:
        parts.append(f"d{direction + 1}")
    return parts


def _signed_terms(c: Fraction, imaginary: bool, factors: list[str]):
    """Yield (negative, body) for one real-or-imaginary coefficient."""
    mag = abs(c)
    pieces = []
    if mag != 1 or (not factors and not imaginary):
        pieces.append(str(mag))
    if imaginary:
        pieces.append("i")
    pieces.extend(factors)
    return c < 0, "*".join(pieces)


def _join(signed) -> str:
    if not signed:
        return "0"
    out = []
    for k, (neg, body) in enumerate(signed):
        if k == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def _term_pieces(coeff, mono, direction):
    factors = _format_factors(mono, direction)
    if not isinstance(coeff, GaussianRational):
        # symbolic coefficient (certification unknowns); display only
        body = "*".join([f"({coeff})"] + factors)
        return [(False, body)]
    out = []
    if coeff.re:
        out.append(_signed_terms(coeff.re, False, factors))
    if coeff.im:
        out.append(_signed_terms(coeff.im, True, factors))
    return out


def format_exppoly(a: ExpPoly) -> str:
    signed = []
    for mono, c in a.items():
        signed.extend(_term_pieces(c, mono, None))
    return _join(signed)


def format_field(field) -> str:
    signed = []
    for slot, coeff in enumerate(field.coeffs):
        for mono, c in coeff.items():
            signed.extend(_term_pieces(c, mono, slot))
    return _join(signed)


# -- lexing -----------------------------------------------------------------


@dataclass(frozen=True)
class Token:
    kind: str
    value: object
    offset: int


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<decimal>\d*\.\d+|\d+\.\d*|\d+[eE][+-]?\d+)
  | (?P<int>\d+)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        raw = m.group()
        if kind == "decimal":
            raise ParseError(f"non-rational literal {raw!r}; use p/q", text, pos)
        if kind == "int":
            tokens.append(Token("int", int(raw), pos))
        elif kind == "name":
            mvar = re.fullmatch(r"([xd])(\d+)", raw)
            if mvar:
                tokens.append(Token("var" if mvar.group(1) == "x" else "dir", int(mvar.group(2)), pos))
            elif raw == "exp":
                tokens.append(Token("exp", raw, pos))
            elif raw == "i":
                tokens.append(Token("i", raw, pos))
            else:
                raise ParseError(
                    f"unsupported symbol {raw!r} (allowed: rationals, i, x<k>, d<k>, exp)", text, pos)
        elif kind == "op":
            tokens.append(Token(raw, raw, pos))
        pos = m.end()
    tokens.append(Token("end", None, len(text)))
    return tokens


# -- parsing ----------------------------------------------------------------

# A parsed value is a dict {direction index or None: ExpPoly}; None is the
# scalar (direction-free) part.


class _Parser:
    def __init__(self, text: str, dim: int, want_direction: bool):
        self.text = text
        self.dim = dim
        self.want_direction = want_direction
        self.tokens = tokenize(text)
        self.pos = 0

    def error(self, message: str, tok: Token | None = None):
        tok = tok or self.peek()
        raise ParseError(message, self.text, tok.offset)

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def take(self, kind: str | None = None) -> Token:
        tok = self.tokens[self.pos]
        if kind is not None and tok.kind != kind:
            want = {"end": "end of input", "int": "integer"}.get(kind, repr(kind))
            got = "end of input" if tok.kind == "end" else repr(self.text[tok.offset:tok.offset + 8])
            self.error(f"expected {want}, found {got}", tok)
        self.pos += 1
        return tok

    # value algebra

    def _add(self, a: dict, b: dict, sign: int = 1) -> dict:
        out = dict(a)
        for k, v in b.items():
            v = v if sign > 0 else -v
            s = out[k] + v if k in out else v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return out

    def _mul(self, a: dict, b: dict, tok: Token) -> dict:
        out: dict = {}
        for ka, va in a.items():
            for kb, vb in b.items():
                if ka is not None and kb is not None:
                    self.error("term has more than one direction factor", tok)
                key = ka if ka is not None else kb
                prod = va * vb
                if key in out:
                    prod = out[key] + prod
                if prod:
                    out[key] = prod
                else:
                    out.pop(key, None)
        return out

    def _scalar(self, poly: ExpPoly) -> dict:
        return {None: poly} if poly else {}

    # grammar

    def parse(self) -> dict:
        value = self.expr(top=True)
        self.take("end")
        return value

    def expr(self, top: bool = False) -> dict:
        sign = 1
        if self.peek().kind in ("+", "-"):
            sign = -1 if self.take().kind == "-" else 1
        start = self.peek()
        value = self._add({}, self.term_checked(top, start), sign)
        while self.peek().kind in ("+", "-"):
            sign = -1 if self.take().kind == "-" else 1
            start = self.peek()
            value = self._add(value, self.term_checked(top, start), sign)
        return value

    def term_checked(self, top: bool, start: Token) -> dict:
        value = self.term()
        if top:
            if self.want_direction and None in value:
                self.error("term has no direction factor d<k>", start)
            if not self.want_direction and any(k is not None for k in value):
                self.error("direction factor in a scalar expression", start)
        return value

    def term(self) -> dict:
        value = self.factor()
        while self.peek().kind == "*":
            tok = self.take()
            value = self._mul(value, self.factor(), tok)
        return value

    def _index(self, tok: Token, what: str) -> int:
        k = tok.value
        if not 1 <= k <= self.dim:
            self.error(f"{what} index {k} out of range for dimension {self.dim}", tok)
        return k - 1

    def rational(self) -> Fraction:
        num = self.take("int")
        if self.peek().kind == "/":
            self.take()
            den = self.take("int")
            if den.value == 0:
                self.error("zero denominator", den)
            return Fraction(num.value, den.value)
        return Fraction(num.value)

    def factor(self) -> dict:
        tok = self.peek()
        dim = self.dim
        if tok.kind == "int":
            return self._scalar(ExpPoly.constant(dim, self.rational()))
        if tok.kind == "i":
            self.take()
            return self._scalar(ExpPoly.constant(dim, GaussianRational(0, 1)))
        if tok.kind == "var":
            self.take()
            j = self._index(tok, "variable")
            p = 1
            if self.peek().kind == "^":
                self.take()
                p = self.take("int").value
            pow = [0] * dim
            pow[j] = p
            return self._scalar(ExpPoly.monomial(dim, 1, pow=pow))
        if tok.kind == "dir":
            self.take()
            j = self._index(tok, "direction")
            return {j: ExpPoly.constant(dim, 1)}
        if tok.kind == "exp":
            self.take()
            self.take("(")
            freq = self.linform()
            self.take(")")
            return self._scalar(ExpPoly.exp(dim, freq))
        if tok.kind == "(":
            self.take()
            value = self.expr()
            self.take(")")
            return value
        if tok.kind == "end":
            self.error("unexpected end of input")
        self.error(f"unexpected {self.text[tok.offset]!r}")

    def linform(self) -> list:
        freq = [Fraction(0)] * self.dim
        sign = 1
        if self.peek().kind in ("+", "-"):
            sign = -1 if self.take().kind == "-" else 1
        while True:
            tok = self.peek()
            q = Fraction(1)
            if tok.kind == "int":
                q = self.rational()
                if self.peek().kind != "*":
                    self.error("constant inside exp(...) is not representable", tok)
                self.take("*")
            vtok = self.peek()
            if vtok.kind != "var":
                self.error("expected variable x<k> in exponent", vtok)
            self.take()
            freq[self._index(vtok, "variable")] += sign * q
            if self.peek().kind in ("+", "-"):
                sign = -1 if self.take().kind == "-" else 1
                continue
            return freq


def parse_exppoly(text: str, dim: int) -> ExpPoly:
    value = _Parser(text, dim, want_direction=False).parse()
    return value.get(None, ExpPoly.zero(dim))


def parse_field(text: str, dim: int):
    """Parse a vector-field expression such as ``"exp(x1)*(2*d1 - d2)"``."""
    from .vfield import VectorField

    value = _Parser(text, dim, want_direction=True).parse()
    coeffs = [value.get(j, ExpPoly.zero(dim)) for j in range(dim)]
    return VectorField(coeffs)
