"""Text syntax for rational functions in the variable ``s``.

Two forms are accepted::

    (s^2-4)/(s^2)            infix: + - * / ^, parentheses, complex literals
    {gain: 2, zeros: [1+i, 1-i], poles: [0, 0]}     pole/zero/gain form

Juxtaposition multiplies (``2s``, ``3(s+1)``); ``i`` or ``j`` suffixes mark
imaginary literals (``2.5i``) and a lone ``i`` is the imaginary unit.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT, Tolerances
from .errors import InputError, ZeroDenominator
from .polynomial import Polynomial, RootList
from .ratfun import PoleZeroGain, RationalFunction, from_pole_zero


class ParseError(InputError, SyntaxError):
    def __init__(self, message: str, text: str, pos: int, expected: str | None = None):
        self.text = text
        self.pos = pos
        self.expected = expected
        detail = f"{message} at position {pos}"
        if expected:
            detail += f" (expected {expected})"
        super().__init__(detail)
        self.msg = detail  # SyntaxError.__str__ reads msg


_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?[ij]?)
  | (?P<name>[A-Za-z_]+)
  | (?P<op>[-+*/^(){}\[\]:,])
    """,
    re.VERBOSE,
)


@dataclass
class _Tok:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    out: list[_Tok] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        if kind != "ws":
            out.append(_Tok(kind, m.group(), pos))
        pos = m.end()
    out.append(_Tok("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, tol: Tolerances):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.tol = tol

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def fail(self, message: str, expected: str | None = None):
        raise ParseError(message, self.text, self.tok.pos, expected)

    def accept(self, text: str) -> bool:
        if self.tok.kind == "op" and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text: str):
        if not self.accept(text):
            found = self.tok.text or "end of input"
            self.fail(f"found {found!r}", repr(text))

    # infix grammar
    def expr(self) -> RationalFunction:
        out = self.term()
        while True:
            if self.accept("+"):
                out = out + self.term()
            elif self.accept("-"):
                out = out - self.term()
            else:
                return out

    def _starts_atom(self) -> bool:
        t = self.tok
        return t.kind in ("num", "name") or (t.kind == "op" and t.text == "(")

    def term(self) -> RationalFunction:
        out = self.unary()
        while True:
            if self.accept("*"):
                out = out * self.unary()
            elif self.accept("/"):
                pos = self.tok.pos
                rhs = self.unary()
                if rhs.is_zero():
                    raise ZeroDenominator(f"division by zero at position {pos}")
                out = out / rhs
            elif self._starts_atom():
                out = out * self.power()
            else:
                return out

    def unary(self) -> RationalFunction:
        if self.accept("-"):
            return -self.unary()
        if self.accept("+"):
            return self.unary()
        return self.power()

    def power(self) -> RationalFunction:
        base = self.atom()
        if self.accept("^"):
            pos = self.tok.pos
            exp = self.unary()
            if not exp.is_constant():
                raise ParseError("exponent must be a constant", self.text, pos, "integer")
            val = complex(exp.num.coeffs[0] / exp.den.coeffs[0])
            k = round(val.real)
            if val.imag != 0 or abs(val.real - k) > 1e-12:
                raise ParseError("exponent must be an integer", self.text, pos, "integer")
            if k < 0 and base.is_zero():
                raise ZeroDenominator(f"negative power of zero at position {pos}")
            return base**k
        return base

    def atom(self) -> RationalFunction:
        t = self.tok
        if t.kind == "num":
            self.i += 1
            body = t.text
            if body[-1] in "ij":
                return RationalFunction.constant(complex(0, float(body[:-1])))
            return RationalFunction.constant(float(body))
        if t.kind == "name":
            self.i += 1
            if t.text == "s":
                return RationalFunction.s()
            if t.text in ("i", "j"):
                return RationalFunction.constant(1j)
            raise ParseError(f"unknown name {t.text!r}", self.text, t.pos, "'s', 'i', a number or '('")
        if self.accept("("):
            out = self.expr()
            self.expect(")")
            return out
        found = t.text or "end of input"
        self.fail(f"found {found!r}", "'s', 'i', a number or '('")

    # pole/zero/gain form
    def constant(self) -> complex:
        pos = self.tok.pos
        val = self.expr()
        if not val.is_constant():
            raise ParseError("expected a constant", self.text, pos, "complex literal")
        return complex(val.num.coeffs[0] / val.den.coeffs[0])

    def clist(self) -> list[complex]:
        self.expect("[")
        out: list[complex] = []
        if self.accept("]"):
            return out
        out.append(self.constant())
        while self.accept(","):
            out.append(self.constant())
        self.expect("]")
        return out

    def structured(self) -> RationalFunction:
        self.expect("{")
        fields = {"gain": 1.0, "zeros": [], "poles": []}
        seen = set()
        while True:
            t = self.tok
            if t.kind != "name" or t.text not in fields:
                self.fail(f"found {t.text or 'end of input'!r}", "'gain', 'zeros' or 'poles'")
            if t.text in seen:
                self.fail(f"duplicate key {t.text!r}")
            seen.add(t.text)
            self.i += 1
            self.expect(":")
            fields[t.text] = self.constant() if t.text == "gain" else self.clist()
            if self.accept("}"):
                break
            self.expect(",")
        pzg = PoleZeroGain(
            complex(fields["gain"]),
            RootList.from_locations(fields["zeros"], self.tol),
            RootList.from_locations(fields["poles"], self.tol),
        )
        return from_pole_zero(pzg, self.tol)

    def parse(self) -> RationalFunction:
        if self.tok.kind == "op" and self.tok.text == "{":
            out = self.structured()
        else:
            out = self.expr()
        if self.tok.kind != "end":
            self.fail(f"unexpected {self.tok.text!r}", "an operator or end of input")
        return out


def parse_expression(text: str, tol: Tolerances = DEFAULT) -> RationalFunction:
    """Parse the text syntax into a normalized :class:`RationalFunction`."""
    if not text.strip():
        raise ParseError("empty expression", text, 0, "an expression")
    return _Parser(text, tol).parse()


# ---------------------------------------------------------------------------
# printing


def format_complex(c: complex, digits: int | None = None) -> str:
    """Literal in the parser's syntax; full precision when ``digits`` is None."""
    c = complex(c)
    fmt = repr if digits is None else (lambda x: f"{x:.{digits}g}")
    re_, im = c.real + 0.0, c.imag + 0.0
    if im == 0:
        return fmt(re_)
    if re_ == 0:
        return f"{fmt(im)}i"
    sign = "+" if im >= 0 else "-"
    return f"({fmt(re_)}{sign}{fmt(abs(im))}i)"


def _clean(c: complex, floor: float) -> complex:
    re_ = c.real if abs(c.real) > floor else 0.0
    im = c.imag if abs(c.imag) > floor else 0.0
    return complex(re_, im)


def _poly_text(p: Polynomial, digits: int | None) -> str:
    terms: list[str] = []
    # at reduced precision, components below the printed resolution are dropped
    floor = 0.0 if digits is None else 10.0 ** (-digits) * p.norm()
    for k, c in enumerate(p.coeffs):
        c = _clean(complex(c), floor)
        if c == 0:
            continue
        neg = c.imag == 0 and c.real < 0
        mag = format_complex(-c if neg else c, digits)
        if k == 0:
            body = mag
        else:
            mono = "s" if k == 1 else f"s^{k}"
            body = mono if mag in ("1.0", "1") else f"{mag}*{mono}"
        if not terms:
            terms.append(f"-{body}" if neg else body)
        else:
            terms.append(f" - {body}" if neg else f" + {body}")
    return "".join(terms) or "0"


def to_text(f: RationalFunction, digits: int | None = None) -> str:
    """Text in the parser's syntax; ``digits=None`` round-trips exactly."""
    num = _poly_text(f.num, digits)
    if f.den.is_constant() and complex(f.den.coeffs[0]) == 1:
        return num
    return f"({num})/({_poly_text(f.den, digits)})"


def complex_json(c: complex) -> dict:
    c = complex(c)
    return {"re": float(c.real), "im": float(c.imag)}


def complex_from_json(d: dict) -> complex:
    return complex(d["re"], d["im"])
