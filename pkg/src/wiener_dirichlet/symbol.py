"""Composition symbols ``phi(s) = c0*s + c1 + sum_{n>=2} c_n n**-s`` and their
text form.

Grammar (whitespace is free between tokens)::

    symbol  := part {"+" part}            at most one part may be the s-term
    part    := [uint "*"] "s" | term
    term    := complex | complex "*" uint "^-s" | uint "^-s"
    complex := float | float "i" | "(" float ("+"|"-") float "i" ")"

Repeated frequencies are summed; the bare constant is ``c1``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

from .dirichlet import DirichletPoly


class SymbolParseError(ValueError):
    """Syntax or domain error in symbol text; ``offset`` is a byte offset."""

    def __init__(self, message: str, text: str, pos: int):
        self.offset = len(text[:pos].encode("utf-8"))
        self.text = text
        super().__init__(f"{message} at byte {self.offset}")


@dataclass(frozen=True)
class Symbol:
    """``phi(s) = c0*s + phi0(s)``; ``phi0[1]`` is the constant ``c1``."""

    c0: int
    phi0: DirichletPoly = field(default_factory=DirichletPoly)

    def __post_init__(self):
        if isinstance(self.c0, bool) or not isinstance(self.c0, int) or self.c0 < 0:
            raise ValueError(f"c0 must be a non-negative integer, got {self.c0!r}")
        if not isinstance(self.phi0, DirichletPoly):
            object.__setattr__(self, "phi0", DirichletPoly(self.phi0))
        for n, c in self.phi0.items():
            if not (math.isfinite(c.real) and math.isfinite(c.imag)):
                raise ValueError(f"non-finite coefficient at index {n}")

    @classmethod
    def build(cls, c0: int = 0, c1: complex = 0.0, terms: dict[int, complex] | None = None) -> "Symbol":
        data = dict(terms or {})
        data[1] = data.get(1, 0) + c1
        return cls(c0, DirichletPoly(data))

    @property
    def c1(self) -> complex:
        return self.phi0[1]

    @property
    def frequencies(self) -> DirichletPoly:
        """The part of ``phi0`` with indices ``>= 2``."""
        return self.phi0.without(1)

    @property
    def is_affine(self) -> bool:
        """True when ``phi(s) = c0*s + c1``."""
        return not self.frequencies

    @property
    def is_vertical_shift_form(self) -> bool:
        """True when ``phi(s) = c0*s + i*tau`` with real ``tau``."""
        return self.is_affine and self.c1.real == 0

    def __call__(self, s):
        return self.c0 * s + self.phi0(s)

    def __str__(self):
        return format_symbol(self)


_FLOAT = re.compile(r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?")
_UINT = re.compile(r"\d+")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg, pos=None):
        raise SymbolParseError(msg, self.text, self.pos if pos is None else pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, s: str) -> bool:
        self.skip()
        return self.text.startswith(s, self.pos)

    def eat(self, s: str):
        if not self.peek(s):
            self.error(f"expected {s!r}")
        self.pos += len(s)

    def at_end(self) -> bool:
        self.skip()
        return self.pos >= len(self.text)

    def float_(self) -> tuple[float, str]:
        self.skip()
        m = _FLOAT.match(self.text, self.pos)
        if not m:
            self.error("expected a number")
        self.pos = m.end()
        return float(m.group()), m.group()

    def is_s_token(self) -> bool:
        # "s" that is not the start of "^-s" continuation and not followed by an identifier char
        self.skip()
        if not self.text.startswith("s", self.pos):
            return False
        nxt = self.text[self.pos + 1:self.pos + 2]
        return not (nxt.isalnum() or nxt == "_")

    def complex_(self) -> complex:
        self.skip()
        if self.peek("("):
            self.eat("(")
            re_, _ = self.float_()
            self.skip()
            if self.pos < len(self.text) and self.text[self.pos] in "+-":
                sign = 1.0 if self.text[self.pos] == "+" else -1.0
                self.pos += 1
            else:
                self.error("expected '+' or '-' inside complex literal")
            self.skip()
            m = _FLOAT.match(self.text, self.pos)
            if not m or m.group()[0] in "+-":
                self.error("expected an unsigned imaginary magnitude")
            self.pos = m.end()
            im = sign * float(m.group())
            self.eat("i")
            self.eat(")")
            return complex(re_, im)
        value, _ = self.float_()
        if self.text.startswith("i", self.pos):
            self.pos += 1
            return complex(0.0, value)
        return complex(value, 0.0)

    def frequency(self) -> int:
        self.skip()
        start = self.pos
        m = _UINT.match(self.text, self.pos)
        if not m:
            self.error("expected an integer frequency")
        self.pos = m.end()
        n = int(m.group())
        if n < 1:
            self.error("frequency must be >= 1", start)
        self.eat("^-s")
        return n

    def part(self, acc: dict, state: dict):
        self.skip()
        start = self.pos
        if self.is_s_token():
            self.pos += 1
            self._set_c0(state, 1, start)
            return
        # uint "^-s" without coefficient
        m = _UINT.match(self.text, self.pos)
        if m and self.text.startswith("^-s", m.end()):
            n = self.frequency()
            acc[n] = acc.get(n, 0) + 1.0
            return
        coeff_start = self.pos
        coeff = self.complex_()
        literal = self.text[coeff_start:self.pos].strip()
        if self.peek("*"):
            self.eat("*")
            if self.is_s_token():
                if not _UINT.fullmatch(literal):
                    self.error("c0 must be a non-negative integer", coeff_start)
                self.pos += 1
                self._set_c0(state, int(literal), start)
                return
            n = self.frequency()
            acc[n] = acc.get(n, 0) + coeff
            return
        acc[1] = acc.get(1, 0) + coeff

    def _set_c0(self, state, value, pos):
        if state.get("c0") is not None:
            self.error("the s-term may appear only once", pos)
        state["c0"] = value


def _parse(text: str, allow_s: bool):
    p = _Parser(text)
    acc: dict[int, complex] = {}
    state: dict = {"c0": None}
    if p.at_end():
        p.error("empty input")
    while True:
        p.part(acc, state)
        if p.at_end():
            break
        if not p.peek("+"):
            p.error("expected '+'")
        p.eat("+")
        if p.at_end():
            p.error("dangling '+'")
    if not allow_s and state["c0"] is not None:
        p.error("unexpected s-term in a Dirichlet polynomial", 0)
    for n, c in acc.items():
        if not (math.isfinite(c.real) and math.isfinite(c.imag)):
            p.error(f"non-finite coefficient for index {n}", 0)
    return state["c0"], DirichletPoly(acc)


def parse_symbol(text: str) -> Symbol:
    """Parse symbol text, e.g. ``"2*s + (0.5+0i) + 1*2^-s"``."""
    c0, phi0 = _parse(text, allow_s=True)
    return Symbol(0 if c0 is None else c0, phi0)


def parse_dirichlet_poly(text: str) -> DirichletPoly:
    """Parse a Dirichlet polynomial (symbol grammar without the s-term)."""
    return _parse(text, allow_s=False)[1]


def parse_any(text: str) -> Symbol | DirichletPoly:
    """Symbol when the text has an s-term, Dirichlet polynomial otherwise."""
    c0, phi0 = _parse(text, allow_s=True)
    return phi0 if c0 is None else Symbol(c0, phi0)


def format_complex(c: complex) -> str:
    if c.imag == 0:
        return repr(float(c.real))
    sign = "-" if math.copysign(1.0, c.imag) < 0 else "+"
    return f"({float(c.real)!r}{sign}{abs(float(c.imag))!r}i)"


def format_dirichlet_poly(f: DirichletPoly) -> str:
    parts = []
    for n in sorted(f.support):
        c = f[n]
        parts.append(format_complex(c) if n == 1 else f"{format_complex(c)}*{n}^-s")
    return " + ".join(parts) if parts else "0.0"


def format_symbol(sym: Symbol) -> str:
    """Canonical text; ``parse_symbol(format_symbol(x)) == x``."""
    parts = []
    if sym.c0 == 1:
        parts.append("s")
    elif sym.c0 > 1:
        parts.append(f"{sym.c0}*s")
    if sym.phi0:
        parts.append(format_dirichlet_poly(sym.phi0))
    return " + ".join(parts) if parts else "0.0"
