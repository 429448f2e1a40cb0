"""Sparse polynomials (and truncated Taylor series) in finitely many of the
variables ``z_1, z_2, ...``.

A multi-index is a plain tuple of non-negative ints, position ``j - 1``
holding the exponent of ``z_j``, with trailing zeros stripped so that equal
monomials hash equally: ``z_1**2 * z_3`` is ``(2, 0, 1)`` and the constant
monomial is ``()``.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Mapping, Sequence

MultiIndex = tuple[int, ...]


def canon(alpha: Iterable[int]) -> MultiIndex:
    """Canonical form of a multi-index (trailing zeros stripped, validated)."""
    alpha = tuple(int(a) for a in alpha)
    if any(a < 0 for a in alpha):
        raise ValueError(f"negative exponent in multi-index {alpha}")
    end = len(alpha)
    while end and alpha[end - 1] == 0:
        end -= 1
    return alpha[:end]


def madd(a: MultiIndex, b: MultiIndex) -> MultiIndex:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, e in enumerate(b):
        out[i] += e
    return tuple(out)


def degree(alpha: MultiIndex) -> int:
    return sum(alpha)


def from_sparse(slots: Mapping[int, int]) -> MultiIndex:
    """Build a multi-index from a ``{slot: exponent}`` map (slots are 1-based)."""
    if not slots:
        return ()
    vec = [0] * max(slots)
    for j, e in slots.items():
        if j < 1:
            raise ValueError(f"slots are 1-based, got {j}")
        vec[j - 1] = e
    return canon(vec)


def to_sparse(alpha: MultiIndex) -> dict[int, int]:
    return {j: e for j, e in enumerate(alpha, start=1) if e}


class MultiPoly:
    """Finite sum ``sum a_alpha z**alpha`` with complex coefficients.

    Instances are immutable; zero coefficients are never stored.
    """

    __slots__ = ("_terms",)

    # keep numpy scalars from broadcasting over the poly; they defer to __rmul__
    __array_ufunc__ = None

    def __init__(self, terms: Mapping[Iterable[int], complex] | None = None):
        clean: dict[MultiIndex, complex] = {}
        for alpha, c in (terms or {}).items():
            alpha = canon(alpha)
            c = complex(c)
            if c != 0:
                c = clean.get(alpha, 0) + c
                if c != 0:
                    clean[alpha] = c
                else:
                    clean.pop(alpha, None)
        self._terms = clean

    @classmethod
    def _raw(cls, terms: dict) -> "MultiPoly":
        obj = cls.__new__(cls)
        obj._terms = {a: c for a, c in terms.items() if c != 0}
        return obj

    @classmethod
    def monomial(cls, alpha: Iterable[int], coeff: complex = 1.0) -> "MultiPoly":
        return cls({tuple(alpha): coeff})

    @classmethod
    def constant(cls, c: complex) -> "MultiPoly":
        return cls({(): c})

    @classmethod
    def variable(cls, j: int) -> "MultiPoly":
        """The coordinate function ``z_j`` (1-based)."""
        return cls({(0,) * (j - 1) + (1,): 1.0})

    @property
    def terms(self) -> dict[MultiIndex, complex]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __getitem__(self, alpha) -> complex:
        return self._terms.get(canon(alpha), 0j)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def support(self) -> frozenset[MultiIndex]:
        return frozenset(self._terms)

    @property
    def n_slots(self) -> int:
        """Largest slot index carrying a non-zero exponent (0 for constants)."""
        return max((len(a) for a in self._terms), default=0)

    @property
    def total_degree(self) -> int:
        return max((sum(a) for a in self._terms), default=0)

    def norm(self) -> float:
        """Wiener norm ``sum |a_alpha|``."""
        return math.fsum(abs(c) for c in self._terms.values())

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(other)
        out = dict(self._terms)
        for a, c in other._terms.items():
            out[a] = out.get(a, 0) + c
        return MultiPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw({a: -c for a, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            c = complex(other)
            return MultiPoly._raw({a: c * v for a, v in self._terms.items()})
        return self.mul(other)

    __rmul__ = __mul__

    def mul(self, other: "MultiPoly", degree_cutoff: int | None = None) -> "MultiPoly":
        """Product, optionally dropping monomials of total degree above the cutoff."""
        out: dict[MultiIndex, complex] = {}
        for a, ca in self._terms.items():
            da = sum(a)
            for b, cb in other._terms.items():
                if degree_cutoff is not None and da + sum(b) > degree_cutoff:
                    continue
                key = madd(a, b)
                out[key] = out.get(key, 0) + ca * cb
        return MultiPoly._raw(out)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers are supported")
        result, base = MultiPoly.constant(1.0), self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def split_by_degree(self, cutoff: int) -> tuple["MultiPoly", "MultiPoly"]:
        keep = {a: c for a, c in self._terms.items() if sum(a) <= cutoff}
        drop = {a: c for a, c in self._terms.items() if sum(a) > cutoff}
        return MultiPoly._raw(keep), MultiPoly._raw(drop)

    def __call__(self, z: Sequence[complex]) -> complex:
        return evaluate(self, z)

    def __repr__(self):
        if not self._terms:
            return "MultiPoly(0)"
        parts = []
        for a in sorted(self._terms, key=lambda a: (sum(a), a)):
            mono = "*".join(f"z{j}" + (f"^{e}" if e > 1 else "") for j, e in to_sparse(a).items())
            parts.append(f"({self._terms[a]:g})" + (f"*{mono}" if mono else ""))
        return "MultiPoly(" + " + ".join(parts) + ")"


def evaluate(F: MultiPoly, z: Sequence[complex]) -> complex:
    """``sum a_alpha z**alpha``; every occupied slot needs a coordinate."""
    need = F.n_slots
    if len(z) < need:
        raise ValueError(f"polynomial uses slot {need} but only {len(z)} coordinates were given")
    z = [complex(v) for v in z[:need]]
    total = []
    for alpha, c in F.items():
        v = c
        for zj, e in zip(z, alpha):
            if e:
                v *= zj**e
        total.append(v)
    return complex(math.fsum(v.real for v in total), math.fsum(v.imag for v in total))
