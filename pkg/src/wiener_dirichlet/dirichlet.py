"""Finite Dirichlet polynomials ``f(s) = sum a_n n**-s`` and their Wiener norm.

Products are Dirichlet convolutions, ``c_n = sum_{ij = n} a_i b_j``, and the
norm is the l1 norm of the coefficients.  :func:`n_power_expand` expands
``n**-phi(s)`` for a symbol ``phi(s) = c0*s + c1 + sum c_m m**-s`` and returns
a certified bracket for its norm.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, replace
from typing import TYPE_CHECKING

import numpy as np

if TYPE_CHECKING:
    from .symbol import Symbol

UNIT_ROUNDOFF = 2.0**-53

DEFAULT_INDEX_CUTOFF = 2**14
DEFAULT_TOLERANCE = 1e-9
DEFAULT_MAX_SUPPORT = 2_000_000


class UnconvergedError(RuntimeError):
    """A truncated computation could not reach the requested accuracy."""


class DirichletPoly:
    """Finite Dirichlet polynomial stored as ``{n: a_n}`` with ``n >= 1``.

    Zero coefficients are purged on construction, so two polynomials are equal
    exactly when their coefficient maps are.
    """

    __slots__ = ("_terms",)

    # keep numpy scalars from broadcasting over the poly; they defer to __rmul__
    __array_ufunc__ = None

    def __init__(self, terms: Mapping[int, complex] | Iterable[tuple[int, complex]] | None = None):
        items = terms.items() if isinstance(terms, Mapping) else (terms or ())
        clean: dict[int, complex] = {}
        for n, c in items:
            if isinstance(n, bool) or int(n) != n or n < 1:
                raise ValueError(f"Dirichlet indices must be integers >= 1, got {n!r}")
            n = int(n)
            c = clean.get(n, 0) + complex(c)
            if c != 0:
                clean[n] = c
            else:
                clean.pop(n, None)
        self._terms = clean

    @classmethod
    def _raw(cls, terms: dict) -> "DirichletPoly":
        obj = cls.__new__(cls)
        obj._terms = {n: c for n, c in terms.items() if c != 0}
        return obj

    @classmethod
    def monomial(cls, n: int, coeff: complex = 1.0) -> "DirichletPoly":
        return cls({n: coeff})

    @classmethod
    def one(cls) -> "DirichletPoly":
        return cls({1: 1.0})

    @classmethod
    def zero(cls) -> "DirichletPoly":
        return cls()

    @property
    def terms(self) -> dict[int, complex]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    @property
    def support(self) -> frozenset[int]:
        return frozenset(self._terms)

    def __getitem__(self, n: int) -> complex:
        return self._terms.get(n, 0j)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, DirichletPoly):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def norm(self) -> float:
        return wiener_norm(self)

    def __add__(self, other):
        if not isinstance(other, DirichletPoly):
            other = DirichletPoly({1: other})
        out = dict(self._terms)
        for n, c in other._terms.items():
            out[n] = out.get(n, 0) + c
        return DirichletPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return DirichletPoly._raw({n: -c for n, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, DirichletPoly):
            return dirichlet_mul(self, other)
        c = complex(other)
        return DirichletPoly._raw({n: c * v for n, v in self._terms.items()})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers are supported")
        result, base = DirichletPoly.one(), self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def truncate(self, cutoff: int) -> "DirichletPoly":
        """Keep the terms with index ``<= cutoff``."""
        return DirichletPoly._raw({n: c for n, c in self._terms.items() if n <= cutoff})

    def dilate(self, m: int) -> "DirichletPoly":
        """Multiply by ``m**-s``: every index ``n`` becomes ``n*m``."""
        return DirichletPoly._raw({n * m: c for n, c in self._terms.items()})

    def without(self, n: int) -> "DirichletPoly":
        return DirichletPoly._raw({k: c for k, c in self._terms.items() if k != n})

    @property
    def min_index(self) -> int | None:
        return min(self._terms, default=None)

    def __call__(self, s):
        return evaluate(self, s)

    def __repr__(self):
        if not self._terms:
            return "DirichletPoly(0)"
        body = " + ".join(f"({self._terms[n]:g})*{n}^-s" for n in sorted(self._terms))
        return f"DirichletPoly({body})"


def dirichlet_mul(f: DirichletPoly, g: DirichletPoly, index_cutoff: int | None = None) -> DirichletPoly:
    """Dirichlet convolution of ``f`` and ``g``.

    With ``index_cutoff`` only output indices ``<= index_cutoff`` are formed;
    these are exact, since indices only grow under multiplication.
    """
    out: dict[int, complex] = {}
    gt = sorted(g.items())
    for i, a in f.items():
        if index_cutoff is not None and i > index_cutoff:
            continue
        for j, b in gt:
            n = i * j
            if index_cutoff is not None and n > index_cutoff:
                break
            out[n] = out.get(n, 0) + a * b
    return DirichletPoly._raw(out)


def wiener_norm(f: DirichletPoly) -> float:
    """``sum |a_n|`` over the support."""
    return math.fsum(abs(c) for c in f._terms.values())


def evaluate(f: DirichletPoly, s):
    """``f(s)`` for scalar or array ``s`` (direct summation)."""
    s_arr = np.asarray(s, dtype=complex)
    total = np.zeros(s_arr.shape, dtype=complex)
    for n, c in f.items():
        total = total + c * np.exp(-s_arr * math.log(n))
    return complex(total) if total.ndim == 0 else total


@dataclass(frozen=True)
class CertifiedNorm:
    """Bracket ``lower <= ||.|| <= upper`` for a Wiener norm.

    ``exact_to_index`` is the index up to which the companion coefficient data
    is exact, ``terms_used`` the number of series terms summed, ``rounding``
    the floating-point allowance already folded into the bracket.  An
    unconverged bracket may carry ``suggested_cutoff`` for a retry.
    """

    lower: float
    upper: float
    exact_to_index: int = 1
    terms_used: int = 0
    converged: bool = True
    rounding: float = 0.0
    suggested_cutoff: int | None = None

    def __post_init__(self):
        if not (0.0 <= self.lower <= self.upper):
            raise ValueError(f"invalid bracket [{self.lower}, {self.upper}]")

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lower + self.upper)

    @property
    def width(self) -> float:
        return self.upper - self.lower

    @property
    def relative_width(self) -> float:
        if self.upper == 0:
            return 0.0
        return self.width / self.lower if self.lower > 0 else math.inf

    @property
    def is_exact(self) -> bool:
        return self.lower == self.upper

    def contains(self, value: float, rel: float = 0.0) -> bool:
        slack = rel * abs(value)
        return self.lower - slack <= value <= self.upper + slack

    def overlaps(self, other: "CertifiedNorm") -> bool:
        return self.lower <= other.upper and other.lower <= self.upper

    def scaled(self, factor: float) -> "CertifiedNorm":
        if factor < 0:
            raise ValueError("scale factor must be non-negative")
        return replace(self, lower=self.lower * factor, upper=self.upper * factor,
                       rounding=self.rounding * factor)


def _exp_tail(y: float, k: int) -> float:
    """Upper bound for ``sum_{j > k} y**j / j!``."""
    if y == 0:
        return 0.0
    q = y / (k + 2)
    if q >= 1:
        return math.exp(y)
    log_first = (k + 1) * math.log(y) - math.lgamma(k + 2)
    return math.exp(log_first) / (1.0 - q)


def default_term_count(n: int, phi0_norm: float, index_cutoff: int) -> int:
    """``max(floor(log2 N), ceil(e * log n * ||phi0||) + 10)``."""
    return max(int(math.floor(math.log2(index_cutoff))),
               int(math.ceil(math.e * math.log(n) * phi0_norm)) + 10)


def n_power_expand(n: int, symbol: "Symbol", index_cutoff: int = DEFAULT_INDEX_CUTOFF,
                   tolerance: float = DEFAULT_TOLERANCE, max_terms: int | None = None,
                   max_support: int = DEFAULT_MAX_SUPPORT) -> tuple[DirichletPoly, CertifiedNorm]:
    """Expand ``n**-phi`` for ``phi(s) = c0*s + c1 + phi0(s)``.

    Uses ``n**-phi(s) = (n**c0)**-s * n**-c1 * exp(-phi0(s) log n)``.

    Returns the Dirichlet polynomial of ``n**-phi`` restricted to indices
    ``<= index_cutoff * n**c0`` (exact: ``phi0**k`` has no index below
    ``(min index)**k``, so only finitely many powers reach the window), and a
    :class:`CertifiedNorm` for the full ``||n**-phi||``.  The norm bracket is
    ``||P_K|| +- (tail + rounding)`` scaled by ``n**-Re c1``, where ``P_K`` is
    the exactly expanded partial sum of the exponential series and the tail is
    bounded by ``sum_{k>K} (log n ||phi0||)**k / k!``.  Terms are added beyond
    the default count until the truncation part of the bracket has relative
    width below ``tolerance``; if ``max_terms`` or ``max_support`` is hit first the bracket comes
    back with ``converged=False``.
    """
    if n < 1 or int(n) != n:
        raise ValueError(f"n must be a positive integer, got {n}")
    if index_cutoff < 1:
        raise ValueError("index_cutoff must be >= 1")
    if not tolerance > 0:
        raise ValueError("tolerance must be > 0")
    n = int(n)
    L = math.log(n)
    c0, c1 = symbol.c0, symbol.c1
    phi0 = symbol.frequencies
    shift = n**c0
    prefactor = complex(np.exp(-c1 * L))
    scale = n ** (-c1.real)
    window_top = index_cutoff * shift

    if n == 1 or not phi0:
        poly = DirichletPoly({shift: prefactor}) if shift <= window_top else DirichletPoly()
        value = abs(prefactor) if n > 1 else 1.0
        return poly, CertifiedNorm(value, value, exact_to_index=window_top, terms_used=1)

    a = phi0.norm()
    m = len(phi0)
    y = L * a
    k_default = default_term_count(n, a, index_cutoff)
    if max_terms is None:
        max_terms = 4 * k_default + 200
    k_window = int(math.floor(math.log(index_cutoff) / math.log(phi0.min_index) + 1e-12))

    acc: dict[int, complex] = {}
    window: dict[int, complex] = {}
    # term = (-log n)**k / k! * phi0**k, carried scaled so that neither factor
    # overflows on its own; its norm is at most abs_weight = (log n ||phi0||)**k / k!
    term = DirichletPoly.one()
    abs_weight = 1.0
    rounding_mass = 0.0
    converged = False
    k = 0
    tail = math.exp(y)
    partial = 0.0
    while True:
        for idx, c in term.items():
            acc[idx] = acc.get(idx, 0) + c
        if k <= k_window:
            for idx, c in term.items():
                if idx <= index_cutoff:
                    window[idx] = window.get(idx, 0) + c
        rounding_mass += (k * (m + 1) + 4) * abs_weight
        if k >= k_default:
            partial = math.fsum(abs(c) for c in acc.values())
            tail = _exp_tail(y, k)
            # 2*tail/(partial - tail) <= tolerance
            if 4.0 * tail <= tolerance * partial:
                converged = True
                break
        if k >= max_terms or len(term) * m > max_support:
            partial = math.fsum(abs(c) for c in acc.values())
            tail = _exp_tail(y, k)
            break
        k += 1
        term = dirichlet_mul(term, phi0) * (-L / k)
        abs_weight *= y / k

    rounding = 2.0 * UNIT_ROUNDOFF * rounding_mass
    lower = max(0.0, partial - tail - rounding) * scale
    upper = (partial + tail + rounding) * scale
    poly = DirichletPoly._raw({idx * shift: prefactor * c for idx, c in window.items()})
    norm = CertifiedNorm(lower, upper, exact_to_index=window_top, terms_used=k + 1,
                         converged=converged, rounding=rounding * scale)
    return poly, norm


_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
_SIGMA_EDGE = 1e-12


def sample_abscissae(count: int) -> np.ndarray:
    """Deterministic sample heights ``t_0 = 0, t_1, ...``; prefixes are nested."""
    i = np.arange(count, dtype=float)
    return 64.0 * i * _GOLDEN + np.where(i > 0, 1e3 * ((i * _GOLDEN) % 1.0), 0.0)


def norm_sup_lower(f: DirichletPoly, sample_count: int = 4096) -> float:
    """Lower bound for ``sup_{Re s > 0} |f(s)|`` from samples ``|f(eps + i t)|``.

    The sample set for ``k`` samples is a prefix of the set for ``k + 1``, so
    the bound never decreases as ``sample_count`` grows.
    """
    if sample_count < 1:
        raise ValueError("sample_count must be >= 1")
    if not f:
        return 0.0
    best = 0.0
    for start in range(0, sample_count, 8192):
        t = sample_abscissae(min(sample_count, start + 8192))[start:]
        vals = np.abs(evaluate(f, _SIGMA_EDGE + 1j * t))
        best = max(best, float(vals.max()))
    return min(best, wiener_norm(f))
