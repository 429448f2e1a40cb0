"""Hermite polynomials and the exact norm of ``n**-phi`` for quadratic symbols.

For ``phi0 = c1 + c2*2**-s + c4*4**-s`` one has, with ``z = 2**-s``,

    n**-phi0 = n**-c1 * exp(2*lam*(x z) - (x z)**2) = n**-c1 * sum_k H_k(lam) x**k z**k / k!

where ``x = sqrt(c4 log n)`` and ``lam = -c2 sqrt(log n) / (2 sqrt(c4))``, so the
Wiener norm is ``n**-Re c1 * sum_k |H_k(lam)| x**k / k!``.  ``H_k`` are the
physicists' Hermite polynomials and ``|H_k(lam)| <= (2**k k!)**0.5 exp(lam**2/2)``
(Indritz) supplies the tail bounds used below.

The module also hosts the boundary-point test for powers of a one-variable
symbol: ``||psi**j||`` stays bounded iff every point where ``|psi|`` reaches 1
on the circle is ordinary, i.e. the first non-linear coefficient of
``log psi(e^{i(theta0 + t)})`` is not purely imaginary.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .dirichlet import DEFAULT_TOLERANCE, UNIT_ROUNDOFF, CertifiedNorm

HERMITE_MAX_DEGREE = 400
_RESCALE = 2.0**500


class InapplicableError(ValueError):
    """A bound was requested outside its admissible parameter range."""


@dataclass(frozen=True)
class HermiteParams:
    """``x_n = sqrt(c4 log n)`` and ``lambda_n = -c2 sqrt(log n) / (2 sqrt(c4))``."""

    n: int
    c2: float
    c4: float
    x_n: float = field(init=False)
    lambda_n: float = field(init=False)

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("n must be >= 2")
        if not (self.c2 > 0 and self.c4 > 0):
            raise ValueError("c2 and c4 must be positive")
        log_n = math.log(self.n)
        object.__setattr__(self, "x_n", math.sqrt(self.c4 * log_n))
        object.__setattr__(self, "lambda_n", -self.c2 * math.sqrt(log_n) / (2.0 * math.sqrt(self.c4)))


def hermite_scaled(k: int, lam: float) -> tuple[float, int]:
    """``H_k(lam) = mantissa * 2**exponent`` without intermediate overflow."""
    if not 0 <= k <= HERMITE_MAX_DEGREE:
        raise ValueError(f"degree {k} outside [0, {HERMITE_MAX_DEGREE}]")
    prev, cur, exp = 1.0, 2.0 * lam, 0
    if k == 0:
        return 1.0, 0
    for j in range(1, k):
        prev, cur = cur, 2.0 * lam * cur - 2.0 * j * prev
        if abs(cur) > _RESCALE:
            prev /= _RESCALE
            cur /= _RESCALE
            exp += 500
    m, e = math.frexp(cur)
    return m, e + exp


def hermite(k: int, lam: float) -> float:
    """Physicists' Hermite polynomial ``H_k(lam)`` by the three-term recurrence.

    Raises ``ValueError`` for ``k > 400`` and ``OverflowError`` when the value
    itself is not representable as a double.
    """
    m, e = hermite_scaled(k, lam)
    return math.ldexp(m, e)


def log_abs_hermite(k: int, lam: float) -> float:
    """``log |H_k(lam)|`` (``-inf`` at a zero)."""
    m, e = hermite_scaled(k, lam)
    if m == 0:
        return -math.inf
    return math.log(abs(m)) + e * math.log(2.0)


def log_indritz_bound(k: int, lam: float) -> float:
    return 0.5 * (k * math.log(2.0) + math.lgamma(k + 1)) + 0.5 * lam * lam


def _scaled_terms(x: float, lam: float, k_max: int):
    """``T_k = H_k(lam) x**k / k!`` for ``k <= k_max`` and running error bounds.

    ``T_{k+1} = (2 lam x T_k - 2 x**2 T_{k-1}) / (k+1)``; the error bound is
    propagated through the same recurrence with absolute values.
    """
    T = np.zeros(k_max + 1)
    err = np.zeros(k_max + 1)
    T[0] = 1.0
    if k_max >= 1:
        T[1] = 2.0 * lam * x
        err[1] = UNIT_ROUNDOFF * abs(T[1])
    a, b = 2.0 * lam * x, 2.0 * x * x
    u = UNIT_ROUNDOFF
    for k in range(1, k_max):
        p, q = a * T[k], b * T[k - 1]
        T[k + 1] = (p - q) / (k + 1)
        err[k + 1] = (abs(a) * err[k] + b * err[k - 1] + 3 * u * (abs(p) + abs(q))) / (k + 1) + u * abs(T[k + 1])
    return T, err


def norm_via_hermite(params: HermiteParams, c1_re: float, tolerance: float = DEFAULT_TOLERANCE,
                     k_guard: int = HERMITE_MAX_DEGREE) -> CertifiedNorm:
    """Bracket ``n**-Re c1 * sum_k |H_k(lam_n)| x_n**k / k!``.

    Terms are summed until the Indritz majorant of the tail,
    ``sum_{k>K} (x sqrt 2)**k / sqrt(k!) * exp(lam**2 / 2)``, drops below
    ``tolerance / 4`` of the partial sum.  Not reaching that by ``k_guard``
    yields ``converged=False``.
    """
    x, lam = params.x_n, params.lambda_n
    T, err = _scaled_terms(x, lam, k_guard)
    absT = np.abs(T).tolist()
    err = err.tolist()
    log_b = math.log(2.0 * x * x) if x > 0 else -math.inf
    partial, rounding = 0.0, 0.0
    converged, K = False, k_guard
    for k in range(k_guard + 1):
        partial += absT[k]
        rounding += err[k] + UNIT_ROUNDOFF * partial
        if x == 0:
            converged, K = True, k
            break
        q2 = 2.0 * x * x / (k + 2)
        if q2 < 1:
            log_next = 0.5 * ((k + 1) * log_b - math.lgamma(k + 2)) + 0.5 * lam * lam
            tail = math.exp(log_next) / (1.0 - math.sqrt(q2))
            if 4.0 * tail <= tolerance * partial:
                converged, K = True, k
                break
    if not converged:
        tail = math.inf
    if not math.isfinite(partial):
        raise OverflowError("Hermite series overflowed")
    scale = params.n ** (-c1_re)
    lower = max(0.0, partial - tail - rounding) * scale
    upper = (partial + tail + rounding) * scale if converged else math.inf
    return CertifiedNorm(lower, upper, exact_to_index=1, terms_used=K + 1, converged=converged,
                         rounding=rounding * scale)


def hermite_series_sum(x: float, lam: float, k_guard: int = HERMITE_MAX_DEGREE) -> float:
    """``sum_{k <= k_guard} |H_k(lam)| x**k / k!``."""
    T, _ = _scaled_terms(x, lam, k_guard)
    return math.fsum(np.abs(T))


DEFAULT_LAMBDA_GRID = tuple(round(-10.0 + 0.1 * i, 10) for i in range(201))


def indritz_check(k_max: int = 60, lambda_grid: Sequence[float] = DEFAULT_LAMBDA_GRID) -> bool:
    """``|H_k(lam)| <= (2**k k!)**0.5 exp(lam**2/2)`` at every sampled ``(k, lam)``."""
    slack = math.log1p(1e-12)
    for lam in lambda_grid:
        for k in range(k_max + 1):
            if log_abs_hermite(k, lam) > log_indritz_bound(k, lam) + slack:
                return False
    return True


DEFAULT_X_GRID = tuple(0.25 * i for i in range(21))
DEFAULT_LAMBDA16_GRID = tuple(-5.0 + 0.5 * i for i in range(21))


def bound16_check(a: float, x_grid: Sequence[float] = DEFAULT_X_GRID,
                  lambda_grid: Sequence[float] = DEFAULT_LAMBDA16_GRID,
                  k_guard: int = HERMITE_MAX_DEGREE) -> bool:
    """``sum_k |H_k(lam)| x**k / k! <= (1 - 1/a)**-0.5 exp(a x**2 + lam**2/2)`` on the grid."""
    if not a > 1:
        raise ValueError("a must be > 1")
    const = (1.0 - 1.0 / a) ** -0.5
    for x in x_grid:
        if x < 0:
            raise ValueError("x must be non-negative")
        for lam in lambda_grid:
            lhs = hermite_series_sum(x, lam, k_guard)
            if lhs > const * math.exp(a * x * x + 0.5 * lam * lam) * (1 + 1e-9):
                return False
    return True


def fit_sqrt_growth_constant(x_grid: Sequence[float] = DEFAULT_X_GRID,
                             lambda_grid: Sequence[float] = DEFAULT_LAMBDA16_GRID) -> float:
    """Smallest ``C`` with ``sum_k |H_k| x**k / k! <= C (1+x)**0.5 exp(x**2 + lam**2/2)`` on the grid.

    Measured only; the grid says nothing about the supremum over all ``x``.
    """
    return max(hermite_series_sum(x, lam) / (math.sqrt(1 + x) * math.exp(x * x + 0.5 * lam * lam))
               for x in x_grid for lam in lambda_grid)


def lower_bound19(params: HermiteParams, c1_re: float) -> float:
    """``n**(-Re c1 + c2**2/(8 c4) + c4)``, valid when ``c2 <= 4 c4``."""
    if params.c2 > 4 * params.c4:
        raise InapplicableError(f"needs c2 <= 4*c4, got c2={params.c2}, c4={params.c4}")
    return float(params.n) ** (-c1_re + params.c2**2 / (8 * params.c4) + params.c4)


# ---------------------------------------------------------------------------
# Boundary points of one-variable symbols

def exp_poly_taylor(q: Sequence[complex], degree: int) -> list[complex]:
    """Taylor coefficients of ``exp(q(z))`` up to ``z**degree`` (``q`` a polynomial)."""
    q = [complex(c) for c in q]
    out = [complex(np.exp(q[0]))] if q else [1.0 + 0j]
    dq = [j * q[j] for j in range(1, len(q))]
    for m in range(1, degree + 1):
        acc = [dq[j - 1] * out[m - j] for j in range(1, min(m, len(dq)) + 1)]
        out.append(complex(math.fsum(v.real for v in acc), math.fsum(v.imag for v in acc)) / m)
    return out


class BoundaryPoint(NamedTuple):
    theta0: float
    order: int | None
    alpha: complex | None
    ordinary: bool | None
    note: str = ""


NEWMAN_GRID = 4096
NEWMAN_BISECTIONS = 40
NEWMAN_ORDER = 6
_MAX_TOL = 1e-6
_ZERO_REL = 1e-9
_IMAG_REL = 1e-9
_CONTACT_REL = 1e-6


def _shifted_taylor(coeffs: np.ndarray, theta: float, order: int) -> np.ndarray:
    """Coefficients ``g_m`` of ``p(e^{i(theta + t)}) = sum_m g_m t**m``."""
    k = np.arange(coeffs.size)
    rot = coeffs * np.exp(1j * k * theta)
    return np.array([np.sum(rot * (1j * k) ** m) / math.factorial(m) for m in range(order + 1)])


def _modulus_taylor(g: np.ndarray) -> np.ndarray:
    """Coefficients of ``|p|**2 - 1`` in ``t`` from those of ``p``."""
    q = np.array([sum(g[a] * np.conj(g[m - a]) for a in range(m + 1)).real for m in range(g.size)])
    q[0] -= 1.0
    return q


def _log_series(g: np.ndarray) -> np.ndarray:
    """Coefficients of ``log(sum g_m t**m)``; ``g_0 != 0``."""
    L = np.zeros(g.size, dtype=complex)
    L[0] = np.log(g[0])
    for m in range(1, g.size):
        s = m * g[m] - sum(j * L[j] * g[m - j] for j in range(1, m))
        L[m] = s / (m * g[0])
    return L


def _bisect(f, lo: float, hi: float, steps: int) -> float:
    flo = f(lo)
    for _ in range(steps):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def newman_boundary_analysis(taylor_poly: Sequence[complex]) -> list[BoundaryPoint]:
    """Classify the points where ``|p(e^{i theta})| = 1`` for a polynomial ``p``.

    ``max |p|`` on the circle must equal 1 within ``1e-6``.  Returns one entry
    per maximum point with the first order ``k > 1`` at which the log-expansion
    coefficient ``alpha_k`` is non-zero and whether it is ordinary
    (``Re alpha_k != 0``).  A unimodular monomial is reported as one entry with
    note ``"monomial"``; no non-zero ``alpha_k`` up to order 6 gives an entry
    with ``order=None`` and note ``"undetermined"``.
    """
    coeffs = np.array([complex(c) for c in taylor_poly])
    nz = np.flatnonzero(coeffs)
    if nz.size == 0:
        raise ValueError("zero polynomial")
    if nz.size == 1:
        d = int(nz[0])
        if abs(abs(coeffs[d]) - 1) > _MAX_TOL:
            raise ValueError(f"max modulus {abs(coeffs[d])} differs from 1")
        alpha1 = 1j * d
        return [BoundaryPoint(0.0, 1 if d else None, alpha1 if d else None, True, "monomial")]

    k = np.arange(coeffs.size)
    mass = np.abs(coeffs)
    theta = 2 * np.pi * np.arange(NEWMAN_GRID) / NEWMAN_GRID
    vals = np.abs(np.exp(1j * np.outer(theta, k)) @ coeffs) ** 2
    step = 2 * np.pi / NEWMAN_GRID

    def deriv(order):
        return lambda th: _modulus_taylor(_shifted_taylor(coeffs, th, order))[order] * math.factorial(order)

    is_peak = (vals >= np.roll(vals, 1)) & (vals >= np.roll(vals, -1)) & (vals > (1 - 1e-3) ** 2)
    found: list[float] = []
    for i in np.flatnonzero(is_peak):
        th = _bisect(deriv(1), theta[i] - step, theta[i] + step, NEWMAN_BISECTIONS)
        # a degenerate maximum is located through the first odd derivative with a simple zero
        q = _modulus_taylor(_shifted_taylor(coeffs, th, NEWMAN_ORDER + 1))
        for m in range(2, NEWMAN_ORDER + 1, 2):
            scale = mass.sum() * np.sum(mass * k.astype(float) ** m) / math.factorial(m)
            if abs(q[m]) > _CONTACT_REL * scale:
                if m > 2:
                    th = _bisect(deriv(m - 1), th - step, th + step, NEWMAN_BISECTIONS + 20)
                break
        th = th % (2 * np.pi)
        if not any(abs((th - f + np.pi) % (2 * np.pi) - np.pi) < step for f in found):
            found.append(th)

    peak = max((abs(np.polyval(coeffs[::-1], np.exp(1j * th))) for th in found), default=0.0)
    peak = max(peak, math.sqrt(vals.max()))
    if abs(peak - 1) > _MAX_TOL:
        raise ValueError(f"max modulus {peak} differs from 1 by more than {_MAX_TOL}")

    out = []
    for th in sorted(found):
        g = _shifted_taylor(coeffs, th, NEWMAN_ORDER)
        if abs(abs(g[0]) - 1) > _MAX_TOL:
            continue
        L = _log_series(g)
        entry = BoundaryPoint(float(th), None, None, None, "undetermined")
        for m in range(2, NEWMAN_ORDER + 1):
            scale = np.sum(mass * k.astype(float) ** m) / math.factorial(m) / abs(g[0])
            if abs(L[m]) > _ZERO_REL * scale:
                a = complex(L[m])
                entry = BoundaryPoint(float(th), m, a, abs(a.real) > _IMAG_REL * abs(a))
                break
        out.append(entry)
    return out
