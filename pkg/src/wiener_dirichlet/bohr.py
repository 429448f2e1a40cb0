"""Bohr lift between Dirichlet polynomials and polynomials on the infinite torus.

``n = p_1**a_1 ... p_r**a_r`` is sent to ``z_1**a_1 ... z_r**a_r``.  Evaluating
the lift at ``z[s] = (p_j**-s)_j`` gives back ``f(s)``, and the lift is an
isometry for the coefficient l1 norms.

The second half of the module minimizes ``Re phi(sigma + it)`` over ``t``.
Since the ``p_j**-it`` are dense in the torus, the infimum over the line is the
minimum of a trigonometric polynomial on a torus, which is searched on a grid
and refined locally.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import intlinalg
from .dirichlet import DEFAULT_INDEX_CUTOFF, DEFAULT_TOLERANCE, DirichletPoly, UnconvergedError, n_power_expand
from .multipoly import MultiPoly, evaluate
from .primes import exponent_vector, from_exponent_vector, nth_prime
from .symbol import Symbol


def bohr_lift(f: DirichletPoly) -> MultiPoly:
    """``sum a_n n**-s  ->  sum a_n z**alpha(n)``."""
    return MultiPoly._raw({exponent_vector(n): c for n, c in f.items()})


def bohr_unlift(F: MultiPoly) -> DirichletPoly:
    """Inverse of :func:`bohr_lift`."""
    return DirichletPoly._raw({from_exponent_vector(alpha): c for alpha, c in F.items()})


def z_of_s(s: complex, n_slots: int) -> list[complex]:
    """The point ``z[s] = (2**-s, 3**-s, 5**-s, ...)`` truncated to ``n_slots``."""
    return [complex(np.exp(-s * math.log(nth_prime(j)))) for j in range(1, n_slots + 1)]


def eval_at_point(F: MultiPoly, z: Sequence[complex]) -> complex:
    """``sum a_alpha z**alpha``; coordinates must lie in the closed unit disc."""
    for j, zj in enumerate(z[:F.n_slots], start=1):
        if abs(zj) > 1 + 1e-12:
            raise ValueError(f"coordinate z_{j} = {zj} lies outside the closed unit disc")
    return evaluate(F, z)


def transfer_symbol(symbol: Symbol, k_max: int = 8, index_cutoff: int = DEFAULT_INDEX_CUTOFF,
                    tolerance: float = DEFAULT_TOLERANCE) -> list[MultiPoly]:
    """Components ``phi~_k = lift(p_k**-phi)``, ``k = 1..k_max``.

    Each component is exact on Dirichlet indices ``<= index_cutoff * p_k**c0``.
    ``phi~(z[s]) = z[phi(s)]`` holds up to the discarded tail.  Raises
    :class:`UnconvergedError` when a component's norm bracket did not converge.
    """
    out = []
    for k in range(1, k_max + 1):
        poly, norm = n_power_expand(nth_prime(k), symbol, index_cutoff=index_cutoff, tolerance=tolerance)
        if not norm.converged:
            raise UnconvergedError(f"norm of p_{k}**-phi did not converge: {norm}")
        out.append(bohr_lift(poly))
    return out


def multiplicative_independence(freqs: Iterable[int]) -> bool:
    """True iff the logarithms of the (distinct) integers are linearly independent over Q."""
    freqs = sorted(set(freqs))
    if any(q < 2 for q in freqs):
        raise ValueError("frequencies must be >= 2")
    if not freqs:
        return True
    vecs = [exponent_vector(q) for q in freqs]
    width = max(len(v) for v in vecs)
    rows = [list(v) + [0] * (width - len(v)) for v in vecs]
    return intlinalg.rank(rows) == len(freqs)


def torus_sup_lower(F: MultiPoly, sample_count: int = 4096) -> float:
    """Lower bound for ``sup |F|`` over the polydisc, sampled on the torus ``|z_j| = 1``."""
    J = F.n_slots
    if not F:
        return 0.0
    if J == 0:
        return abs(F[()])
    alphas = np.array([list(a) + [0] * (J - len(a)) for a, _ in F.items()], dtype=float)
    coeffs = np.array([c for _, c in F.items()])
    i = np.arange(sample_count, dtype=float)[:, None]
    irr = np.sqrt(np.array([nth_prime(j) for j in range(1, J + 1)], dtype=float))
    theta = 2 * np.pi * ((i * irr) % 1.0)
    vals = np.abs(np.exp(1j * theta @ alphas.T) @ coeffs)
    return float(min(vals.max(), F.norm()))


@dataclass(frozen=True)
class LineInfQuery:
    sigma: float
    grid_per_dim: int = 256
    refine_iters: int = 50

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValueError("sigma must be > 0")
        if self.grid_per_dim < 8:
            raise ValueError("grid_per_dim must be >= 8")
        if self.refine_iters < 0:
            raise ValueError("refine_iters must be >= 0")


class LineInfimum(NamedTuple):
    numeric_min: float
    certified_lower: float


@dataclass(frozen=True)
class TorusMinimum:
    """Result of minimizing the torus lift of ``Re phi(sigma + i t)``.

    ``numeric_min`` is attained (up to rounding) at ``argmin``; ``grid_lower``
    is a rigorous lower bound from a second-order Taylor bound on every grid cell;
    ``envelope`` is ``c0*sigma + Re c1 - sum |c_n| n**-sigma``.
    """

    numeric_min: float
    grid_lower: float
    envelope: float
    dims: int
    grid_per_dim: int
    lattice: tuple[tuple[int, ...], ...]
    argmin: tuple[float, ...]


def frequency_lattice(freqs: Sequence[int]) -> list[list[int]]:
    """Rows ``H_n`` with ``n**-it`` lifting to ``exp(i <H_n, psi>)``, ``psi`` on ``T^r``.

    The columns of ``H`` form a basis of the lattice generated by the prime
    exponent columns, so ``r`` is the rank of the exponent matrix and ``psi``
    ranges over the whole ``r``-torus.
    """
    vecs = [exponent_vector(q) for q in freqs]
    width = max((len(v) for v in vecs), default=0)
    rows = [list(v) + [0] * (width - len(v)) for v in vecs]
    if width == 0:
        return [[] for _ in freqs]
    return intlinalg.column_lattice_basis(rows)


_MAX_GRID_POINTS = 1 << 25
_CHUNK = 1 << 20


def _torus_terms(symbol: Symbol, sigma: float):
    freqs = sorted(symbol.frequencies.support)
    amps = np.array([abs(symbol.phi0[q]) * q ** (-sigma) for q in freqs])
    phases = np.array([math.atan2(symbol.phi0[q].imag, symbol.phi0[q].real) for q in freqs])
    H = np.array(frequency_lattice(freqs), dtype=float)
    if not freqs:
        H = np.zeros((0, 0))
    const = symbol.c0 * sigma + symbol.c1.real
    return freqs, amps, phases, H, const


def _eval_torus(points, amps, phases, H, const):
    return const + (amps * np.cos(points @ H.T + phases)).sum(axis=-1)


def torus_minimum(symbol: Symbol, sigma: float, grid_per_dim: int = 256, refine_iters: int = 50,
                  n_starts: int = 16) -> TorusMinimum:
    """Minimize ``Re phi(sigma + i t)`` through its torus lift (``sigma >= 0`` allowed)."""
    if sigma < 0:
        raise ValueError("sigma must be >= 0")
    freqs, amps, phases, H, const = _torus_terms(symbol, sigma)
    envelope = const - float(amps.sum())
    r = H.shape[1] if freqs else 0
    if r == 0:
        return TorusMinimum(const, const, envelope, 0, 0, (), ())
    G = grid_per_dim
    while G**r > _MAX_GRID_POINTS:
        G //= 2
    step = 2 * np.pi / G
    total = G**r

    # Taylor bound on each cell: with h = step/2 every torus point is within h
    # (sup norm) of a grid point g, and
    #   f(g + d) >= f(g) - h |grad f(g)|_1 - h**2/2 sum_n amp_n |H_n|_1**2.
    h = step / 2
    row_l1 = np.abs(H).sum(axis=1)
    curvature = float((amps * row_l1**2).sum()) * h * h / 2
    cert_min = np.inf
    best_vals = np.full(n_starts, np.inf)
    best_idx = np.zeros(n_starts, dtype=np.int64)
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
        digits = np.empty((idx.size, r))
        rem = idx.copy()
        for d in range(r):
            digits[:, d] = rem % G
            rem //= G
        arg = digits * step @ H.T + phases
        vals = const + (amps * np.cos(arg)).sum(axis=-1)
        grad_l1 = np.abs(-(amps * np.sin(arg)) @ H).sum(axis=-1)
        cert_min = min(cert_min, float(np.min(vals - h * grad_l1)))
        take = min(n_starts, vals.size)
        part = np.argpartition(vals, take - 1)[:take]
        pool_vals = np.concatenate([best_vals, vals[part]])
        pool_idx = np.concatenate([best_idx, idx[part]])
        keep = np.argsort(pool_vals, kind="stable")[:n_starts]
        best_vals, best_idx = pool_vals[keep], pool_idx[keep]

    grid_lower = cert_min - curvature

    finite = np.isfinite(best_vals)
    rem = best_idx[finite].copy()
    pts = np.empty((rem.size, r))
    for d in range(r):
        pts[:, d] = rem % G
        rem //= G
    pts *= step
    vals = _eval_torus(pts, amps, phases, H, const)
    h = np.full(pts.shape[0], step)
    for _ in range(refine_iters):
        improved = np.zeros(pts.shape[0], dtype=bool)
        for d in range(r):
            for sign in (1.0, -1.0):
                trial = pts.copy()
                trial[:, d] = np.mod(trial[:, d] + sign * h, 2 * np.pi)
                tv = _eval_torus(trial, amps, phases, H, const)
                better = tv < vals
                pts[better] = trial[better]
                vals[better] = tv[better]
                improved |= better
        h = np.where(improved, h, h / 2)
    i = int(np.argmin(vals))
    numeric = max(float(vals[i]), envelope)
    return TorusMinimum(
        numeric_min=numeric,
        grid_lower=max(grid_lower, envelope),
        envelope=envelope,
        dims=r,
        grid_per_dim=G,
        lattice=tuple(tuple(int(x) for x in row) for row in H),
        argmin=tuple(float(x) for x in pts[i]),
    )


def line_infimum(symbol: Symbol, q: LineInfQuery) -> LineInfimum:
    """``(numeric_min, certified_lower)`` for ``inf_t Re phi(sigma + i t)``.

    ``certified_lower = c0*sigma + Re c1 - sum_{n>=2} |c_n| n**-sigma`` always
    holds; the two agree in the limit when the frequencies are multiplicatively
    independent.
    """
    res = torus_minimum(symbol, q.sigma, q.grid_per_dim, q.refine_iters)
    return LineInfimum(res.numeric_min, res.envelope)
