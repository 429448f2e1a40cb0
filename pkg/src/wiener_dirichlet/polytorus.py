"""Composition maps on absolutely convergent Taylor series in ``k`` variables.

A monomial map has components ``phi_i(z) = eps_i * z**A[i]`` with a
non-negative integer matrix ``A``.  It sends ``z**alpha`` to
``eps**alpha * z**(A^T alpha)``, so the induced operator preserves the l1 norm
exactly when ``A^T`` is injective on multi-indices, i.e. ``det A != 0``.
Any map with a non-monomial component produces two distinct multi-indices
whose images have overlapping spectra; :func:`lemma19_witness` constructs them.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Sequence
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from . import intlinalg
from .dirichlet import UNIT_ROUNDOFF, CertifiedNorm
from .multipoly import MultiIndex, MultiPoly, canon

SIGN_TOLERANCE = 1e-12


def _pad(alpha, k: int) -> tuple[int, ...]:
    alpha = tuple(alpha)
    if len(alpha) > k:
        raise ValueError(f"multi-index {alpha} uses more than {k} slots")
    return alpha + (0,) * (k - len(alpha))


@dataclass(frozen=True)
class MonomialMap:
    """``phi_i(z) = signs[i] * z**rows[i]``; rows are exponent vectors."""

    rows: tuple[tuple[int, ...], ...]
    signs: tuple[complex, ...]

    def __init__(self, rows: Sequence[Sequence[int]], signs: Sequence[complex] | None = None):
        rows = tuple(tuple(int(e) for e in r) for r in rows)
        if not rows:
            raise ValueError("need at least one row")
        width = max(len(r) for r in rows)
        rows = tuple(r + (0,) * (width - len(r)) for r in rows)
        if any(e < 0 for r in rows for e in r):
            raise ValueError("exponents must be non-negative")
        if signs is None:
            signs = (1.0,) * len(rows)
        if len(signs) != len(rows):
            raise ValueError("one sign per row is required")
        norm = []
        for e in signs:
            e = complex(e)
            if abs(abs(e) - 1) > SIGN_TOLERANCE:
                raise ValueError(f"sign {e} is not unimodular")
            norm.append(e / abs(e))
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "signs", tuple(norm))

    @property
    def k(self) -> int:
        return len(self.rows)

    @property
    def n_vars(self) -> int:
        return len(self.rows[0])

    def image(self, alpha: Sequence[int]) -> tuple[complex, MultiIndex]:
        """``(eps**alpha, A^T alpha)``."""
        alpha = _pad(alpha, self.k)
        coeff = complex(1.0)
        for e, a in zip(self.signs, alpha):
            if a:
                coeff *= e**a
        out = [sum(a * r[j] for a, r in zip(alpha, self.rows)) for j in range(self.n_vars)]
        return coeff, canon(out)

    def to_component_map(self) -> "ComponentMap":
        return ComponentMap([MultiPoly.monomial(r, e) for r, e in zip(self.rows, self.signs)], self.n_vars)


@dataclass(frozen=True)
class ComponentMap:
    """``phi = (phi_1, ..., phi_k)`` with polynomial components in ``z_1..z_k``."""

    components: tuple[MultiPoly, ...]
    k: int

    def __init__(self, components: Sequence[MultiPoly], k: int | None = None):
        components = tuple(components)
        if k is None:
            k = len(components)
        for i, c in enumerate(components, start=1):
            if c.n_slots > k:
                raise ValueError(f"component {i} uses slot {c.n_slots} > {k}")
        object.__setattr__(self, "components", components)
        object.__setattr__(self, "k", k)

    def is_all_monomial(self) -> bool:
        return all(c.is_monomial() for c in self.components)


class ComposeResult(NamedTuple):
    poly: MultiPoly
    dropped_mass: float
    truncated: bool


def _mul_tracked(A: MultiPoly, dA: float, B: MultiPoly, dB: float, cutoff: int | None):
    """Truncated product plus a bound on the l1 mass of the discarded exact part."""
    prod = A.mul(B)
    if cutoff is None:
        return prod, dA * B.norm() + A.norm() * dB + dA * dB
    keep, drop = prod.split_by_degree(cutoff)
    return keep, drop.norm() + A.norm() * dB + dA * B.norm() + dA * dB


def compose(F: MultiPoly, phi: ComponentMap | MonomialMap, degree_cutoff: int | None = None) -> ComposeResult:
    """``F(phi_1, ..., phi_k)`` truncated at total degree ``degree_cutoff``.

    ``dropped_mass`` bounds the l1 norm of everything discarded; ``truncated``
    is set when that bound is positive.
    """
    if isinstance(phi, MonomialMap):
        if F.n_slots > phi.k:
            raise ValueError("polynomial uses more slots than the map has components")
        out: dict[MultiIndex, complex] = {}
        dropped = 0.0
        for alpha, c in F.items():
            e, beta = phi.image(alpha)
            if degree_cutoff is not None and sum(beta) > degree_cutoff:
                dropped += abs(c)
                continue
            out[beta] = out.get(beta, 0) + c * e
        return ComposeResult(MultiPoly._raw(out), dropped, dropped > 0)

    if F.n_slots > len(phi.components):
        raise ValueError("polynomial uses more slots than the map has components")
    cache: dict[tuple[int, int], tuple[MultiPoly, float]] = {}

    def power(i: int, e: int):
        key = (i, e)
        if key not in cache:
            if e == 1:
                P, d = phi.components[i], 0.0
                if degree_cutoff is not None:
                    P, drop = P.split_by_degree(degree_cutoff)
                    d = drop.norm()
                cache[key] = (P, d)
            else:
                h = e // 2
                A, dA = power(i, h)
                B, dB = power(i, e - h)
                cache[key] = _mul_tracked(A, dA, B, dB, degree_cutoff)
        return cache[key]

    total = MultiPoly()
    dropped = 0.0
    for alpha, c in F.items():
        P, d = MultiPoly.constant(1.0), 0.0
        for i, e in enumerate(alpha):
            if e:
                Q, dQ = power(i, e)
                P, d = _mul_tracked(P, d, Q, dQ, degree_cutoff)
        total = total + P * c
        dropped += abs(c) * d
    return ComposeResult(total, dropped, dropped > 0)


class IsometryResult(NamedTuple):
    isometry: bool
    reason: str
    witness: tuple[MultiIndex, MultiIndex] | None = None


def collision_witness(map_: MonomialMap) -> tuple[MultiIndex, MultiIndex] | None:
    """Distinct ``alpha, alpha'`` with ``A^T alpha = A^T alpha'``, from a kernel vector of ``A^T``."""
    At = intlinalg.transpose([list(r) for r in map_.rows])
    kernel = intlinalg.integer_kernel(At, n_cols=map_.k)
    if not kernel:
        return None
    v = kernel[0]
    alpha = tuple(max(x, 0) for x in v)
    alpha_p = tuple(max(-x, 0) for x in v)
    if map_.image(alpha)[1] != map_.image(alpha_p)[1]:
        raise AssertionError("kernel vector does not produce a collision")
    return alpha, alpha_p


def isometry_check_Tk(map_: MonomialMap) -> IsometryResult:
    """Isometry on ``A+(T^k)`` iff ``det A != 0`` (exact integer determinant)."""
    if map_.k != map_.n_vars:
        raise ValueError("isometry_check_Tk needs a square exponent matrix")
    d = intlinalg.det([list(r) for r in map_.rows])
    if d != 0:
        return IsometryResult(True, f"det A = {d} != 0: A^T is injective, spectra of distinct powers are disjoint")
    w = collision_witness(map_)
    return IsometryResult(False, f"det A = 0: A^T alpha = A^T alpha' for alpha={w[0]}, alpha'={w[1]}", w)


def injectivity_check_rect(A: Sequence[Sequence[int]], m: int, k: int) -> bool:
    """``A^T`` (``A`` is ``m x k``) has trivial kernel on ``Z^m``, i.e. ``rank A = m``."""
    rows = [list(map(int, r)) + [0] * (k - len(r)) for r in A]
    if len(rows) != m or any(len(r) != k for r in rows):
        raise ValueError(f"expected an {m} x {k} matrix")
    if any(e < 0 for r in rows for e in r):
        raise ValueError("entries must be non-negative")
    return intlinalg.rank(rows) == m


def spectra_collision_search(map_: MonomialMap, max_degree: int = 8) -> tuple[MultiIndex, MultiIndex] | None:
    """Exhaustive search for ``alpha != alpha'`` with ``|alpha|_1 <= max_degree`` and equal images."""
    seen: dict[MultiIndex, MultiIndex] = {}
    for total in range(max_degree + 1):
        for alpha in _compositions(total, map_.k):
            img = map_.image(alpha)[1]
            if img in seen:
                return seen[img], alpha
            seen[img] = alpha
    return None


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


# ---------------------------------------------------------------------------
# Spectra for witness verification
#
# Coefficients are dyadic complex rationals, i.e. elements of Z[1/2, i].  For a
# prime P = 1 (mod 4) the map Z[1/2, i] -> F_P sending i to a square root of -1
# is a ring homomorphism, so a non-zero residue of a product coefficient proves
# the exact coefficient is non-zero.  A zero residue proves nothing and the
# caller moves on to another candidate.

_P = 2147483629
_SQRT_M1 = 629208553
_DENSE_LIMIT = 1 << 22


def _residue(c: complex) -> int:
    re_, im = Fraction(c.real), Fraction(c.imag)
    r = re_.numerator * pow(re_.denominator, -1, _P) + im.numerator * pow(im.denominator, -1, _P) * _SQRT_M1
    return r % _P


def _power_residue(components: Sequence[MultiPoly], alpha: Sequence[int], target: Sequence[int]) -> int:
    """Residue mod ``_P`` of the coefficient of ``z**target`` in ``prod_i phi_i**alpha_i``.

    Only exponents ``<= target`` componentwise are kept, which is harmless
    because every exponent is non-negative.
    """
    k = len(target)
    target = tuple(target)
    shape = tuple(t + 1 for t in target)
    dense = math.prod(shape) <= _DENSE_LIMIT
    if dense:
        cur = np.zeros(shape, dtype=np.int64)
        cur[(0,) * k] = 1
    else:
        cur = {(0,) * k: 1}
    for comp, e in zip(components, alpha):
        if e == 0:
            continue
        terms = [(_pad(a, k), _residue(c)) for a, c in comp.items()]
        terms = [(a, c) for a, c in terms if c and all(x <= t for x, t in zip(a, target))]
        for _ in range(e):
            if dense:
                nxt = np.zeros(shape, dtype=np.int64)
                for a, c in terms:
                    src = tuple(slice(0, t + 1 - x) for x, t in zip(a, target))
                    dst = tuple(slice(x, t + 1) for x, t in zip(a, target))
                    # entries stay below 2**31, so c * entry + entry fits in int64
                    nxt[dst] = (nxt[dst] + c * cur[src]) % _P
                if not nxt.any():
                    return 0
            else:
                nxt = {}
                for a, v in cur.items():
                    for b, c in terms:
                        key = tuple(x + y for x, y in zip(a, b))
                        if any(x > t for x, t in zip(key, target)):
                            continue
                        nxt[key] = (nxt.get(key, 0) + v * c) % _P
                nxt = {key: v for key, v in nxt.items() if v}
                if not nxt:
                    return 0
            cur = nxt
    return int(cur[target]) if dense else cur.get(target, 0)


def spectra_share(phi: ComponentMap, alpha: Sequence[int], alpha_p: Sequence[int], target: Sequence[int]) -> bool:
    """True only if ``z**target`` is in the spectrum of both ``phi**alpha`` and ``phi**alpha'``.

    A true result is a proof.  A false result means the check could not
    certify the point (the coefficient vanishes, or, with probability about
    ``1e-9``, its residue does).
    """
    comps = phi.components
    return _power_residue(comps, alpha, target) != 0 and _power_residue(comps, alpha_p, target) != 0


class Witness(NamedTuple):
    alpha: MultiIndex
    alpha_prime: MultiIndex
    common: MultiIndex
    case: str


def _lex_vertex(P: MultiPoly, k: int, reverse: bool) -> tuple[int, ...]:
    pts = sorted(_pad(a, k) for a in P.support)
    return pts[-1] if reverse else pts[0]


def _construct(k: int, d: int, s, t, others: list[tuple[int, tuple[int, ...]]]):
    """Integer solution of the collision equation for designated component ``d``.

    Unknowns are ``(rho - rho', a - a', b_i - b_i')`` over the columns
    ``s - t, t, u_i`` (all other components but the last); the last other
    component's point is the right-hand side.
    """
    cols = [[x - y for x, y in zip(s, t)], list(t)]
    rhs = None
    if others:
        cols += [list(u) for _, u in others[:-1]]
        rhs = list(others[-1][1])
    M = intlinalg.transpose(cols)
    kernel = intlinalg.integer_kernel(M, n_cols=len(cols))
    if kernel or rhs is None:
        w, c, c_p, case = kernel[0], 0, 0, "singular"
    else:
        sol = intlinalg.solve(M, rhs)
        N = math.lcm(*(q.denominator for q in sol))
        w, c, c_p, case = [int(q * N) for q in sol], 0, N, "regular"
    lam, mu, nus = w[0], w[1], w[2:]
    shift = 1 + max(abs(x) for x in w)
    alpha, alpha_p = [0] * k, [0] * k
    alpha[d], alpha_p[d] = max(mu, 0) + shift, max(-mu, 0) + shift
    for (i, _), nu in zip(others[:-1], nus):
        alpha[i], alpha_p[i] = max(nu, 0), max(-nu, 0)
    if others:
        alpha[others[-1][0]], alpha_p[others[-1][0]] = c, c_p
    rho = max(lam, 0)
    target = [rho * x + (alpha[d] - rho) * y for x, y in zip(s, t)]
    for i, u in others:
        target = [x + alpha[i] * y for x, y in zip(target, u)]
    return tuple(alpha), tuple(alpha_p), tuple(target), case


def _candidates(phi: ComponentMap):
    """All constructions over designated components, spectrum pairs, other points and orderings."""
    k = phi.k
    comps = phi.components
    for d in (i for i, c in enumerate(comps) if not c.is_monomial()):
        pts = sorted(_pad(a, k) for a in comps[d].support)
        pairs = [(pts[-1], pts[0])] + [(x, y) for x, y in itertools.permutations(pts, 2) if (x, y) != (pts[-1], pts[0])]
        other_idx = [i for i in range(k) if i != d]
        choices = [sorted((_pad(a, k) for a in comps[i].support), reverse=True) for i in other_idx]
        for s, t in pairs:
            for pick in itertools.product(*choices):
                others = list(zip(other_idx, pick))
                for order in _rotations(others):
                    yield d, s, t, order


def lemma19_witness(phi: ComponentMap, max_attempts: int = 2000) -> Witness | str:
    """Distinct ``alpha, alpha'`` whose powers ``phi**alpha``, ``phi**alpha'`` share a spectral point.

    Returns ``"all-monomial"`` when every component is a monomial.  Up to
    ``max_attempts`` constructions are formed (cheap exact linear algebra) and
    then verified cheapest first, the cost being the size of the exponent box
    below the target point.  Failing every verification raises ``RuntimeError``.
    """
    k = phi.k
    comps = phi.components
    if any(not c for c in comps):
        raise ValueError("components must be non-zero")
    if len(comps) != k:
        raise ValueError("expected one component per variable")
    if phi.is_all_monomial():
        return "all-monomial"

    built = {}
    for d, s, t, order in itertools.islice(_candidates(phi), max_attempts):
        alpha, alpha_p, target, case = _construct(k, d, s, t, order)
        if alpha != alpha_p and (alpha, alpha_p, target) not in built:
            built[(alpha, alpha_p, target)] = case
    ranked = sorted(built.items(), key=lambda kv: (math.prod(x + 1 for x in kv[0][2]), sum(kv[0][0]) + sum(kv[0][1])))
    for (alpha, alpha_p, target), case in ranked:
        if spectra_share(phi, alpha, alpha_p, target):
            return Witness(canon(alpha), canon(alpha_p), canon(target), case)
    raise RuntimeError("no verified witness found; the construction failed for every choice")


def _rotations(seq: list):
    if not seq:
        yield []
        return
    for r in range(len(seq)):
        yield seq[r:] + seq[:r]


class AutomorphismResult(NamedTuple):
    automorphism: bool
    permutation: tuple[int, ...] | None
    signs: tuple[complex, ...] | None
    reason: str = ""


def automorphism_check_Tk(phi: ComponentMap) -> AutomorphismResult:
    """Automorphism iff ``phi_i = eps_i z_{sigma(i)}`` with unimodular ``eps_i`` and a permutation ``sigma``."""
    k = phi.k
    perm, signs = [], []
    for i, c in enumerate(phi.components, start=1):
        if not c.is_monomial():
            return AutomorphismResult(False, None, None, f"component {i} is not a single term")
        (alpha, coeff), = c.items()
        if sum(alpha) != 1:
            return AutomorphismResult(False, None, None, f"component {i} is not of degree one")
        if abs(abs(coeff) - 1) > SIGN_TOLERANCE:
            return AutomorphismResult(False, None, None, f"component {i} has non-unimodular coefficient")
        perm.append(len(alpha))
        signs.append(coeff / abs(coeff))
    if len(phi.components) != k or sorted(perm) != list(range(1, k + 1)):
        return AutomorphismResult(False, None, None, "variables are not permuted")
    return AutomorphismResult(True, tuple(perm), tuple(signs), "unimodular multiples of permuted coordinates")


# ---------------------------------------------------------------------------
# Norms of powers of one-variable series

def _conv_tracked(P: np.ndarray, eP: float, Q: np.ndarray, eQ: float, cutoff: int):
    nP, nQ = float(np.abs(P).sum()), float(np.abs(Q).sum())
    full = np.convolve(P, Q)
    keep, drop = full[:cutoff + 1], full[cutoff + 1:]
    rounding = 2 * (min(P.size, Q.size) + 1) * UNIT_ROUNDOFF * nP * nQ
    err = nP * eQ + eP * nQ + eP * eQ + float(np.abs(drop).sum()) + rounding
    return keep, err


def series_power_norm(coeffs: Sequence[complex], n: int, coeff_cutoff: int = 4096,
                      base_error: float = 0.0, tolerance: float = 1e-6) -> CertifiedNorm:
    """Bracket ``||f**n||`` for a one-variable series known as ``coeffs`` up to l1 error ``base_error``.

    Powers are formed by binary exponentiation; the tracked error combines the
    input error, discarded coefficients above ``coeff_cutoff`` and a
    convolution rounding allowance.  ``converged`` is false when the bracket is
    wider than ``tolerance`` relative to its lower end.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    base = np.asarray(coeffs, dtype=complex)[:coeff_cutoff + 1]
    e_base = base_error + float(np.abs(np.asarray(coeffs, dtype=complex)[coeff_cutoff + 1:]).sum())
    result, e_res = None, 0.0
    k = n
    while k:
        if k & 1:
            if result is None:
                result, e_res = base.copy(), e_base
            else:
                result, e_res = _conv_tracked(result, e_res, base, e_base, coeff_cutoff)
        k >>= 1
        if k:
            base, e_base = _conv_tracked(base, e_base, base, e_base, coeff_cutoff)
    value = math.fsum(np.abs(result))
    slack = e_res + (result.size + 1) * UNIT_ROUNDOFF * value
    lower, upper = max(0.0, value - slack), value + slack
    converged = upper - lower <= tolerance * max(lower, np.finfo(float).tiny)
    return CertifiedNorm(lower, upper, exact_to_index=coeff_cutoff, terms_used=int(result.size),
                         converged=bool(converged), rounding=slack)


def blaschke_coefficients(a: complex, eps: complex, degree: int) -> np.ndarray:
    """Taylor coefficients of ``eps (z - a) / (1 - conj(a) z)`` up to ``z**degree``."""
    a, eps = complex(a), complex(eps)
    out = np.empty(degree + 1, dtype=complex)
    out[0] = -eps * a
    if degree >= 1:
        out[1:] = eps * (1 - abs(a) ** 2) * np.conj(a) ** np.arange(degree)
    return out


def blaschke_power_norm(a: complex, eps: complex, n: int, coeff_cutoff: int = 4096,
                        tolerance: float = 1e-6) -> CertifiedNorm:
    """Bracket ``||phi**n||`` for the disc automorphism ``phi = eps (z - a) / (1 - conj(a) z)``.

    The base series is cut where ``|a|**m < 1e-15 / (n + 1)``; its tail
    ``(1 + |a|) |a|**m`` is carried through the powering.  A bracket wider
    than ``tolerance`` comes back with ``converged=False`` and a suggested
    larger cutoff.
    """
    a, eps = complex(a), complex(eps)
    if not abs(a) < 1:
        raise ValueError("|a| must be < 1")
    if abs(abs(eps) - 1) > SIGN_TOLERANCE:
        raise ValueError("eps must be unimodular")
    if a == 0:
        return CertifiedNorm(1.0, 1.0, exact_to_index=coeff_cutoff, terms_used=1)
    r = abs(a)
    m = max(1, math.ceil(math.log(1e-15 / (n + 1)) / math.log(r)))
    m = min(m, coeff_cutoff)
    tail = (1 + r) * r**m
    res = series_power_norm(blaschke_coefficients(a, eps, m), n, coeff_cutoff, base_error=tail,
                            tolerance=tolerance)
    if not res.converged:
        res = replace(res, suggested_cutoff=2 * coeff_cutoff)
    return res
