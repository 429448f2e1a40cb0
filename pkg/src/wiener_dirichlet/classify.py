"""Bounded / compact / isometry / automorphism verdicts for ``phi(s) = c0*s + phi0(s)``.

Each rule either settles a verdict with a named piece of evidence or stays
silent; whatever no rule settles is reported as ``"unknown"``.  Implications
between verdicts (compact or isometric implies bounded, and so on) are
propagated afterwards.  Two rules disagreeing is a bug and raises
:class:`ClassificationConflict`.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .bohr import multiplicative_independence, torus_minimum
from .dirichlet import DEFAULT_INDEX_CUTOFF, DEFAULT_TOLERANCE, CertifiedNorm, n_power_expand
from .symbol import Symbol

YES, NO, UNKNOWN = "yes", "no", "unknown"
VERDICT_KEYS = ("bounded", "compact", "isometry", "automorphism")
EQUALITY_REL = 1e-12
DEFAULT_PROFILE_N = tuple(2**j for j in range(4, 13))
ENVELOPE_SIGMAS = (1e-3, 1e-2, 0.1, 0.25, 0.5, 1.0)

CITATIONS = {
    "corollary5": "bounded when Re c1 >= sum_{n>=2} |c_n|",
    "corollary5-strict": "compact when Re c1 > sum_{n>=2} |c_n|",
    "prop6a-not-bounded": "multiplicatively independent frequencies: boundedness forces Re c1 >= sum_j |d_j|",
    "prop6a-not-compact": "multiplicatively independent frequencies: compactness forces Re c1 > sum_j |d_j|",
    "prop7a": "c1 + a r^-s + b r^-2s with a, b > 0: Re c1 > a^2/(8b) + b gives compactness",
    "prop7b": "c1 + a r^-s + b r^-2s with 0 < a <= 4b: boundedness forces Re c1 >= a^2/(8b) + b, compactness forces >",
    "prop7c": "c1 + a r^-s + b r^-2s at Re c1 = a^2/(8b) + b: bounded iff a != 4b",
    "prop7c-compact": "c1 + a r^-s + b r^-2s at Re c1 = a^2/(8b) + b with a > 4b: image in Re w >= (a-4b)^2/(8b)",
    "thm3-image-compact": "compact when phi maps the right half-plane into Re w >= delta > 0",
    "thm3-image-unbounded": "not bounded when Re phi takes negative values on the right half-plane",
    "thm22-isometry": "isometry iff phi(s) = c0 s + i tau with c0 >= 1",
    "thm15-automorphism": "automorphism iff phi(s) = s + i tau",
    "thm24-boundary": "a symbol preserving the imaginary axis has the form c0 s + i tau",
    "implied": "verdict implication",
}


class ClassificationConflict(RuntimeError):
    """Two rules produced opposite verdicts."""


@dataclass(frozen=True)
class Evidence:
    rule: str
    citation: str
    detail: str


@dataclass
class ClassificationReport:
    symbol: Symbol
    verdict_bounded: str = UNKNOWN
    verdict_compact: str = UNKNOWN
    verdict_isometry: str = UNKNOWN
    verdict_automorphism: str = UNKNOWN
    evidence: list[Evidence] = field(default_factory=list)
    norm_samples: list[tuple[int, CertifiedNorm]] | None = None
    contradictions: list[str] = field(default_factory=list)
    _sources: dict = field(default_factory=dict, repr=False)

    @property
    def verdicts(self) -> dict[str, str]:
        return {k: getattr(self, f"verdict_{k}") for k in VERDICT_KEYS}

    def evidence_for(self, key: str) -> list[Evidence]:
        return list(self._sources.get(key, []))

    def settle(self, key: str, value: str, ev: Evidence):
        current = getattr(self, f"verdict_{key}")
        if current not in (UNKNOWN, value):
            prior = self._sources[key][0]
            raise ClassificationConflict(
                f"{key}: {prior.rule} says {current} ({prior.detail}); {ev.rule} says {value} ({ev.detail})")
        setattr(self, f"verdict_{key}", value)
        self._sources.setdefault(key, []).append(ev)
        if ev not in self.evidence:
            self.evidence.append(ev)

    def check_invariants(self):
        v = self.verdicts
        assert v["isometry"] != YES or v["bounded"] == YES
        assert v["compact"] != YES or v["bounded"] == YES
        assert v["automorphism"] != YES or v["isometry"] == YES
        for k in VERDICT_KEYS:
            assert v[k] == UNKNOWN or self._sources.get(k)


def _ev(rule: str, detail: str) -> Evidence:
    return Evidence(rule, CITATIONS[rule], detail)


def _equal(a: float, b: float) -> bool:
    return abs(a - b) <= EQUALITY_REL * max(1.0, abs(a), abs(b))


def _quadratic_form(sym: Symbol):
    """``(r, a, b)`` when the frequencies are ``a r^-s + b r^-2s`` with real ``a, b > 0``."""
    freqs = sym.frequencies
    if len(freqs) != 2:
        return None
    r, r2 = sorted(freqs.support)
    if r2 != r * r:
        return None
    a, b = freqs[r], freqs[r2]
    if a.imag != 0 or b.imag != 0 or not (a.real > 0 and b.real > 0):
        return None
    return r, a.real, b.real


def _rule_contraction(rep: ClassificationReport, sym: Symbol):
    re1 = sym.c1.real
    total = math.fsum(abs(c) for _, c in sym.frequencies.items())
    if re1 > total and not _equal(re1, total):
        ev = _ev("corollary5-strict", f"Re c1 = {re1!r} > {total!r} = sum |c_n|")
        rep.settle("bounded", YES, ev)
        rep.settle("compact", YES, ev)
    elif re1 >= total or _equal(re1, total):
        rep.settle("bounded", YES, _ev("corollary5", f"Re c1 = {re1!r} >= {total!r} = sum |c_n|"))


def _rule_independent(rep: ClassificationReport, sym: Symbol):
    freqs = sorted(sym.frequencies.support)
    if not freqs or not multiplicative_independence(freqs):
        return
    re1 = sym.c1.real
    total = math.fsum(abs(sym.phi0[q]) for q in freqs)
    note = f"frequencies {freqs} independent; sum taken over all of them, the smallest included"
    if re1 < total and not _equal(re1, total):
        rep.settle("bounded", NO, _ev("prop6a-not-bounded", f"Re c1 = {re1!r} < {total!r} = sum |d_j|; {note}"))
    elif re1 <= total or _equal(re1, total):
        rep.settle("compact", NO, _ev("prop6a-not-compact", f"Re c1 = {re1!r} <= {total!r} = sum |d_j|; {note}"))


def _rule_quadratic(rep: ClassificationReport, sym: Symbol):
    form = _quadratic_form(sym)
    if form is None:
        return
    r, a, b = form
    re1 = sym.c1.real
    B = a * a / (8 * b) + b
    head = f"r = {r}, a = {a!r}, b = {b!r}, Re c1 = {re1!r}, a^2/(8b) + b = {B!r}"
    at_edge = _equal(re1, B)
    if re1 > B and not at_edge:
        ev = _ev("prop7a", f"{head}: Re c1 above the threshold")
        rep.settle("bounded", YES, ev)
        rep.settle("compact", YES, ev)
        return
    small_a = a < 4 * b or _equal(a, 4 * b)
    if at_edge:
        if _equal(a, 4 * b):
            rep.settle("bounded", NO, _ev("prop7c", f"{head}: at the threshold with a = 4b"))
        else:
            rep.settle("bounded", YES, _ev("prop7c", f"{head}: at the threshold with a != 4b"))
            if a > 4 * b:
                margin = (a - 4 * b) ** 2 / (8 * b)
                rep.settle("compact", YES, _ev("prop7c-compact", f"{head}: inf Re phi0 = {margin!r} > 0"))
        if small_a:
            rep.settle("compact", NO, _ev("prop7b", f"{head}: a <= 4b and Re c1 not above the threshold"))
        return
    if small_a:
        ev = _ev("prop7b", f"{head}: a <= 4b and Re c1 below the threshold")
        rep.settle("bounded", NO, ev)


def _rule_image(rep: ClassificationReport, sym: Symbol, grid_per_dim: int):
    if not sym.frequencies:
        if sym.c1.real > 0:
            rep.settle("compact", YES, _ev("thm3-image-compact", f"inf Re phi0 = Re c1 = {sym.c1.real!r} > 0"))
        return
    base = Symbol(0, sym.phi0)
    res = torus_minimum(base, 0.0, grid_per_dim=grid_per_dim)
    if res.grid_lower > 0:
        rep.settle("compact", YES, _ev(
            "thm3-image-compact",
            f"certified inf Re phi0 over the closed half-plane >= {res.grid_lower!r} "
            f"(torus dimension {res.dims}, grid {res.grid_per_dim})"))
    freqs = sorted(sym.frequencies.support)
    if multiplicative_independence(freqs):
        total = [abs(sym.phi0[q]) for q in freqs]
        for sigma in ENVELOPE_SIGMAS:
            inf = sym.c0 * sigma + sym.c1.real - math.fsum(c * q ** (-sigma) for c, q in zip(total, freqs))
            if inf < 0 and not _equal(inf, 0.0):
                rep.settle("bounded", NO, _ev(
                    "thm3-image-unbounded",
                    f"inf_t Re phi({sigma!r} + it) = {inf!r} < 0 (independent frequencies, value attained in the limit)"))
                break


def _rule_isometry(rep: ClassificationReport, sym: Symbol):
    tau_form = sym.is_vertical_shift_form
    if tau_form and sym.c0 >= 1:
        ev = _ev("thm22-isometry", f"phi(s) = {sym.c0}*s + {sym.c1.imag!r}i")
        rep.settle("isometry", YES, ev)
        rep.settle("bounded", YES, ev)
        rep.settle("compact", NO, _ev("thm22-isometry", "an isometry on an infinite-dimensional space is not compact"))
    else:
        why = "c0 = 0" if tau_form else "phi is not of the form c0*s + i*tau"
        rep.settle("isometry", NO, _ev("thm22-isometry", why))


def _rule_automorphism(rep: ClassificationReport, sym: Symbol):
    if sym.is_vertical_shift_form and sym.c0 == 1:
        rep.settle("automorphism", YES, _ev("thm15-automorphism", f"phi(s) = s + {sym.c1.imag!r}i"))
    else:
        rep.settle("automorphism", NO, _ev("thm15-automorphism", "phi is not a vertical translation"))


def _rule_boundary(rep: ClassificationReport, sym: Symbol, boundary_preserving: bool | None):
    if not boundary_preserving:
        return
    if sym.is_vertical_shift_form:
        rep.evidence.append(_ev("thm24-boundary", "symbol has the required form c0*s + i*tau"))
    else:
        msg = "declared boundary-preserving but phi is not of the form c0*s + i*tau"
        rep.contradictions.append(msg)
        rep.evidence.append(_ev("thm24-boundary", msg))


def _propagate(rep: ClassificationReport):
    v = rep.verdicts
    if v["bounded"] == NO:
        for key in ("compact", "isometry", "automorphism"):
            if v[key] == UNKNOWN:
                rep.settle(key, NO, _ev("implied", f"not bounded implies not {key}"))
    if v["compact"] == YES and v["bounded"] == UNKNOWN:
        rep.settle("bounded", YES, _ev("implied", "compact implies bounded"))
    if v["automorphism"] == YES and rep.verdict_isometry == UNKNOWN:
        rep.settle("isometry", YES, _ev("implied", "automorphism implies isometry"))


def classify(symbol: Symbol, boundary_preserving: bool | None = None, *, profile: bool = False,
             n_values: Sequence[int] = DEFAULT_PROFILE_N, grid_per_dim: int = 64,
             index_cutoff: int = DEFAULT_INDEX_CUTOFF, tolerance: float = DEFAULT_TOLERANCE,
             threads: int = 1) -> ClassificationReport:
    """Run all rules on ``symbol`` and return the report.

    ``profile=True`` attaches certified norms ``||n**-phi||`` for ``n_values``.
    """
    rep = ClassificationReport(symbol)
    _rule_contraction(rep, symbol)
    _rule_independent(rep, symbol)
    _rule_quadratic(rep, symbol)
    _rule_isometry(rep, symbol)
    _rule_automorphism(rep, symbol)
    _rule_image(rep, symbol, grid_per_dim)
    _rule_boundary(rep, symbol, boundary_preserving)
    _propagate(rep)
    rep.check_invariants()
    if profile:
        rep.norm_samples = norm_decay_profile(symbol, n_values, index_cutoff=index_cutoff,
                                              tolerance=tolerance, threads=threads)
    return rep


def norm_decay_profile(symbol: Symbol, n_values: Sequence[int] = DEFAULT_PROFILE_N, *,
                       index_cutoff: int = DEFAULT_INDEX_CUTOFF, tolerance: float = DEFAULT_TOLERANCE,
                       threads: int = 1) -> list[tuple[int, CertifiedNorm]]:
    """``[(n, bracket of ||n**-phi||)]`` in the order of ``n_values``."""
    n_values = list(n_values)
    if not n_values:
        raise ValueError("n_values must be non-empty")
    if any(n < 2 for n in n_values):
        raise ValueError("every n must be >= 2")

    def one(n):
        return n, n_power_expand(n, symbol, index_cutoff=index_cutoff, tolerance=tolerance)[1]

    if threads <= 1:
        return [one(n) for n in n_values]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(one, n_values))


def decay_slope(profile: Sequence[tuple[int, CertifiedNorm]]) -> float:
    """Least-squares slope of ``log(midpoint)`` against ``log n``."""
    x = np.log([n for n, _ in profile])
    y = np.log([c.midpoint for _, c in profile])
    return float(np.polyfit(x, y, 1)[0])
