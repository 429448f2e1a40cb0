"""Acceptance suite: one test per criterion, each printing a [PASS]/[FAIL] line.

The lines are also collected in ``RESULTS`` and repeated in the pytest terminal
summary (see conftest.py).  Run just this suite with::

    pytest tests/test_acceptance.py -v
"""

import cmath
import itertools
import math
import time

import numpy as np
import pytest

import oracles
from wiener_dirichlet import cli
from wiener_dirichlet.bohr import bohr_lift, eval_at_point, torus_minimum, z_of_s
from wiener_dirichlet.classify import YES, NO, classify
from wiener_dirichlet.dirichlet import DirichletPoly, n_power_expand
from wiener_dirichlet.hermite import HermiteParams, bound16_check, indritz_check, lower_bound19, norm_via_hermite
from wiener_dirichlet.multipoly import MultiPoly
from wiener_dirichlet.polytorus import (ComponentMap, MonomialMap, blaschke_power_norm, compose, isometry_check_Tk,
                                        lemma19_witness)
from wiener_dirichlet import intlinalg
from wiener_dirichlet.symbol import Symbol, parse_symbol

RESULTS: list[str] = []
UNITS = [1, -1, 1j, -1j]


def report(cid: str, ok: bool, detail: str):
    line = f"[{'PASS' if ok else 'FAIL'}] {cid}: {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def quad(c1, c2, c4, c0=0):
    return Symbol.build(c0, c1, {2: c2, 4: c4})


def test_c01_two_route_agreement():
    rng = np.random.default_rng(101)
    t0 = time.perf_counter()
    worst, bad = 0.0, []
    for _ in range(200):
        c2, c4 = 2 - 2 * rng.random(2)  # in (0, 2]
        c1 = 3 * rng.random()
        n = int(rng.integers(2, 1025))
        h = norm_via_hermite(HermiteParams(n, c2, c4), c1)
        d = n_power_expand(n, quad(c1, c2, c4))[1]
        mid_h, mid_d = (h.lower + h.upper) / 2, (d.lower + d.upper) / 2
        rel = abs(mid_h - mid_d) / max(abs(mid_d), 1e-300)
        worst = max(worst, rel)
        if not (h.overlaps(d) and rel <= 1e-8):
            bad.append((n, c1, c2, c4))
    elapsed = time.perf_counter() - t0
    report("C1", not bad and elapsed <= 30,
           f"200 cases, {len(bad)} failures, worst midpoint rel diff {worst:.2e}, {elapsed:.1f} s (limit 30 s)")


def test_c02_monomial_equality():
    rng = np.random.default_rng(102)
    bad, worst = [], 0.0
    for _ in range(50):
        n = int(rng.integers(2, 513))
        j = int(rng.integers(2, 8))
        c = cmath.rect(2 * rng.random(), 2 * math.pi * rng.random())
        norm = n_power_expand(n, Symbol.build(0, 0, {j: c}))[1]
        want = n ** abs(c)
        width = (norm.upper - norm.lower) / want
        worst = max(worst, width)
        if not (norm.contains(want) and width <= 1e-9):
            bad.append((n, j, c))
    report("C2", not bad, f"50 cases, {len(bad)} failures, worst relative width {worst:.2e} (limit 1e-9)")


def test_c03_decay_slope():
    t0 = time.perf_counter()
    ns = [2**j for j in range(4, 13)]
    mids = []
    for n in ns:
        c = n_power_expand(n, quad(1.25, 1.0, 1.0, c0=1))[1]
        mids.append((c.lower + c.upper) / 2)
    slope = float(np.polyfit(np.log(ns), np.log(mids), 1)[0])
    elapsed = time.perf_counter() - t0
    report("C3", -0.145 <= slope <= -0.105 and elapsed <= 60,
           f"slope {slope:.4f} in [-0.145, -0.105], {elapsed:.1f} s (limit 60 s)")


def _dyadic_norms(c1, c2, c4, js):
    return {j: n_power_expand(2**j, quad(c1, c2, c4, c0=1))[1] for j in js}


def test_c04i_equality_case_grows():
    norms = _dyadic_norms(3.0, 4.0, 1.0, range(4, 15))
    lows = [norms[j].lower for j in range(4, 15)]
    drops = [j + 5 for j, (a, b) in enumerate(zip(lows, lows[1:])) if not b > a]
    doubled = lows[-1] > 2 * lows[0]
    report("C4(i)", not drops and doubled,
           f"lower bounds strictly increasing for j = 4..14: {'yes' if not drops else f'no, drops at j = {drops}'}; "
           f"j = 14 / j = 4 = {lows[-1] / lows[0]:.4f} (need > 2)")


def test_c04ii_bounded_plateau():
    norms = _dyadic_norms(9 / 8, 1.0, 1.0, range(10, 15))
    ratios = []
    for j in range(10, 14):
        a, b = norms[j], norms[j + 1]
        ratios.append(max(b.upper / a.lower, a.upper / b.lower))
    report("C4(ii)", max(ratios) <= 1 + 1e-2,
           f"max consecutive upper/lower ratio over j = 10..14 is {max(ratios):.5f} (limit 1.01)")


def test_c04iii_classifier_trichotomy():
    unb = classify(quad(3.0, 4.0, 1.0, c0=1))
    bdd = classify(quad(9 / 8, 1.0, 1.0, c0=1))
    cites = lambda rep: {e.rule for e in rep.evidence_for("bounded")}
    ok = (unb.verdict_bounded == NO and "prop7c" in cites(unb)
          and bdd.verdict_bounded == YES and "prop7c" in cites(bdd))
    report("C4(iii)", ok, f"equality case bounded = {unb.verdict_bounded} via {sorted(cites(unb))}; "
                          f"c_r = 1 case bounded = {bdd.verdict_bounded} via {sorted(cites(bdd))}")


def test_c05_lower_bound19():
    rng = np.random.default_rng(105)
    bad, tightest = [], math.inf
    for _ in range(100):
        c4 = 2 - 2 * rng.random()
        c2 = 4 * c4 * (1 - rng.random())  # admissible: 0 < c2 <= 4 c4
        c1 = 3 * rng.random()
        n = int(rng.integers(2, 1025))
        p = HermiteParams(n, c2, c4)
        lb = lower_bound19(p, c1)
        upper = norm_via_hermite(p, c1).upper
        tightest = min(tightest, upper / lb)
        if not lb <= upper * (1 + 1e-12):
            bad.append((n, c1, c2, c4))
    report("C5", not bad, f"100 admissible cases, {len(bad)} violations, min norm / bound = {tightest:.4f}")


def test_c06_kronecker_infimum():
    rng = np.random.default_rng(106)
    worst, bad, count = 0.0, [], 0
    for freqs, reps in (([2, 3], 10), ([2, 6, 30], 4)):
        for sigma in (0.25, 1.0):
            for _ in range(reps):
                d = {q: cmath.rect(rng.random(), 2 * math.pi * rng.random()) for q in freqs}
                c1 = complex(4 * rng.random() - 2, 4 * rng.random() - 2)
                sym = Symbol.build(1, c1, d)
                res = torus_minimum(sym, sigma, grid_per_dim=256)
                formula = sigma + c1.real - sum(abs(v) * q ** (-sigma) for q, v in d.items())
                err = abs(res.numeric_min - formula)
                worst = max(worst, err)
                count += 1
                if err > 1e-6:
                    bad.append((freqs, sigma))
    report("C6", not bad, f"{count} cases over {{2,3}}, {{2,6,30}}, sigma in {{0.25, 1}}: worst |min - formula| "
                          f"{worst:.2e} (limit 1e-6)")


def _box(k, degree):
    return [a for a in itertools.product(range(degree + 1), repeat=k) if sum(a) <= degree]


def _random_poly(rng, k, degree=6, n_terms=12):
    alphas = _box(k, degree)
    pick = rng.choice(len(alphas), size=min(n_terms, len(alphas)), replace=False)
    return MultiPoly({alphas[i]: complex(int(rng.integers(-5, 6)), int(rng.integers(-5, 6))) or 1 for i in pick})


def _random_rows(rng, k):
    return [[int(x) for x in rng.integers(0, 4, size=k)] for _ in range(k)]


def test_c07_monomial_isometry():
    rng = np.random.default_rng(107)
    norm_bad, regular = 0, 0
    while regular < 200:
        k = int(rng.integers(1, 5))
        rows = _random_rows(rng, k)
        if intlinalg.det(rows) == 0:
            continue
        regular += 1
        m = MonomialMap(rows, [UNITS[i] for i in rng.integers(0, 4, size=k)])
        if not isometry_check_Tk(m).isometry:
            norm_bad += 1
            continue
        for _ in range(3):
            f = _random_poly(rng, k)
            if compose(f, m).poly.norm() != f.norm():
                norm_bad += 1
                break
    wit_bad, singular = 0, 0
    while singular < 50:
        k = int(rng.integers(1, 5))
        rows = _random_rows(rng, k)
        if k > 1 and rng.random() < 0.5:
            # force dependence: last row is a nonnegative combination of the others
            w = rng.integers(0, 3, size=k - 1)
            rows[-1] = [int(sum(w[i] * rows[i][c] for i in range(k - 1))) for c in range(k)]
        if intlinalg.det(rows) != 0:
            continue
        singular += 1
        m = MonomialMap(rows)
        res = isometry_check_Tk(m)
        a, b = res.witness if res.witness else (None, None)
        if res.isometry or a is None or a == b or min(a + b) < 0 or m.image(a)[1] != m.image(b)[1]:
            wit_bad += 1
    report("C7", norm_bad == 0 and wit_bad == 0,
           f"200 maps with det != 0: {norm_bad} norm mismatches; 50 maps with det = 0: {wit_bad} bad witnesses")


def _random_component_map(rng):
    k = int(rng.integers(1, 5))
    coeffs = [1, -1, 2, 0.5, 1j, complex(1, 1)]
    comps = []
    for _ in range(k):
        terms = {}
        for _ in range(int(rng.integers(1, 4))):
            terms[tuple(int(x) for x in rng.integers(0, 4, size=k))] = coeffs[int(rng.integers(len(coeffs)))]
        comps.append(MultiPoly(terms))
    if all(c.is_monomial() for c in comps):
        i = int(rng.integers(k))
        while True:
            grown = comps[i] + MultiPoly.monomial(tuple(int(x) for x in rng.integers(0, 4, size=k)))
            if len(grown.support) >= 2:
                break
        comps[i] = grown
    return ComponentMap(comps, k)


def test_c08_lemma19_witnesses():
    rng = np.random.default_rng(108)
    failures = 0
    for _ in range(100):
        phi = _random_component_map(rng)
        w = lemma19_witness(phi)
        comps = [c.terms for c in phi.components]
        target = w.common + (0,) * (phi.k - len(w.common))
        ok = (w.alpha != w.alpha_prime
              and oracles.exact_coefficient(comps, w.alpha, target) != (0, 0)
              and oracles.exact_coefficient(comps, w.alpha_prime, target) != (0, 0))
        failures += not ok
    report("C8", failures == 0, f"100 non-monomial maps, {failures} verification failures (brute-force expansion)")


def _random_dpoly(rng):
    size = int(rng.integers(0, 9))
    return DirichletPoly({int(n): complex(int(rng.integers(-9, 10)), int(rng.integers(-9, 10)))
                          for n in rng.integers(1, 401, size=size)})


def test_c09_bohr_homomorphism_and_evaluation():
    rng = np.random.default_rng(109)
    mult_bad = 0
    for _ in range(500):
        f, g = _random_dpoly(rng), _random_dpoly(rng)
        mult_bad += bohr_lift(f * g) != bohr_lift(f) * bohr_lift(g)
    eval_bad, worst = 0, 0.0
    for _ in range(500):
        f = _random_dpoly(rng)
        s = complex(0.3 + 2.7 * rng.random(), 100 * rng.random() - 50)
        F = bohr_lift(f)
        err = abs(eval_at_point(F, z_of_s(s, F.n_slots)) - complex(f(s))) / max(1.0, f.norm())
        worst = max(worst, err)
        eval_bad += err > 1e-12
    report("C9", mult_bad == 0 and eval_bad == 0,
           f"500 lift products, {mult_bad} mismatches; 500 evaluations, worst scaled error {worst:.1e} (limit 1e-12)")


def test_c10_indritz_and_bound16():
    ind = indritz_check(k_max=60)
    b16 = {a: bound16_check(a) for a in (1.1, 2.0)}
    report("C10", ind and all(b16.values()),
           f"Indritz bound k <= 60 on lambda grid in [-10, 10]: {ind}; series bound for a = 1.1, 2: {b16}")


def test_c11_blaschke_sqrt_growth():
    ratios = {n: blaschke_power_norm(0.5, 1, n).lower / math.sqrt(n) for n in (16, 32, 64, 128, 256)}
    lo, hi = min(ratios.values()), max(ratios.values())
    report("C11", lo >= 0.1 and hi / lo <= 4,
           f"lower/sqrt(n) from {lo:.4f} to {hi:.4f}, max/min {hi / lo:.3f} (need min >= 0.1, max/min <= 4)")


GOLDEN = {
    "vertical_translation": ("s + 3i", {"bounded": YES, "compact": NO, "isometry": YES, "automorphism": YES},
                             {"automorphism": "thm15-automorphism", "isometry": "thm22-isometry"}),
    "corollary5_strict": ("2*s + 3 + 1*2^-s + 1*4^-s", {"bounded": YES, "compact": YES},
                          {"compact": "corollary5-strict"}),
    "remark_unbounded": ("s + 3 + 4*2^-s + 1*4^-s", {"bounded": NO}, {"bounded": "prop7c"}),
    "prop7c_bounded": ("s + 1.125 + 1*2^-s + 1*4^-s", {"bounded": YES}, {"bounded": "prop7c"}),
}


def test_c12_classifier_golden(capsys, golden_dir):
    problems = []
    for name, (text, verdicts, cites) in GOLDEN.items():
        rep = classify(parse_symbol(text))
        for key, want in verdicts.items():
            if rep.verdicts[key] != want:
                problems.append(f"{name}: {key} = {rep.verdicts[key]}")
        for key, rule in cites.items():
            if rule not in {e.rule for e in rep.evidence_for(key)}:
                problems.append(f"{name}: {key} lacks {rule}")
        capsys.readouterr()
        code = cli.main(["classify", text])
        out = capsys.readouterr().out
        if code != 0 or out.encode("utf-8") != (golden_dir / f"{name}.json").read_bytes():
            problems.append(f"{name}: JSON differs from golden")
    report("C12", not problems, "4 examples: verdicts, rule citations and JSON bytes match" if not problems
           else "; ".join(problems))


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
