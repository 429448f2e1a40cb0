"""Independent reference computations used by the tests.

Nothing here imports the package: convolution, exponential series and
polynomial powers are recomputed with plain dicts and mpmath.
"""

from __future__ import annotations

import itertools

import mpmath as mp


def dconv(f: dict, g: dict) -> dict:
    out: dict = {}
    for i, a in f.items():
        for j, b in g.items():
            out[i * j] = out.get(i * j, 0) + a * b
    return {k: v for k, v in out.items() if v != 0}


def divisor_pair_product(f: dict, g: dict) -> dict:
    """Dirichlet product by scanning every divisor pair of every candidate index."""
    top = max(f, default=1) * max(g, default=1)
    out = {}
    for n in range(1, top + 1):
        s = sum(f.get(d, 0) * g.get(n // d, 0) for d in range(1, n + 1) if n % d == 0)
        if s != 0:
            out[n] = s
    return out


def exp_series_coeffs(n: int, c1: complex, phi0: dict, k_max: int = 40, dps: int = 40) -> dict:
    """Coefficients of ``n**-c1 * exp(-phi0 log n)`` to order ``k_max`` in mpmath."""
    with mp.workdps(dps):
        L = mp.log(n)
        phi = {k: mp.mpc(v) for k, v in phi0.items()}
        acc = {1: mp.mpc(1)}
        power = {1: mp.mpc(1)}
        w = mp.mpf(1)
        for k in range(1, k_max + 1):
            power = dconv(power, phi)
            w = w * (-L) / k
            for idx, c in power.items():
                acc[idx] = acc.get(idx, 0) + w * c
        pre = mp.exp(-mp.mpc(c1) * L)
        return {idx: pre * c for idx, c in acc.items()}


def exp_series_norm(n: int, c1: complex, phi0: dict, k_max: int = 40, dps: int = 40) -> float:
    with mp.workdps(dps):
        return float(mp.fsum(abs(c) for c in exp_series_coeffs(n, c1, phi0, k_max, dps).values()))


def multi_power_spectrum(comps, alpha) -> set:
    """Support of ``prod comps[i]**alpha[i]`` by brute-force expansion with exact complex rationals."""
    from fractions import Fraction
    poly = {(): (Fraction(1), Fraction(0))}
    for comp, e in zip(comps, alpha):
        for _ in range(e):
            new = {}
            for a, (ar, ai) in poly.items():
                for b, c in comp.items():
                    br, bi = Fraction(c.real), Fraction(c.imag)
                    n = max(len(a), len(b))
                    key = tuple((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))
                    pr, pi = new.get(key, (Fraction(0), Fraction(0)))
                    new[key] = (pr + ar * br - ai * bi, pi + ar * bi + ai * br)
            poly = new
    return {tuple(x for x in itertools.dropwhile(lambda v: v == 0, reversed(k)))[::-1]
            for k, v in poly.items() if v != (0, 0)}


def hermite_mp(k: int, lam: float, dps: int = 60):
    with mp.workdps(dps):
        return mp.hermite(k, lam)


def hermite_norm_mp(n: int, c2: float, c4: float, c1_re: float, k_max: int = 400, dps: int = 60) -> float:
    """``n**-Re c1 sum_k |H_k(lam)| x**k / k!`` in high precision."""
    with mp.workdps(dps):
        L = mp.log(n)
        x = mp.sqrt(c4 * L)
        lam = -c2 * mp.sqrt(L) / (2 * mp.sqrt(c4))
        s = mp.fsum(abs(mp.hermite(k, lam)) * x**k / mp.factorial(k) for k in range(k_max + 1))
        return float(s * mp.power(n, -c1_re))


def blaschke_power_norm_mp(a: complex, n: int, terms: int, dps: int = 50) -> float:
    """``||((z - a)/(1 - conj(a) z))**n||`` from ``terms`` coefficients via mpmath Taylor expansion."""
    with mp.workdps(dps):
        a = mp.mpc(a)
        ac = mp.conj(a)
        base = [-a] + [(1 - abs(a) ** 2) * ac ** (j - 1) for j in range(1, terms)]
        out = [mp.mpc(1)] + [mp.mpc(0)] * (terms - 1)
        for _ in range(n):
            out = [mp.fsum(out[i] * base[m - i] for i in range(m + 1)) for m in range(terms)]
        return float(mp.fsum(abs(c) for c in out))


def exact_coefficient(comps, alpha, target):
    """Exact coefficient of ``z**target`` in ``prod comps[i]**alpha[i]`` (Fraction pairs, pruned to the target box)."""
    from fractions import Fraction
    k = len(target)

    def pad(a):
        return tuple(a) + (0,) * (k - len(a))

    cur = {(0,) * k: (Fraction(1), Fraction(0))}
    for comp, e in zip(comps, alpha):
        terms = [(pad(a), Fraction(c.real), Fraction(c.imag)) for a, c in comp.items()]
        for _ in range(e):
            nxt = {}
            for a, (ar, ai) in cur.items():
                for b, br, bi in terms:
                    key = tuple(x + y for x, y in zip(a, b))
                    if any(x > t for x, t in zip(key, target)):
                        continue
                    pr, pi = nxt.get(key, (Fraction(0), Fraction(0)))
                    nxt[key] = (pr + ar * br - ai * bi, pi + ar * bi + ai * br)
            cur = nxt
    return cur.get(tuple(target), (Fraction(0), Fraction(0)))
