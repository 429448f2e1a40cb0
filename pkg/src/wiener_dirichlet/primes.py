"""Prime slots and prime-exponent vectors.

Slot ``j`` (1-based) corresponds to the ``j``-th prime ``p_j``; exponent
vectors are tuples indexed from slot 1 with trailing zeros stripped.
"""

from __future__ import annotations

import threading

_lock = threading.Lock()
_primes: list[int] = [2, 3, 5, 7, 11, 13]
_slot_of: dict[int, int] = {p: i for i, p in enumerate(_primes)}


def _extend_to(limit: int) -> None:
    with _lock:
        if _primes[-1] >= limit:
            return
        hi = max(limit, 2 * _primes[-1])
        sieve = bytearray([1]) * (hi + 1)
        sieve[0:2] = b"\x00\x00"
        for q in range(2, int(hi**0.5) + 1):
            if sieve[q]:
                sieve[q * q::q] = bytes(len(range(q * q, hi + 1, q)))
        for q in range(_primes[-1] + 1, hi + 1):
            if sieve[q]:
                _slot_of[q] = len(_primes)
                _primes.append(q)


def nth_prime(j: int) -> int:
    """Return ``p_j`` with ``p_1 = 2``."""
    if j < 1:
        raise ValueError(f"prime slots start at 1, got {j}")
    while len(_primes) < j:
        _extend_to(2 * _primes[-1])
    return _primes[j - 1]


def primes_upto(limit: int) -> list[int]:
    _extend_to(limit)
    return [p for p in _primes if p <= limit]


def prime_slot(p: int) -> int:
    """1-based slot of the prime ``p``."""
    _extend_to(p)
    try:
        return _slot_of[p] + 1
    except KeyError:
        raise ValueError(f"{p} is not prime") from None


def factorize(n: int) -> dict[int, int]:
    """Trial-division factorization ``{prime: exponent}``; ``n = 1`` gives ``{}``."""
    if n < 1:
        raise ValueError(f"expected a positive integer, got {n}")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    d = 5
    while d * d <= n:
        for q in (d, d + 2):
            while n % q == 0:
                out[q] = out.get(q, 0) + 1
                n //= q
        d += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def exponent_vector(n: int) -> tuple[int, ...]:
    """Prime-exponent vector of ``n``: ``12 -> (2, 1)``, ``25 -> (0, 0, 2)``, ``1 -> ()``."""
    fac = factorize(n)
    if not fac:
        return ()
    slots = {prime_slot(p): e for p, e in fac.items()}
    vec = [0] * max(slots)
    for j, e in slots.items():
        vec[j - 1] = e
    return tuple(vec)


def from_exponent_vector(alpha) -> int:
    n = 1
    for j, e in enumerate(alpha, start=1):
        if e < 0:
            raise ValueError(f"negative exponent {e} in slot {j}")
        if e:
            n *= nth_prime(j) ** e
    return n
