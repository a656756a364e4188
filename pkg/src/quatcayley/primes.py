"""Prime searches, the Chebyshev-type theta sum, and the family constants."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from sympy import isprime, perfect_power

__all__ = [
    "is_prime",
    "is_prime_power",
    "next_prime",
    "next_prime_3mod8",
    "primes_upto",
    "theta",
    "FamilyParams",
    "family_params",
    "q_threshold",
]


def is_prime(n: int) -> bool:
    """Deterministic primality (sympy is exact for every 64-bit input)."""
    return bool(isprime(int(n)))


def is_prime_power(n: int) -> bool:
    """True if ``n = r^k`` with ``r`` prime and ``k >= 1``."""
    n = int(n)
    if n < 2:
        return False
    if is_prime(n):
        return True
    pp = perfect_power(n)
    if not pp:
        return False
    base, _ = pp
    # perfect_power returns the smallest base, so a prime power has a prime base
    return is_prime(base)


def next_prime(u: int) -> int:
    """Smallest prime ``>= u``."""
    n = max(int(u), 2)
    while not is_prime(n):
        n += 1
    return n


def next_prime_3mod8(u: int) -> int:
    """Smallest prime ``>= u`` that is congruent to 3 mod 8."""
    n = int(u)
    n += (3 - n) % 8
    while not is_prime(n):
        n += 8
    return n


@lru_cache(maxsize=8)
def _sieve(limit: int) -> np.ndarray:
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for r in range(2, math.isqrt(limit) + 1):
        if flags[r]:
            flags[r * r :: r] = False
    flags.setflags(write=False)
    return flags


def primes_upto(x: int) -> np.ndarray:
    """All primes ``<= x`` in increasing order."""
    if x < 2:
        return np.zeros(0, dtype=np.int64)
    return np.flatnonzero(_sieve(int(x))).astype(np.int64)


def theta(x: int, k: int, l: int) -> float:
    """Sum of ``ln p`` over primes ``p <= x`` with ``p = l mod k``."""
    if x < 1 or not 0 <= l < k:
        raise ValueError("need x >= 1 and 0 <= l < k")
    ps = primes_upto(x)
    ps = ps[ps % k == l]
    return float(math.fsum(math.log(int(p)) for p in ps))


def q_threshold(d: int, p: int) -> int:
    """``max(p^8, ceil(120^kappa * p))`` with ``kappa = log_d p``, computed conservatively."""
    kappa = math.log(p) / math.log(d)
    scaled = 120.0**kappa * p
    # round the float up past any representation error before taking the ceiling
    bound = math.ceil(math.nextafter(scaled, math.inf))
    return max(p**8, bound)


@dataclass(frozen=True)
class FamilyParams:
    d: int
    p: int
    kappa: float
    c_d: float
    Q: int
    parity_rule: str

    def as_record(self) -> dict:
        return {
            "d": self.d,
            "p": self.p,
            "kappa": self.kappa,
            "c_d": self.c_d,
            "Q": self.Q,
            "parity_rule": self.parity_rule,
        }


def family_params(d: int) -> FamilyParams:
    """Prime, exponent and girth constant for degree ``d + 1``.

    Even ``d`` needs a prime congruent to 3 mod 8 (pure generators only exist
    then); odd ``d`` takes the next prime.
    """
    if d < 10:
        raise ValueError(f"d must be >= 10, got {d}")
    if d % 2 == 0:
        p, rule = next_prime_3mod8(d), "p3"
    else:
        p, rule = next_prime(d), "p"
    kappa = math.log(p) / math.log(d)
    return FamilyParams(
        d=d,
        p=p,
        kappa=kappa,
        c_d=4.0 / (3.0 * kappa),
        Q=q_threshold(d, p),
        parity_rule=rule,
    )
