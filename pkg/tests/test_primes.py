import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from quatcayley.primes import (
    family_params,
    is_prime,
    is_prime_power,
    next_prime,
    next_prime_3mod8,
    primes_upto,
    q_threshold,
    theta,
)


def trial_prime(n):
    return n >= 2 and all(n % k for k in range(2, math.isqrt(n) + 1))


def test_is_prime_matches_trial_division():
    assert [n for n in range(2000) if is_prime(n)] == [n for n in range(2000) if trial_prime(n)]
    assert list(primes_upto(2000)) == [n for n in range(2000 + 1) if trial_prime(n)]


def test_prime_power_matches_brute_force():
    def brute(n):
        ps = [p for p in range(2, n + 1) if trial_prime(p) and n % p == 0]
        if len(ps) != 1:
            return False
        while n % ps[0] == 0:
            n //= ps[0]
        return n == 1

    for n in range(2, 3000):
        assert is_prime_power(n) == brute(n), n


def test_next_prime_examples():
    assert next_prime(35) == 37
    assert next_prime(1335) == 1361
    assert next_prime(11) == 11
    assert next_prime_3mod8(10) == 11
    assert next_prime_3mod8(12) == 19
    assert next_prime_3mod8(20) == 43


@given(st.integers(2, 20000))
def test_next_prime_3mod8_is_minimal(u):
    p = next_prime_3mod8(u)
    assert p >= u and p % 8 == 3 and trial_prime(p)
    assert not any(trial_prime(m) and m % 8 == 3 for m in range(u, p))


def test_theta_examples():
    assert theta(2, 8, 3) == 0
    assert theta(10, 8, 3) == pytest.approx(math.log(3), abs=1e-12)
    assert theta(20, 8, 3) == pytest.approx(math.log(3 * 11 * 19), abs=1e-12)
    assert theta(20, 8, 3) == pytest.approx(6.4409, abs=1e-4)


def test_family_params_examples():
    f10, f12, f15 = family_params(10), family_params(12), family_params(15)
    assert (f10.p, f12.p, f15.p) == (11, 19, 17)
    assert f10.c_d == pytest.approx(1.2803, abs=1e-4)
    assert f12.c_d == pytest.approx(1.1252, abs=1e-4)
    # 4 ln 15 / (3 ln 17) = 1.27443; the bracket value 1.27 is what matters
    assert f15.c_d == pytest.approx(4 * math.log(15) / (3 * math.log(17)), abs=1e-12)
    assert f15.c_d == pytest.approx(1.2744, abs=1e-4)
    with pytest.raises(ValueError):
        family_params(9)


@given(st.integers(10, 100_000))
def test_family_params_invariants(d):
    f = family_params(d)
    assert f.kappa >= 1
    assert d**f.kappa == pytest.approx(f.p, rel=1e-12)
    assert f.c_d <= 4 / 3
    if d % 2 == 0:
        assert f.p % 8 == 3 and f.parity_rule == "p3"
    else:
        assert f.p == next_prime(d) and f.parity_rule == "p"
    assert f.Q >= f.p**8 and f.Q >= 120**f.kappa * f.p


def test_q_threshold_is_conservative():
    for d in (10, 11, 12, 100, 1335):
        f = family_params(d)
        assert q_threshold(d, f.p) >= 120**f.kappa * f.p
