"""Primes congruent to 1 modulo a primorial, and prime-density bookkeeping.

The search strategies mirror the two ways to win: a deterministic scan over
k = 1, 2, 3, ... (cheap at desk scale) and uniform random sampling of k from
{1, ..., 2**(n**C)} with at most 9*n**C' trials.  The density experiment
compares exact sieve counts of primes p = 1 (mod M) against Li(x)/phi(M); it
is an empirical consistency check of that predicted density, not a
verification of any hypothesis behind it.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Iterator

from .bigmod import euler_phi, is_prime, primorial
from .config import Caps
from .errors import CapsExceeded, PrimeSearchExhausted

DENSITY_NOTE = (
    "empirical consistency check of the predicted density Li(x)/phi(M); "
    "not a verification of the underlying hypothesis"
)


@dataclass(frozen=True)
class ProgressionPrime:
    """A verified prime p = 1 + k * Q_n."""

    n: int
    q_n: int
    k: int
    p: int
    trials_used: int

    def __post_init__(self):
        if self.p != 1 + self.k * self.q_n:
            raise ValueError("p must equal 1 + k * q_n")
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")


@dataclass(frozen=True)
class DensityReport:
    m: int
    x: int
    count: int
    predicted: float
    ratio: float
    note: str = DENSITY_NOTE


def find_prime_in_progression(
    n: int,
    strategy: str = "scan",
    rng: random.Random | None = None,
    caps: Caps | None = None,
    sample_c: int = 2,
    sample_cprime: int = 2,
) -> ProgressionPrime:
    """Find a prime p = 1 + k*Q_n; raises PrimeSearchExhausted (with the trial
    count) rather than ever returning an unverified candidate."""
    if n < 1:
        raise ValueError("n must be positive")
    caps = caps or Caps()
    q = primorial(n)
    if strategy == "scan":
        for k in range(1, caps.k_max + 1):
            p = 1 + k * q
            if is_prime(p):
                return ProgressionPrime(n, q, k, p, trials_used=k)
        raise PrimeSearchExhausted(
            f"no prime 1 + k*{q} for k <= {caps.k_max} ({caps.k_max} trials)"
        )
    if strategy == "sample":
        if rng is None:
            raise ValueError("the sampling strategy needs an rng")
        interval = 2 ** (n ** sample_c)
        max_trials = 9 * n ** sample_cprime
        for trial in range(1, max_trials + 1):
            k = rng.randint(1, interval)
            p = 1 + k * q
            if is_prime(p):
                return ProgressionPrime(n, q, k, p, trials_used=trial)
        raise PrimeSearchExhausted(
            f"no prime 1 + k*{q} found in {max_trials} sampling trials"
        )
    raise ValueError(f"unknown strategy {strategy!r}")


# -- logarithmic integral -------------------------------------------------------


def _adaptive_simpson(f, a, fa, b, fb, whole, m, fm, tol, depth) -> float:
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm, frm = f(lm), f(rm)
    left = (m - a) / 6 * (fa + 4 * flm + fm)
    right = (b - m) / 6 * (fm + 4 * frm + fb)
    delta = left + right - whole
    if depth <= 0 or abs(delta) <= 15 * tol:
        return left + right + delta / 15
    return _adaptive_simpson(
        f, a, fa, m, fm, left, lm, flm, tol / 2, depth - 1
    ) + _adaptive_simpson(f, m, fm, b, fb, right, rm, frm, tol / 2, depth - 1)


def logarithmic_integral(x) -> float:
    """Li(x) = integral of dt/log t from 2 to x, by adaptive Simpson
    quadrature to relative error well under 1e-6."""
    if x < 2:
        raise ValueError("Li is evaluated for x >= 2")
    x = float(x)
    if x == 2.0:
        return 0.0

    def f(t):
        return 1.0 / math.log(t)

    a, b = 2.0, x
    fa, fb = f(a), f(b)
    m = 0.5 * (a + b)
    fm = f(m)
    whole = (b - a) / 6 * (fa + 4 * fm + fb)
    tol = 1e-10 * (1.0 + abs(whole))
    return _adaptive_simpson(f, a, fa, b, fb, whole, m, fm, tol, 60)


# -- sieving ---------------------------------------------------------------------


def sieve_primes(limit: int, segment_size: int = 1 << 20) -> Iterator[int]:
    """All primes <= limit, via a segmented sieve of Eratosthenes."""
    if limit < 2:
        return
    root = math.isqrt(limit)
    base = bytearray([1]) * (root + 1)
    base[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(root) + 1):
        if base[i]:
            base[i * i :: i] = bytearray(len(base[i * i :: i]))
    base_primes = [i for i in range(2, root + 1) if base[i]]
    yield from base_primes
    lo = root + 1
    while lo <= limit:
        hi = min(lo + segment_size - 1, limit)
        seg = bytearray([1]) * (hi - lo + 1)
        for p in base_primes:
            start = max(p * p, (lo + p - 1) // p * p)
            seg[start - lo :: p] = bytearray(len(seg[start - lo :: p]))
        for i, flag in enumerate(seg):
            if flag:
                yield lo + i
        lo = hi + 1


def prime_density_experiment(m: int, x: int, caps: Caps | None = None) -> DensityReport:
    """Exact count of primes p <= x with p = 1 (mod m), against Li(x)/phi(m)."""
    caps = caps or Caps()
    if m < 1:
        raise ValueError("modulus must be positive")
    if x < 2:
        raise ValueError("x must be at least 2")
    if x > caps.sieve_limit:
        raise CapsExceeded(f"x = {x} exceeds the sieve cap {caps.sieve_limit}")
    target = 1 % m
    count = sum(1 for p in sieve_primes(x) if p % m == target)
    predicted = logarithmic_integral(x) / euler_phi(m)
    return DensityReport(m=m, x=x, count=count, predicted=predicted, ratio=count / predicted)
