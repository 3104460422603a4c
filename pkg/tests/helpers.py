"""Shared brute-force oracles and generators for the test suite.

Everything here is deliberately naive: trial division, truth tables, dense
Fraction arithmetic.  The oracles must stay independent of the package's own
algorithms so that agreement between the two routes is evidence, not an echo.
"""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction

from padicfeas.plaisted import Cnf3, satisfies
from padicfeas.sparsepoly import SparsePoly


def naive_is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, math.isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


def naive_order(a: int, m: int) -> int:
    a %= m
    assert math.gcd(a, m) == 1
    x = a
    t = 1
    while x != 1:
        x = x * a % m
        t += 1
    return t


def truth_table_sat(cnf: Cnf3):
    """First satisfying assignment by exhaustive enumeration, or None."""
    for bits in itertools.product((0, 1), repeat=cnf.num_vars):
        if satisfies(cnf, bits):
            return bits
    return None


def random_cnf(rng: random.Random, max_vars: int = 5, max_clauses: int = 8) -> Cnf3:
    n = rng.randint(2, max_vars)
    k = rng.randint(1, max_clauses)
    clauses = []
    for _ in range(k):
        clause = []
        for _ in range(3):
            v = rng.randint(1, n)
            clause.append(-v if rng.random() < 0.5 else v)
        clauses.append(clause)
    return Cnf3.from_signed(n, clauses)


def random_sparse(rng: random.Random, max_terms=4, max_exp=10, max_coeff=9) -> SparsePoly:
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        c = rng.randint(-max_coeff, max_coeff)
        if c:
            terms.append((c, rng.randint(0, max_exp)))
    return SparsePoly(terms)


def random_nonzero_sparse(rng: random.Random, **kwargs) -> SparsePoly:
    while True:
        f = random_sparse(rng, **kwargs)
        if not f.is_zero:
            return f


# -- dense rational-arithmetic oracle ------------------------------------------


def dense(f: SparsePoly) -> list[Fraction]:
    if f.is_zero:
        return []
    out = [Fraction(0)] * (int(f.degree) + 1)
    for c, e in f.terms:
        out[e] = Fraction(c)
    return out


def dense_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def dense_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return dense_trim(out)


def dense_divmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and dense_trim(a):
        if len(a) < len(b):
            break
        shift = len(a) - len(b)
        top = a[-1] / b[-1]
        q[shift] = top
        for i, c in enumerate(b):
            a[shift + i] -= top * c
        dense_trim(a)
    return dense_trim(q), a


def dense_gcd_monic(a, b):
    a, b = list(a), list(b)
    while dense_trim(b):
        _, a = dense_divmod(a, b)
        a, b = b, a
    a = dense_trim(a)
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def dense_to_sparse_primitive(a) -> SparsePoly:
    """Integer primitive representative with positive leading coefficient."""
    if not a:
        return SparsePoly.zero()
    lcm_den = 1
    for c in a:
        lcm_den = lcm_den * c.denominator // math.gcd(lcm_den, c.denominator)
    ints = [int(c * lcm_den) for c in a]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return SparsePoly((c, e) for e, c in enumerate(ints) if c)
