"""p-adic decision procedures.

The binomial decision algorithm, Hensel lifting, root-of-unity enumeration in
prime fields, a brute-force root-existence oracle over the p-adic rationals,
and the squared-polynomial reduction to degenerate-root detection.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .bigmod import (
    DEFAULT_ORDER_BACKEND,
    Modulus,
    OrderBackend,
    decompose_2adic_unit,
    find_generator,
    is_prime,
    ord_p,
    solvable_in_cyclic,
)
from .config import Caps
from .errors import CapsExceeded
from .sparsepoly import (
    SparsePoly,
    from_dense,
    gcd_dense,
    resultant_dense,
    to_dense,
)

# Branches that can decide feasibility; every decision names the one that fired.
RULE_ZERO_ROOT = "zero-root"
RULE_VALUATION_MISMATCH = "valuation-mismatch"
RULE_CYCLIC_ORDER = "cyclic-order"
RULE_TWO_ADIC = "two-adic"
RULE_HENSEL_CERTIFIED = "hensel-certified"
RULE_EXHAUSTED = "exhausted"

RULES = (
    RULE_ZERO_ROOT,
    RULE_VALUATION_MISMATCH,
    RULE_CYCLIC_ORDER,
    RULE_TWO_ADIC,
    RULE_HENSEL_CERTIFIED,
    RULE_EXHAUSTED,
)


@dataclass(frozen=True)
class Witness:
    """A certified approximate root: f(p**valuation_shift * residue) = 0
    (mod p**ell) and the Newton condition holds, so a true root exists."""

    residue: int
    modulus: Modulus
    valuation_shift: int = 0


@dataclass(frozen=True)
class PadicDecision:
    feasible: bool
    rule: str
    witness: Witness | None = None

    def __post_init__(self):
        if self.rule not in RULES:
            raise ValueError(f"unknown decision rule {self.rule!r}")


@dataclass(frozen=True)
class HenselSeed:
    """An approximate root x0 of f modulo p**ell with ord_p f'(x0) = vprime
    and 2*vprime < ell, sufficient for Newton iteration to converge."""

    x0: int
    ell: int
    vprime: int


# -- Hensel lifting -----------------------------------------------------------


def _check_seed(f: SparsePoly, seed: HenselSeed, p: int) -> int:
    if seed.ell < 1 or seed.vprime < 0:
        raise ValueError("seed precision and derivative valuation must be nonnegative")
    if 2 * seed.vprime >= seed.ell:
        raise ValueError("seed violates the Newton condition 2*vprime < ell")
    x0 = seed.x0 % p ** seed.ell
    if f.eval_mod(x0, p ** seed.ell) != 0:
        raise ValueError("seed is not a root to the claimed precision")
    v = seed.vprime
    fp = f.derivative().eval_mod(x0, p ** (v + 1))
    if fp % p ** v != 0 or fp == 0:
        raise ValueError("seed derivative valuation differs from vprime")
    return x0


def hensel_lift_trace(
    f: SparsePoly, seed: HenselSeed, p: int, target_ell: int
) -> tuple[int, list[tuple[int, int]]]:
    """Newton-lift a certified approximate root to precision p**target_ell.

    Returns (residue, steps) where steps lists the (precision, residue) after
    each iteration; precision at least doubles minus 2*vprime per step, and
    the output agrees with the seed modulo p**(ell - vprime).
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if target_ell < 1:
        raise ValueError("target precision must be positive")
    x = _check_seed(f, seed, p)
    v = seed.vprime
    ell = seed.ell
    fprime = f.derivative()
    steps = [(ell, x % p ** ell)]
    while ell < target_ell:
        ell_next = min(target_ell, 2 * ell - 2 * v)
        big = p ** (ell_next + v)
        fx = f.eval_mod(x, big)
        u = fprime.eval_mod(x, p ** ell_next) // p ** v
        delta = (fx // p ** v) * pow(u, -1, p ** ell_next)
        x = (x - delta) % p ** ell_next
        ell = ell_next
        steps.append((ell, x))
    return x % p ** target_ell, steps


def hensel_lift(f: SparsePoly, seed: HenselSeed, p: int, target_ell: int) -> int:
    return hensel_lift_trace(f, seed, p, target_ell)[0]


# -- binomial decision --------------------------------------------------------


def decide_binomial(
    c1: int,
    a1: int,
    c2: int,
    a2: int,
    p: int,
    order_backend: OrderBackend = DEFAULT_ORDER_BACKEND,
) -> PadicDecision:
    """Decide whether c1*x**a1 + c2*x**a2 has a root in the p-adic rationals.

    After normalizing to x**d = alpha with alpha a p-adic unit, feasibility
    for odd p (and for p = 2 with d odd) is a divisibility condition on the
    multiplicative order of alpha in (Z/p**ell Z)* with ell = 1 + 2*ord_p(d);
    for p = 2 with d even it is read off the (-1)**a * 5**b decomposition of
    alpha modulo 2**ell.
    """
    if c1 == 0 or c2 == 0:
        raise ValueError("coefficients must be nonzero")
    if a1 < 0 or a2 < 0:
        raise ValueError("exponents must be nonnegative")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if a1 < a2:
        c1, a1, c2, a2 = c2, a2, c1, a1
    if a1 == a2:
        c = c1 + c2
        if c == 0:
            return PadicDecision(True, RULE_ZERO_ROOT)  # the zero polynomial
        return PadicDecision(a1 > 0, RULE_ZERO_ROOT)
    if a2 > 0:
        return PadicDecision(True, RULE_ZERO_ROOT)  # x divides, so 0 is a root

    # x**d = alpha with alpha = -c2/c1, nonzero.
    d = a1 - a2
    num, den = -c2, c1
    vnum, vden = ord_p(num, p), ord_p(den, p)
    if (vnum - vden) % d != 0:
        return PadicDecision(False, RULE_VALUATION_MISMATCH)

    ell = 1 + 2 * ord_p(d, p)
    m = p ** ell
    unum = num // p ** vnum
    uden = den // p ** vden
    alpha = unum * pow(uden, -1, m) % m

    if p != 2 or ell <= 2:
        group_order = p ** (ell - 1) * (p - 1)
        t = order_backend.order(alpha, m)
        return PadicDecision(
            solvable_in_cyclic(t, d, group_order), RULE_CYCLIC_ORDER
        )

    # p = 2 with ell >= 3 (so d is even): units split as {+-1} x <5>.
    sign, b = decompose_2adic_unit(alpha, ell)
    half_group = 1 << (ell - 2)
    order_5b = half_group // math.gcd(b, half_group) if b else 1
    feasible = sign == 0 and solvable_in_cyclic(order_5b, d, half_group)
    return PadicDecision(feasible, RULE_TWO_ADIC)


# -- roots of unity in a prime field ------------------------------------------


def roots_of_unity_mod_p(
    p: int, m: int, rng: random.Random | None = None
) -> list[int]:
    """All M residues r with r**M = 1 (mod p); requires M | p - 1.

    Generated as consecutive powers of g**((p-1)/M) for a generator g."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if m < 1:
        raise ValueError("M must be positive")
    if (p - 1) % m != 0:
        raise ValueError(f"{m} does not divide {p} - 1")
    g = find_generator(p, rng)
    omega = pow(g, (p - 1) // m, p)
    out = [1]
    cur = 1
    for _ in range(m - 1):
        cur = cur * omega % p
        out.append(cur)
    return out


# -- brute-force feasibility oracle --------------------------------------------


def _squarefree_primitive(dense: list[int]) -> list[int]:
    """Primitive integer representative of f / gcd(f, f'), same root set as f."""
    f = from_dense(dense)
    fp = f.derivative()
    if fp.is_zero:
        g = SparsePoly.one()
    else:
        g = gcd_dense(f, fp, degree_cap=len(dense))
    # exact dense division of f by g over the rationals
    a = [Fraction(c) for c in dense]
    b = [Fraction(c) for c in to_dense(g, len(dense))]
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    while len(a) >= len(b) and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) < len(b):
            break
        shift = len(a) - len(b)
        top = a[-1] / b[-1]
        q[shift] = top
        for i, c in enumerate(b):
            a[shift + i] -= top * c
    lcm_den = 1
    for c in q:
        lcm_den = lcm_den * c.denominator // math.gcd(lcm_den, c.denominator)
    ints = [int(c * lcm_den) for c in q]
    while ints and ints[-1] == 0:
        ints.pop()
    g0 = 0
    for c in ints:
        g0 = math.gcd(g0, c)
    if g0:
        ints = [c // g0 for c in ints]
    if ints and ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def _eval_dense_mod(coeffs: list[int], x: int, m: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % m
    return acc


def _eval_dense(coeffs: list[int], x: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _integral_root_witness(g: SparsePoly, p: int, caps: Caps):
    """Search for a certified root of g in the p-adic integers.

    Runs a residue-refinement tree on the squarefree part sf of g: candidates
    x with sf(x) = 0 (mod p**ell) are certified as soon as
    ord_p sf'(x) < ell/2, and the tree depth is capped at
    1 + 2*ord_p Res(sf, sf'), beyond which every surviving candidate
    necessarily certifies.  Returns (residue, ell) or None.
    """
    dense = to_dense(g, caps.degree)
    sf = _squarefree_primitive(dense)
    if len(sf) <= 1:
        return None
    sfd = [c * e for e, c in enumerate(sf)][1:]
    res = resultant_dense(from_dense(sf), from_dense(sfd), caps.degree)
    assert res != 0 and res.denominator == 1
    rho = ord_p(int(res), p)
    ell_max = 1 + 2 * rho
    candidates = [x for x in range(p) if _eval_dense_mod(sf, x, p) == 0]
    for ell in range(1, ell_max + 1):
        for x in candidates:
            dv = _eval_dense(sfd, x)
            if dv != 0 and 2 * ord_p(dv, p) < ell:
                return x, ell
        if ell == ell_max:
            break
        mod_next = p ** (ell + 1)
        step = p ** ell
        candidates = [
            y
            for x in candidates
            for y in (x + t * step for t in range(p))
            if _eval_dense_mod(sf, y, mod_next) == 0
        ]
        if not candidates:
            return None
    if candidates:
        raise AssertionError("refinement passed the resultant depth uncertified")
    return None


def bruteforce_decision(f: SparsePoly, p: int, caps: Caps | None = None) -> PadicDecision:
    """Decide root existence in the p-adic rationals by exhaustive residue
    refinement; independent of decide_binomial.  Integral roots are searched
    directly, negative-valuation roots through the reversed polynomial."""
    caps = caps or Caps()
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if f.is_zero:
        return PadicDecision(True, RULE_ZERO_ROOT)
    if f.degree > caps.degree:
        raise CapsExceeded(f"degree {f.degree} exceeds the oracle cap {caps.degree}")
    if f.degree == 0:
        return PadicDecision(False, RULE_EXHAUSTED)
    if f.min_exponent > 0:
        return PadicDecision(True, RULE_ZERO_ROOT)

    direct = _integral_root_witness(f, p, caps)
    if direct is not None:
        x, ell = direct
        witness = None
        fx = f.eval_mod(x, p ** ell)
        dv = f.derivative().evaluate(x)
        if fx == 0 and dv != 0 and 2 * ord_p(dv, p) < ell:
            witness = Witness(x, Modulus(p, ell), 0)
        return PadicDecision(True, RULE_HENSEL_CERTIFIED, witness)
    if _integral_root_witness(f.reverse(), p, caps) is not None:
        return PadicDecision(True, RULE_HENSEL_CERTIFIED)
    return PadicDecision(False, RULE_EXHAUSTED)


def decide_bruteforce_qp(f: SparsePoly, p: int, caps: Caps | None = None) -> bool:
    return bruteforce_decision(f, p, caps).feasible


# -- degenerate roots ----------------------------------------------------------


def degenerate_reduction(f: SparsePoly) -> SparsePoly:
    """f**2; f has a p-adic root exactly when f**2 has a degenerate one."""
    return f.square()


def has_degenerate_root_qp(f: SparsePoly, p: int, caps: Caps | None = None) -> bool:
    """Whether f is divisible by the square of a degree-1 polynomial over the
    p-adic rationals, i.e. whether gcd(f, f') has a p-adic root."""
    caps = caps or Caps()
    if f.is_zero:
        return True
    if f.degree > caps.degree:
        raise CapsExceeded(f"degree {f.degree} exceeds the oracle cap {caps.degree}")
    g = gcd_dense(f, f.derivative(), degree_cap=caps.degree)
    return decide_bruteforce_qp(g, p, caps)
