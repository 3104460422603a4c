"""The 3CNF-to-single-polynomial reduction pipeline.

A formula becomes a system of clause polynomials dividing x**Q - 1; a random
integer combination collapses the system to a pair (g1, g2) whose common zero
set equals the system's with probability at least 8/9; an anisotropic
quadratic form collapses the pair to one polynomial h.  Feasibility over the
p-adics is then decided exactly by enumerating the Q-th roots of unity modulo
a prime p = 1 (mod Q): each common root among them lifts to a true root
because x**Q - 1 is separable modulo p.  Every run is recorded in a
transcript that can be re-verified without re-running any randomness.
"""

from __future__ import annotations

import json
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .bigmod import find_generator, find_qnr, first_primes, is_prime, primorial
from .config import Config
from .errors import CapsExceeded
from .plaisted import Cnf3, encode_system, root_to_assignment, satisfies
from .primes import ProgressionPrime, find_prime_in_progression
from .sparsepoly import SparsePoly, poly_from_obj, poly_to_obj

TRANSCRIPT_FORMAT = "padicfeas-transcript-v1"


@dataclass(frozen=True)
class ReductionTranscript:
    """Full record of one pipeline run; every field is reproducible from
    (cnf, seed, config) and re-checkable without the rng."""

    mode: str
    n: int
    q_n: int
    k: int
    cnf: Cnf3
    seed: int | None
    prime: ProgressionPrime
    prime_strategy: str
    generator: int
    omega: int
    max_degree: int | None       # randomized mode only
    big_n: int | None            # 18 * max_degree * k**2, randomized with k >= 3
    a: tuple[int, ...] | None
    b: tuple[int, ...] | None
    qnr: int | None              # None for p = 2 (the x^2+xy+y^2 form) and k <= 2 n/a
    g1: SparsePoly | None
    g2: SparsePoly | None
    h: SparsePoly | None
    match_count: int
    first_match: int | None      # least exponent t with omega**t a common root
    verdict: bool
    witness: tuple[int, ...] | None

    def to_obj(self) -> dict:
        def poly(f):
            return None if f is None else poly_to_obj(f)

        return {
            "format": TRANSCRIPT_FORMAT,
            "mode": self.mode,
            "n": self.n,
            "q_n": str(self.q_n),
            "k": self.k,
            "cnf": {"num_vars": self.cnf.num_vars, "clauses": self.cnf.to_signed()},
            "seed": None if self.seed is None else str(self.seed),
            "prime": {
                "n": self.prime.n,
                "q_n": str(self.prime.q_n),
                "k": str(self.prime.k),
                "p": str(self.prime.p),
                "trials_used": self.prime.trials_used,
            },
            "prime_strategy": self.prime_strategy,
            "generator": str(self.generator),
            "omega": str(self.omega),
            "max_degree": None if self.max_degree is None else str(self.max_degree),
            "big_n": None if self.big_n is None else str(self.big_n),
            "a": None if self.a is None else [str(v) for v in self.a],
            "b": None if self.b is None else [str(v) for v in self.b],
            "qnr": None if self.qnr is None else str(self.qnr),
            "g1": poly(self.g1),
            "g2": poly(self.g2),
            "h": poly(self.h),
            "match_count": self.match_count,
            "first_match": None if self.first_match is None else str(self.first_match),
            "verdict": self.verdict,
            "witness": None if self.witness is None else list(self.witness),
        }

    @classmethod
    def from_obj(cls, obj: dict) -> "ReductionTranscript":
        if obj.get("format") != TRANSCRIPT_FORMAT:
            raise ValueError(f"unknown transcript format {obj.get('format')!r}")

        def opt_int(v):
            return None if v is None else int(v)

        def opt_poly(v):
            return None if v is None else poly_from_obj(v)

        prime = ProgressionPrime(
            n=int(obj["prime"]["n"]),
            q_n=int(obj["prime"]["q_n"]),
            k=int(obj["prime"]["k"]),
            p=int(obj["prime"]["p"]),
            trials_used=int(obj["prime"]["trials_used"]),
        )
        return cls(
            mode=obj["mode"],
            n=int(obj["n"]),
            q_n=int(obj["q_n"]),
            k=int(obj["k"]),
            cnf=Cnf3.from_signed(int(obj["cnf"]["num_vars"]), obj["cnf"]["clauses"]),
            seed=opt_int(obj["seed"]),
            prime=prime,
            prime_strategy=obj["prime_strategy"],
            generator=int(obj["generator"]),
            omega=int(obj["omega"]),
            max_degree=opt_int(obj["max_degree"]),
            big_n=opt_int(obj["big_n"]),
            a=None if obj["a"] is None else tuple(int(v) for v in obj["a"]),
            b=None if obj["b"] is None else tuple(int(v) for v in obj["b"]),
            qnr=opt_int(obj["qnr"]),
            g1=opt_poly(obj["g1"]),
            g2=opt_poly(obj["g2"]),
            h=opt_poly(obj["h"]),
            match_count=int(obj["match_count"]),
            first_match=opt_int(obj["first_match"]),
            verdict=bool(obj["verdict"]),
            witness=None if obj["witness"] is None else tuple(obj["witness"]),
        )


def transcript_dumps(obj) -> str:
    """Canonical JSON: sorted keys, fixed layout, trailing newline, so equal
    runs serialize to identical bytes."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


# -- stages ----------------------------------------------------------------------


def random_combine(polys, rng: random.Random):
    """Collapse k >= 3 nonzero polynomials to two random integer combinations
    with coefficients uniform in {1, ..., 18*d*k**2}; with probability at
    least 8/9 the common zero set is preserved.  For k <= 2 the pair is
    already at hand and is passed through untouched."""
    k = len(polys)
    if k == 0:
        raise ValueError("need at least one polynomial")
    if any(f.is_zero for f in polys):
        raise ValueError("zero polynomials are not allowed")
    if k == 1:
        return polys[0], polys[0], None, None
    if k == 2:
        return polys[0], polys[1], None, None
    d = max(max(f.degree for f in polys), 1)  # all-constant systems: empty zero sets
    n_bound = 18 * d * k * k
    a = tuple(rng.randint(1, n_bound) for _ in range(k))
    b = tuple(rng.randint(1, n_bound) for _ in range(k))
    g1 = SparsePoly.zero()
    g2 = SparsePoly.zero()
    for ai, bi, f in zip(a, b, polys):
        g1 = g1 + ai * f
        g2 = g2 + bi * f
    return g1, g2, a, b


def pair_to_single(f: SparsePoly, g: SparsePoly, p: int, rng: random.Random):
    """Collapse (f, g) to one polynomial with the same p-adic zero set.

    For odd p, h = f**2 - a*g**2 with a a quadratic non-residue; for p = 2,
    h = f**2 + f*g + g**2.  Either quadratic form vanishes over the p-adics
    only at (0, 0)."""
    if p == 2:
        return f * f + f * g + g * g, None
    a = find_qnr(p, rng)
    return f * f - a * (g * g), a


def _scan_roots(polys, omega: int, p: int, q_n: int, threads: int = 1) -> list[int]:
    """Exponents t in [0, q_n) at which every polynomial vanishes at omega**t
    modulo p.  Exponents reduce modulo q_n because omega**q_n = 1, so each
    evaluation is a table lookup per term regardless of exponent size."""
    table = [1] * q_n
    for i in range(1, q_n):
        table[i] = table[i - 1] * omega % p
    reduced = []
    for f in polys:
        terms = [(c % p, e % q_n) for c, e in f.terms if c % p]
        reduced.append(terms)

    def matches(ts):
        out = []
        for t in ts:
            for terms in reduced:
                acc = 0
                for c, e in terms:
                    acc += c * table[e * t % q_n]
                if acc % p:
                    break
            else:
                out.append(t)
        return out

    if threads <= 1 or q_n < 4 * threads:
        return matches(range(q_n))
    chunk = (q_n + threads - 1) // threads
    ranges = [range(i, min(i + chunk, q_n)) for i in range(0, q_n, chunk)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(matches, ranges))
    return sorted(t for part in parts for t in part)


def pipeline(
    cnf: Cnf3, config: Config | None = None, rng: random.Random | None = None
) -> ReductionTranscript:
    """Run the full reduction on one formula and record everything.

    Deterministic mode draws no randomness: it scans the roots of unity and
    tests every clause polynomial directly.  Randomized mode combines the
    clause polynomials into (g1, g2), forms the single polynomial h, and
    declares h feasible exactly when some root of unity is a common root of
    g1 and g2 modulo p."""
    config = config or Config()
    if cnf.num_vars > config.caps.max_vars:
        raise CapsExceeded(
            f"{cnf.num_vars} variables exceed the pipeline cap {config.caps.max_vars}"
        )
    if cnf.num_vars < 1:
        raise ValueError("the pipeline needs at least one variable")
    randomized = config.mode == "randomized"
    if rng is None:
        rng = random.Random(config.seed)
    n = cnf.num_vars
    q_n = primorial(n)
    k = len(cnf.clauses)
    polys = encode_system(cnf, term_cap=config.caps.term_count)

    strategy = config.prime_strategy if randomized else "scan"
    prime = find_prime_in_progression(
        n,
        strategy=strategy,
        rng=rng if randomized else None,
        caps=config.caps,
        sample_c=config.sample_c,
        sample_cprime=config.sample_cprime,
    )
    p = prime.p
    gen = find_generator(p, rng if randomized else None)
    omega = pow(gen, (p - 1) // q_n, p)

    max_degree = big_n = avec = bvec = qnr = g1 = g2 = h = None
    if k == 0:
        matches = list(range(q_n))  # empty conjunction: every encoding works
    elif randomized:
        g1, g2, avec, bvec = random_combine(polys, rng)
        if avec is not None:
            max_degree = max(max(f.degree for f in polys), 1)
            big_n = 18 * max_degree * k * k
        h, qnr = pair_to_single(g1, g2, p, rng)
        matches = _scan_roots([g1, g2], omega, p, q_n, config.threads)
    else:
        matches = _scan_roots(polys, omega, p, q_n, config.threads)

    witness = None
    for t in matches:
        bits = root_to_assignment(pow(omega, t, p), p, n)
        if satisfies(cnf, bits):
            witness = bits
            break

    return ReductionTranscript(
        mode=config.mode,
        n=n,
        q_n=q_n,
        k=k,
        cnf=cnf,
        seed=config.seed if randomized else None,
        prime=prime,
        prime_strategy=strategy,
        generator=gen,
        omega=omega,
        max_degree=max_degree,
        big_n=big_n,
        a=avec,
        b=bvec,
        qnr=qnr,
        g1=g1,
        g2=g2,
        h=h,
        match_count=len(matches),
        first_match=matches[0] if matches else None,
        verdict=bool(matches),
        witness=witness,
    )


def run_with_majority(
    cnf: Cnf3, config: Config | None = None
) -> tuple[bool, tuple[int, ...] | None, list[ReductionTranscript]]:
    """Repeat the pipeline config.repeats times (once in deterministic mode)
    on independent seeded streams and take the majority verdict."""
    config = config or Config()
    repeats = config.repeats if config.mode == "randomized" else 1
    base = random.Random(config.seed)
    child_seeds = [base.getrandbits(64) for _ in range(repeats)]
    transcripts = []
    for child in child_seeds:
        run_config = config.with_(seed=child)
        transcripts.append(pipeline(cnf, run_config, random.Random(child)))
    yes = sum(1 for t in transcripts if t.verdict)
    verdict = yes * 2 > len(transcripts)
    witness = None
    if verdict:
        for t in transcripts:
            if t.verdict and t.witness is not None and satisfies(cnf, t.witness):
                witness = t.witness
                break
    return verdict, witness, transcripts


# -- transcript re-verification ----------------------------------------------------


def verify_transcript(obj) -> tuple[bool, list[dict]]:
    """Re-check every reproducible claim in a transcript (given as a dict or a
    ReductionTranscript) without re-running any randomness.  Returns
    (all_ok, per-check results)."""
    checks: list[dict] = []

    def check(name, ok, detail=""):
        checks.append({"name": name, "ok": bool(ok), "detail": detail})
        return ok

    try:
        t = obj if isinstance(obj, ReductionTranscript) else ReductionTranscript.from_obj(obj)
    except (KeyError, ValueError, TypeError) as exc:
        check("parse", False, str(exc))
        return False, checks
    check("parse", True)

    cnf = t.cnf
    ok_shape = (
        t.n == cnf.num_vars
        and t.k == len(cnf.clauses)
        and t.q_n == primorial(t.n)
    )
    check("shape", ok_shape, "n, k, q_n consistent with the formula")

    prime_ok = (
        t.prime.p == 1 + t.prime.k * t.prime.q_n
        and t.prime.q_n == t.q_n
        and is_prime(t.prime.p)
    )
    check("prime", prime_ok, f"p = {t.prime.p}")
    if not (ok_shape and prime_ok):
        return False, checks

    p = t.prime.p
    omega_ok = pow(t.omega, t.q_n, p) == 1 and all(
        pow(t.omega, t.q_n // q, p) != 1 for q in first_primes(t.n)
    )
    check("omega", omega_ok, "omega is a primitive q_n-th root of unity")
    if not omega_ok:
        return False, checks

    polys = encode_system(cnf)
    if t.mode == "randomized" and t.k > 0:
        if t.a is not None:
            d = max(max(f.degree for f in polys), 1)
            ok_n = t.max_degree == d and t.big_n == 18 * d * t.k ** 2
            check("combination-bound", ok_n, f"N = 18*{d}*{t.k}^2")
            ok_range = all(1 <= v <= t.big_n for v in t.a + t.b) and len(t.a) == len(
                t.b
            ) == t.k
            check("combination-range", ok_range)
            g1 = SparsePoly.zero()
            g2 = SparsePoly.zero()
            for ai, bi, f in zip(t.a, t.b, polys):
                g1 = g1 + ai * f
                g2 = g2 + bi * f
        else:
            check("combination-bound", t.big_n is None and t.max_degree is None,
                  "pass-through for k <= 2")
            g1 = polys[0]
            g2 = polys[-1]
        check("g1", t.g1 == g1)
        check("g2", t.g2 == g2)
        if p == 2:
            check("qnr", t.qnr is None, "p = 2 uses the x^2+xy+y^2 form")
            h = g1 * g1 + g1 * g2 + g2 * g2
        else:
            qnr_ok = t.qnr is not None and pow(t.qnr, (p - 1) // 2, p) == p - 1
            check("qnr", qnr_ok, "passes the Euler criterion")
            h = g1 * g1 - t.qnr * (g2 * g2) if t.qnr is not None else None
        check("h", h is not None and t.h == h)
        scan_polys = [g1, g2]
    else:
        nulls = (t.g1, t.g2, t.h, t.a, t.b, t.qnr, t.big_n, t.max_degree)
        check("no-combination", all(v is None for v in nulls),
              "deterministic runs carry no combination data")
        scan_polys = polys

    if t.k == 0:
        matches = list(range(t.q_n))
    else:
        matches = _scan_roots(scan_polys, t.omega, p, t.q_n)
    check("verdict", t.verdict == bool(matches))
    check("match-count", t.match_count == len(matches))
    check("first-match", t.first_match == (matches[0] if matches else None))

    expected_witness = None
    for m in matches:
        bits = root_to_assignment(pow(t.omega, m, p), p, t.n)
        if satisfies(cnf, bits):
            expected_witness = bits
            break
    check("witness", t.witness == expected_witness)
    if t.witness is not None:
        check("witness-satisfies", satisfies(cnf, t.witness))

    return all(c["ok"] for c in checks), checks
