"""Command-line front end.

Every subcommand prints one JSON report (sorted keys, stable layout) to
stdout and a short human-readable summary to stderr.  Exit codes form a
stable contract: 0 feasible/true/ok, 1 infeasible/false, 2 input error,
3 cap or budget exhaustion.  Runs are deterministic given --seed (or the
PADICFEAS_SEED environment variable) and the inputs.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys

from . import __version__
from .config import Caps, Config
from .errors import CapsExceeded, InexactDivision
from .padic import bruteforce_decision, decide_binomial, has_degenerate_root_qp
from .plaisted import parse_dimacs, satisfies
from .primes import DENSITY_NOTE, find_prime_in_progression, prime_density_experiment
from .reduce import run_with_majority, transcript_dumps, verify_transcript
from .sparsepoly import parse_poly, poly_from_obj, poly_to_obj

EXIT_TRUE = 0
EXIT_FALSE = 1
EXIT_INPUT = 2
EXIT_CAPS = 3


def _resolve_seed(args) -> int:
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = os.environ.get("PADICFEAS_SEED")
    if env is not None:
        return int(env)
    return 0


def _print_report(report: dict, summary: str):
    sys.stdout.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    sys.stderr.write(summary + "\n")


def _load_poly(path: str):
    with open(path) as fh:
        text = fh.read()
    stripped = text.strip()
    if stripped.startswith("{"):
        return poly_from_obj(json.loads(stripped))
    return parse_poly(stripped)


def _caps_from_args(args) -> Caps:
    kwargs = {}
    for field, attr in (
        ("degree", "degree_cap"),
        ("k_max", "k_max"),
        ("sieve_limit", "sieve_cap"),
        ("max_vars", "max_vars"),
    ):
        value = getattr(args, attr, None)
        if value is not None:
            kwargs[field] = value
    return Caps(**kwargs)


# -- subcommands -----------------------------------------------------------------


def _cmd_decide_binomial(args) -> int:
    decision = decide_binomial(args.c1, args.a1, args.c2, args.a2, args.prime)
    report = {
        "command": "decide-binomial",
        "config": {},
        "input": {
            "c1": str(args.c1),
            "a1": str(args.a1),
            "c2": str(args.c2),
            "a2": str(args.a2),
            "prime": str(args.prime),
        },
        "feasible": decision.feasible,
        "rule": decision.rule,
        "witness": _witness_obj(decision.witness),
    }
    verdict = "feasible" if decision.feasible else "infeasible"
    _print_report(report, f"{verdict} over Q_{args.prime} ({decision.rule})")
    return EXIT_TRUE if decision.feasible else EXIT_FALSE


def _witness_obj(witness):
    if witness is None:
        return None
    return {
        "residue": str(witness.residue),
        "p": str(witness.modulus.p),
        "ell": witness.modulus.ell,
        "valuation_shift": str(witness.valuation_shift),
    }


def _cmd_decide(args) -> int:
    f = _load_poly(args.poly_file)
    caps = _caps_from_args(args)
    decision = bruteforce_decision(f, args.prime, caps)
    report = {
        "command": "decide",
        "config": {"degree_cap": caps.degree},
        "input": {"poly": poly_to_obj(f), "prime": str(args.prime)},
        "feasible": decision.feasible,
        "rule": decision.rule,
        "witness": _witness_obj(decision.witness),
    }
    verdict = "feasible" if decision.feasible else "infeasible"
    _print_report(report, f"{verdict} over Q_{args.prime} ({decision.rule})")
    return EXIT_TRUE if decision.feasible else EXIT_FALSE


def _cmd_degenerate(args) -> int:
    f = _load_poly(args.poly_file)
    caps = _caps_from_args(args)
    result = has_degenerate_root_qp(f, args.prime, caps)
    report = {
        "command": "degenerate",
        "config": {"degree_cap": caps.degree},
        "input": {"poly": poly_to_obj(f), "prime": str(args.prime)},
        "degenerate_root": result,
    }
    _print_report(
        report,
        f"{'has' if result else 'no'} repeated degree-1 factor over Q_{args.prime}",
    )
    return EXIT_TRUE if result else EXIT_FALSE


def _cmd_reduce(args) -> int:
    with open(args.cnf_file) as fh:
        cnf = parse_dimacs(fh.read())
    seed = _resolve_seed(args)
    config = Config(
        seed=seed,
        mode=args.mode,
        repeats=args.repeats,
        prime_strategy=args.prime_strategy,
        threads=args.threads,
        caps=_caps_from_args(args),
    )
    verdict, witness, transcripts = run_with_majority(cnf, config)
    if witness is not None and not satisfies(cnf, witness):
        witness = None  # defensive: never print an unchecked witness
    report = {
        "command": "reduce",
        "config": config.to_obj(),
        "verdict": verdict,
        "feasible_runs": sum(1 for t in transcripts if t.verdict),
        "repeats": len(transcripts),
        "witness": None if witness is None else list(witness),
        "runs": [t.to_obj() for t in transcripts],
    }
    text = transcript_dumps(report)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    sys.stdout.write(text)
    verdict_word = "satisfiable" if verdict else "unsatisfiable"
    sys.stderr.write(
        f"{verdict_word} ({report['feasible_runs']}/{report['repeats']} runs feasible, "
        f"mode={config.mode}, p={transcripts[0].prime.p})\n"
    )
    return EXIT_TRUE if verdict else EXIT_FALSE


def _cmd_find_prime(args) -> int:
    seed = _resolve_seed(args)
    rng = random.Random(seed)
    caps = _caps_from_args(args)
    result = find_prime_in_progression(
        args.n, strategy=args.strategy, rng=rng, caps=caps
    )
    report = {
        "command": "find-prime",
        "config": {"seed": str(seed), "k_max": caps.k_max},
        "strategy": args.strategy,
        "n": result.n,
        "q_n": str(result.q_n),
        "k": str(result.k),
        "p": str(result.p),
        "trials_used": result.trials_used,
    }
    _print_report(report, f"p = {result.p} = 1 + {result.k} * {result.q_n}")
    return EXIT_TRUE


def _cmd_density(args) -> int:
    values = args.pairs
    if len(values) % 2 != 0:
        raise ValueError("density expects pairs: M x [M x ...]")
    caps = _caps_from_args(args)
    rows = []
    for m, x in zip(values[::2], values[1::2]):
        r = prime_density_experiment(m, x, caps)
        rows.append(
            {
                "M": r.m,
                "x": str(r.x),
                "count": r.count,
                "predicted": r.predicted,
                "ratio": r.ratio,
            }
        )
    report = {
        "command": "density",
        "config": {"sieve_cap": caps.sieve_limit},
        "rows": rows,
        "note": DENSITY_NOTE,
    }
    lines = [
        f"M={row['M']} x={row['x']}: {row['count']} primes, ratio {row['ratio']:.4f}"
        for row in rows
    ]
    _print_report(report, "\n".join(lines))
    return EXIT_TRUE


def _cmd_verify_transcript(args) -> int:
    with open(args.file) as fh:
        obj = json.load(fh)
    if "runs" in obj:
        all_checks = []
        ok = True
        for i, run in enumerate(obj["runs"]):
            run_ok, checks = verify_transcript(run)
            ok = ok and run_ok
            all_checks.append({"run": i, "ok": run_ok, "checks": checks})
        report = {"command": "verify-transcript", "ok": ok, "runs": all_checks}
    else:
        ok, checks = verify_transcript(obj)
        report = {"command": "verify-transcript", "ok": ok, "checks": checks}
    _print_report(report, "transcript ok" if ok else "transcript verification FAILED")
    return EXIT_TRUE if ok else EXIT_FALSE


# -- parser ------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="padicfeas",
        description="Root feasibility of sparse integer polynomials over the "
        "p-adic rationals, and a 3SAT-to-polynomial reduction pipeline.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    pb = sub.add_parser("decide-binomial", help="decide c1*x^a1 + c2*x^a2 over Q_p")
    for name in ("c1", "a1", "c2", "a2"):
        pb.add_argument(name, type=int)
    pb.add_argument("--prime", type=int, required=True)
    pb.set_defaults(func=_cmd_decide_binomial)

    pd = sub.add_parser("decide", help="decide a polynomial file over Q_p (brute force)")
    pd.add_argument("poly_file")
    pd.add_argument("--prime", type=int, required=True)
    pd.add_argument("--degree-cap", type=int, default=None)
    pd.set_defaults(func=_cmd_decide)

    pg = sub.add_parser("degenerate", help="detect a repeated degree-1 factor over Q_p")
    pg.add_argument("poly_file")
    pg.add_argument("--prime", type=int, required=True)
    pg.add_argument("--degree-cap", type=int, default=None)
    pg.set_defaults(func=_cmd_degenerate)

    pr = sub.add_parser("reduce", help="run the 3SAT reduction pipeline on a DIMACS file")
    pr.add_argument("cnf_file")
    pr.add_argument("--mode", choices=("randomized", "deterministic"), default="randomized")
    pr.add_argument("--seed", type=int, default=None)
    pr.add_argument("--repeats", type=int, default=5)
    pr.add_argument("--prime-strategy", choices=("scan", "sample"), default="scan")
    pr.add_argument("--threads", type=int, default=1)
    pr.add_argument("--max-vars", type=int, default=None)
    pr.add_argument("--out", default=None, help="also write the report to this file")
    pr.set_defaults(func=_cmd_reduce)

    pf = sub.add_parser("find-prime", help="find a prime p = 1 + k*Q_n")
    pf.add_argument("n", type=int)
    pf.add_argument("--strategy", choices=("scan", "sample"), default="scan")
    pf.add_argument("--seed", type=int, default=None)
    pf.add_argument("--k-max", dest="k_max", type=int, default=None)
    pf.set_defaults(func=_cmd_find_prime)

    pe = sub.add_parser("density", help="count primes = 1 (mod M) up to x vs Li(x)/phi(M)")
    pe.add_argument("pairs", type=int, nargs="+", metavar="M_OR_X")
    pe.add_argument("--sieve-cap", type=int, default=None)
    pe.set_defaults(func=_cmd_density)

    pv = sub.add_parser("verify-transcript", help="re-verify a reduction transcript")
    pv.add_argument("file")
    pv.set_defaults(func=_cmd_verify_transcript)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CapsExceeded as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_CAPS
    except (ValueError, InexactDivision, OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


def main_entry():
    sys.exit(main())
