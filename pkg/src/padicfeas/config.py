"""Run configuration and resource caps."""

from __future__ import annotations

from dataclasses import dataclass, field, replace


@dataclass(frozen=True)
class Caps:
    """Resource limits; exceeding any of them raises instead of degrading."""

    degree: int = 512              # dense operations (brute-force decision, resultants)
    gcd_degree: int = 100_000      # dense gcd
    term_count: int = 1_000_000    # intermediate sparse terms during exact division
    k_max: int = 1_000_000         # sequential prime-scan bound on k
    sieve_limit: int = 100_000_000
    rho_iterations: int = 1_000_000
    trial_division_bound: int = 1_000_000
    max_vars: int = 6              # formula size accepted by the reduction pipeline


@dataclass(frozen=True)
class Config:
    """Effective configuration of a pipeline or CLI run."""

    seed: int = 0
    mode: str = "randomized"       # "randomized" | "deterministic"
    repeats: int = 5               # independent repetitions for majority vote
    prime_strategy: str = "scan"   # "scan" | "sample"
    sample_c: int = 2              # sample k uniformly from {1, ..., 2**(n**sample_c)}
    sample_cprime: int = 2         # allow at most 9 * n**sample_cprime sampling trials
    threads: int = 1
    caps: Caps = field(default_factory=Caps)

    def __post_init__(self):
        if self.mode not in ("randomized", "deterministic"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.prime_strategy not in ("scan", "sample"):
            raise ValueError(f"unknown prime strategy {self.prime_strategy!r}")
        if self.repeats < 1 or self.threads < 1:
            raise ValueError("repeats and threads must be positive")

    def with_(self, **kwargs) -> "Config":
        return replace(self, **kwargs)

    def to_obj(self) -> dict:
        caps = self.caps
        return {
            "seed": str(self.seed),
            "mode": self.mode,
            "repeats": self.repeats,
            "prime_strategy": self.prime_strategy,
            "sample_c": self.sample_c,
            "sample_cprime": self.sample_cprime,
            "threads": self.threads,
            "caps": {
                "degree": caps.degree,
                "gcd_degree": caps.gcd_degree,
                "term_count": caps.term_count,
                "k_max": caps.k_max,
                "sieve_limit": caps.sieve_limit,
                "rho_iterations": caps.rho_iterations,
                "trial_division_bound": caps.trial_division_bound,
                "max_vars": caps.max_vars,
            },
        }
