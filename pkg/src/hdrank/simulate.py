"""Reproducible Monte Carlo studies of empirical size and power.

Each replication draws its own counter-based random stream keyed by
(master_seed, replication index), so results do not depend on how
replications are scheduled across threads, and the same seed always
reproduces the same table byte for byte.  Replications share streams
across grid cells, which acts as common random numbers for power curves.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import DomainError, ValidationError
from .procedures import METHODS, run_one_sample_tests, run_two_sample_tests

PROBLEMS = ("one_sample", "two_sample")
SCENARIOS = ("identity", "ar1")
DISTRIBUTIONS = ("normal", "t3")

MAX_SEED = 2**64

DEFAULT_SIGNAL_GRID = (1, 2, 5, 10, 20, 50, 100, 200)


def ar1_cholesky(p: int, rho: float) -> np.ndarray:
    """Closed-form lower Cholesky factor of the AR(1) correlation matrix.

    Column 0 is rho^i; column j >= 1 is rho^(i-j) * sqrt(1 - rho^2) on and
    below the diagonal.  Reconstructs rho^|i-j| exactly up to rounding.
    """
    if int(p) != p or p < 1:
        raise DomainError(f"p must be an integer >= 1, got {p!r}")
    if not (-1.0 < rho < 1.0):
        raise DomainError(f"AR(1) correlation must satisfy |rho| < 1, got {rho!r}")
    idx = np.arange(p)
    L = np.tril(float(rho) ** np.clip(idx[:, None] - idx[None, :], 0, None))
    L[:, 1:] *= math.sqrt(1.0 - rho * rho)
    return L


def sparse_mean(p: int, m_signal: int) -> np.ndarray:
    """Mean vector with sqrt(0.5/m_signal) on the last m_signal coordinates.

    The squared norm is 0.5 for any m_signal >= 1, so the total signal
    energy stays fixed while the sparsity varies.
    """
    if int(p) != p or p < 1:
        raise DomainError(f"p must be an integer >= 1, got {p!r}")
    if int(m_signal) != m_signal or not (0 <= m_signal <= p):
        raise DomainError(f"m_signal must be an integer in [0, {p}], got {m_signal!r}")
    mu = np.zeros(p)
    if m_signal:
        mu[p - m_signal:] = math.sqrt(0.5 / m_signal)
    return mu


def draw_sample(
    stream: np.random.Generator,
    n: int,
    p: int,
    distribution: str = "normal",
    mu: np.ndarray | None = None,
    chol: np.ndarray | None = None,
) -> np.ndarray:
    """Draw n rows from the multivariate normal or t3 scale mixture.

    Rows are mu + L z for standard normal z; the t3 variant divides each
    row's Gaussian core by sqrt(w/3) with one chi-square(3) draw per row.
    The draw order is fixed (normals first, then mixing weights) so a given
    stream state always yields the same matrix.
    """
    if distribution not in DISTRIBUTIONS:
        raise DomainError(f"distribution must be one of {DISTRIBUTIONS}, got {distribution!r}")
    z = stream.standard_normal((n, p))
    core = z if chol is None else z @ chol.T
    if distribution == "t3":
        w = stream.chisquare(3.0, size=(n, 1))
        core = core / np.sqrt(w / 3.0)
    return core if mu is None else mu + core


@dataclass(frozen=True)
class SimConfig:
    """Complete description of one Monte Carlo experiment."""

    problem: str = "one_sample"
    n: int = 100
    m: int | None = None  # second sample size; two-sample only
    p: int = 200
    scenario: str = "identity"
    rho: float | None = None
    distribution: str = "normal"
    m_signal: tuple[int, ...] = (0,)
    reps: int = 1000
    alpha: float = 0.05
    master_seed: int = 0
    bandwidth: int | None = None
    methods: tuple[str, ...] = METHODS
    threads: int = 1

    def validated(self) -> "SimConfig":
        if self.problem not in PROBLEMS:
            raise ValidationError(f"problem must be one of {PROBLEMS}, got {self.problem!r}")
        if self.scenario not in SCENARIOS:
            raise ValidationError(f"scenario must be one of {SCENARIOS}, got {self.scenario!r}")
        if self.distribution not in DISTRIBUTIONS:
            raise ValidationError(
                f"distribution must be one of {DISTRIBUTIONS}, got {self.distribution!r}"
            )
        if self.scenario == "ar1":
            if self.rho is None:
                raise ValidationError("scenario 'ar1' needs rho")
            if not (-1.0 < self.rho < 1.0):
                raise ValidationError(f"rho must satisfy |rho| < 1, got {self.rho!r}")
        elif self.rho is not None:
            raise ValidationError("rho is only meaningful for scenario 'ar1'")
        if self.problem == "one_sample" and self.m is not None:
            raise ValidationError("m is only meaningful for the two-sample problem")
        cfg = self
        if self.problem == "two_sample" and self.m is None:
            cfg = replace(cfg, m=cfg.n)
        if cfg.n < 2 or (cfg.m is not None and cfg.m < 2):
            raise ValidationError("sample sizes must be at least 2")
        if cfg.p < 1:
            raise ValidationError("p must be at least 1")
        if not cfg.m_signal:
            raise ValidationError("m_signal grid must not be empty")
        for ms in cfg.m_signal:
            if int(ms) != ms or not (0 <= ms <= cfg.p):
                raise ValidationError(f"m_signal entries must be integers in [0, p], got {ms!r}")
        if cfg.reps < 1:
            raise ValidationError("reps must be at least 1")
        if not (0.0 < cfg.alpha < 1.0):
            raise ValidationError(f"alpha must lie in (0, 1), got {cfg.alpha!r}")
        if not (0 <= cfg.master_seed < MAX_SEED):
            raise ValidationError("master_seed must fit in an unsigned 64-bit integer")
        bad = set(cfg.methods) - set(METHODS)
        if bad or not cfg.methods:
            raise ValidationError(f"methods must be a nonempty subset of {METHODS}")
        if cfg.threads < 1:
            raise ValidationError("threads must be at least 1")
        return cfg

    @property
    def scenario_label(self) -> str:
        if self.scenario == "ar1":
            return f"ar1({self.rho:g})"
        return "identity"

    @property
    def kind(self) -> str:
        return "size" if all(ms == 0 for ms in self.m_signal) else "power"


@dataclass(frozen=True)
class StudyCell:
    """One (method, design, signal) cell of a size table or power curve."""

    method: str
    n: int
    m: int
    p: int
    distribution: str
    scenario: str
    m_signal: int
    rejection_rate: float
    mc_stderr: float


@dataclass(frozen=True)
class StudyResult:
    kind: str  # "size" | "power"
    cells: tuple[StudyCell, ...]
    config: SimConfig


def replication_stream(master_seed: int, rep: int) -> np.random.Generator:
    """Counter-based substream for one replication: Philox keyed by (seed, rep)."""
    key = np.array([master_seed, rep], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def run_study(config: SimConfig) -> StudyResult:
    """Run the Monte Carlo study described by ``config``.

    Rejections are tallied per method and grid point; every cell carries the
    binomial Monte Carlo standard error sqrt(r(1-r)/reps).  Output is
    independent of ``threads``.
    """
    cfg = config.validated()
    chol = ar1_cholesky(cfg.p, cfg.rho) if cfg.scenario == "ar1" else None
    cells: list[StudyCell] = []
    for ms in cfg.m_signal:
        counts = _run_cell(cfg, chol, sparse_mean(cfg.p, ms))
        for method in cfg.methods:
            rate = counts[method] / cfg.reps
            stderr = math.sqrt(rate * (1.0 - rate) / cfg.reps)
            cells.append(
                StudyCell(
                    method=method,
                    n=cfg.n,
                    m=cfg.m or 0,
                    p=cfg.p,
                    distribution=cfg.distribution,
                    scenario=cfg.scenario_label,
                    m_signal=ms,
                    rejection_rate=rate,
                    mc_stderr=stderr,
                )
            )
    return StudyResult(kind=cfg.kind, cells=tuple(cells), config=cfg)


def _run_cell(cfg: SimConfig, chol, mu) -> dict[str, int]:
    def one_rep(rep: int) -> tuple[bool, ...]:
        stream = replication_stream(cfg.master_seed, rep)
        if cfg.problem == "one_sample":
            X = draw_sample(stream, cfg.n, cfg.p, cfg.distribution, mu, chol)
            res = run_one_sample_tests(X, cfg.methods, cfg.alpha, cfg.bandwidth)
        else:
            X = draw_sample(stream, cfg.n, cfg.p, cfg.distribution, mu, chol)
            Y = draw_sample(stream, cfg.m, cfg.p, cfg.distribution, None, chol)
            res = run_two_sample_tests(X, Y, cfg.methods, cfg.alpha, cfg.bandwidth)
        return tuple(res[m].reject for m in cfg.methods)

    if cfg.threads > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            rejections = list(pool.map(one_rep, range(cfg.reps), chunksize=16))
    else:
        rejections = [one_rep(rep) for rep in range(cfg.reps)]

    counts = dict.fromkeys(cfg.methods, 0)
    for rej in rejections:
        for method, flag in zip(cfg.methods, rej):
            counts[method] += flag
    return counts


def resolve_threads(requested: int | None) -> int:
    """Thread count from the request, HDRANK_THREADS, or available CPUs."""
    if requested is not None:
        return max(1, int(requested))
    env = os.environ.get("HDRANK_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError as exc:
            raise ValidationError(f"HDRANK_THREADS must be an integer, got {env!r}") from exc
    return os.cpu_count() or 1
