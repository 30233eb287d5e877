"""Monte Carlo sweeps over (n, beta), exponent fits and refutation rates.

Every trial is a pure function of the sweep configuration and its index, so
a sweep can fan out over workers and still emit identical records.
"""

from __future__ import annotations

import csv
import io
import json
import math
import time
from dataclasses import asdict, dataclass, fields
from fractions import Fraction
from typing import Any, Optional, Sequence

import numpy as np
from joblib import Parallel, delayed
from scipy import stats

from ._util import as_fraction, derive_seed, fraction_to_json
from .colouring import (
    Colouring,
    acyclic_upper_colouring,
    check_lll_conditions,
    chi_exact,
    choose_g,
    find_low_colour_cycle,
    is_proper,
    refute_colouring,
    theta_bound,
    verify_eta_c,
)
from .colouring.exact import EXACT_N_CAP
from .colouring.lll import _moser_tardos
from .exceptions import InsufficientData, ResampleBudgetExhausted, SolverTimeout
from .graph import (
    EdgeProbabilityModel,
    Graph,
    complete_graph,
    perfect_matching,
    sample_graph,
)

__all__ = [
    "SweepConfig",
    "TrialRecord",
    "ExponentFit",
    "RefutationStats",
    "run_sweep",
    "fit_exponents",
    "refutation_rate",
    "records_to_csv",
    "records_to_json",
    "build_forbidden",
]

ALGORITHMS = ("power_graph", "lll", "exact")


def build_forbidden(desc: Optional[dict], n: int) -> Optional[Graph]:
    """Forbidden graph ``H`` from a named family.

    ``{"family": "none"}``, ``{"family": "perfect_matching"}``,
    ``{"family": "clique", "size": k}`` (on vertices ``0..k-1``) or
    ``{"family": "gnp", "p": q, "seed": s}``.
    """
    if not desc or desc.get("family", "none") == "none":
        return None
    family = desc["family"]
    if family == "perfect_matching":
        return perfect_matching(n)
    if family == "clique":
        k = int(desc["size"])
        return Graph(n, complete_graph(k).edge_list())
    if family == "gnp":
        return sample_graph(EdgeProbabilityModel(n, p=float(desc["p"])), int(desc.get("seed", 0)))
    raise ValueError(f"unknown forbidden family {family!r}")


@dataclass
class SweepConfig:
    n_grid: list[int]
    beta_grid: list[float]
    c: int = 3
    eta: Any = 0
    trials_per_cell: int = 1
    algorithm: str = "power_graph"
    seed: int = 0
    enum_cap: int = 200_000
    max_resamples: int = 100_000
    exact_cap: int = EXACT_N_CAP
    exact_time_limit: Optional[float] = None
    forbidden: Optional[dict] = None
    record_runtime: bool = False

    def __post_init__(self):
        self.n_grid = [int(n) for n in self.n_grid]
        self.beta_grid = [float(b) for b in self.beta_grid]
        self.eta = as_fraction(self.eta)
        if not self.n_grid or not self.beta_grid:
            raise ValueError("n_grid and beta_grid must be non-empty")
        if self.trials_per_cell < 1:
            raise ValueError("trials_per_cell must be >= 1")
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"algorithm must be one of {ALGORITHMS}")
        if self.c < 3:
            raise ValueError("c must be >= 3")
        if not 0 <= self.eta < 1:
            raise ValueError("eta must lie in [0, 1)")
        if self.algorithm == "exact" and max(self.n_grid) > self.exact_cap:
            raise ValueError(f"exact algorithm limited to n <= {self.exact_cap}")

    @classmethod
    def from_dict(cls, d: dict) -> "SweepConfig":
        known = {f.name for f in fields(cls)}
        extra = set(d) - known
        if extra:
            raise ValueError(f"unknown config keys: {sorted(extra)}")
        return cls(**d)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["eta"] = str(self.eta)
        return d


@dataclass
class TrialRecord:
    n: int
    beta: float
    trial_seed: int
    colours_used: int
    chi_over_n: Fraction
    verified: bool
    bad_cycle_fraction: Optional[Fraction]
    runtime_ms: Optional[float]
    truncated_flags: str

    def as_row(self) -> list:
        def fmt(x):
            if x is None:
                return ""
            if isinstance(x, Fraction):
                return str(x)
            return x
        return [fmt(getattr(self, f.name)) for f in fields(self)]

    def to_json(self) -> dict:
        d = {}
        for f in fields(self):
            x = getattr(self, f.name)
            d[f.name] = fraction_to_json(x) if isinstance(x, Fraction) else x
        return d


def _colour_trial(cfg: SweepConfig, g: Graph, beta: float, seed: int, flags: list):
    c = cfg.c
    if cfg.algorithm == "power_graph":
        return acyclic_upper_colouring(g, c)
    if cfg.algorithm == "exact":
        try:
            return chi_exact(g, cfg.eta, c, max_n=cfg.exact_cap, time_limit=cfg.exact_time_limit)[1]
        except SolverTimeout as exc:
            flags.append("exact_timeout")
            return exc.colouring
    # lll
    n = g.n
    p = float(n) ** -beta if n else 0.0
    if 0 < beta < 1:
        gl = choose_g(beta, c)
    else:
        gl = c + 1
        flags.append("g_clamped")
    theta = max(theta_bound(n, p, gl, c), c, 2)
    doublings = 0
    while not check_lll_conditions(theta, n, p, gl, c) and doublings < 40:
        theta *= 2
        doublings += 1
    if doublings:
        flags.append(f"theta_doubled:{doublings}")
    try:
        return _moser_tardos(g, gl, c, theta, derive_seed(seed, "lll"), cfg.max_resamples)[0]
    except ResampleBudgetExhausted as exc:
        flags.append("resample_budget")
        return exc.colouring


def _verify(cfg: SweepConfig, g: Graph, col: Colouring, flags: list):
    """(verified, bad_cycle_fraction) for the sweep record."""
    if not is_proper(g, col):
        flags.append("improper")
        return False, None
    # exhaustive low-colour cycle search decides eta = 0 exactly; when it finds
    # nothing the bad count is 0 for every eta
    if find_low_colour_cycle(g, col, cfg.c) is None:
        return True, Fraction(0)
    report = verify_eta_c(g, col, cfg.eta, cfg.c, cap=cfg.enum_cap, max_witnesses=0)
    if not report.exact_verdict:
        flags.append("verify_truncated")
        return False, report.bad_fraction
    return report.passes, report.bad_fraction


def _run_trial(cfg: SweepConfig, n: int, beta: float, idx: int) -> TrialRecord:
    seed = derive_seed(cfg.seed, n, beta, idx)
    start = time.perf_counter()
    model = EdgeProbabilityModel(n, beta=beta, forbidden=build_forbidden(cfg.forbidden, n))
    g = sample_graph(model, seed)
    flags: list[str] = []
    col = _colour_trial(cfg, g, beta, seed, flags)
    used = col.n_colours_used if n else 0
    verified, bad = _verify(cfg, g, col, flags)
    runtime = round((time.perf_counter() - start) * 1000, 3) if cfg.record_runtime else None
    return TrialRecord(n, beta, seed, used, Fraction(used, n) if n else Fraction(0),
                       verified, bad, runtime, ";".join(flags))


def run_sweep(config: SweepConfig, n_jobs: int = 1) -> list[TrialRecord]:
    """One record per (n, beta, trial), in that order regardless of ``n_jobs``."""
    jobs = [(n, b, i) for n in config.n_grid for b in config.beta_grid
            for i in range(config.trials_per_cell)]
    if n_jobs == 1:
        return [_run_trial(config, *job) for job in jobs]
    return Parallel(n_jobs=n_jobs)(delayed(_run_trial)(config, *job) for job in jobs)


def records_to_csv(records: Sequence[TrialRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([f.name for f in fields(TrialRecord)])
    for r in records:
        w.writerow(r.as_row())
    return buf.getvalue()


def records_to_json(records: Sequence[TrialRecord]) -> str:
    return json.dumps([r.to_json() for r in records], indent=1) + "\n"


# -- exponent fits ------------------------------------------------------------

@dataclass(frozen=True)
class ExponentFit:
    """Least-squares slope of log(mean colours) on log(n) at one beta."""

    beta: float
    alpha_hat: float
    stderr: float
    cells_used: int
    intercept: float = 0.0

    def upper(self, confidence: float = 0.95) -> float:
        """One-sided upper confidence limit for the slope (Student t)."""
        if self.stderr == 0:
            return self.alpha_hat
        return self.alpha_hat + stats.t.ppf(confidence, self.cells_used - 2) * self.stderr

    def lower(self, confidence: float = 0.95) -> float:
        if self.stderr == 0:
            return self.alpha_hat
        return self.alpha_hat - stats.t.ppf(confidence, self.cells_used - 2) * self.stderr


def fit_exponents(records: Sequence[TrialRecord]) -> list[ExponentFit]:
    """Per-beta log-log regression of mean ``colours_used`` on ``n``.

    Cells whose mean is 0 are dropped. Needs at least 3 distinct ``n`` per beta.
    """
    by_beta: dict[float, dict[int, list[int]]] = {}
    for r in records:
        by_beta.setdefault(r.beta, {}).setdefault(r.n, []).append(r.colours_used)
    fits = []
    for beta in sorted(by_beta):
        cells = sorted((n, float(np.mean(v))) for n, v in by_beta[beta].items())
        cells = [(n, y) for n, y in cells if y > 0]
        if len(cells) < 3:
            raise InsufficientData(f"beta={beta}: need >= 3 non-empty n cells, got {len(cells)}")
        x = np.log([n for n, _ in cells])
        y = np.log([m for _, m in cells])
        res = stats.linregress(x, y)
        se = 0.0 if not math.isfinite(res.stderr) else float(res.stderr)
        fits.append(ExponentFit(beta, float(res.slope), se, len(cells), float(res.intercept)))
    return fits


# -- refutation ---------------------------------------------------------------

@dataclass(frozen=True)
class RefutationStats:
    """Outcome counts of a refutation experiment.

    ``no_colouring`` counts trials where randomized greedy found no proper
    colouring within the palette cap; those trials are not refuted.
    """

    trials: int
    refuted: int
    unrefuted: int
    no_colouring: int
    palette_cap: int

    @property
    def rate(self) -> Fraction:
        return Fraction(self.refuted, self.trials)


def random_capped_colouring(g: Graph, cap: int, rng: np.random.Generator) -> Optional[Colouring]:
    """First-fit over a shuffled vertex order and shuffled palette ``1..cap``.

    Returns ``None`` as soon as a vertex sees all ``cap`` colours.
    """
    if g.n == 0:
        return Colouring((), max(cap, 1))
    palette = rng.permutation(cap) + 1
    col = np.zeros(g.n, dtype=np.int64)
    used = np.zeros(cap + 1, dtype=bool)
    for v in rng.permutation(g.n):
        nb = col[g.neighbor_array(v)]
        used[nb] = True
        free = palette[~used[palette]]
        used[nb] = False
        if not len(free):
            return None
        col[v] = free[0]
    return Colouring(tuple(col.tolist()), cap)


def refutation_rate(n: int, beta: float, c: int, trials: int, palette_cap: Optional[int] = None,
                    seed: int = 0, allow_odd: bool = False, attempts: int = 10) -> RefutationStats:
    """Fraction of sampled graphs whose random capped proper colouring gets refuted.

    ``palette_cap`` defaults to ``n // 8``. Each trial retries the randomized
    greedy colouring up to ``attempts`` times before counting as ``no_colouring``.
    """
    cap = max(n // 8, 1) if palette_cap is None else int(palette_cap)
    refuted = unrefuted = none = 0
    for i in range(trials):
        tseed = derive_seed(seed, n, beta, i)
        g = sample_graph(EdgeProbabilityModel(n, beta=beta), tseed)
        col = None
        for a in range(attempts):
            col = random_capped_colouring(g, cap, np.random.default_rng(derive_seed(tseed, a)))
            if col is not None:
                break
        if col is None:
            none += 1
        elif refute_colouring(g, col, c, allow_odd=allow_odd) is not None:
            refuted += 1
        else:
            unrefuted += 1
    return RefutationStats(trials, refuted, unrefuted, none, cap)
