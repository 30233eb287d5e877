"""Closed-form bounds and their Monte Carlo counterparts."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from ._util import as_fraction, derive_seed
from .cycles import CycleCensus
from .exceptions import DomainError
from .graph import EdgeProbabilityModel, sample_graph

__all__ = [
    "BernoulliSum",
    "TailEstimate",
    "ExponentBounds",
    "chernoff_bound",
    "empirical_tail",
    "expected_cycle_bracket",
    "expected_cycle_count",
    "short_cycle_fraction",
    "beta_crit_bounds",
    "chernoff_table",
    "rows_to_csv",
]


def chernoff_bound(mu: float, eps: float) -> float:
    """``2 exp(-eps^2 mu / 4)``, the two-sided deviation bound for Bernoulli sums."""
    if not 0 < eps < 0.5:
        raise DomainError(f"eps={eps} outside (0, 1/2)")
    if mu <= 0:
        raise DomainError("mu must be positive")
    return 2.0 * math.exp(-eps * eps * mu / 4.0)


@dataclass(frozen=True)
class BernoulliSum:
    """Sum of independent Bernoulli variables: ``t`` copies of ``p``, or explicit ``probs``."""

    t: int = 0
    p: float = 0.0
    probs: Optional[tuple[float, ...]] = None

    @property
    def mean(self) -> float:
        return float(sum(self.probs)) if self.probs is not None else self.t * self.p

    def sample(self, rng: np.random.Generator, trials: int) -> np.ndarray:
        if self.probs is not None:
            pr = np.asarray(self.probs)
            return (rng.random((trials, len(pr))) < pr).sum(axis=1)
        return rng.binomial(self.t, self.p, size=trials)


@dataclass(frozen=True)
class TailEstimate:
    exceed: int
    trials: int
    mu: float

    @property
    def value(self) -> Fraction:
        return Fraction(self.exceed, self.trials)

    @property
    def stderr(self) -> float:
        q = self.exceed / self.trials
        return math.sqrt(q * (1 - q) / self.trials)


def empirical_tail(source: Union[EdgeProbabilityModel, BernoulliSum], eps: float, trials: int,
                   seed: int, statistic: str = "edges", vertex: int = 0) -> TailEstimate:
    """Fraction of trials with ``|W - mu| >= eps * mu``.

    For a random-graph model ``W`` is the edge count (``statistic="edges"``)
    or the degree of ``vertex`` (``"degree"``). No range check on ``eps``.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if isinstance(source, BernoulliSum):
        mu = source.mean
        w = source.sample(np.random.default_rng(seed), trials)
    else:
        probs = source.pair_probabilities()
        if statistic == "edges":
            mu = float(probs.sum())
        elif statistic == "degree":
            n = source.n
            iu, iv = np.triu_indices(n, 1)
            mu = float(probs[(iu == vertex) | (iv == vertex)].sum())
        else:
            raise ValueError(f"unknown statistic {statistic!r}")
        w = np.empty(trials)
        for i in range(trials):
            g = sample_graph(source, derive_seed(seed, i))
            w[i] = g.m if statistic == "edges" else g.degree(vertex)
    exceed = int(np.count_nonzero(np.abs(w - mu) >= eps * mu))
    return TailEstimate(exceed, trials, mu)


def expected_cycle_bracket(n: int, p: float, k: int) -> tuple[float, float]:
    """``((np)^k / (4k), (np)^k)``, the bracket around the expected k-cycle count."""
    if k < 3:
        raise ValueError("k must be >= 3")
    top = (n * p) ** k
    return top / (4 * k), top


def expected_cycle_count(n: int, p: float, k: int) -> float:
    """Exact first moment ``n!/(n-k)! p^k / (2k)`` of the k-cycle count in ``G(n, p)``."""
    if k < 3:
        raise ValueError("k must be >= 3")
    return math.perm(n, k) * p ** k / (2 * k)


def short_cycle_fraction(census: CycleCensus, g: int) -> Fraction:
    """Share of cycles shorter than ``g`` among all counted cycles (0 if none)."""
    if census.truncated:
        raise DomainError("census is truncated")
    if census.max_len < g:
        raise DomainError(f"census stops at length {census.max_len} < g={g}")
    total = census.total
    if total == 0:
        return Fraction(0)
    short = sum(cnt for k, cnt in census.counts.items() if k < g)
    return Fraction(short, total)


@dataclass(frozen=True)
class ExponentBounds:
    c: int
    eta: Fraction
    lower: Fraction
    upper: Fraction


def beta_crit_bounds(c: int, eta=0) -> ExponentBounds:
    """Bounds on the critical exponent: ``[1/(4c-2), 1 - 1/(c-1)]`` for strict
    colourings and ``0`` as soon as ``eta > 0``."""
    eta = as_fraction(eta)
    if c < 3:
        raise ValueError("c must be >= 3")
    if not 0 <= eta < 1:
        raise ValueError("eta must lie in [0, 1)")
    if eta > 0:
        return ExponentBounds(c, eta, Fraction(0), Fraction(0))
    return ExponentBounds(c, eta, Fraction(1, 4 * c - 2), 1 - Fraction(1, c - 1))


def chernoff_table(ts: Sequence[int], ps: Sequence[float], epss: Sequence[float],
                   trials: int, seed: int) -> list[dict]:
    """Bound versus empirical tail over a grid of Bernoulli sums."""
    rows = []
    for t in ts:
        for p in ps:
            for eps in epss:
                src = BernoulliSum(t=t, p=p)
                est = empirical_tail(src, eps, trials, derive_seed(seed, t, p, eps))
                rows.append({"t": t, "p": p, "eps": eps,
                             "bound": chernoff_bound(src.mean, eps),
                             "empirical": float(est.value), "stderr": est.stderr})
    return rows


def rows_to_csv(rows: Iterable[dict]) -> str:
    rows = list(rows)
    buf = io.StringIO()
    if rows:
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    return buf.getvalue()
