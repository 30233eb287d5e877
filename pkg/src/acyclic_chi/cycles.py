"""Simple cycles and long paths.

Cycles are unordered objects: each one is stored once in canonical form
(rotated to start at its smallest vertex, direction chosen so the second
vertex is smaller than the last).
"""

from __future__ import annotations

import csv
import io
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple, Optional

import networkx as nx
import numpy as np

from ._util import derive_seed
from .exceptions import BudgetExhausted, CapExceeded
from .graph import EdgeProbabilityModel, Graph, sample_graph

__all__ = [
    "Cycle",
    "CycleCensus",
    "PathProbability",
    "BoundValue",
    "iter_cycles",
    "enumerate_cycles",
    "count_cycles",
    "cycle_census",
    "find_path",
    "has_path_of_length",
    "estimate_path_probability",
    "lemma1_bound",
]


class Cycle(tuple):
    """A simple cycle as a canonical vertex tuple."""

    __slots__ = ()

    @classmethod
    def from_sequence(cls, seq) -> "Cycle":
        seq = [int(v) for v in seq]
        if len(seq) < 3 or len(set(seq)) != len(seq):
            raise ValueError("a cycle needs at least 3 distinct vertices")
        i = seq.index(min(seq))
        rot = seq[i:] + seq[:i]
        if rot[1] > rot[-1]:
            rot = [rot[0]] + rot[:0:-1]
        return cls(rot)

    @property
    def length(self) -> int:
        return len(self)

    def edges(self):
        return [(self[i], self[(i + 1) % len(self)]) for i in range(len(self))]

    def is_in(self, g: Graph) -> bool:
        return len(set(self)) == len(self) >= 3 and all(g.has_edge(u, v) for u, v in self.edges())


def iter_cycles(g: Graph, min_len: int = 3, max_len: Optional[int] = None) -> Iterator[Cycle]:
    """Yield every simple cycle with ``min_len <= length <= max_len`` once.

    Johnson's algorithm (or its bounded-length variant when ``max_len < n``)
    from networkx. Output order is deterministic but not sorted.
    """
    n = g.n
    max_len = n if max_len is None else min(max_len, n)
    min_len = max(min_len, 3)
    if min_len > max_len or g.m < 3:
        return
    G = nx.Graph()
    G.add_nodes_from(range(n))
    G.add_edges_from(g.edge_list())
    bound = None if max_len >= n else max_len
    for cyc in nx.simple_cycles(G, length_bound=bound):
        if len(cyc) >= min_len:
            yield Cycle.from_sequence(cyc)


def enumerate_cycles(g: Graph, min_len: int = 3, max_len: Optional[int] = None,
                     cap: Optional[int] = None) -> list[Cycle]:
    """All simple cycles in the length window, sorted by canonical form.

    Raises :class:`CapExceeded` (``partial`` = cycles seen) when more than
    ``cap`` cycles exist.
    """
    if max_len is not None and min_len > max_len:
        raise ValueError("min_len must not exceed max_len")
    out = []
    for cyc in iter_cycles(g, min_len, max_len):
        out.append(cyc)
        if cap is not None and len(out) > cap:
            raise CapExceeded(f"more than {cap} cycles", partial=len(out))
    out.sort()
    return out


def _trace_counts(g: Graph) -> dict[int, int]:
    # closed-walk identities for 3-, 4- and 5-cycles
    A = g.to_csr(np.int64)
    d = g.degrees().astype(np.int64)
    A2 = (A @ A).toarray()
    Ad = A.toarray()
    A3 = np.asarray(A2 @ Ad)
    tr3 = int((A2 * Ad).sum())
    tr4 = int((A2 * A2).sum())
    tr5 = int((A2 * A3).sum())
    a3_diag = (A2 * Ad).sum(axis=1)
    m = int(d.sum() // 2)
    n3 = tr3 // 6
    n4 = (tr4 - 2 * int((d * d).sum()) + 2 * m) // 8
    n5 = (tr5 - 5 * tr3 - 5 * int(((d - 2) * a3_diag).sum())) // 10
    return {3: n3, 4: n4, 5: n5}


def count_cycles(g: Graph, k: int, cap: Optional[int] = None, method: str = "auto") -> int:
    """Number of simple cycles of length exactly ``k``.

    ``method="trace"`` uses closed-walk identities on adjacency powers (only
    ``k`` in 3..5); ``"enumerate"`` counts by search and honours ``cap``.
    ``"auto"`` picks the trace route when available.
    """
    if k < 3:
        raise ValueError("cycle length must be at least 3")
    if k > g.n:
        return 0
    if method == "auto":
        method = "trace" if k <= 5 and g.n <= 5000 else "enumerate"
    if method == "trace":
        if k > 5:
            raise ValueError("trace counting only covers k in 3..5")
        return _trace_counts(g)[k]
    count = 0
    for _ in iter_cycles(g, k, k):
        count += 1
        if cap is not None and count > cap:
            raise CapExceeded(f"more than {cap} cycles of length {k}", partial=count)
    return count


@dataclass
class CycleCensus:
    """Cycle counts by length, ``N_k`` for ``3 <= k <= max_len``."""

    counts: dict[int, int]
    max_len: int
    truncated: bool = False
    cap: Optional[int] = None

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["length", "count"])
        for k in sorted(self.counts):
            w.writerow([k, self.counts[k]])
        return buf.getvalue()


def cycle_census(g: Graph, max_len: Optional[int] = None, cap: Optional[int] = None) -> CycleCensus:
    max_len = g.n if max_len is None else max_len
    counts = Counter()
    truncated = False
    seen = 0
    for cyc in iter_cycles(g, 3, max_len):
        seen += 1
        if cap is not None and seen > cap:
            truncated = True
            break
        counts[len(cyc)] += 1
    full = {k: counts.get(k, 0) for k in range(3, max(max_len, 2) + 1)}
    return CycleCensus(full, max_len, truncated, cap)


# -- paths ------------------------------------------------------------------

def find_path(g: Graph, k: int, budget: Optional[int] = None) -> Optional[list[int]]:
    """A simple path with exactly ``k`` edges, or ``None`` if none exists.

    Exhaustive depth-first search from every start vertex of a large enough
    component. Starts and branches are tried in increasing degree order.
    Raises :class:`BudgetExhausted` after ``budget`` node expansions.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    if k == 0:
        return [0] if g.n else None
    if k >= g.n or g.m == 0:
        return None
    nbrs = g.adjacency_sets()
    deg = g.degrees().tolist()
    order = {v: sorted(nbrs[v], key=lambda w: (deg[w], w)) for v in range(g.n)}
    expansions = 0
    for comp in g.connected_components():
        if len(comp) <= k:
            continue
        for s in sorted(comp, key=lambda v: (deg[v], v)):
            path = [s]
            on_path = {s}
            stack = [iter(order[s])]
            while stack:
                if len(path) == k + 1:
                    return path
                advanced = False
                for w in stack[-1]:
                    if w in on_path:
                        continue
                    expansions += 1
                    if budget is not None and expansions > budget:
                        raise BudgetExhausted(f"path search exceeded {budget} expansions",
                                              partial=len(path) - 1)
                    path.append(w)
                    on_path.add(w)
                    stack.append(iter(order[w]))
                    advanced = True
                    break
                if not advanced:
                    stack.pop()
                    on_path.discard(path.pop())
    return None


def has_path_of_length(g: Graph, k: int, budget: Optional[int] = None) -> Optional[bool]:
    """``True``/``False`` if decided, ``None`` if the budget ran out first."""
    if k < 1:
        raise ValueError("k must be >= 1")
    try:
        return find_path(g, k, budget) is not None
    except BudgetExhausted:
        return None


@dataclass(frozen=True)
class PathProbability:
    found: int
    not_found: int
    unknown: int

    @property
    def trials(self) -> int:
        return self.found + self.not_found + self.unknown

    @property
    def value(self) -> Fraction:
        """Fraction of all trials with a path found (unknowns count as not found)."""
        return Fraction(self.found, self.trials)

    @property
    def stderr(self) -> float:
        q = self.found / self.trials
        return math.sqrt(q * (1 - q) / self.trials)


def estimate_path_probability(model: EdgeProbabilityModel, k: int, trials: int, seed: int,
                              budget: Optional[int] = None) -> PathProbability:
    """Monte Carlo estimate of the probability that ``G`` has a path of ``k`` edges.

    Trial ``i`` samples with seed ``derive_seed(seed, i)``, so runs at different
    ``p`` with the same ``seed`` are coupled (nested graphs).
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    tally = Counter()
    for i in range(trials):
        g = sample_graph(model, derive_seed(seed, i))
        tally[has_path_of_length(g, k, budget)] += 1
    return PathProbability(tally[True], tally[False], tally[None])


class BoundValue(NamedTuple):
    value: float
    vacuous: bool


def lemma1_bound(n: int, k: int, p: float, C: float) -> BoundValue:
    """``1 - k n^(k-1) exp(-C n^2 p^(2k-1))``, evaluated in log space.

    ``vacuous`` is set when the value is negative.
    """
    if n < 1 or k < 1:
        raise ValueError("n and k must be positive")
    log_term = math.log(k) + (k - 1) * math.log(n) - C * n * n * p ** (2 * k - 1)
    value = -math.expm1(log_term) if log_term < 700 else -math.inf
    return BoundValue(value, value < 0)
