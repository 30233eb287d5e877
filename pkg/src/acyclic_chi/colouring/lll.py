"""Local-lemma colouring: every path of ``g`` edges carries at least ``c`` colours.

Bad events are a monochromatic edge (``A_{u,v}``) and a path of exactly ``g``
edges with at most ``c - 1`` colours (``B_U``). Moser-Tardos resampling gives
vertices fresh uniform colours from ``1..theta`` until no event holds.
"""

from __future__ import annotations

import heapq
import math
from collections import deque
from typing import Optional

import mpmath
import numpy as np

from .._util import as_fraction
from ..exceptions import DomainError, ResampleBudgetExhausted
from ..graph import Graph
from .base import Colouring

__all__ = [
    "theta_value",
    "theta_bound",
    "check_lll_conditions",
    "choose_g",
    "lll_path_colouring",
    "find_violated_event",
]


def theta_value(n: int, p: float, g: int, c: int, D: float = 1.0) -> float:
    """``8 D (g^2 (2np)^g)^(1/(g-c+1))`` as a real number."""
    if g <= c - 1:
        raise DomainError(f"need g > c - 1, got g={g}, c={c}")
    if D <= 0:
        raise DomainError("D must be positive")
    if n * p == 0:
        return 0.0
    log_theta = math.log(8 * D) + (2 * math.log(g) + g * math.log(2 * n * p)) / (g - c + 1)
    return math.exp(log_theta)


def theta_bound(n: int, p: float, g: int, c: int, D: float = 1.0) -> int:
    """Palette size ``ceil(8 D (g^2 (2np)^g)^(1/(g-c+1)))``."""
    return math.ceil(theta_value(n, p, g, c, D))


def check_lll_conditions(theta: int, n: int, p: float, g: int, c: int, D: float = 1.0,
                         dps: int = 60) -> bool:
    """Both local-lemma inequalities for edge and path events, in ``dps``-digit arithmetic.

    Edge events: ``1/θ <= (2/θ)(1-2/θ)^(2np) (1-Dθ^(c-1)/θ^g)^(2g(2np)^g)``.
    Path events: ``Dθ^(c-1)/θ^g <= 2Dθ^(c-1)/θ^g (1-2/θ)^(2gnp) (1-Dθ^(c-1)/θ^g)^(g^2(2np)^g)``.
    """
    if theta < 2:
        raise ValueError("theta must be >= 2")
    with mpmath.workdps(dps):
        th = mpmath.mpf(theta)
        np_ = mpmath.mpf(n) * mpmath.mpf(p)
        xa = 2 / th
        xb = mpmath.mpf(D) * th ** (c - 1) / th ** g
        if xb >= 1:
            return False
        one_a, one_b = 1 - xa, 1 - xb
        first = (1 / th) <= xa * one_a ** (2 * np_) * one_b ** (2 * g * (2 * np_) ** g)
        second = xb <= 2 * xb * one_a ** (2 * g * np_) * one_b ** (g * g * (2 * np_) ** g)
        return bool(first and second)


def choose_g(beta, c: int) -> int:
    """Smallest ``g >= c + 1`` with ``(1-β) g / (g-c+1) <= 1 - β/2``.

    Rearranged this is ``g >= (2-β)(c-1)/β``; evaluated with exact rationals.
    """
    b = as_fraction(beta)
    if not 0 < b < 1:
        raise ValueError("beta must lie in (0, 1)")
    if c < 3:
        raise ValueError("c must be >= 3")
    bound = (2 - b) * (c - 1) / b
    g = max(c + 1, math.ceil(bound))
    assert (1 - b) * g <= (1 - b / 2) * (g - c + 1)
    return g


# -- Moser-Tardos -------------------------------------------------------------

def _low_colour_path_from(nbrs, colour, start, length, max_colours):
    """Path of ``length`` edges starting at ``start`` using <= max_colours colours."""
    path = [start]
    on_path = {start}
    counts = {colour[start]: 1}
    stack = [iter(nbrs[start])]
    while stack:
        if len(path) == length + 1:
            return tuple(path)
        advanced = False
        for w in stack[-1]:
            if w in on_path:
                continue
            cw = colour[w]
            if cw not in counts and len(counts) >= max_colours:
                continue
            path.append(w)
            on_path.add(w)
            counts[cw] = counts.get(cw, 0) + 1
            stack.append(iter(nbrs[w]))
            advanced = True
            break
        if not advanced:
            stack.pop()
            v = path.pop()
            on_path.discard(v)
            cv = colour[v]
            counts[cv] -= 1
            if not counts[cv]:
                del counts[cv]
    return None


def _event_at(nbrs, colour, v, g, c):
    cv = colour[v]
    for w in nbrs[v]:
        if colour[w] == cv:
            return (min(v, w), max(v, w))
    return _low_colour_path_from(nbrs, colour, v, g, c - 1)


def find_violated_event(graph: Graph, col: Colouring, g: int, c: int) -> Optional[tuple]:
    """First violated bad event (edge pair or ``g``-edge path), scanning vertices in order."""
    nbrs = [sorted(s) for s in graph.adjacency_sets()]
    colour = list(col.assignment)
    for v in range(graph.n):
        ev = _event_at(nbrs, colour, v, g, c)
        if ev is not None:
            return ev
    return None


def _ball(nbrs, sources, radius):
    dist = {s: 0 for s in sources}
    q = deque(sources)
    while q:
        x = q.popleft()
        if dist[x] == radius:
            continue
        for w in nbrs[x]:
            if w not in dist:
                dist[w] = dist[x] + 1
                q.append(w)
    return dist.keys()


def _moser_tardos(graph: Graph, g: int, c: int, theta: int, seed, max_resamples: int):
    rng = np.random.default_rng(seed)
    n = graph.n
    nbrs = [sorted(s) for s in graph.adjacency_sets()]
    colour = rng.integers(1, theta + 1, size=n).tolist()
    # every vertex outside `dirty` starts no violated event
    dirty = list(range(n))
    in_dirty = set(dirty)
    resamples = 0
    while dirty:
        v = heapq.heappop(dirty)
        in_dirty.discard(v)
        ev = _event_at(nbrs, colour, v, g, c)
        if ev is None:
            continue
        if resamples >= max_resamples:
            col = Colouring(tuple(colour), theta)
            violated = [e for u in range(n)
                        if (e := _event_at(nbrs, colour, u, g, c)) is not None][:100]
            raise ResampleBudgetExhausted(
                f"still violated after {resamples} resamples", colouring=col, violated=violated)
        resamples += 1
        verts = sorted(set(ev))
        fresh = rng.integers(1, theta + 1, size=len(verts)).tolist()
        for u, cu in zip(verts, fresh):
            colour[u] = cu
        for w in _ball(nbrs, verts, g):
            if w not in in_dirty:
                in_dirty.add(w)
                heapq.heappush(dirty, w)
        if v not in in_dirty:
            in_dirty.add(v)
            heapq.heappush(dirty, v)
    return Colouring(tuple(colour), theta), resamples


def lll_path_colouring(graph: Graph, g: int, c: int, theta: int, seed,
                       max_resamples: int = 100_000) -> Colouring:
    """Proper colouring from ``1..theta`` where every ``g``-edge path has ``>= c`` colours.

    Deterministic in ``seed``. Raises :class:`ResampleBudgetExhausted` with
    the last state when ``max_resamples`` is reached.
    """
    if theta < c:
        raise ValueError(f"theta={theta} must be >= c={c}")
    if g + 1 < c:
        raise ValueError(f"a path of g={g} edges cannot carry c={c} colours")
    col, _ = _moser_tardos(graph, g, c, theta, seed, max_resamples)
    return col
