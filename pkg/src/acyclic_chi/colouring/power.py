"""Power graphs and the greedy (0, c)-acyclic colouring built on them."""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np
import scipy.sparse as sp

from ..graph import Graph
from .base import Colouring

__all__ = ["power_graph", "greedy_colouring", "acyclic_upper_colouring"]

_DENSE_LIMIT = 6000


def _reach_matrix(g: Graph, k: int):
    """Boolean matrix of pairs at graph distance 1..k (diagonal cleared)."""
    if g.n <= _DENSE_LIMIT:
        A = g.adjacency_matrix(np.float32)
        R = A > 0
        frontier = A
        for _ in range(k - 1):
            # float32 counts of walks only matter as > 0; clip to avoid overflow
            frontier = np.minimum(frontier @ A, 1.0, dtype=np.float32)
            R |= frontier > 0
        np.fill_diagonal(R, False)
        return R
    A = g.to_csr(np.int64)
    R = A.copy()
    frontier = A
    for _ in range(k - 1):
        frontier = frontier @ A
        frontier.data[:] = 1
        R = R + frontier
        R.data[:] = 1
    R.setdiag(0)
    R.eliminate_zeros()
    return R.astype(bool)


def power_graph(g: Graph, k: int) -> Graph:
    """The ``k``-th power: ``u ~ v`` iff their distance in ``g`` is between 1 and ``k``."""
    if k < 1:
        raise ValueError("power must be >= 1")
    if k == 1:
        return g
    return Graph.from_adjacency(_reach_matrix(g, k))


def _greedy_rows(n, row_neighbours, order):
    col = np.zeros(n, dtype=np.int64)
    for v in order:
        used = col[row_neighbours(v)]
        used = used[used > 0]
        mark = np.zeros(len(used) + 2, dtype=bool)
        mark[0] = True
        mark[used[used < len(mark)]] = True
        col[v] = int(np.argmin(mark))
    return col


def greedy_colouring(g: Graph, order: Optional[Sequence[int]] = None) -> Colouring:
    """First-fit proper colouring in ``order`` (vertex order by default).

    Uses at most ``max_degree(g) + 1`` colours.
    """
    order = range(g.n) if order is None else order
    col = _greedy_rows(g.n, g.neighbor_array, order)
    return Colouring.from_labels(col.tolist(), max(int(col.max(initial=0)), 1))


def acyclic_upper_colouring(g: Graph, c: int, order: Optional[Sequence[int]] = None) -> Colouring:
    """Greedy proper colouring of the ``(c-1)``-th power of ``g``.

    Vertices at distance up to ``c - 1`` get distinct colours, so any cycle of
    length ``>= c`` in ``g`` sees ``c`` distinct colours on any ``c`` consecutive
    vertices. Uses at most ``Δ(G_{c-1}) + 1`` colours.
    """
    if c < 3:
        raise ValueError("c must be >= 3")
    if g.n == 0:
        return Colouring((), 1)
    R = _reach_matrix(g, c - 1)
    order = range(g.n) if order is None else order
    if sp.issparse(R):
        R = R.tocsr()
        rows = lambda v: R.indices[R.indptr[v]:R.indptr[v + 1]]  # noqa: E731
    else:
        rows = lambda v: R[v]  # noqa: E731
    col = _greedy_rows(g.n, rows, order)
    return Colouring.from_labels(col.tolist(), max(int(col.max()), 1))
