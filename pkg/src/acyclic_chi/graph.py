"""Simple undirected graphs, the edge-indicator random model and edge density.

Graphs are immutable. Edges are kept as a lexicographically sorted ``(m, 2)``
array with ``u < v`` plus a CSR neighbour index; per-vertex neighbour sets are
built lazily on first adjacency query.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional

import numpy as np
import scipy.sparse as sp

from .exceptions import CapExceeded
from ._util import as_fraction

__all__ = [
    "Graph",
    "EdgeProbabilityModel",
    "DensityReport",
    "sample_graph",
    "edge_density_check",
    "max_degree",
    "check_graph",
    "empty_graph",
    "complete_graph",
    "cycle_graph",
    "path_graph",
    "star_graph",
    "complete_bipartite_graph",
    "perfect_matching",
    "dumps_edge_list",
    "loads_edge_list",
    "graph_to_dict",
    "graph_from_dict",
]

DENSITY_EXACT_CAP = 20


class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    Parameters
    ----------
    n : int
        Number of vertices.
    edges : iterable of pairs or array of shape (m, 2)
        Unordered vertex pairs. Self-loops and repeated pairs are rejected.
    """

    __slots__ = ("_n", "_edges", "_indptr", "_indices", "_nbrs", "_hash")

    def __init__(self, n: int, edges=()):
        n = int(n)
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges,
                         dtype=np.int64)
        if arr.size == 0:
            arr = np.zeros((0, 2), dtype=np.int64)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise ValueError("edges must be a sequence of vertex pairs")
        if arr.size and (arr.min() < 0 or arr.max() >= n):
            raise ValueError(f"edge endpoint outside 0..{n - 1}")
        lo = np.minimum(arr[:, 0], arr[:, 1])
        hi = np.maximum(arr[:, 0], arr[:, 1])
        if np.any(lo == hi):
            raise ValueError("self-loops are not allowed")
        order = np.lexsort((hi, lo))
        arr = np.stack([lo[order], hi[order]], axis=1)
        if len(arr) > 1 and np.any(np.all(arr[1:] == arr[:-1], axis=1)):
            raise ValueError("duplicate edges are not allowed")
        self._init_from_sorted(n, arr)

    def _init_from_sorted(self, n, arr):
        self._n = n
        self._edges = arr
        self._edges.setflags(write=False)
        both = np.concatenate([arr, arr[:, ::-1]]) if len(arr) else arr
        order = np.lexsort((both[:, 1], both[:, 0])) if len(both) else np.zeros(0, int)
        both = both[order]
        counts = np.bincount(both[:, 0], minlength=n) if len(both) else np.zeros(n, int)
        self._indptr = np.concatenate([[0], np.cumsum(counts)]).astype(np.int64)
        self._indices = both[:, 1].astype(np.int64) if len(both) else np.zeros(0, np.int64)
        self._nbrs = None
        self._hash = None

    @classmethod
    def _from_sorted_unique(cls, n, arr):
        # trusted constructor: arr already sorted, unique, u < v
        g = cls.__new__(cls)
        g._init_from_sorted(int(n), np.ascontiguousarray(arr, dtype=np.int64).reshape(-1, 2))
        return g

    @classmethod
    def from_adjacency(cls, A) -> "Graph":
        """Build from a symmetric 0/1 adjacency matrix (dense or scipy sparse)."""
        if sp.issparse(A):
            A = sp.triu(sp.csr_matrix(A), k=1).tocoo()
            n = A.shape[0]
            keep = A.data != 0
            arr = np.stack([A.row[keep], A.col[keep]], axis=1)
        else:
            A = np.asarray(A)
            n = A.shape[0]
            u, v = np.nonzero(np.triu(A, k=1))
            arr = np.stack([u, v], axis=1)
        order = np.lexsort((arr[:, 1], arr[:, 0]))
        return cls._from_sorted_unique(n, arr[order])

    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        """Number of edges."""
        return len(self._edges)

    @property
    def edges(self) -> np.ndarray:
        """Read-only ``(m, 2)`` array of edges ``u < v`` in lexicographic order."""
        return self._edges

    def edge_list(self) -> list[tuple[int, int]]:
        return [(int(u), int(v)) for u, v in self._edges]

    def degree(self, v: int) -> int:
        return int(self._indptr[v + 1] - self._indptr[v])

    def degrees(self) -> np.ndarray:
        return np.diff(self._indptr)

    def neighbor_array(self, v: int) -> np.ndarray:
        return self._indices[self._indptr[v]:self._indptr[v + 1]]

    def neighbors(self, v: int) -> frozenset:
        if self._nbrs is None:
            ind, ptr = self._indices.tolist(), self._indptr.tolist()
            self._nbrs = [frozenset(ind[ptr[i]:ptr[i + 1]]) for i in range(self._n)]
        return self._nbrs[v]

    def adjacency_sets(self) -> list[frozenset]:
        if self._n:
            self.neighbors(0)
        return self._nbrs or []

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.neighbors(u)

    def adjacency_matrix(self, dtype=bool) -> np.ndarray:
        A = np.zeros((self._n, self._n), dtype=dtype)
        if self.m:
            A[self._edges[:, 0], self._edges[:, 1]] = 1
            A[self._edges[:, 1], self._edges[:, 0]] = 1
        return A

    def to_csr(self, dtype=np.int32) -> sp.csr_matrix:
        data = np.ones(len(self._indices), dtype=dtype)
        return sp.csr_matrix((data, self._indices, self._indptr), shape=(self._n, self._n))

    def subgraph(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph, relabelled ``0..k-1``; returns it and the old labels."""
        keep = sorted(set(int(v) for v in vertices))
        index = np.full(self._n, -1, dtype=np.int64)
        index[keep] = np.arange(len(keep))
        if self.m:
            a, b = index[self._edges[:, 0]], index[self._edges[:, 1]]
            mask = (a >= 0) & (b >= 0)
            arr = np.stack([a[mask], b[mask]], axis=1)
        else:
            arr = np.zeros((0, 2), np.int64)
        return Graph._from_sorted_unique(len(keep), arr), keep

    def connected_components(self) -> list[list[int]]:
        from scipy.sparse.csgraph import connected_components

        if self._n == 0:
            return []
        _, labels = connected_components(self.to_csr(), directed=False)
        comps: dict[int, list[int]] = {}
        for v, lab in enumerate(labels.tolist()):
            comps.setdefault(lab, []).append(v)
        return list(comps.values())

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and np.array_equal(self._edges, other._edges)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._n, self._edges.tobytes()))
        return self._hash

    def __repr__(self):
        return f"Graph(n={self._n}, m={self.m})"


def check_graph(X) -> Graph:
    """Coerce estimator input to a :class:`Graph`.

    Accepts a ``Graph``, a square symmetric adjacency matrix (numpy or scipy
    sparse), or an object exposing networkx-style ``number_of_nodes`` and
    ``edges`` over integer vertices ``0..n-1``.
    """
    if isinstance(X, Graph):
        return X
    if hasattr(X, "number_of_nodes") and hasattr(X, "edges"):
        n = X.number_of_nodes()
        if set(X.nodes()) != set(range(n)):
            raise ValueError("networkx input must use vertices 0..n-1")
        return Graph(n, [(u, v) for u, v in X.edges() if u != v])
    if sp.issparse(X):
        if X.shape[0] != X.shape[1]:
            raise ValueError(f"adjacency matrix must be square, got shape {X.shape}")
        if (X != X.T).nnz:
            raise ValueError("adjacency matrix must be symmetric")
        if X.diagonal().any():
            raise ValueError("adjacency matrix has self-loops")
        return Graph.from_adjacency(X)
    A = np.asarray(X)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"adjacency matrix must be square, got shape {A.shape}")
    if not np.array_equal(A, A.T):
        raise ValueError("adjacency matrix must be symmetric")
    if np.any(np.diag(A)):
        raise ValueError("adjacency matrix has self-loops")
    if not np.all((A == 0) | (A == 1)):
        raise ValueError("adjacency matrix entries must be 0/1")
    return Graph.from_adjacency(A)


def max_degree(g: Graph) -> int:
    """Maximum vertex degree; 0 for an edgeless or empty graph."""
    return int(g.degrees().max()) if g.n else 0


# -- small named families ---------------------------------------------------

def empty_graph(n: int) -> Graph:
    return Graph(n)


def complete_graph(n: int) -> Graph:
    u, v = np.triu_indices(n, 1)
    return Graph._from_sorted_unique(n, np.stack([u, v], axis=1))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    """Path on ``n`` vertices (``n - 1`` edges)."""
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(n: int) -> Graph:
    """Star on ``n`` vertices centred at 0."""
    return Graph(n, [(0, i) for i in range(1, n)])


def complete_bipartite_graph(a: int, b: int) -> Graph:
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def perfect_matching(n: int) -> Graph:
    return Graph(n, [(2 * i, 2 * i + 1) for i in range(n // 2)])


# -- random model -----------------------------------------------------------

@dataclass(frozen=True)
class EdgeProbabilityModel:
    """Independent edge indicators over the pairs of ``K_n``.

    Give exactly one of ``p`` (uniform probability) or ``beta`` (``p = n**-beta``).
    ``edge_probs`` overrides individual pairs for the inhomogeneous case. Pairs
    of ``forbidden`` always get probability 0.
    """

    n: int
    p: Optional[float] = None
    beta: Optional[float] = None
    forbidden: Optional[Graph] = None
    edge_probs: Optional[Mapping[tuple[int, int], float]] = field(default=None, hash=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be non-negative")
        if (self.p is None) == (self.beta is None):
            if not (self.p is None and self.beta is None and self.edge_probs is not None):
                raise ValueError("give exactly one of p or beta")
        if self.p is not None and not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p={self.p} outside [0, 1]")
        if self.beta is not None and self.beta < 0:
            raise ValueError(f"beta={self.beta} must be >= 0")
        if self.forbidden is not None and self.forbidden.n != self.n:
            raise ValueError("forbidden graph must live on the same vertex set")
        if self.edge_probs is not None:
            for (u, v), q in self.edge_probs.items():
                if not (0 <= u < self.n and 0 <= v < self.n and u != v):
                    raise ValueError(f"bad pair {(u, v)} in edge_probs")
                if not 0.0 <= q <= 1.0:
                    raise ValueError(f"probability {q} for {(u, v)} outside [0, 1]")

    @property
    def base_p(self) -> float:
        """The uniform probability before masking and overrides."""
        if self.p is not None:
            return float(self.p)
        if self.beta is not None:
            return float(self.n) ** (-float(self.beta)) if self.n > 0 else 0.0
        return 0.0

    @property
    def is_homogeneous(self) -> bool:
        return self.edge_probs is None and (self.forbidden is None or self.forbidden.m == 0)

    def pair_probabilities(self) -> np.ndarray:
        """Effective ``p(f)`` for every pair, in lexicographic pair order."""
        n = self.n
        probs = np.full(n * (n - 1) // 2, self.base_p, dtype=float)
        if self.edge_probs:
            for (u, v), q in self.edge_probs.items():
                probs[_pair_index(n, min(u, v), max(u, v))] = q
        if self.forbidden is not None and self.forbidden.m:
            e = self.forbidden.edges
            probs[_pair_index(n, e[:, 0], e[:, 1])] = 0.0
        return probs

    def expected_edges(self) -> float:
        return float(self.pair_probabilities().sum())


def _pair_index(n, u, v):
    # position of pair (u, v), u < v, in the row-major upper triangle
    return u * n - u * (u + 1) // 2 + (v - u - 1)


def sample_graph(model: EdgeProbabilityModel, seed: int) -> Graph:
    """Draw one graph from ``model``.

    One uniform variate per pair is drawn from PCG64 (``numpy.random.default_rng``)
    in lexicographic pair order; the pair is an edge when its variate is below
    ``p(f)``. Using the same seed with a larger ``p`` therefore yields a supergraph.
    """
    n = model.n
    rng = np.random.default_rng(seed)
    u = rng.random(n * (n - 1) // 2)
    if model.is_homogeneous:
        keep = u < model.base_p
    else:
        keep = u < model.pair_probabilities()
    iu, iv = np.triu_indices(n, 1)
    return Graph._from_sorted_unique(n, np.stack([iu[keep], iv[keep]], axis=1))


# -- edge density -----------------------------------------------------------

@dataclass(frozen=True)
class DensityReport:
    s0_target: Fraction
    verdict: str  # "certified" | "falsified" | "inconclusive"
    witness: Optional[tuple[int, ...]] = None
    witness_edges: Optional[int] = None


def _excess(edges, size, s0):
    # 2*den*e - num*l*(l-1): positive iff e > s0 * C(l, 2)
    return 2 * s0.denominator * edges - s0.numerator * size * (size - 1)


def edge_density_check(H: Graph, s0, mode: str = "exact", budget: int = 1000,
                       min_size: int = 1, cap: int = DENSITY_EXACT_CAP,
                       seed: int = 0) -> DensityReport:
    """Check that every vertex subset of size >= ``min_size`` spans at most
    ``s0 * C(l, 2)`` edges of ``H``.

    ``mode="exact"`` scans all ``2**n`` subsets and returns ``certified`` or
    ``falsified``; the witness is the subset with the largest excess. ``mode=
    "sampled"`` tries ``budget`` random subsets plus the min-degree peeling
    sequence and can only return ``falsified`` or ``inconclusive``.

    With the default ``min_size=1`` any single edge already violates ``s0 < 1``.
    """
    s0 = as_fraction(s0)
    if not 0 < s0 < 1:
        raise ValueError("s0 must lie in (0, 1)")
    if H.m == 0:
        return DensityReport(s0, "certified")
    if mode == "exact":
        if H.n > cap:
            raise CapExceeded(f"exact density scan limited to n <= {cap}, got n={H.n}")
        return _density_exact(H, s0, min_size)
    if mode == "sampled":
        return _density_sampled(H, s0, min_size, budget, seed)
    raise ValueError(f"unknown mode {mode!r}")


def _density_exact(H, s0, min_size):
    n = H.n
    adj = np.zeros(n, dtype=np.int64)
    for u, v in H.edge_list():
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    size = 1 << n
    e = np.zeros(size, dtype=np.int64)
    popc = np.zeros(size, dtype=np.int64)
    for v in range(n):
        lo, hi = 1 << v, 1 << (v + 1)
        masks = np.arange(lo, hi, dtype=np.int64)
        rest = masks - lo
        e[lo:hi] = e[rest] + np.bitwise_count(adj[v] & rest)
        popc[lo:hi] = popc[rest] + 1
    excess = 2 * s0.denominator * e - s0.numerator * popc * (popc - 1)
    excess[popc < min_size] = np.iinfo(np.int64).min
    best = int(np.argmax(excess))
    if excess[best] > 0:
        witness = tuple(v for v in range(n) if best >> v & 1)
        return DensityReport(s0, "falsified", witness, int(e[best]))
    return DensityReport(s0, "certified")


def _density_sampled(H, s0, min_size, budget, seed):
    rng = np.random.default_rng(seed)
    nbrs = H.adjacency_sets()
    best, best_set, best_e = 0, None, None

    def consider(vs):
        nonlocal best, best_set, best_e
        if len(vs) < max(min_size, 2):
            return
        s = set(vs)
        e = sum(len(nbrs[v] & s) for v in s) // 2
        ex = _excess(e, len(s), s0)
        if ex > best:
            best, best_set, best_e = ex, tuple(sorted(s)), e

    # peeling: drop a min-degree vertex each step
    alive = set(range(H.n))
    deg = {v: len(nbrs[v]) for v in alive}
    while alive:
        consider(alive)
        v = min(alive, key=lambda x: (deg[x], x))
        alive.remove(v)
        for w in nbrs[v]:
            if w in alive:
                deg[w] -= 1
    lo = max(min_size, 2)
    for _ in range(budget):
        if lo > H.n:
            break
        k = int(rng.integers(lo, H.n + 1))
        consider(rng.choice(H.n, size=k, replace=False).tolist())
    if best_set is not None:
        return DensityReport(s0, "falsified", best_set, best_e)
    return DensityReport(s0, "inconclusive")


# -- serialization ----------------------------------------------------------

def dumps_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edge_list())
    return "\n".join(lines) + "\n"


def loads_edge_list(text: str) -> Graph:
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not rows:
        raise ValueError("empty edge list")
    try:
        n, m = int(rows[0][0]), int(rows[0][1])
        edges = [(int(a), int(b)) for a, b in rows[1:]]
    except (ValueError, IndexError) as exc:
        raise ValueError(f"malformed edge list: {exc}") from None
    if len(edges) != m:
        raise ValueError(f"header declares {m} edges, found {len(edges)}")
    return Graph(n, edges)


def graph_to_dict(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.edge_list()]}


def graph_from_dict(d: Mapping) -> Graph:
    return Graph(int(d["n"]), [tuple(e) for e in d["edges"]])


def load_graph(path) -> Graph:
    """Read an edge-list or JSON graph file, picking the format by content."""
    with open(path) as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        return graph_from_dict(json.loads(text))
    return loads_edge_list(text)
