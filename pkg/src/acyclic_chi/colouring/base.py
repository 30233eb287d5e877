"""Colourings and their verification."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Mapping, Optional, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .._util import as_fraction, fraction_to_json
from ..cycles import Cycle, find_path, iter_cycles
from ..graph import Graph

__all__ = [
    "Colouring",
    "AcyclicityReport",
    "is_proper",
    "verify_eta_c",
    "colour_subsets",
    "find_low_colour_cycle",
    "find_low_colour_path",
]


@dataclass(frozen=True)
class Colouring:
    """Vertex colouring with colour ids in ``1..palette``."""

    assignment: tuple[int, ...]
    palette: int

    def __post_init__(self):
        object.__setattr__(self, "assignment", tuple(int(c) for c in self.assignment))
        if self.palette < 1:
            raise ValueError("palette must be >= 1")
        bad = [c for c in self.assignment if not 1 <= c <= self.palette]
        if bad:
            raise ValueError(f"colour {bad[0]} outside 1..{self.palette}")

    @classmethod
    def from_labels(cls, labels: Sequence[int], palette: Optional[int] = None) -> "Colouring":
        labels = [int(c) for c in labels]
        return cls(tuple(labels), palette or max(labels, default=1))

    @property
    def n(self) -> int:
        return len(self.assignment)

    def __getitem__(self, v):
        return self.assignment[v]

    def as_array(self) -> np.ndarray:
        return np.asarray(self.assignment, dtype=np.int64)

    @property
    def n_colours_used(self) -> int:
        return len(set(self.assignment))

    def classes(self) -> dict[int, list[int]]:
        """Colour classes keyed by colour, vertices ascending."""
        out: dict[int, list[int]] = {}
        for v, c in enumerate(self.assignment):
            out.setdefault(c, []).append(v)
        return dict(sorted(out.items()))

    def to_dict(self) -> dict:
        return {"palette": self.palette, "assignment": list(self.assignment)}

    @classmethod
    def from_dict(cls, d: Mapping) -> "Colouring":
        return cls(tuple(d["assignment"]), int(d["palette"]))

    def dumps(self) -> str:
        return "".join(f"{v} {c}\n" for v, c in enumerate(self.assignment))

    @classmethod
    def loads(cls, text: str, palette: Optional[int] = None) -> "Colouring":
        pairs = {}
        for ln in text.splitlines():
            if not ln.strip() or ln.startswith("#"):
                continue
            v, c = ln.split()
            pairs[int(v)] = int(c)
        if sorted(pairs) != list(range(len(pairs))):
            raise ValueError("colouring file must cover vertices 0..n-1")
        return cls.from_labels([pairs[v] for v in range(len(pairs))], palette)


def is_proper(g: Graph, col: Colouring) -> bool:
    if col.n != g.n:
        raise ValueError(f"colouring covers {col.n} vertices, graph has {g.n}")
    if g.m == 0:
        return True
    a = col.as_array()
    e = g.edges
    return not np.any(a[e[:, 0]] == a[e[:, 1]])


@dataclass
class AcyclicityReport:
    """Outcome of an (eta, c) check.

    ``passes`` is exact: ``proper and cycles_bad <= eta * cycles_total``
    compared as integers. With ``truncated`` set the counts cover only the
    first ``cap`` cycles; the verdict is then approximate unless
    ``exact_verdict`` says it was settled by the exhaustive strict search.
    """

    eta: Fraction
    c: int
    proper: bool
    cycles_total: int
    cycles_bad: int
    passes: bool
    witnesses: list[Cycle] = field(default_factory=list)
    truncated: bool = False
    exact_verdict: bool = True

    @property
    def bad_fraction(self) -> Fraction:
        if self.cycles_total == 0:
            return Fraction(0)
        return Fraction(self.cycles_bad, self.cycles_total)

    def to_dict(self) -> dict:
        return {
            "eta": fraction_to_json(self.eta),
            "c": self.c,
            "proper": self.proper,
            "cycles_total": self.cycles_total,
            "cycles_bad": self.cycles_bad,
            "bad_fraction": fraction_to_json(self.bad_fraction),
            "passes": self.passes,
            "witnesses": [list(w) for w in self.witnesses],
            "truncated": self.truncated,
            "exact_verdict": self.exact_verdict,
        }


def verify_eta_c(g: Graph, col: Colouring, eta=0, c: int = 3, cap: Optional[int] = 200_000,
                 max_len: Optional[int] = None, max_witnesses: int = 10) -> AcyclicityReport:
    """Check the (eta, c) condition by enumerating cycles of length ``c..max_len``.

    A cycle is bad when it carries at most ``c - 1`` distinct colours. Stops
    after ``cap`` cycles and flags the report as truncated. For ``eta = 0``
    (and the full length range) the verdict comes from
    :func:`find_low_colour_cycle`, so it stays exact under truncation.
    """
    eta = as_fraction(eta)
    if not 0 <= eta < 1:
        raise ValueError("eta must lie in [0, 1)")
    if c < 3:
        raise ValueError("c must be >= 3")
    proper = is_proper(g, col)
    strict = eta == 0 and max_len is None and proper
    strict_witness = find_low_colour_cycle(g, col, c) if strict else None
    a = col.assignment
    total = bad = 0
    witnesses: list[Cycle] = []
    truncated = False
    for cyc in iter_cycles(g, c, max_len):
        if cap is not None and total >= cap:
            truncated = True
            break
        total += 1
        if len({a[v] for v in cyc}) <= c - 1:
            bad += 1
            if len(witnesses) < max_witnesses:
                witnesses.append(cyc)
    if strict:
        if strict_witness is not None and bad == 0:
            # only reachable under truncation: the census stopped before any bad cycle
            bad, total = 1, max(total, 1)
            witnesses = [strict_witness][:max_witnesses]
        passes = strict_witness is None
    else:
        passes = proper and bad * eta.denominator <= eta.numerator * total
    exact = not truncated or strict or not proper
    return AcyclicityReport(eta, c, proper, total, bad, passes, witnesses, truncated, exact)


# -- colour-subset route -----------------------------------------------------
#
# A cycle or path using at most s colours lives inside the subgraph induced by
# some set S of at most s colour classes, and S is connected in the quotient
# graph (colours adjacent when an edge joins their classes). Enumerating those
# S is cheap when classes are small, which avoids touching the (possibly huge)
# set of all cycles or paths.

def _quotient(g: Graph, a: np.ndarray):
    adj: dict[int, set] = {int(c): set() for c in np.unique(a)}
    if g.m:
        e = g.edges
        cu, cv = a[e[:, 0]], a[e[:, 1]]
        pairs = np.unique(np.stack([np.minimum(cu, cv), np.maximum(cu, cv)], axis=1), axis=0)
        for x, y in pairs.tolist():
            if x != y:
                adj[x].add(y)
                adj[y].add(x)
    return adj


def colour_subsets(adj: Mapping[int, set], max_size: int) -> Iterator[tuple[int, ...]]:
    """Connected vertex subsets of size ``1..max_size`` (ESU enumeration)."""

    def extend(sub, ext, root, closed):
        yield tuple(sorted(sub))
        if len(sub) == max_size:
            return
        ext = list(ext)
        while ext:
            w = ext.pop()
            new_ext = set(ext)
            for x in adj[w]:
                if x > root and x not in closed and x not in sub:
                    new_ext.add(x)
            yield from extend(sub | {w}, new_ext, root, closed | adj[w] | {w})

    for v in sorted(adj):
        yield from extend({v}, {x for x in adj[v] if x > v}, v, adj[v] | {v})


def _class_union_subgraph(g, classes, subset):
    verts = [v for col in subset for v in classes[col]]
    return g.subgraph(verts)


def _bichromatic_cyclic_pairs(g: Graph, a: np.ndarray) -> list[tuple[int, int]]:
    # colour pairs whose two-coloured subgraph is not a forest (proper input)
    e = g.edges
    cu, cv = a[e[:, 0]], a[e[:, 1]]
    lo, hi = np.minimum(cu, cv), np.maximum(cu, cv)
    base = int(a.max()) + 1
    key = lo * base + hi
    ids = np.concatenate([key * g.n + e[:, 0], key * g.n + e[:, 1]])
    uniq, inv = np.unique(ids, return_inverse=True)
    m = len(e)
    adj = coo_matrix((np.ones(m), (inv[:m], inv[m:])), shape=(len(uniq), len(uniq)))
    _, labels = connected_components(adj, directed=False)
    node_key = uniq // g.n
    keys, key_idx = np.unique(node_key, return_inverse=True)
    nodes = np.bincount(key_idx)
    comps = np.bincount(key_idx[np.unique(labels, return_index=True)[1]], minlength=len(keys))
    edge_idx = np.searchsorted(keys, key)
    edges = np.bincount(edge_idx, minlength=len(keys))
    bad = keys[edges > nodes - comps]
    return [(int(k // base), int(k % base)) for k in bad]


def find_low_colour_cycle(g: Graph, col: Colouring, c: int) -> Optional[Cycle]:
    """A cycle of length ``>= c`` with at most ``c - 1`` colours, or ``None``.

    Exact and exhaustive, so for ``eta = 0`` it decides the (0, c) condition
    without a global cycle census. Proper colourings with ``c = 3`` take a
    vectorised forest test on every two-coloured subgraph.
    """
    if g.m == 0:
        return None
    a = col.as_array()
    classes = col.classes()
    if c == 3 and is_proper(g, col):
        candidates = _bichromatic_cyclic_pairs(g, a)
    else:
        candidates = colour_subsets(_quotient(g, a), c - 1)
    for subset in candidates:
        sub, labels = _class_union_subgraph(g, classes, subset)
        if sub.m < c:
            continue
        for cyc in iter_cycles(sub, c):
            return Cycle.from_sequence([labels[v] for v in cyc])
    return None


def find_low_colour_path(g: Graph, col: Colouring, length: int, c: int,
                         budget: Optional[int] = None) -> Optional[list[int]]:
    """A path of exactly ``length`` edges using at most ``c - 1`` colours, or ``None``."""
    if g.m == 0 or length < 1:
        return None
    classes = col.classes()
    for subset in colour_subsets(_quotient(g, col.as_array()), c - 1):
        sub, labels = _class_union_subgraph(g, classes, subset)
        if sub.n <= length or sub.m < length:
            continue
        path = find_path(sub, length, budget)
        if path is not None:
            return [labels[v] for v in path]
    return None
