"""Short-coloured cycle witnesses from the colour-class meta graph.

Every colour class with at least two vertices becomes a meta vertex with two
designated representatives (its two smallest vertices). A meta edge is open
when all four cross pairs between the two representative pairs are edges of
the host graph. An open meta path then expands into a cycle of the host graph
that uses few colours, which shows the colouring is not (0, c)-acyclic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ..cycles import Cycle, find_path
from ..exceptions import BudgetExhausted, OddCUnsupported
from ..graph import Graph
from .base import Colouring, is_proper

__all__ = ["PartitionGraph", "build_partition_graph", "refute_colouring", "expand_meta_path"]


@dataclass(frozen=True)
class PartitionGraph:
    colours: tuple[int, ...]               # colour of meta vertex q_i
    representatives: tuple[tuple[int, int], ...]
    open_graph: Graph                      # meta vertices 0..z-1, open edges only

    @property
    def z(self) -> int:
        return len(self.colours)

    @property
    def open_edges(self) -> list[tuple[int, int]]:
        return self.open_graph.edge_list()


def build_partition_graph(g: Graph, col: Colouring) -> PartitionGraph:
    if not is_proper(g, col):
        raise ValueError("colouring must be proper")
    big = [(colour, members) for colour, members in col.classes().items() if len(members) >= 2]
    colours = tuple(colour for colour, _ in big)
    reps = tuple((members[0], members[1]) for _, members in big)
    edges = []
    for a in range(len(reps)):
        a1, a2 = reps[a]
        na1, na2 = g.neighbors(a1), g.neighbors(a2)
        for b in range(a + 1, len(reps)):
            b1, b2 = reps[b]
            if b1 in na1 and b2 in na1 and b1 in na2 and b2 in na2:
                edges.append((a, b))
    return PartitionGraph(colours, reps, Graph(len(reps), edges))


def expand_meta_path(pg: PartitionGraph, meta_path) -> list[int]:
    """Host-graph cycle for a meta path ``q_0 .. q_h``.

    ``h == 1`` gives the two-coloured 4-cycle ``a1 b1 a2 b2``. For ``h >= 2``
    the cycle runs forward over first representatives ``q_0 .. q_h`` and back
    over second representatives of the interior ``q_{h-1} .. q_1``: ``2h``
    vertices and ``h + 1`` colours.
    """
    reps = pg.representatives
    if len(meta_path) == 2:
        (a1, a2), (b1, b2) = reps[meta_path[0]], reps[meta_path[1]]
        return [a1, b1, a2, b2]
    forward = [reps[q][0] for q in meta_path]
    back = [reps[q][1] for q in reversed(meta_path[1:-1])]
    return forward + back


def refute_colouring(g: Graph, col: Colouring, c: int, allow_odd: bool = False,
                     budget: Optional[int] = 100_000) -> Optional[Cycle]:
    """Cycle certifying that ``col`` is not (0, c)-acyclic, or ``None``.

    Even ``c`` uses an open meta path of ``c/2`` edges (cycle of length ``c``
    with ``c/2 + 1`` colours); ``c = 4`` falls back to a single open meta edge
    (4-cycle, 2 colours). Odd ``c`` needs ``allow_odd``: ``c = 3`` uses one
    open meta edge, odd ``c >= 5`` a meta path of ``(c+1)/2`` edges giving a
    cycle of length ``c + 1`` with ``(c+3)/2`` colours. Returns ``None`` when
    no meta path is found within ``budget`` expansions.
    """
    if c < 3:
        raise ValueError("c must be >= 3")
    if c % 2 and not allow_odd:
        raise OddCUnsupported(f"c={c} is odd; pass allow_odd=True for the extension gadget")
    pg = build_partition_graph(g, col)
    if pg.z < 2:
        return None
    if c == 3:
        hops = [1]
    elif c % 2 == 0:
        hops = [c // 2] + ([1] if c == 4 else [])
    else:
        hops = [(c + 1) // 2]
    for h in hops:
        try:
            meta = find_path(pg.open_graph, h, budget)
        except BudgetExhausted:
            meta = None
        if meta is not None:
            cycle = Cycle.from_sequence(expand_meta_path(pg, meta))
            assert cycle.is_in(g)
            return cycle
    return None
