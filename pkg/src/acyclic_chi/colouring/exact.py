"""Exact (eta, c)-acyclic chromatic number for small graphs."""

from __future__ import annotations

import time
from collections import deque
from typing import Optional

from .._util import as_fraction
from ..cycles import iter_cycles
from ..exceptions import CapExceeded, SolverTimeout
from ..graph import Graph
from .base import Colouring, verify_eta_c
from .power import acyclic_upper_colouring

__all__ = ["chi_exact", "EXACT_N_CAP"]

EXACT_N_CAP = 10


def _search_order(g: Graph) -> list[int]:
    # BFS from the highest-degree vertex of each component
    deg = g.degrees()
    seen, order = set(), []
    for root in sorted(range(g.n), key=lambda v: (-deg[v], v)):
        if root in seen:
            continue
        seen.add(root)
        q = deque([root])
        while q:
            x = q.popleft()
            order.append(x)
            for w in sorted(g.neighbors(x), key=lambda v: (-deg[v], v)):
                if w not in seen:
                    seen.add(w)
                    q.append(w)
    return order


def chi_exact(g: Graph, eta=0, c: int = 3, max_n: int = EXACT_N_CAP,
              time_limit: Optional[float] = None,
              cycle_cap: int = 2_000_000) -> tuple[int, Colouring]:
    """Smallest palette admitting a proper (eta, c)-acyclic colouring, with a witness.

    Branch and bound over palette sizes. The first vertex of a BFS order gets
    colour 1 and new colours are opened in increasing order, so each colour
    partition is visited once. Bad cycles are counted as soon as their last
    vertex is coloured and a branch dies once the count exceeds
    ``floor(eta * total)``. An edgeless graph on ``n >= 1`` vertices needs one
    colour; the empty graph needs none.

    Raises :class:`CapExceeded` for ``n > max_n`` or more than ``cycle_cap``
    cycles, and :class:`SolverTimeout` (carrying the best palette found) when
    ``time_limit`` seconds pass.
    """
    eta = as_fraction(eta)
    if g.n > max_n:
        raise CapExceeded(f"exact solver limited to n <= {max_n}, got n={g.n}")
    if g.n == 0:
        return 0, Colouring((), 1)
    deadline = None if time_limit is None else time.monotonic() + time_limit

    cycles = []
    for cyc in iter_cycles(g, c):
        cycles.append(cyc)
        if len(cycles) > cycle_cap:
            raise CapExceeded(f"more than {cycle_cap} cycles", partial=len(cycles))
    allowed_bad = (eta.numerator * len(cycles)) // eta.denominator

    order = _search_order(g)
    pos = {v: i for i, v in enumerate(order)}
    earlier = [[w for w in g.neighbors(v) if pos[w] < i] for i, v in enumerate(order)]
    closing: list[list[tuple]] = [[] for _ in order]
    for cyc in cycles:
        closing[max(pos[v] for v in cyc)].append(tuple(cyc))

    upper = acyclic_upper_colouring(g, c)
    best_k = upper.n_colours_used
    lower = 2 if g.m else 1

    colour = [0] * g.n
    counter = [0]

    def extend(i, k, used, bad):
        if i == len(order):
            return True
        counter[0] += 1
        if deadline is not None and counter[0] % 1024 == 0 and time.monotonic() > deadline:
            raise TimeoutError
        v = order[i]
        for col in range(1, min(k, used + 1) + 1):
            if any(colour[w] == col for w in earlier[i]):
                continue
            colour[v] = col
            new_bad = bad
            for cyc in closing[i]:
                if len({colour[x] for x in cyc}) <= c - 1:
                    new_bad += 1
            if new_bad <= allowed_bad and extend(i + 1, k, max(used, col), new_bad):
                return True
        colour[v] = 0
        return False

    for k in range(lower, best_k):
        try:
            found = extend(0, k, 0, 0)
        except TimeoutError:
            raise SolverTimeout(f"no decision for palette {k} within {time_limit}s",
                                upper=best_k, colouring=upper) from None
        if found:
            col = Colouring(tuple(colour), k)
            break
    else:
        k, col = best_k, upper
    report = verify_eta_c(g, col, eta, c, cap=None)
    assert report.passes, "exact solver produced a colouring that fails verification"
    return k, col
