import itertools

import networkx as nx
import numpy as np
import pytest

from acyclic_chi.graph import EdgeProbabilityModel, Graph, sample_graph


def to_nx(g: Graph) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(g.edge_list())
    return G


def brute_force_cycles(g: Graph, min_len=3, max_len=None):
    """Every vertex subset, every circular order starting at its minimum."""
    max_len = g.n if max_len is None else max_len
    adj = g.adjacency_matrix()
    found = set()
    for k in range(max(min_len, 3), max_len + 1):
        for subset in itertools.combinations(range(g.n), k):
            first, rest = subset[0], subset[1:]
            for perm in itertools.permutations(rest):
                if perm[0] > perm[-1]:
                    continue
                seq = (first,) + perm
                if all(adj[seq[i], seq[(i + 1) % k]] for i in range(k)):
                    found.add(seq)
    return sorted(found)


def brute_force_chi(g: Graph, eta=0, c=3):
    """Smallest k such that some k-colouring (all k^n of them) is proper and (eta, c)-acyclic."""
    from fractions import Fraction

    eta = Fraction(eta)
    if g.n == 0:
        return 0
    cycles = [tuple(cy) for cy in nx.simple_cycles(to_nx(g)) if len(cy) >= c]
    edges = g.edges
    for k in range(1, g.n + 1):
        cols = np.array(list(itertools.product(range(k), repeat=g.n)), dtype=np.int8)
        if len(edges):
            ok = np.all(cols[:, edges[:, 0]] != cols[:, edges[:, 1]], axis=1)
            cols = cols[ok]
        if not len(cols):
            continue
        bad = np.zeros(len(cols), dtype=np.int64)
        for cyc in cycles:
            sub = np.sort(cols[:, list(cyc)], axis=1)
            distinct = 1 + np.count_nonzero(np.diff(sub, axis=1), axis=1)
            bad += distinct <= c - 1
        if np.any(bad * eta.denominator <= eta.numerator * len(cycles)):
            return k
    raise AssertionError("unreachable: rainbow colouring always works")


def small_random_graphs(count, seed, n_range=(3, 7), ps=(0.3, 0.5, 0.8)):
    rng = np.random.default_rng(seed)
    out = []
    for i in range(count):
        n = int(rng.integers(n_range[0], n_range[1] + 1))
        p = float(ps[i % len(ps)])
        out.append(sample_graph(EdgeProbabilityModel(n, p=p), int(rng.integers(2**32))))
    return out


@pytest.fixture
def small_graphs():
    return small_random_graphs(60, seed=11)


_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion(capsys):
    """Record a PASS/FAIL line for an acceptance criterion; returns the verdict."""

    def record(number, ok, detail):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
        _ACCEPTANCE_LINES.append(line)
        with capsys.disabled():
            print("\n" + line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
