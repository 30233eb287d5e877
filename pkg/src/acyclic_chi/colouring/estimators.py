"""scikit-learn style wrappers around the colouring routes.

A colouring labels vertices much as a clusterer labels samples, so each
estimator follows the ``fit`` / ``fit_predict`` / ``labels_`` convention.
``X`` is anything :func:`~acyclic_chi.graph.check_graph` accepts.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from ..graph import check_graph, max_degree
from .base import verify_eta_c
from .exact import EXACT_N_CAP, chi_exact
from .lll import _moser_tardos, check_lll_conditions, choose_g, theta_bound
from .power import acyclic_upper_colouring


class _ColouringMixin:
    _estimator_type = "colourer"

    def fit_predict(self, X, y=None):
        return self.fit(X).labels_

    def _set_result(self, col):
        self.colouring_ = col
        self.labels_ = col.as_array()
        self.n_colours_ = col.n_colours_used
        return self

    def score(self, X, y=None):
        """Negative palette size, so that higher is better."""
        check_is_fitted(self, "colouring_")
        return -float(self.n_colours_)

    def verify(self, X, eta=0, cap=200_000):
        """Run the (eta, c) verifier on the fitted colouring of ``X``."""
        check_is_fitted(self, "colouring_")
        return verify_eta_c(check_graph(X), self.colouring_, eta, self.c, cap=cap)


class PowerGraphColouring(_ColouringMixin, BaseEstimator):
    """Greedy colouring of the ``(c-1)``-th graph power; always (0, c)-acyclic.

    Parameters
    ----------
    c : int, default=3
    order : {"natural", "degree"}, default="natural"
        Vertex order for first-fit: ascending id, or descending degree.
    """

    def __init__(self, c=3, order="natural"):
        self.c = c
        self.order = order

    def fit(self, X, y=None):
        g = check_graph(X)
        if self.order == "natural":
            order = None
        elif self.order == "degree":
            order = np.argsort(-g.degrees(), kind="stable").tolist()
        else:
            raise ValueError(f"unknown order {self.order!r}")
        return self._set_result(acyclic_upper_colouring(g, self.c, order))


class LLLPathColouring(_ColouringMixin, BaseEstimator):
    """Moser-Tardos colouring in which every path of ``g`` edges has ``>= c`` colours.

    When ``g`` or ``theta`` is ``None`` it is derived from the graph: ``g``
    from ``beta`` (default: read off the edge density as ``p = n**-beta``),
    ``theta`` from the closed-form palette bound with constant ``D``, doubled
    until both local-lemma inequalities hold (at most ``max_doublings`` times).
    """

    def __init__(self, c=3, g=None, theta=None, beta=None, D=1.0, max_resamples=100_000,
                 max_doublings=20, random_state=None):
        self.c = c
        self.g = g
        self.theta = theta
        self.beta = beta
        self.D = D
        self.max_resamples = max_resamples
        self.max_doublings = max_doublings
        self.random_state = random_state

    def fit(self, X, y=None):
        graph = check_graph(X)
        n = graph.n
        p = graph.m / (n * (n - 1) / 2) if n > 1 else 0.0
        beta = self.beta
        if beta is None:
            beta = -np.log(p) / np.log(n) if 0 < p < 1 and n > 1 else 0.5
        g = self.g if self.g is not None else choose_g(min(max(beta, 1e-3), 1 - 1e-3), self.c)
        theta, doublings = self.theta, 0
        if theta is None:
            theta = max(theta_bound(n, p, g, self.c, self.D), self.c, max_degree(graph) + 1, 2)
            while (not check_lll_conditions(theta, n, p, g, self.c, self.D)
                   and doublings < self.max_doublings):
                theta *= 2
                doublings += 1
        seed = self.random_state if self.random_state is not None else 0
        col, resamples = _moser_tardos(graph, g, self.c, int(theta), seed, self.max_resamples)
        self.g_, self.theta_ = g, int(theta)
        self.theta_doublings_ = doublings
        self.n_resamples_ = resamples
        return self._set_result(col)


class ExactAcyclicColouring(_ColouringMixin, BaseEstimator):
    """Minimum-palette proper (eta, c)-acyclic colouring by branch and bound."""

    def __init__(self, eta=0, c=3, max_n=EXACT_N_CAP, time_limit=None):
        self.eta = eta
        self.c = c
        self.max_n = max_n
        self.time_limit = time_limit

    def fit(self, X, y=None):
        g = check_graph(X)
        k, col = chi_exact(g, self.eta, self.c, max_n=self.max_n, time_limit=self.time_limit)
        self.chi_ = k
        return self._set_result(col)
