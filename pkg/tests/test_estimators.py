import numpy as np
import pytest
import scipy.sparse as sp
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from acyclic_chi.colouring import (
    ExactAcyclicColouring,
    LLLPathColouring,
    PowerGraphColouring,
    find_low_colour_path,
    is_proper,
)
from acyclic_chi.graph import EdgeProbabilityModel, complete_graph, cycle_graph, sample_graph
from conftest import to_nx


@pytest.fixture
def g():
    return sample_graph(EdgeProbabilityModel(60, p=0.08), 4)


@pytest.mark.parametrize("est", [PowerGraphColouring(c=4, order="degree"),
                                 LLLPathColouring(c=3, g=5, random_state=7),
                                 ExactAcyclicColouring(eta=0.25, c=4)])
def test_params_roundtrip_and_clone(est):
    params = est.get_params()
    twin = clone(est)
    assert twin.get_params() == params
    assert twin is not est


def test_not_fitted():
    with pytest.raises(NotFittedError):
        PowerGraphColouring().score(complete_graph(3))


def test_power_accepts_every_input_form(g):
    labels = PowerGraphColouring(c=3).fit_predict(g)
    A = g.adjacency_matrix(np.int8)
    assert np.array_equal(PowerGraphColouring(c=3).fit_predict(A), labels)
    assert np.array_equal(PowerGraphColouring(c=3).fit_predict(sp.csr_matrix(A)), labels)
    assert np.array_equal(PowerGraphColouring(c=3).fit_predict(to_nx(g)), labels)


def test_power_fitted_attributes(g):
    est = PowerGraphColouring(c=3, order="degree").fit(g)
    assert est.n_colours_ == len(set(est.labels_.tolist()))
    assert est.score(g) == -est.n_colours_
    assert est.verify(g, cap=1000).passes


def test_power_bad_order(g):
    with pytest.raises(ValueError):
        PowerGraphColouring(order="random").fit(g)


def test_lll_derives_parameters(g):
    est = LLLPathColouring(c=3, random_state=1).fit(g)
    assert est.g_ >= 4 and est.theta_ >= 3
    assert is_proper(g, est.colouring_)
    assert find_low_colour_path(g, est.colouring_, est.g_, 3) is None


def test_lll_reproducible(g):
    a = LLLPathColouring(c=3, g=4, theta=12, random_state=3).fit_predict(g)
    b = LLLPathColouring(c=3, g=4, theta=12, random_state=3).fit_predict(g)
    assert np.array_equal(a, b)


def test_exact_estimator():
    est = ExactAcyclicColouring().fit(cycle_graph(4))
    assert est.chi_ == est.n_colours_ == 3
    assert est.verify(cycle_graph(4)).passes
