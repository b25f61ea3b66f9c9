import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from qwalks import ctqw, linalg, pauli, search, trotter
from qwalks.estimators import (ClassicalWalk, PauliDecomposer, QuantumWalk, SpatialSearch,
                               TrotterWalk)
from qwalks.exceptions import ConfigurationError, ValidationError
from qwalks.graphs import family

from oracles import random_hermitian

ESTIMATORS = [ClassicalWalk(start=1), QuantumWalk(start=2, shots=10, seed=4),
              TrotterWalk(order=2, slices_per_unit_time=20), SpatialSearch(target=3, gamma=0.5),
              PauliDecomposer(tol=1e-9)]


@pytest.mark.parametrize("est", ESTIMATORS, ids=lambda e: type(e).__name__)
def test_params_round_trip(est):
    twin = clone(est)
    assert twin.get_params() == est.get_params()
    assert type(twin)(**est.get_params()).get_params() == est.get_params()


@pytest.mark.parametrize("est", ESTIMATORS[:4], ids=lambda e: type(e).__name__)
def test_not_fitted(est):
    with pytest.raises(NotFittedError):
        est.predict([1])


def test_classical_walk():
    est = ClassicalWalk(start=0).fit(family("cycle", 4).adj)
    assert est.predict([2]).tolist() == [[0.5, 0, 0.5, 0]]
    assert est.counts(2).counts == (2, 0, 2, 0)
    assert len(est.series(3)) == 4
    with pytest.raises(ValueError):
        est.predict([0.5])


def test_classical_bad_start():
    with pytest.raises(ValidationError):
        ClassicalWalk(start=9).fit(family("cycle", 4))


def test_quantum_walk_matches_functional():
    g = family("cycle", 6)
    times = np.linspace(0, 5, 11)
    est = QuantumWalk(start=1).fit(g)
    assert np.allclose(est.predict(times), ctqw.walk_probabilities(g.adj, 1, times), atol=1e-14)
    assert est.state_transfer() == ctqw.detect_state_transfer(g, 1)
    sampled = est.set_params(shots=100).predict(times)
    assert np.allclose(sampled * 100, np.round(sampled * 100))


def test_trotter_walk_predict_matches_series_end():
    g = family("cycle", 8)
    est = TrotterWalk(start=0).fit(g)
    s = est.series(2.0)
    assert np.allclose(est.predict([2.0])[0], s.values[-1], atol=1e-12)
    with pytest.raises(ConfigurationError):
        TrotterWalk(order=5).fit(g)


def test_spatial_search():
    g = family("complete", 4)
    est = SpatialSearch(target=3).fit(g)
    assert est.gamma_ == 0.25
    assert np.allclose(est.hamiltonian_, search.search_hamiltonian(g, search.SearchConfig(3)))
    assert est.predict([0.0])[0].tolist() == pytest.approx([0.25] * 4)
    assert est.series().p_star >= 0.99


@pytest.mark.parametrize("q", [1, 2, 3])
def test_pauli_decomposer_round_trip(q):
    H = random_hermitian(np.random.default_rng(q), 1 << q)
    dec = PauliDecomposer().fit(H)
    coeffs = dec.transform(H)
    assert coeffs.shape == (4 ** q,)
    assert dec.strings_ == pauli.all_strings(q)
    assert np.max(np.abs(dec.inverse_transform(coeffs) - H)) <= 1e-12
    assert np.max(np.abs(dec.terms_.to_matrix() - H)) <= 1e-12


def test_pauli_decomposer_fit_transform():
    A = family("cycle", 4).adj.astype(float)
    coeffs = PauliDecomposer().fit_transform(A)
    named = dict(zip(pauli.all_strings(2), coeffs))
    assert named["IX"] == pytest.approx(1) and named["XX"] == pytest.approx(1)
    assert sum(abs(c) for c in coeffs) == pytest.approx(2)
    with pytest.raises(NotFittedError):
        PauliDecomposer().transform(A)


def test_trotter_walk_padded_graph():
    est = TrotterWalk(start=0).fit(family("path", 3))
    assert est.terms_.qubits == 2
    p = est.predict([0.0, 1.0])
    assert p.shape == (2, 3)
    assert np.allclose(p[0], [1, 0, 0])
    exact = linalg.probabilities(linalg.evolve(linalg.hermitian_eig(family("path", 3).adj),
                                               linalg.basis_state(3, 0), [1.0]))
    assert np.max(np.abs(p[1] - exact[0])) <= 1e-3
    assert trotter.effective_order(est.order) == 4


def test_module_doctest():
    import doctest

    from qwalks import estimators
    assert doctest.testmod(estimators).failed == 0
