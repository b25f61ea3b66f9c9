"""scikit-learn style estimators over the functional API.

``fit`` takes the graph (a :class:`~qwalks.graphs.Graph` or any array-like
adjacency matrix) and precomputes whatever is reusable (spectrum, Pauli
terms). ``predict`` maps an array of times to an ``(n_times, n_vertices)``
probability matrix. All hyperparameters are constructor arguments, so
``get_params``/``set_params``/``clone`` work as usual.

>>> from qwalks import QuantumWalk, family
>>> walk = QuantumWalk(start=0).fit(family("path", 2))
>>> walk.predict([0.0]).round(6).tolist()
[[1.0, 0.0]]
"""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from . import classical_walk, ctqw, linalg, pauli, search, trotter
from .graphs import Graph
from .validation import check_hermitian, check_index, check_times


def as_graph(X):
    if isinstance(X, Graph):
        return X
    return Graph(np.asarray(X))


class ClassicalWalk(BaseEstimator):
    """Path-counting classical walk; ``predict`` takes integer step counts."""

    def __init__(self, start=0):
        self.start = start

    def fit(self, X, y=None):
        self.graph_ = as_graph(X)
        check_index(self.start, self.graph_.n, "start")
        self.n_features_in_ = self.graph_.n
        return self

    def counts(self, t):
        check_is_fitted(self)
        return classical_walk.classical_counts(self.graph_, self.start, int(t))

    def predict(self, steps):
        check_is_fitted(self)
        steps = np.atleast_1d(np.asarray(steps))
        if not np.issubdtype(steps.dtype, np.integer) or np.any(steps < 0):
            raise ValueError("steps must be non-negative integers")
        last = int(steps.max()) if steps.size else 0
        rows = classical_walk.classical_walk_series(self.graph_, self.start, last).values
        return rows[steps]

    def series(self, t_max):
        check_is_fitted(self)
        return classical_walk.classical_walk_series(self.graph_, self.start, t_max)


class QuantumWalk(BaseEstimator):
    """Continuous-time walk with the adjacency matrix as Hamiltonian.

    Parameters
    ----------
    start : int
        Initial vertex (0-based).
    shots : int
        0 for exact probabilities, otherwise simulated measurements per row.
    seed : int
        Seed for shot sampling; row ``k`` uses its own derived stream.
    """

    def __init__(self, start=0, shots=0, seed=0):
        self.start = start
        self.shots = shots
        self.seed = seed

    def fit(self, X, y=None):
        self.graph_ = as_graph(X)
        check_index(self.start, self.graph_.n, "start")
        self.spectrum_ = linalg.hermitian_eig(self.graph_.adj.astype(np.float64))
        self.n_features_in_ = self.graph_.n
        return self

    def predict_amplitudes(self, times):
        check_is_fitted(self)
        return ctqw.walk_amplitudes(None, self.start, times, self.spectrum_)

    def predict(self, times):
        probs = linalg.probabilities(self.predict_amplitudes(times))
        if self.shots:
            probs = ctqw.sample_series(probs, self.shots, self.seed)
        return probs

    def series(self, t_max=10.0, steps=200):
        check_is_fitted(self)
        cfg = ctqw.WalkConfig(self.start, t_max, steps, self.shots, self.seed)
        return ctqw.quantum_walk_series(self.graph_, cfg)

    def state_transfer(self, t_max=10.0, threshold=0.999, steps=200):
        check_is_fitted(self)
        return ctqw.detect_state_transfer(self.graph_, self.start, t_max, threshold, steps)


class TrotterWalk(BaseEstimator):
    """Walk evolved by a Suzuki-Trotter product over the Pauli terms of ``A``."""

    def __init__(self, start=0, order=3, slices_per_unit_time=10):
        self.start = start
        self.order = order
        self.slices_per_unit_time = slices_per_unit_time

    def fit(self, X, y=None):
        self.graph_ = as_graph(X)
        check_index(self.start, self.graph_.n, "start")
        trotter.effective_order(self.order)
        self.terms_ = trotter.graph_terms(self.graph_)
        self.n_features_in_ = self.graph_.n
        return self

    def _config(self, total_time):
        return trotter.TrotterConfig(total_time, self.slices_per_unit_time, self.order)

    def predict(self, times):
        """Probabilities at each time, each evolved from ``t = 0`` independently."""
        check_is_fitted(self)
        psi0 = linalg.basis_state(1 << self.terms_.qubits, self.start)
        rows = [trotter.trotter_evolve(self.terms_, self._config(t), psi0)
                for t in check_times(times)]
        return linalg.probabilities(np.array(rows)[:, :self.graph_.n])

    def series(self, total_time=25.0):
        check_is_fitted(self)
        return trotter.trotter_walk_series(self.graph_, self._config(total_time), self.start)


class SpatialSearch(BaseEstimator):
    """Continuous-time search for ``target``; ``gamma=None`` means ``1/n``."""

    def __init__(self, target=0, gamma=None):
        self.target = target
        self.gamma = gamma

    def fit(self, X, y=None):
        self.graph_ = as_graph(X)
        cfg = search.SearchConfig(self.target, self.gamma)
        self.gamma_ = cfg.resolved_gamma(self.graph_.n)
        self.hamiltonian_ = search.search_hamiltonian(self.graph_, cfg)
        self.spectrum_ = linalg.hermitian_eig(self.hamiltonian_)
        self.n_features_in_ = self.graph_.n
        return self

    def predict(self, times):
        check_is_fitted(self)
        psi0 = search.uniform_state(self.graph_.n)
        return linalg.probabilities(linalg.evolve(self.spectrum_, psi0, times))

    def series(self, t_max=10.0, steps=200):
        check_is_fitted(self)
        cfg = search.SearchConfig(self.target, self.gamma, t_max, steps)
        return search.search_series(self.graph_, cfg)


class PauliDecomposer(TransformerMixin, BaseEstimator):
    """Pauli-basis coordinates of a Hermitian ``2^q x 2^q`` matrix.

    ``transform`` returns all ``4^q`` real coefficients in lexicographic
    string order; ``inverse_transform`` rebuilds the matrix. ``terms_`` holds
    the sparse term list of the fitted matrix.
    """

    def __init__(self, tol=pauli.DROP_TOL):
        self.tol = tol

    def fit(self, X, y=None):
        self.terms_ = pauli.decompose(X, tol=self.tol)
        self.n_qubits_ = self.terms_.qubits
        self.strings_ = pauli.all_strings(self.n_qubits_)
        return self

    def transform(self, X):
        check_is_fitted(self)
        X = check_hermitian(X, name="X")
        return pauli.pauli_coefficients(X).real

    def inverse_transform(self, coefficients):
        check_is_fitted(self)
        coefficients = np.asarray(coefficients, dtype=np.float64)
        dim = 1 << self.n_qubits_
        out = np.zeros((dim, dim), dtype=np.complex128)
        for c, s in zip(coefficients, self.strings_):
            if c:
                out += c * pauli.pauli_matrix(s)
        return out
