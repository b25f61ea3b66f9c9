"""Classical and quantum walks on graphs, simulated with dense linear algebra."""

from .classical_walk import (CountVector, classical_probabilities, classical_step,
                             classical_walk_series)
from .ctqw import (TransferEvent, WalkConfig, detect_state_transfer, quantum_walk_series,
                   sample_counts)
from .estimators import (ClassicalWalk, PauliDecomposer, QuantumWalk, SpatialSearch,
                         TrotterWalk)
from .exceptions import (ConfigurationError, DegenerateWalkError, FormatError,
                         GraphValueError, NumericalError, QWalksError, SizeError,
                         ValidationError)
from .graphs import (Graph, family, laplacian, parse_adjacency, random_graph,
                     serialize_adjacency)
from .kernel import (free_particle_kernel, interval_eigs, kernel_walk_comparison,
                     ring_eigs, spectral_kernel)
from .linalg import Spectrum, apply, expm_spectral, hermitian_eig
from .pauli import PauliTermList, apply_pauli_exp, apply_string, decompose
from .search import SearchConfig, oracle_unitary, search_hamiltonian, search_series, uniform_state
from .series import TimeSeries
from .trotter import TrotterConfig, trotter_evolve, trotter_step, trotter_walk_series

__version__ = "0.1.0"

__all__ = [
    "apply", "apply_pauli_exp", "apply_string", "classical_probabilities", "classical_step",
    "classical_walk_series", "ClassicalWalk", "ConfigurationError", "CountVector", "decompose",
    "DegenerateWalkError", "detect_state_transfer", "expm_spectral", "family", "FormatError",
    "free_particle_kernel", "Graph", "GraphValueError", "hermitian_eig", "interval_eigs",
    "kernel_walk_comparison", "laplacian", "NumericalError", "oracle_unitary",
    "parse_adjacency", "PauliDecomposer", "PauliTermList", "quantum_walk_series", "QuantumWalk",
    "QWalksError", "random_graph", "ring_eigs", "sample_counts", "search_hamiltonian",
    "search_series", "SearchConfig", "serialize_adjacency", "SizeError", "SpatialSearch",
    "spectral_kernel", "Spectrum", "TimeSeries", "TransferEvent", "trotter_evolve",
    "trotter_step", "trotter_walk_series", "TrotterConfig", "TrotterWalk", "uniform_state",
    "ValidationError", "WalkConfig", "__version__",
]
