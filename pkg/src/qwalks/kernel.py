"""Propagators (kernels) on lattices and the free particle.

``K(x, x0; t) = <x| exp(-iHt) |x0> = sum_n exp(-i E_n t) conj(psi_n(x0)) psi_n(x)``

Eigen-systems come either from numerical diagonalisation (``kind="numeric"``)
or from the closed-form ring and interval formulas. The closed forms are
stored exactly as written (``eigenfunctions``) next to an orthonormalised copy
(``normalized``) that the kernel actually uses; :func:`formula_diagnostic`
measures how far the closed forms are from the matching lattice operators.
"""

from dataclasses import dataclass

import numpy as np

from . import graphs, linalg, pauli, trotter
from .exceptions import ValidationError
from .series import TimeSeries, vertex_labels
from .validation import check_index, check_times

KINDS = ("ring", "interval", "numeric")
INTERVAL_OPERATORS = ("neumann", "adjacency")


@dataclass(frozen=True, eq=False)
class EigenSystemSpec:
    """Eigenvalues with eigenfunctions sampled on sites ``x = 0 .. n-1``.

    Column ``k`` of ``eigenfunctions``/``normalized`` is mode ``k``.
    """

    kind: str
    n: int
    eigenvalues: np.ndarray
    eigenfunctions: np.ndarray
    normalized: np.ndarray


@dataclass(frozen=True, eq=False)
class KernelGrid:
    """``values[i, x] = K(x, source; times[i])``."""

    n: int
    source: int
    times: np.ndarray
    values: np.ndarray

    @property
    def probabilities(self):
        return linalg.probabilities(self.values)

    def to_series(self):
        return TimeSeries(self.times, self.probabilities, vertex_labels(self.n))


def orthonormalize(vectors):
    """Gram-Schmidt on the columns (Householder QR with positive ``diag(R)``)."""
    q, r = np.linalg.qr(np.asarray(vectors, dtype=np.complex128))
    d = np.diag(r)
    mag = np.abs(d)
    phases = np.divide(d, mag, out=np.ones_like(d), where=mag > 0)
    return q * phases


def _check_sites(N):
    if int(N) < 2:
        raise ValidationError(f"need at least 2 sites, got {N}")
    return int(N)


def ring_wavenumbers(N):
    """``2 pi (N/2 + 1 - n) / (2 (N + 1))`` for ``n = 1 .. N``."""
    n = np.arange(1, N + 1)
    return 2 * np.pi * (N / 2 + 1 - n) / (2 * (N + 1))


def ring_eigs(N):
    """Closed-form ring modes: ``E_n = sin(k_n)^2``, ``psi_n(x) = exp(i k_n x)``."""
    N = _check_sites(N)
    k = ring_wavenumbers(N)
    x = np.arange(N)
    psi = np.exp(1j * np.outer(x, k))
    return EigenSystemSpec("ring", N, np.sin(k) ** 2, psi, orthonormalize(psi))


def interval_eigs(N):
    """Closed-form interval modes, ``n = 0 .. N-1``.

    ``E_n = (2 sin(pi n / 2N))^2`` and ``psi_n(x) = cos(pi n x / N)``.
    """
    N = _check_sites(N)
    n = np.arange(N)
    x = np.arange(N)
    energies = (2 * np.sin(np.pi * n / (2 * N))) ** 2
    psi = np.cos(np.pi * np.outer(x, n) / N).astype(np.complex128)
    return EigenSystemSpec("interval", N, energies, psi, orthonormalize(psi))


def numeric_eigs(H):
    spectrum = linalg.hermitian_eig(H)
    v = spectrum.eigenvectors
    return EigenSystemSpec("numeric", spectrum.dim, spectrum.eigenvalues, v, v)


def interval_hamiltonian(N, operator="neumann"):
    """Lattice operator on an ``N``-site interval.

    ``"neumann"`` is ``D - A`` of the path graph (diagonal ``1, 2, ..., 2, 1``),
    whose spectrum is ``(2 sin(pi n / 2N))^2``. ``"adjacency"`` is the plain
    path adjacency ``A``.
    """
    if operator not in INTERVAL_OPERATORS:
        raise ValidationError(f"operator must be one of {INTERVAL_OPERATORS}, got {operator!r}")
    path = graphs.family("path", N)
    if operator == "neumann":
        return -graphs.laplacian(path)
    return path.adj.astype(np.float64)


def eigensystem(kind, N, operator="neumann"):
    if kind == "ring":
        return ring_eigs(N)
    if kind == "interval":
        return interval_eigs(N)
    if kind == "numeric":
        return numeric_eigs(interval_hamiltonian(N, operator))
    raise ValidationError(f"kind must be one of {KINDS}, got {kind!r}")


def spectral_kernel(spec, x0, times):
    """``K(x, x0; t)`` for every site ``x`` and every ``t`` in ``times``."""
    x0 = check_index(x0, spec.n, "source")
    times = check_times(times)
    psi = spec.normalized
    phases = np.exp(-1j * np.outer(times, spec.eigenvalues))
    values = (phases * psi[x0].conj()) @ psi.T
    return KernelGrid(spec.n, x0, times, values)


def free_particle_kernel(m, x, x0, t):
    """Free-particle propagator on the real line with hbar = 1.

    ``(m / (2 pi i t))^(1/2) * exp(-m (x - x0)^2 / (2 i t))``, principal
    square root. Raises ValidationError for ``t == 0`` where it is singular.
    """
    if t == 0:
        raise ValidationError("free-particle kernel is singular at t = 0")
    prefactor = np.sqrt(complex(m) / (2j * np.pi * t))
    return complex(prefactor * np.exp(-m * (x - x0) ** 2 / (2j * t)))


@dataclass(frozen=True, eq=False)
class KernelWalkComparison:
    """``|K|^2`` next to walk probabilities generated from the same operator."""

    kernel: TimeSeries
    walk: TimeSeries
    trotter: TimeSeries = None
    trotter_reference: TimeSeries = None

    def max_deviation(self):
        out = {"walk": float(np.max(np.abs(self.kernel.values - self.walk.values)))}
        if self.trotter is not None:
            out["trotter"] = float(np.max(np.abs(
                self.trotter_reference.values - self.trotter.values)))
        return out


def kernel_walk_comparison(N, x0, times, operator="neumann", trotter_config=None):
    """Put the spectral kernel side by side with a walk on the interval.

    The walk rows are ``|exp(-iHt)[:, x0]|^2`` with the full matrix
    exponential built by :func:`~qwalks.linalg.expm_spectral`. With
    ``trotter_config`` the operator is also evolved by a product formula and
    compared with the kernel at the slice boundaries.
    """
    H = interval_hamiltonian(N, operator)
    spec = numeric_eigs(H)
    kern = spectral_kernel(spec, x0, times)
    spectrum = linalg.hermitian_eig(H)
    walk = np.array([linalg.probabilities(linalg.expm_spectral(spectrum, t)[:, kern.source])
                     for t in kern.times])
    labels = vertex_labels(spec.n)
    result = dict(kernel=kern.to_series(), walk=TimeSeries(kern.times, walk, labels))
    if trotter_config is not None:
        padded, q = graphs.pad_to_power_of_two(H)
        terms = pauli.decompose(padded)
        states = trotter.trotter_states(terms, trotter_config,
                                        linalg.basis_state(1 << q, kern.source))
        t_slices = trotter_config.slice_times
        result["trotter"] = TimeSeries(
            t_slices, linalg.probabilities(states[:, :spec.n]), labels)
        result["trotter_reference"] = spectral_kernel(spec, x0, t_slices).to_series()
    return KernelWalkComparison(**result)


def _multiset_deviation(a, b):
    return float(np.max(np.abs(np.sort(a) - np.sort(b))))


def _mode_residual(H, energies, vectors):
    # max_n ||H u_n - E_n u_n|| with each column scaled to unit length
    u = vectors / np.linalg.norm(vectors, axis=0)
    return float(np.max(np.linalg.norm(H @ u - u * energies, axis=0)))


def formula_diagnostic(N):
    """Compare the closed-form ring/interval modes with lattice operators.

    For each closed form and each candidate operator the report records the
    eigenvalue multiset deviation (max abs difference after sorting) and the
    largest eigen-equation residual of the unit-scaled closed-form vectors.
    ``max_deviation`` is the eigenvalue deviation against the best-matching
    candidate, named in ``best_match``.
    """
    N = _check_sites(N)
    report = {"N": N}

    ring = ring_eigs(N)
    if N >= 3:
        cycle = graphs.family("cycle", N)
        lap = -graphs.laplacian(cycle)
        ring_ops = {
            "cycle_adjacency": cycle.adj.astype(np.float64),
            "cycle_laplacian": lap,
            "cycle_laplacian_quarter": lap / 4,
        }
    else:
        ring_ops = {"path_adjacency": interval_hamiltonian(N, "adjacency")}
    report["ring"] = _section(ring, ring_ops, {"verbatim": ring.eigenfunctions})
    report["ring"]["condition_number"] = float(np.linalg.cond(ring.eigenfunctions))

    interval = interval_eigs(N)
    x = np.arange(N)
    offset = np.cos(np.pi * np.outer(x + 0.5, np.arange(N)) / N)
    interval_ops = {op: interval_hamiltonian(N, op) for op in INTERVAL_OPERATORS}
    report["interval"] = _section(interval, interval_ops,
                                  {"verbatim": interval.eigenfunctions, "half_offset": offset})
    return report


def _section(spec, operators, vector_variants):
    eig_dev = {}
    residuals = {}
    for name, H in operators.items():
        eig_dev[name] = _multiset_deviation(spec.eigenvalues, np.linalg.eigvalsh(H))
        residuals[name] = {variant: _mode_residual(H, spec.eigenvalues, vecs)
                           for variant, vecs in vector_variants.items()}
    best = min(eig_dev, key=eig_dev.get)
    return {
        "eigenvalue_deviation": eig_dev,
        "eigenvector_residual": residuals,
        "best_match": best,
        "max_deviation": eig_dev[best],
    }


def format_diagnostic(report):
    lines = []
    for section in ("ring", "interval"):
        sec = report[section]
        lines.append(f"{section} N={report['N']}: max_deviation={sec['max_deviation']:.6g} "
                     f"(best match: {sec['best_match']})")
        for name, dev in sec["eigenvalue_deviation"].items():
            res = ", ".join(f"{k}={v:.3g}" for k, v in sec["eigenvector_residual"][name].items())
            lines.append(f"  {name}: eigenvalue_deviation={dev:.6g}; residual {res}")
    return "\n".join(lines) + "\n"
