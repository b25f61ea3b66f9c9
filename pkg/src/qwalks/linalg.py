"""Dense Hermitian eigendecomposition and spectral time evolution.

State vectors are plain 1-d ``complex128`` arrays; unitaries are 2-d
``complex128`` arrays.
"""

from dataclasses import dataclass

import numpy as np

from .exceptions import ValidationError
from .validation import check_hermitian, check_state, check_times

PHASE_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Eigenvalues in ascending order with orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self):
        return self.eigenvalues.shape[0]

    def reconstruct(self):
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T

    def residual(self, matrix):
        """Largest ``||H v_k - lambda_k v_k||`` over all eigenpairs."""
        v = self.eigenvectors
        r = np.asarray(matrix) @ v - v * self.eigenvalues
        return float(np.max(np.linalg.norm(r, axis=0)))


def _fix_phases(vectors):
    # Rotate each column so its first non-negligible entry is positive real.
    out = vectors.copy()
    for k in range(out.shape[1]):
        col = out[:, k]
        idx = np.flatnonzero(np.abs(col) > PHASE_TOL)
        if idx.size:
            lead = col[idx[0]]
            out[:, k] = col * (abs(lead) / lead)
    return out


def hermitian_eig(H):
    """Full eigendecomposition of a Hermitian matrix.

    Eigenvalues come back ascending. Each eigenvector is rotated so that its
    first non-negligible component is positive real, which keeps the output
    deterministic and real-valued for real symmetric input.

    Raises
    ------
    ValidationError
        If ``H`` is not square or not Hermitian within 1e-12.
    """
    H = check_hermitian(H, name="H")
    if H.shape[0] == 0:
        raise ValidationError("H must be at least 1x1")
    w, v = np.linalg.eigh(H)
    return Spectrum(eigenvalues=w, eigenvectors=_fix_phases(v.astype(np.complex128)))


def expm_spectral(spectrum, t):
    """``exp(-i H t)`` assembled as ``sum_n exp(-i E_n t) v_n v_n^dagger``."""
    v = spectrum.eigenvectors
    phases = np.exp(-1j * spectrum.eigenvalues * float(t))
    return (v * phases) @ v.conj().T


def apply(U, psi):
    U = np.asarray(U)
    psi = check_state(psi, dim=U.shape[1])
    return U @ psi


def evolve(spectrum, psi0, times):
    """States ``exp(-i H t) psi0`` for every ``t`` in ``times``.

    Same operator as :func:`expm_spectral`, applied without forming the
    full matrix. Returns an array of shape ``(len(times), dim)``.
    """
    psi0 = check_state(psi0, dim=spectrum.dim)
    times = check_times(times)
    v = spectrum.eigenvectors
    coeffs = v.conj().T @ psi0
    phases = np.exp(-1j * np.outer(times, spectrum.eigenvalues))
    return (phases * coeffs) @ v.T


def probabilities(psi):
    """Born-rule probabilities ``|psi_j|^2``."""
    psi = np.asarray(psi)
    return psi.real ** 2 + psi.imag ** 2


def basis_state(dim, index):
    psi = np.zeros(dim, dtype=np.complex128)
    psi[index] = 1.0
    return psi


def is_unitary(U, atol=1e-9):
    U = np.asarray(U)
    return np.allclose(U.conj().T @ U, np.eye(U.shape[0]), rtol=0.0, atol=atol)
