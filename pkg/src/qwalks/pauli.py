"""Pauli-string decomposition of Hermitian matrices and matrix-free application.

A Pauli string is a word over ``IXYZ``. Letter ``k`` acts on the ``k``-th
most significant bit of the basis index, i.e. the string ``"XZ"`` is the
matrix ``kron(X, Z)``. Every string is 1-sparse: it maps basis state ``b``
to ``phase(b) * |b ^ xmask>``, which is all :func:`apply_string` uses.
"""

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .exceptions import FormatError, ValidationError
from .validation import check_hermitian, check_state

LETTERS = "IXYZ"
DROP_TOL = 1e-12

_SINGLE = {
    "I": np.eye(2, dtype=np.complex128),
    "X": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "Z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}


def check_string(s):
    if not isinstance(s, str) or not s or any(ch not in LETTERS for ch in s):
        raise ValidationError(f"invalid Pauli string {s!r}")
    return s


def all_strings(q):
    """Every length-``q`` string in lexicographic order (``I < X < Y < Z``)."""
    return ["".join(p) for p in itertools.product(LETTERS, repeat=q)]


@lru_cache(maxsize=4096)
def _action(s):
    # (xmask, phase per basis index) such that P|b> = phase[b] |b ^ xmask>
    q = len(s)
    idx = np.arange(1 << q)
    xmask = zmask = 0
    n_y = 0
    for k, ch in enumerate(s):
        bit = 1 << (q - 1 - k)
        if ch in "XY":
            xmask |= bit
        if ch in "ZY":
            zmask |= bit
        n_y += ch == "Y"
    parity = np.zeros(idx.shape, dtype=np.int64)
    masked = idx & zmask
    while np.any(masked):
        parity ^= masked & 1
        masked >>= 1
    phase = (1j ** n_y) * (1 - 2 * parity)
    phase = phase.astype(np.complex128)
    phase.setflags(write=False)
    return xmask, phase


def pauli_matrix(s):
    """Dense matrix of a Pauli string (for tests and small reconstructions)."""
    out = np.ones((1, 1), dtype=np.complex128)
    for ch in check_string(s):
        out = np.kron(out, _SINGLE[ch])
    return out


def apply_string(s, psi):
    """``P psi`` by bit flips and phases; no matrix is built."""
    s = check_string(s)
    psi = check_state(psi, dim=1 << len(s))
    xmask, phase = _action(s)
    src = np.arange(psi.shape[0]) ^ xmask
    return phase[src] * psi[src]


def apply_pauli_exp(s, theta, psi):
    """``exp(-i theta P) psi = cos(theta) psi - i sin(theta) P psi``."""
    p_psi = apply_string(s, psi)
    return np.cos(theta) * np.asarray(psi, dtype=np.complex128) - 1j * np.sin(theta) * p_psi


def pauli_coefficients(H):
    """All ``Tr(P H) / 2^q`` as a complex vector indexed like :func:`all_strings`.

    Uses ``Tr(P H) = sum_b phase(b) H[b, b ^ xmask]``, O(2^q) per string.
    """
    H = np.asarray(H, dtype=np.complex128)
    dim = H.shape[0]
    q = _qubits_for(dim)
    idx = np.arange(dim)
    coeffs = np.empty(4 ** q, dtype=np.complex128)
    for k, s in enumerate(all_strings(q)):
        xmask, phase = _action(s)
        coeffs[k] = np.sum(phase * H[idx, idx ^ xmask]) / dim
    return coeffs


def _qubits_for(dim):
    if dim < 2 or dim & (dim - 1):
        raise ValidationError(
            f"dimension {dim} is not a power of two >= 2; zero-pad the matrix first")
    return dim.bit_length() - 1


@dataclass(frozen=True)
class PauliTermList:
    """Real-weighted Pauli strings, lexicographically ordered, no duplicates."""

    terms: tuple
    qubits: int

    def __post_init__(self):
        seen = set()
        for coeff, s in self.terms:
            check_string(s)
            if len(s) != self.qubits:
                raise ValidationError(f"string {s!r} does not act on {self.qubits} qubits")
            if s in seen:
                raise ValidationError(f"duplicate Pauli string {s!r}")
            seen.add(s)
        object.__setattr__(self, "terms", tuple((float(c), s) for c, s in self.terms))

    def __iter__(self):
        return iter(self.terms)

    def __len__(self):
        return len(self.terms)

    @property
    def strings(self):
        return [s for _, s in self.terms]

    @property
    def coefficients(self):
        return np.array([c for c, _ in self.terms])

    def to_matrix(self):
        dim = 1 << self.qubits
        out = np.zeros((dim, dim), dtype=np.complex128)
        for coeff, s in self.terms:
            out += coeff * pauli_matrix(s)
        return out

    def apply(self, psi):
        out = np.zeros(1 << self.qubits, dtype=np.complex128)
        for coeff, s in self.terms:
            out += coeff * apply_string(s, psi)
        return out

    def to_text(self):
        """One ``coefficient<TAB>string`` line per term, 12 significant digits."""
        return "".join(f"{c:.12g}\t{s}\n" for c, s in self.terms)

    @classmethod
    def from_text(cls, text):
        terms = []
        for lineno, line in enumerate(text.splitlines(), start=1):
            if not line.strip():
                continue
            try:
                coeff, s = line.split("\t")
                terms.append((float(coeff), s.strip()))
            except ValueError:
                raise FormatError(f"expected 'coefficient<TAB>string', got {line!r}",
                                  line=lineno) from None
        if not terms:
            raise FormatError("empty term list")
        return cls(tuple(terms), len(terms[0][1]))


def decompose(H, tol=DROP_TOL):
    """Expand a Hermitian ``2^q x 2^q`` matrix as ``sum_P a_P P``.

    Coefficients with ``|a_P| < tol`` are dropped. For Hermitian input all
    ``a_P`` are real up to round-off; the imaginary parts are discarded.

    Raises
    ------
    ValidationError
        Non-power-of-two dimension or non-Hermitian input.
    """
    H = check_hermitian(H, name="H")
    q = _qubits_for(H.shape[0])
    coeffs = pauli_coefficients(H).real
    terms = tuple((c, s) for c, s in zip(coeffs, all_strings(q)) if abs(c) >= tol)
    return PauliTermList(terms, q)
