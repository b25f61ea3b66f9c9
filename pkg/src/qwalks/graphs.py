"""Simple undirected graphs, their adjacency/Laplacian matrices and text I/O.

The adjacency text format is one matrix row per line, entries separated by
whitespace. Blank lines and lines whose first non-blank character is ``#``
are skipped::

    # path on two vertices
    0 1
    1 0
"""

from dataclasses import dataclass

import numpy as np

from .exceptions import FormatError, GraphValueError, SizeError, ValidationError
from .validation import check_probability

FAMILIES = ("cycle", "path", "complete", "star")


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable simple graph on vertices ``0 .. n-1``.

    Parameters
    ----------
    adj : array-like of shape (n, n)
        Symmetric 0/1 matrix with zero diagonal.
    """

    adj: np.ndarray

    def __post_init__(self):
        adj = validate_adjacency(self.adj)
        adj.setflags(write=False)
        object.__setattr__(self, "adj", adj)

    @property
    def n(self):
        return self.adj.shape[0]

    @property
    def edges(self):
        rows, cols = np.nonzero(np.triu(self.adj, 1))
        return [(int(i), int(j)) for i, j in zip(rows, cols)]

    def degrees(self):
        """Diagonal of the degree matrix, i.e. the row sums of ``adj``."""
        return self.adj.sum(axis=1)

    def neighbors(self, v):
        return [int(u) for u in np.flatnonzero(self.adj[v])]

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return np.array_equal(self.adj, other.adj)

    def __hash__(self):
        return hash(self.adj.tobytes())

    def __repr__(self):
        return f"Graph(n={self.n}, edges={len(self.edges)})"


def validate_adjacency(adj):
    """Return ``adj`` as a fresh int64 array after checking the graph invariants."""
    arr = np.asarray(adj)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValidationError(f"adjacency must be square, got shape {arr.shape}")
    if arr.shape[0] < 1:
        raise SizeError("a graph needs at least one vertex")
    if not np.all(np.isin(arr, (0, 1))):
        raise GraphValueError("adjacency entries must be 0 or 1")
    arr = arr.astype(np.int64, copy=True)
    if np.any(np.diag(arr)):
        raise ValidationError("adjacency has a nonzero diagonal (self-loop)")
    if not np.array_equal(arr, arr.T):
        raise ValidationError("adjacency is not symmetric")
    return arr


def _from_edges(n, edges):
    adj = np.zeros((n, n), dtype=np.int64)
    for i, j in edges:
        adj[i, j] = adj[j, i] = 1
    return Graph(adj)


def family(kind, n):
    """Build a named graph family.

    ``cycle`` needs ``n >= 3``; ``path``, ``complete`` and ``star`` need
    ``n >= 2``. The star is centred on vertex 0.
    """
    if kind not in FAMILIES:
        raise ValidationError(f"unknown graph family {kind!r}; choose from {FAMILIES}")
    n = int(n)
    minimum = 3 if kind == "cycle" else 2
    if n < minimum:
        raise SizeError(f"{kind} graph needs n >= {minimum}, got {n}")
    if kind == "cycle":
        return _from_edges(n, [(i, (i + 1) % n) for i in range(n)])
    if kind == "path":
        return _from_edges(n, [(i, i + 1) for i in range(n - 1)])
    if kind == "complete":
        return Graph(np.ones((n, n), dtype=np.int64) - np.eye(n, dtype=np.int64))
    return _from_edges(n, [(0, i) for i in range(1, n)])


def empty_graph(n):
    if n < 1:
        raise SizeError("a graph needs at least one vertex")
    return Graph(np.zeros((n, n), dtype=np.int64))


def random_graph(n, edge_prob, seed):
    """Erdos-Renyi G(n, p) graph.

    Pairs ``(i, j)`` with ``i < j`` are visited in row-major order and each
    consumes one uniform draw from ``numpy.random.default_rng(seed)``; the
    edge is present when the draw is below ``edge_prob``.
    """
    edge_prob = check_probability(edge_prob, "edge_prob")
    if n < 1:
        raise SizeError("a graph needs at least one vertex")
    rng = np.random.default_rng(seed)
    rows, cols = np.triu_indices(n, 1)
    present = rng.random(rows.size) < edge_prob
    adj = np.zeros((n, n), dtype=np.int64)
    adj[rows[present], cols[present]] = 1
    return Graph(adj + adj.T)


def degree_matrix(g):
    return np.diag(g.degrees()).astype(np.float64)


def laplacian(g):
    """``A - D``.

    Note the sign: this is the negative of the usual positive semidefinite
    graph Laplacian, so every eigenvalue is <= 0.
    """
    return g.adj.astype(np.float64) - degree_matrix(g)


def parse_adjacency(text):
    """Parse adjacency text (``str`` or ``bytes``) into a :class:`Graph`.

    Raises
    ------
    FormatError
        Ragged or non-square input, or a token that is not an integer.
        The offending 1-based line number is attached as ``.line``.
    GraphValueError
        An integer entry other than 0 or 1.
    ValidationError
        Asymmetric matrix or nonzero diagonal.
    """
    if isinstance(text, (bytes, bytearray)):
        try:
            text = text.decode("ascii")
        except UnicodeDecodeError as exc:
            raise FormatError(f"adjacency text must be ASCII ({exc})") from exc
    rows = []
    width = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        try:
            values = [int(tok) for tok in tokens]
        except ValueError:
            bad = next(tok for tok in tokens if not _is_int(tok))
            raise FormatError(f"not an integer: {bad!r}", line=lineno) from None
        if width is None:
            width = len(values)
        elif len(values) != width:
            raise FormatError(
                f"ragged row: expected {width} entries, got {len(values)}", line=lineno)
        bad = [v for v in values if v not in (0, 1)]
        if bad:
            raise GraphValueError(f"entry {bad[0]} is not 0 or 1", line=lineno)
        rows.append(values)
    if not rows:
        raise FormatError("no matrix rows found")
    if len(rows) != width:
        raise FormatError(f"matrix is {len(rows)}x{width}, expected square")
    return Graph(np.array(rows, dtype=np.int64))


def _is_int(token):
    try:
        int(token)
    except ValueError:
        return False
    return True


def serialize_adjacency(g):
    """Canonical text form: single spaces, ``\\n`` after every row."""
    return "".join(" ".join(str(int(v)) for v in row) + "\n" for row in g.adj)


def read_adjacency(path):
    with open(path, "rb") as fh:
        return parse_adjacency(fh.read())


def write_adjacency(g, path):
    with open(path, "w", newline="\n", encoding="ascii") as fh:
        fh.write(serialize_adjacency(g))


def pad_to_power_of_two(matrix):
    """Zero-pad a square matrix to the next power-of-two dimension.

    Padded rows and columns are zero, so the padded subspace is invariant
    and decoupled from the original vertices.
    """
    matrix = np.asarray(matrix)
    n = matrix.shape[0]
    q = max(1, int(np.ceil(np.log2(n)))) if n > 1 else 1
    dim = 1 << q
    if dim == n:
        return matrix.copy(), q
    padded = np.zeros((dim, dim), dtype=matrix.dtype)
    padded[:n, :n] = matrix
    return padded, q
