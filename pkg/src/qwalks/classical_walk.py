"""Path-counting classical walk.

The state after ``t`` steps is ``A^t e_start``: entry ``j`` is the number of
length-``t`` walks from the start vertex to ``j``. Probabilities divide by
the total walk count. This is deliberately not the degree-normalised Markov
chain.
"""

from dataclasses import dataclass

import numpy as np

from .exceptions import DegenerateWalkError, ValidationError
from .series import TimeSeries, vertex_labels
from .validation import check_index


@dataclass(frozen=True)
class CountVector:
    """Exact walk counts (Python ints, so no overflow) after ``step`` steps."""

    counts: tuple
    step: int = 0

    @classmethod
    def start(cls, n, vertex):
        vertex = check_index(vertex, n, "start")
        return cls(tuple(int(k == vertex) for k in range(n)), 0)

    @property
    def total(self):
        return sum(self.counts)


def classical_step(g, c):
    if len(c.counts) != g.n:
        raise ValidationError(
            f"count vector has length {len(c.counts)}, graph has {g.n} vertices")
    neighbours = [g.neighbors(i) for i in range(g.n)]
    counts = tuple(sum(c.counts[j] for j in nbrs) for nbrs in neighbours)
    return CountVector(counts, c.step + 1)


def classical_counts(g, start, t):
    c = CountVector.start(g.n, start)
    for _ in range(t):
        c = classical_step(g, c)
    return c


def classical_probabilities(c):
    """``counts / sum(counts)`` as floats.

    Raises
    ------
    DegenerateWalkError
        When every count is zero, which happens exactly when the walk started
        on an isolated vertex and has taken at least one step.
    """
    total = c.total
    if total == 0:
        raise DegenerateWalkError(
            f"no walks of length {c.step} leave the start vertex (isolated vertex)")
    # int / int is correctly rounded in Python even for huge counts.
    return np.array([k / total for k in c.counts], dtype=np.float64)


def classical_walk_series(g, start, t_max):
    """Probabilities for ``t = 0 .. t_max`` as a :class:`TimeSeries`."""
    if t_max < 0:
        raise ValidationError(f"t_max must be >= 0, got {t_max}")
    c = CountVector.start(g.n, start)
    rows = [classical_probabilities(c)]
    for _ in range(int(t_max)):
        c = classical_step(g, c)
        rows.append(classical_probabilities(c))
    return TimeSeries(np.arange(int(t_max) + 1, dtype=np.float64), np.array(rows),
                      vertex_labels(g.n))
