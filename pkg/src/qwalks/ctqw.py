"""Continuous-time quantum walks with the adjacency matrix as Hamiltonian.

Random numbers
--------------
Shot sampling uses NumPy's PCG64 bit generator. The draw for time step ``k``
of a run with seed ``s`` comes from ``SeedSequence(s, spawn_key=(k,))``, so
every step has its own stream and a row never depends on how many rows were
computed before it.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .exceptions import ValidationError
from .series import TimeSeries, vertex_labels
from .validation import check_index, check_probability, time_grid

NORMALIZATION_TOL = 1e-9
GOLDEN_TOL = 1e-6
_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class WalkConfig:
    """Sampling settings. Defaults: 10 time units, 200 samples, 1000 shots."""

    start: int = 0
    t_max: float = 10.0
    steps: int = 200
    shots: int = 1000
    seed: int = 0

    def __post_init__(self):
        if self.steps < 1:
            raise ValidationError(f"steps must be >= 1, got {self.steps}")
        if not self.t_max > 0:
            raise ValidationError(f"t_max must be positive, got {self.t_max}")
        if self.shots < 0:
            raise ValidationError(f"shots must be >= 0, got {self.shots}")

    @property
    def times(self):
        return time_grid(self.t_max, self.steps)


def walk_amplitudes(H, start, times, spectrum=None):
    """Amplitudes ``<j| exp(-i H t) |start>``, shape ``(len(times), n)``."""
    spectrum = spectrum if spectrum is not None else linalg.hermitian_eig(H)
    start = check_index(start, spectrum.dim, "start")
    return linalg.evolve(spectrum, linalg.basis_state(spectrum.dim, start), times)


def walk_probabilities(H, start, times, spectrum=None):
    return linalg.probabilities(walk_amplitudes(H, start, times, spectrum))


def step_seed(seed, step):
    """Independent seed sequence for time step ``step`` of a run."""
    return np.random.SeedSequence(seed, spawn_key=(int(step),))


def sample_counts(p, shots, seed, *, return_counts=False):
    """Simulate ``shots`` measurements of distribution ``p``.

    Returns the observed frequencies ``counts / shots`` (or the raw integer
    counts with ``return_counts=True``). ``seed`` may be an int or a
    ``numpy.random.SeedSequence``.

    Raises
    ------
    ValidationError
        If ``p`` has negative entries or does not sum to 1 within 1e-9.
    """
    p = np.asarray(p, dtype=np.float64)
    if shots < 1:
        raise ValidationError(f"shots must be >= 1, got {shots}")
    if np.any(p < -NORMALIZATION_TOL) or abs(p.sum() - 1.0) > NORMALIZATION_TOL:
        raise ValidationError(f"p is not a probability vector (sum = {p.sum():.12g})")
    p = np.clip(p, 0.0, None)
    p = p / p.sum()
    rng = np.random.Generator(np.random.PCG64(seed))
    counts = rng.multinomial(int(shots), p)
    if return_counts:
        return counts
    return counts / shots


def sample_series(probs, shots, seed):
    """Replace each row of ``probs`` by sampled frequencies (per-step seeds)."""
    return np.array([sample_counts(row, shots, step_seed(seed, k))
                     for k, row in enumerate(probs)])


def quantum_walk_series(g, cfg=None):
    """Walk probabilities on ``cfg.times``.

    With ``cfg.shots == 0`` the rows are exact ``|psi_j(t)|^2``; otherwise
    each row holds frequencies from ``cfg.shots`` simulated measurements.
    """
    cfg = cfg or WalkConfig()
    check_index(cfg.start, g.n, "start")
    times = cfg.times
    probs = walk_probabilities(g.adj.astype(np.float64), cfg.start, times)
    if cfg.shots:
        probs = sample_series(probs, cfg.shots, cfg.seed)
    return TimeSeries(times, probs, vertex_labels(g.n))


def golden_section_max(f, a, b, tol=GOLDEN_TOL):
    """Maximise a unimodal ``f`` on ``[a, b]`` to an interval of width ``tol``."""
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


@dataclass(frozen=True)
class TransferEvent:
    vertex: int
    time: float
    peak: float


def detect_state_transfer(g, start, t_max=10.0, threshold=0.999, steps=200):
    """Find vertices that receive (nearly) all the probability.

    The exact walk is scanned on ``4 * steps`` uniform points in
    ``[0, t_max]``. Every local maximum of a non-start vertex is refined by
    golden-section search to a time resolution of 1e-6. A vertex is reported
    once, at its earliest refined maximum reaching ``threshold``.

    Returns
    -------
    list of TransferEvent
        Sorted by vertex index; empty when no vertex qualifies.
    """
    threshold = check_probability(threshold, "threshold", allow_zero=False)
    start = check_index(start, g.n, "start")
    spectrum = linalg.hermitian_eig(g.adj.astype(np.float64))
    grid = time_grid(t_max, 4 * steps)
    probs = walk_probabilities(None, start, grid, spectrum)

    def prob_at(vertex):
        return lambda t: float(walk_probabilities(None, start, [t], spectrum)[0, vertex])

    # |P''| <= 4 ||H||^2, so a grid value more than 2 ||H||^2 h^2 below the
    # threshold cannot belong to a qualifying peak.
    h = grid[1] - grid[0] if len(grid) > 1 else 0.0
    norm = float(np.max(np.abs(spectrum.eigenvalues)))
    margin = 2.0 * norm ** 2 * h ** 2
    events = []
    for v in range(g.n):
        if v == start:
            continue
        col = probs[:, v]
        for k in local_maxima(col):
            if col[k] < threshold - margin:
                continue
            lo, hi = grid[max(k - 1, 0)], grid[min(k + 1, len(grid) - 1)]
            t_peak, p_peak = golden_section_max(prob_at(v), lo, hi)
            if col[k] > p_peak:
                t_peak, p_peak = float(grid[k]), float(col[k])
            if p_peak >= threshold:
                events.append(TransferEvent(v, float(t_peak), float(p_peak)))
                break
    return events


def local_maxima(col):
    """Indices of positive grid points not exceeded by their neighbours."""
    n = len(col)
    if n == 1:
        return [0]
    idx = []
    for k in range(n):
        left = col[k - 1] if k > 0 else -np.inf
        right = col[k + 1] if k < n - 1 else -np.inf
        if col[k] >= left and col[k] >= right and col[k] > 0:
            idx.append(k)
    return idx

