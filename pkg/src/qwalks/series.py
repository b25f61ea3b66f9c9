"""Time series container and its CSV/JSON serializations."""

import io
import json
from dataclasses import dataclass, field

import numpy as np


def vertex_labels(n):
    """Column names ``v1 .. vn`` (1-based, as plotted)."""
    return [f"v{k}" for k in range(1, n + 1)]


def format_float(x):
    # 9 significant digits; "+ 0.0" folds negative zero into "0".
    return f"{float(x) + 0.0:.9g}"


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """Rows of per-vertex values sampled at ``times``.

    ``values`` has shape ``(len(times), len(labels))``. ``meta`` carries
    optional scalar summaries (e.g. a search peak) that travel with the
    JSON form.
    """

    times: np.ndarray
    values: np.ndarray
    labels: list
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        times = np.asarray(self.times, dtype=np.float64)
        values = np.asarray(self.values)
        if values.ndim != 2 or values.shape != (times.shape[0], len(self.labels)):
            raise ValueError(
                f"values shape {values.shape} does not match "
                f"{times.shape[0]} times x {len(self.labels)} labels")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "labels", list(self.labels))

    def __len__(self):
        return self.times.shape[0]

    def column(self, label):
        return self.values[:, self.labels.index(label)]

    def to_csv(self):
        buf = io.StringIO(newline="")
        buf.write(",".join(["t", *self.labels]) + "\n")
        for t, row in zip(self.times, self.values):
            buf.write(",".join([format_float(t), *map(format_float, row)]) + "\n")
        return buf.getvalue()

    def to_dict(self):
        return {
            "columns": ["t", *self.labels],
            "rows": [[float(t), *map(float, row)] for t, row in zip(self.times, self.values)],
            **({"summary": self.meta} if self.meta else {}),
        }

    def to_json(self, manifest=None):
        payload = self.to_dict()
        if manifest is not None:
            payload = {"manifest": manifest, **payload}
        return json.dumps(payload, indent=2, sort_keys=False) + "\n"


def complex_series(times, values, n):
    """Split a complex ``(times, n)`` grid into ``re_vK``/``im_vK`` column pairs."""
    values = np.asarray(values)
    labels = []
    cols = []
    for k, name in enumerate(vertex_labels(n)):
        labels += [f"re_{name}", f"im_{name}"]
        cols += [values[:, k].real, values[:, k].imag]
    return TimeSeries(times, np.column_stack(cols) if cols else np.empty((len(times), 0)), labels)
