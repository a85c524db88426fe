"""Composite Simpson quadrature on uniform segments."""

from __future__ import annotations

import numpy as np


def simpson(values: np.ndarray, h: float) -> complex:
    """Composite Simpson; a 3/8 block absorbs an odd interval count."""
    n = len(values) - 1
    if n == 0:
        return 0j
    if n == 1:
        return complex(0.5 * h * (values[0] + values[1]))
    acc = 0j
    if n % 2 == 1:
        if n < 3:
            return complex(0.5 * h * (values[0] + values[1]))
        acc += (3.0 * h / 8.0) * (
            values[-4] + 3.0 * values[-3] + 3.0 * values[-2] + values[-1]
        )
        values = values[: n - 2]
        n -= 3
        if n == 0:
            return complex(acc)
    w = np.ones(n + 1)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return complex(acc + (h / 3.0) * np.dot(w, values[: n + 1]))
