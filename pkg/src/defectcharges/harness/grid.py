"""Spatial grids with defect locations pinned to nodes."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Sequence, Tuple

import numpy as np

from ..errors import ConfigError


@dataclass(frozen=True)
class Grid:
    xs: np.ndarray
    h: float
    defect_indices: Tuple[int, ...]

    @property
    def segments(self) -> Tuple[Tuple[int, int], ...]:
        """(start, stop) node index pairs for the N+1 bulk segments."""
        cuts = [0, *self.defect_indices, len(self.xs) - 1]
        return tuple((cuts[i], cuts[i + 1]) for i in range(len(cuts) - 1))


def build_grid(x_min: float, x_max: float, h: float, defect_xs: Sequence[float]) -> Grid:
    """Uniform grid; every defect location must coincide with a node."""
    n = round((x_max - x_min) / h)
    if abs(x_min + n * h - x_max) > 1e-9:
        raise ConfigError("(x_max - x_min) must be an integer multiple of h")
    xs = x_min + h * np.arange(n + 1)
    idx = []
    for x0 in defect_xs:
        k = round((x0 - x_min) / h)
        if k <= 0 or k >= n or abs(x_min + k * h - x0) > 1e-9:
            raise ConfigError(f"defect location {x0} is not an interior grid node")
        idx.append(k)
    return Grid(xs=xs, h=h, defect_indices=tuple(idx))


def finite_difference_bindings(
    base: str, samples: np.ndarray, h: float, orders: int
) -> Dict[Tuple[str, int], np.ndarray]:
    """Central-difference derivative bindings from grid samples (O(h^2)).

    Fallback for fields without analytic derivatives; one-sided second-order
    stencils at the edges.
    """
    out: Dict[Tuple[str, int], np.ndarray] = {(base, 0): samples}
    cur = samples
    for k in range(1, orders + 1):
        d = np.empty_like(cur)
        d[1:-1] = (cur[2:] - cur[:-2]) / (2 * h)
        d[0] = (-3 * cur[0] + 4 * cur[1] - cur[2]) / (2 * h)
        d[-1] = (3 * cur[-1] - 4 * cur[-2] + cur[-3]) / (2 * h)
        out[(base, k)] = d
        cur = d
    return out
