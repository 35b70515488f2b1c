"""Centroid defuzzification of aggregated output sets.

Two independent routes to the crisp output: the production method splits
the curve into trapezoidal sub-areas between adjacent samples and takes the
area-weighted mean of their exact centroids; the discrete method is a plain
membership-weighted mean of the sample points, kept as a cross-check. Both
converge to the same limit as the resolution grows.
"""

from __future__ import annotations

import numpy as np

from .engine import DiscretizedFuzzySet


class EmptyOutputError(RuntimeError):
    """No rule contributed membership to an output; nothing to defuzzify."""

    def __init__(self, variable: str = ""):
        self.variable = variable
        label = f" {variable!r}" if variable else ""
        super().__init__(f"output{label} has all-zero membership")


def centroid_subareas(fset: DiscretizedFuzzySet) -> float:
    """Crisp output as sum(area_i * center_i) / sum(area_i) over grid trapezoids.

    Each pair of adjacent samples bounds a trapezoid with parallel vertical
    sides; its area and x-centroid have closed forms, so the result is exact
    for piecewise-linear curves whose breakpoints fall on the grid.
    Degenerate zero-height cells are skipped.
    """
    w1, w2 = fset.xs[:-1], fset.xs[1:]
    m1, m2 = fset.mus[:-1], fset.mus[1:]
    heights = m1 + m2
    areas = 0.5 * heights * (w2 - w1)
    total = float(np.sum(areas))
    if total <= 0.0:
        raise EmptyOutputError(fset.name)
    keep = heights > 0.0
    centers = (
        w1[keep] * (2.0 * m1[keep] + m2[keep]) + w2[keep] * (m1[keep] + 2.0 * m2[keep])
    ) / (3.0 * heights[keep])
    return float(np.sum(areas[keep] * centers) / total)


def centroid_discrete(fset: DiscretizedFuzzySet) -> float:
    """Membership-weighted mean of the sample points (Riemann-style oracle)."""
    total = float(np.sum(fset.mus))
    if total <= 0.0:
        raise EmptyOutputError(fset.name)
    return float(np.sum(fset.xs * fset.mus) / total)
