"""Independent reimplementations used as cross-checking oracles.

Nothing here imports the production inference or defuzzification code:
membership evaluation, the sup-min composition over the full product grid,
the Riemann centroid, and the whole washer pipeline are restated from
scratch so engine results are checked against a second path rather than
against themselves.
"""

from __future__ import annotations

import numpy as np


def tri_at(x: float, a: float, b: float, c: float) -> float:
    """Triangular membership at a point; peak 1 at b, 0 outside [a, c]."""
    if x == b:
        return 1.0
    if x <= a or x >= c:
        return 0.0
    if x < b:
        return (x - a) / (b - a)
    return (c - x) / (c - b)


def tri_curve(xs: np.ndarray, a: float, b: float, c: float) -> np.ndarray:
    """tri_at over an array, loop-free."""
    xs = np.asarray(xs, dtype=float)
    rising = (xs - a) / (b - a) if a < b else np.zeros(xs.shape)
    falling = (c - xs) / (c - b) if b < c else np.zeros(xs.shape)
    out = np.where(xs < b, rising, falling)
    out[xs == b] = 1.0
    return np.where((xs < a) | (xs > c), 0.0, out)


def sup_min_product_grid(var_curves: list[list[np.ndarray]]) -> float:
    """max over the full product grid of the pointwise min of all curves.

    var_curves holds, per variable, the curves already evaluated on that
    variable's own grid (e.g. fuzzified input and antecedent membership);
    the min is taken jointly across every curve of every variable at each
    point of the product grid, with no factoring.
    """
    ndim = len(var_curves)
    joint = None
    for axis, curves in enumerate(var_curves):
        shape = [1] * ndim
        shape[axis] = -1
        for curve in curves:
            arr = np.asarray(curve, dtype=float).reshape(shape)
            joint = arr if joint is None else np.minimum(joint, arr)
    return float(np.max(joint))


def riemann_centroid(xs: np.ndarray, mus: np.ndarray) -> float:
    """Membership-weighted mean of the sample points."""
    return float(np.sum(np.asarray(xs) * np.asarray(mus)) / np.sum(mus))


# --- straight-line washer pipeline ----------------------------------------
# The tables restate the built-in controller configuration as literal data.

WASHER_INPUTS = {
    "dirt_degree": ((0.0, 100.0), [(0, 0, 50), (0, 50, 100), (50, 100, 100)]),
    "fabric_thickness": ((0.0, 10.0), [(0, 0, 5), (0, 5, 10), (5, 10, 10)]),
    "load_volume": ((0.0, 8.0), [(0, 0, 4), (0, 4, 8), (4, 8, 8)]),
}

WASHER_OUTPUTS = {
    "wash_time": ((0.0, 60.0), [(0, 0, 30), (0, 30, 60), (30, 60, 60)]),
    "water_volume": ((0.0, 60.0), [(0, 0, 30), (0, 30, 60), (30, 60, 60)]),
    "detergent": ((0.0, 200.0), [(0, 0, 100), (0, 100, 200), (100, 200, 200)]),
}

# (dirt band, fabric band, load band) -> output band, all 27 combinations
WASHER_RULE_TABLE = [
    ((0, 0, 0), 0), ((0, 0, 1), 0), ((0, 0, 2), 0),
    ((0, 1, 0), 0), ((0, 1, 1), 0), ((0, 1, 2), 1),
    ((0, 2, 0), 0), ((0, 2, 1), 1), ((0, 2, 2), 2),
    ((1, 0, 0), 0), ((1, 0, 1), 0), ((1, 0, 2), 1),
    ((1, 1, 0), 0), ((1, 1, 1), 1), ((1, 1, 2), 2),
    ((1, 2, 0), 1), ((1, 2, 1), 2), ((1, 2, 2), 2),
    ((2, 0, 0), 0), ((2, 0, 1), 1), ((2, 0, 2), 2),
    ((2, 1, 0), 1), ((2, 1, 1), 2), ((2, 1, 2), 2),
    ((2, 2, 0), 2), ((2, 2, 1), 2), ((2, 2, 2), 2),
]


def washer_pipeline(
    dirt: float, fabric: float, load: float, samples: int = 2001
) -> dict[str, float]:
    """min firing, min clipping, max aggregation, Riemann centroid."""
    measured = {}
    for name, value in (
        ("dirt_degree", dirt),
        ("fabric_thickness", fabric),
        ("load_volume", load),
    ):
        (lo, hi), _ = WASHER_INPUTS[name]
        measured[name] = min(max(float(value), lo), hi)
    grades = {
        name: [tri_at(measured[name], *t) for t in terms]
        for name, ((_, _), terms) in WASHER_INPUTS.items()
    }
    fires = [
        min(
            grades["dirt_degree"][i],
            grades["fabric_thickness"][j],
            grades["load_volume"][k],
        )
        for (i, j, k), _ in WASHER_RULE_TABLE
    ]
    result = {}
    for name, ((lo, hi), terms) in WASHER_OUTPUTS.items():
        ws = np.linspace(lo, hi, samples)
        agg = np.zeros(samples)
        for fire, ((_, _, _), band) in zip(fires, WASHER_RULE_TABLE):
            if fire > 0.0:
                agg = np.maximum(agg, np.minimum(fire, tri_curve(ws, *terms[band])))
        result[name] = riemann_centroid(ws, agg)
    return result
