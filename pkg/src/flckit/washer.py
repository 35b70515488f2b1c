"""Built-in washing-machine controller.

Three measurements in (degree of dirt, fabric thickness, load volume),
three cycle parameters out (wash time, water volume, detergent amount).
The universes and the rule table are design configuration, chosen to be
physically plausible for a domestic machine, not measured truth: each
variable carries three terms, and the 27-rule grid picks the consequent
band from the antecedent index sum, so every output responds monotonically
to every input and the controller is symmetric about the midpoint request.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

from .controller import evaluate_sets
from .defuzz import EmptyOutputError, centroid_subareas
from .engine import LinguisticVariable, Rule, RuleBase
from .flcfile import ControllerDefinition, Settings
from .membership import InvalidMeasurementError, MembershipFunction, Triangular, Universe

_INPUTS = (
    ("dirt_degree", 0.0, 100.0, ("low", "medium", "high")),  # percent
    ("fabric_thickness", 0.0, 10.0, ("thin", "medium", "thick")),  # mm
    ("load_volume", 0.0, 8.0, ("small", "medium", "large")),  # kg
)
_OUTPUTS = (
    ("wash_time", 0.0, 60.0, ("short", "medium", "long")),  # minutes
    ("water_volume", 0.0, 60.0, ("low", "medium", "high")),  # liters
    ("detergent", 0.0, 200.0, ("light", "medium", "heavy")),  # grams
)


@dataclass(frozen=True)
class WashRequest:
    dirt_degree: float  # 0-100 percent
    fabric_thickness: float  # 0-10 mm
    load_volume: float  # 0-8 kg


@dataclass(frozen=True)
class WashPlan:
    wash_time: float  # minutes
    water_volume: float  # liters
    detergent: float  # grams
    degraded: bool = False  # True when a fallback value was substituted


def _three_terms(
    lo: float, hi: float, names: tuple[str, str, str]
) -> dict[str, MembershipFunction]:
    # left shoulder, centre, right shoulder; peaks at lo, mid, hi
    mid = 0.5 * (lo + hi)
    return {
        names[0]: Triangular(lo, lo, mid),
        names[1]: Triangular(lo, mid, hi),
        names[2]: Triangular(mid, hi, hi),
    }


def _consequent_band(i: int, j: int, k: int) -> int:
    """Output term index for antecedent term indices (0=low .. 2=high).

    The index sum splits 27 combinations into three bands; the mapping is
    non-decreasing in every antecedent index and maps mirrored antecedents
    to mirrored consequents.
    """
    s = i + j + k
    if s < 3:
        return 0
    if s == 3:
        return 1
    return 2


@lru_cache(maxsize=1)
def builtin_definition() -> ControllerDefinition:
    """The washer controller; identical to the packaged `washer.flc` fixture."""
    inputs = [
        LinguisticVariable(name, Universe(lo, hi), _three_terms(lo, hi, names))
        for name, lo, hi, names in _INPUTS
    ]
    outputs = [
        LinguisticVariable(name, Universe(lo, hi), _three_terms(lo, hi, names))
        for name, lo, hi, names in _OUTPUTS
    ]
    rules = []
    for i, j, k in itertools.product(range(3), repeat=3):
        band = _consequent_band(i, j, k)
        antecedent = {
            var[0]: var[3][idx] for var, idx in zip(_INPUTS, (i, j, k))
        }
        consequent = {var[0]: var[3][band] for var in _OUTPUTS}
        rules.append(Rule(antecedent, consequent))
    return ControllerDefinition(
        "washer", RuleBase(inputs, outputs, rules), Settings()
    )


def recommend(req: WashRequest) -> WashPlan:
    """Crisp wash plan for a request; out-of-range measurements clamp.

    If some output ends up with no firing rule (impossible for the built-in
    rule grid, which covers every antecedent combination) the universe
    midpoint is substituted and the plan is flagged degraded: a washer must
    always produce some cycle.
    """
    values = {
        "dirt_degree": req.dirt_degree,
        "fabric_thickness": req.fabric_thickness,
        "load_volume": req.load_volume,
    }
    for name, value in values.items():
        if not math.isfinite(value):
            raise InvalidMeasurementError(f"{name} must be finite, got {value!r}")
    defn = builtin_definition()
    sets = evaluate_sets(defn, values)
    crisp = {}
    degraded = False
    for name, fset in sets.items():
        try:
            crisp[name] = centroid_subareas(fset)
        except EmptyOutputError:
            crisp[name] = fset.universe.midpoint
            degraded = True
    return WashPlan(
        wash_time=crisp["wash_time"],
        water_volume=crisp["water_volume"],
        detergent=crisp["detergent"],
        degraded=degraded,
    )
