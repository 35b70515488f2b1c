"""End-to-end evaluation pipeline: fuzzify, infer, defuzzify."""

from __future__ import annotations

from typing import Mapping

from .defuzz import centroid_subareas
from .engine import DefinitionError, DiscretizedFuzzySet, infer
from .flcfile import ControllerDefinition
from .membership import FuzzifiedInput, fuzzify


def fuzzify_inputs(
    defn: ControllerDefinition, values: Mapping[str, float]
) -> dict[str, FuzzifiedInput]:
    """Fuzzify one crisp measurement per input, per the definition's settings."""
    halfwidth = (
        defn.settings.halfwidth
        if defn.settings.fuzzification == "triangular"
        else None
    )
    fuzzed = {}
    for var in defn.inputs:
        if var.name not in values:
            raise DefinitionError(f"no value supplied for input {var.name!r}")
        fuzzed[var.name] = fuzzify(values[var.name], var.universe, halfwidth)
    return fuzzed


def evaluate_sets(
    defn: ControllerDefinition,
    values: Mapping[str, float],
    resolution: int | None = None,
) -> dict[str, DiscretizedFuzzySet]:
    """Aggregated output set per output variable, before defuzzification."""
    n = defn.settings.resolution if resolution is None else resolution
    kind = defn.settings.tnorm
    return infer(defn.rule_base, fuzzify_inputs(defn, values), n, i1=kind, i2=kind)


def evaluate(
    defn: ControllerDefinition,
    values: Mapping[str, float],
    resolution: int | None = None,
) -> dict[str, float]:
    """Crisp output per output variable.

    Raises EmptyOutputError if no rule fired for some output; fallback policy
    belongs to the caller.
    """
    return {
        name: centroid_subareas(fset)
        for name, fset in evaluate_sets(defn, values, resolution).items()
    }
