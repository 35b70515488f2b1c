"""Rule representation and compositional inference for MIMO rule bases.

A rule base maps conjunctive antecedents over the input variables to fuzzy
consequent terms on one or more output variables. Inference clips each
rule's consequent at the rule's firing degree and aggregates the clipped
curves per output with pointwise max; rules are disjunctive.

All types are immutable after construction and every operation is a pure
function, so a shared rule base can be evaluated concurrently without
synchronization.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .algebra import TNormKind, tnorm, tnorm_fold
from .membership import FuzzifiedInput, MembershipFunction, Singleton, Universe

DEFAULT_RESOLUTION = 201


class DefinitionError(ValueError):
    """A rule base references names that do not exist or is structurally unsound."""


@dataclass(frozen=True)
class LinguisticVariable:
    """A named quantity over a universe whose values are named fuzzy terms."""

    name: str
    universe: Universe
    terms: dict[str, MembershipFunction]
    line: int = field(default=0, compare=False)  # source line when parsed

    def __post_init__(self) -> None:
        if not self.terms:
            raise DefinitionError(f"variable {self.name!r} has no terms")
        for tname, mf in self.terms.items():
            lo, hi = mf.support
            if hi < self.universe.lo or lo > self.universe.hi:
                raise DefinitionError(
                    f"term {tname!r} of {self.name!r} lies outside "
                    f"[{self.universe.lo}, {self.universe.hi}]"
                )

    def term(self, name: str) -> MembershipFunction:
        try:
            return self.terms[name]
        except KeyError:
            raise DefinitionError(
                f"unknown term {name!r} on variable {self.name!r}"
            ) from None


@dataclass(frozen=True)
class Rule:
    """One if-then rule: conjunctive antecedent terms, consequent terms."""

    antecedent: dict[str, str]  # input variable name -> term name
    consequent: dict[str, str]  # output variable name -> term name
    line: int = field(default=0, compare=False)  # source line when parsed

    def __post_init__(self) -> None:
        if not self.antecedent:
            raise DefinitionError("rule has an empty antecedent")
        if not self.consequent:
            raise DefinitionError("rule has an empty consequent")


@dataclass(frozen=True)
class RuleBase:
    """Input and output variables plus the rules relating them."""

    inputs: list[LinguisticVariable]
    outputs: list[LinguisticVariable]
    rules: list[Rule]

    def __post_init__(self) -> None:
        if not self.inputs:
            raise DefinitionError("rule base has no input variables")
        if not self.outputs:
            raise DefinitionError("rule base has no output variables")
        if not self.rules:
            raise DefinitionError("rule base has no rules")
        names = [v.name for v in self.inputs] + [v.name for v in self.outputs]
        if len(set(names)) != len(names):
            raise DefinitionError("variable names must be unique")
        input_names = {v.name for v in self.inputs}
        by_name = {v.name: v for v in self.inputs + self.outputs}
        for idx, rule in enumerate(self.rules):
            if set(rule.antecedent) != input_names:
                raise DefinitionError(
                    f"rule {idx + 1} must mention every input variable exactly once"
                )
            for vname, tname in rule.antecedent.items():
                by_name[vname].term(tname)
            for vname, tname in rule.consequent.items():
                if vname not in by_name or vname in input_names:
                    raise DefinitionError(
                        f"rule {idx + 1}: unknown output variable {vname!r}"
                    )
                by_name[vname].term(tname)

    def input_var(self, name: str) -> LinguisticVariable:
        for v in self.inputs:
            if v.name == name:
                return v
        raise DefinitionError(f"unknown input variable {name!r}")

    def output_var(self, name: str) -> LinguisticVariable:
        for v in self.outputs:
            if v.name == name:
                return v
        raise DefinitionError(f"unknown output variable {name!r}")


@dataclass(frozen=True, eq=False)
class DiscretizedFuzzySet:
    """Membership curve sampled at uniform points across an output universe."""

    universe: Universe
    xs: np.ndarray
    mus: np.ndarray
    name: str = ""

    def __post_init__(self) -> None:
        xs = np.array(self.xs, dtype=float)
        mus = np.array(self.mus, dtype=float)
        if xs.ndim != 1 or xs.shape != mus.shape or len(xs) < 2:
            raise ValueError("samples must be two matching 1-d arrays, length >= 2")
        if not np.all(np.diff(xs) > 0):
            raise ValueError("sample positions must be strictly increasing")
        if xs[0] != self.universe.lo or xs[-1] != self.universe.hi:
            raise ValueError("samples must span the universe exactly")
        xs.flags.writeable = False
        mus.flags.writeable = False
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "mus", mus)


def compatibility(
    rb: RuleBase,
    rule: Rule,
    point: Mapping[str, float],
    output_var: str,
    w: float,
    i1: TNormKind = "min",
    i2: TNormKind = "min",
) -> float:
    """Degree to which a rule relates crisp antecedent values to output value w.

    The inner t-norm folds the antecedent memberships at the given point, the
    outer t-norm combines that with the consequent membership at w. With both
    set to min this is the classic min-min compatibility.
    """
    grades = []
    for var in rb.inputs:
        if var.name not in point:
            raise DefinitionError(f"no value supplied for variable {var.name!r}")
        grades.append(var.term(rule.antecedent[var.name])(point[var.name]))
    out = rb.output_var(output_var)
    tname = rule.consequent.get(output_var)
    if tname is None:
        raise DefinitionError(
            f"rule does not mention output variable {output_var!r}"
        )
    return tnorm(i1, tnorm_fold(i2, grades), out.term(tname)(w))


def firing_degree(
    rb: RuleBase,
    rule: Rule,
    inputs: Mapping[str, FuzzifiedInput],
    resolution: int = DEFAULT_RESOLUTION,
    i2: TNormKind = "min",
) -> float:
    """Strength with which the fuzzified inputs match the rule's antecedent.

    A singleton input collapses the sup analytically to the term membership
    at the measurement; a fuzzy-number input takes the sup of
    min(input membership, term membership) over the variable's grid. The
    per-variable results are folded with i2.
    """
    grades = []
    for var in rb.inputs:
        term = var.term(rule.antecedent[var.name])
        if var.name not in inputs:
            raise DefinitionError(f"no fuzzified input for variable {var.name!r}")
        fin = inputs[var.name]
        if isinstance(fin, Singleton):
            grades.append(term(fin.x0))
        else:
            xs = var.universe.grid(resolution)
            grades.append(float(np.max(np.minimum(fin.sample(xs), term.sample(xs)))))
    return tnorm_fold(i2, grades)


def _activate(kind: TNormKind, fire: float, curve: np.ndarray) -> np.ndarray:
    # min truncates the consequent at the firing degree, product scales it
    if kind == "min":
        return np.minimum(fire, curve)
    if kind == "product":
        return fire * curve
    raise ValueError(f"unknown t-norm {kind!r}")


def infer(
    rb: RuleBase,
    inputs: Mapping[str, FuzzifiedInput],
    resolution: int = DEFAULT_RESOLUTION,
    i1: TNormKind = "min",
    i2: TNormKind = "min",
) -> dict[str, DiscretizedFuzzySet]:
    """Combined control action per output variable.

    Each output is computed independently: every rule mentioning it
    contributes its consequent term clipped (i1) at the rule's firing
    degree, and the clipped curves are aggregated pointwise with max.
    Firing degrees are computed once per rule and shared by all outputs.
    """
    if resolution < 2:
        raise ValueError(f"resolution must be >= 2, got {resolution}")
    fires = [firing_degree(rb, rule, inputs, resolution, i2) for rule in rb.rules]
    result: dict[str, DiscretizedFuzzySet] = {}
    for var in rb.outputs:
        xs = var.universe.grid(resolution)
        agg = np.zeros(resolution)
        curves: dict[str, np.ndarray] = {}
        for rule, fire in zip(rb.rules, fires):
            tname = rule.consequent.get(var.name)
            if tname is None or fire == 0.0:
                continue
            if tname not in curves:
                curves[tname] = var.term(tname).sample(xs)
            np.maximum(agg, _activate(i1, fire, curves[tname]), out=agg)
        result[var.name] = DiscretizedFuzzySet(var.universe, xs, agg, name=var.name)
    return result
