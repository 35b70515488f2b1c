"""flckit: a Mamdani fuzzy-logic-controller engine.

Fuzzification, t-norm rule algebra, sup-min compositional inference with
max aggregation, and sub-area centroid defuzzification, plus a text format
for controller definitions and a built-in washing-machine controller.
"""

from .algebra import Degree, TNormKind, snorm_max, tnorm, tnorm_fold
from .controller import evaluate, evaluate_sets, fuzzify_inputs
from .defuzz import EmptyOutputError, centroid_discrete, centroid_subareas
from .engine import (
    DEFAULT_RESOLUTION,
    DefinitionError,
    DiscretizedFuzzySet,
    LinguisticVariable,
    Rule,
    RuleBase,
    compatibility,
    firing_degree,
    infer,
)
from .flcfile import (
    ERROR,
    WARNING,
    ControllerDefinition,
    Diagnostic,
    Settings,
    parse,
    serialize,
    validate,
)
from .membership import (
    FuzzifiedInput,
    InvalidMeasurementError,
    MembershipFunction,
    Singleton,
    Trapezoidal,
    Triangular,
    TriangularNumber,
    Universe,
    fuzzify,
)
from .washer import WashPlan, WashRequest, builtin_definition, recommend

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_RESOLUTION",
    "ERROR",
    "WARNING",
    "ControllerDefinition",
    "Degree",
    "DefinitionError",
    "Diagnostic",
    "DiscretizedFuzzySet",
    "EmptyOutputError",
    "FuzzifiedInput",
    "InvalidMeasurementError",
    "LinguisticVariable",
    "MembershipFunction",
    "Rule",
    "RuleBase",
    "Settings",
    "Singleton",
    "TNormKind",
    "Trapezoidal",
    "Triangular",
    "TriangularNumber",
    "Universe",
    "WashPlan",
    "WashRequest",
    "builtin_definition",
    "centroid_discrete",
    "centroid_subareas",
    "compatibility",
    "evaluate",
    "evaluate_sets",
    "firing_degree",
    "fuzzify",
    "fuzzify_inputs",
    "infer",
    "parse",
    "recommend",
    "serialize",
    "snorm_max",
    "tnorm",
    "tnorm_fold",
    "validate",
]
