"""Degree algebra on the unit interval: t-norms for AND, max for OR.

Both t-norms satisfy the usual axioms (boundary with 1, monotonicity,
commutativity, associativity); min is the engine default, product is kept
as a second instance so the axioms are exercised against more than one
operator.
"""

from __future__ import annotations

from typing import Iterable, Literal

Degree = float

TNormKind = Literal["min", "product"]

TNORM_KINDS: tuple[str, ...] = ("min", "product")


def _check_degree(value: float, label: str) -> float:
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"{label} must lie in [0, 1], got {value!r}")
    return value


def tnorm(kind: TNormKind, a: Degree, b: Degree) -> Degree:
    """Fuzzy intersection of two membership grades."""
    _check_degree(a, "degree")
    _check_degree(b, "degree")
    if kind == "min":
        return a if a <= b else b
    if kind == "product":
        return a * b
    raise ValueError(f"unknown t-norm {kind!r}")


def tnorm_fold(kind: TNormKind, values: Iterable[Degree]) -> Degree:
    """n-ary t-norm by left fold; 1 (the identity) on an empty sequence."""
    acc = 1.0
    for v in values:
        acc = tnorm(kind, acc, v)
    return acc


def snorm_max(a: Degree, b: Degree) -> Degree:
    """Fuzzy union of two membership grades (disjunctive rule combination)."""
    _check_degree(a, "degree")
    _check_degree(b, "degree")
    return a if a >= b else b
