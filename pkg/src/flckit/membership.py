"""Membership-function primitives and fuzzification of crisp measurements.

Membership functions are total over the reals: evaluation anywhere yields a
grade in [0, 1], exactly 0 outside the support. Zero-width ramps (two equal
breakpoints) are vertical edges and evaluate to 1 on the peak side, which is
what shoulder terms sitting on a universe bound need.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np


class InvalidMeasurementError(ValueError):
    """Raised when a crisp measurement is NaN or infinite."""


@dataclass(frozen=True)
class Universe:
    """Closed real interval [lo, hi] that a linguistic variable ranges over."""

    lo: float
    hi: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ValueError("universe bounds must be finite")
        if not self.lo < self.hi:
            raise ValueError(f"universe requires lo < hi, got [{self.lo}, {self.hi}]")

    @property
    def span(self) -> float:
        return self.hi - self.lo

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def clamp(self, x: float) -> float:
        return min(max(x, self.lo), self.hi)

    def grid(self, n: int) -> np.ndarray:
        """n uniformly spaced samples from lo to hi inclusive."""
        if n < 2:
            raise ValueError(f"grid needs at least 2 samples, got {n}")
        return np.linspace(self.lo, self.hi, n)


@dataclass(frozen=True)
class Triangular:
    """Triangular membership function with breakpoints a <= b <= c.

    Rises on [a, b), peaks at 1 at b, falls on (b, c]. Exactly 0 outside
    [a, c] except at a degenerate vertical edge (a == b or b == c), where
    the peak itself still evaluates to 1.
    """

    a: float
    b: float
    c: float

    def __post_init__(self) -> None:
        if not (self.a <= self.b <= self.c):
            raise ValueError(
                f"breakpoints not nondecreasing: {self.a} {self.b} {self.c}"
            )
        if not self.a < self.c:
            raise ValueError("triangular support must have positive width")

    @property
    def support(self) -> tuple[float, float]:
        return (self.a, self.c)

    @property
    def peak(self) -> float:
        return self.b

    def __call__(self, x: float) -> float:
        if x == self.b:
            return 1.0
        if x <= self.a or x >= self.c:
            return 0.0
        if x < self.b:
            return (x - self.a) / (self.b - self.a)
        return (self.c - x) / (self.c - self.b)

    def sample(self, xs: np.ndarray) -> np.ndarray:
        """Vectorized evaluation over an array of positions."""
        xs = np.asarray(xs, dtype=float)
        out = np.zeros(xs.shape)
        if self.a < self.b:
            m = (xs >= self.a) & (xs < self.b)
            out[m] = (xs[m] - self.a) / (self.b - self.a)
        if self.b < self.c:
            m = (xs > self.b) & (xs <= self.c)
            out[m] = (self.c - xs[m]) / (self.c - self.b)
        out[xs == self.b] = 1.0
        return out


@dataclass(frozen=True)
class Trapezoidal:
    """Trapezoidal membership function with breakpoints a <= b <= c <= d.

    Rises on [a, b), holds 1 on the plateau [b, c], falls on (c, d].
    """

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self) -> None:
        if not (self.a <= self.b <= self.c <= self.d):
            raise ValueError(
                f"breakpoints not nondecreasing: {self.a} {self.b} {self.c} {self.d}"
            )
        if not self.a < self.d:
            raise ValueError("trapezoidal support must have positive width")

    @property
    def support(self) -> tuple[float, float]:
        return (self.a, self.d)

    @property
    def peak(self) -> float:
        return 0.5 * (self.b + self.c)

    def __call__(self, x: float) -> float:
        if self.b <= x <= self.c:
            return 1.0
        if x <= self.a or x >= self.d:
            return 0.0
        if x < self.b:
            return (x - self.a) / (self.b - self.a)
        return (self.d - x) / (self.d - self.c)

    def sample(self, xs: np.ndarray) -> np.ndarray:
        """Vectorized evaluation over an array of positions."""
        xs = np.asarray(xs, dtype=float)
        out = np.zeros(xs.shape)
        if self.a < self.b:
            m = (xs >= self.a) & (xs < self.b)
            out[m] = (xs[m] - self.a) / (self.b - self.a)
        if self.c < self.d:
            m = (xs > self.c) & (xs <= self.d)
            out[m] = (self.d - xs[m]) / (self.d - self.c)
        out[(xs >= self.b) & (xs <= self.c)] = 1.0
        return out


MembershipFunction = Union[Triangular, Trapezoidal]


@dataclass(frozen=True)
class Singleton:
    """Measurement taken with no uncertainty: membership 1 at x0, 0 elsewhere."""

    x0: float

    def __call__(self, x: float) -> float:
        return 1.0 if x == self.x0 else 0.0

    def sample(self, xs: np.ndarray) -> np.ndarray:
        xs = np.asarray(xs, dtype=float)
        return (xs == self.x0).astype(float)


@dataclass(frozen=True)
class TriangularNumber:
    """Symmetric triangular fuzzy number modelling measurement uncertainty.

    Membership peaks at 1 at x0 and falls linearly to 0 at x0 +- halfwidth.
    """

    x0: float
    halfwidth: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.halfwidth) and self.halfwidth > 0):
            raise ValueError(f"halfwidth must be positive, got {self.halfwidth}")

    def _mf(self) -> Triangular:
        return Triangular(self.x0 - self.halfwidth, self.x0, self.x0 + self.halfwidth)

    def __call__(self, x: float) -> float:
        return self._mf()(x)

    def sample(self, xs: np.ndarray) -> np.ndarray:
        return self._mf().sample(xs)


FuzzifiedInput = Union[Singleton, TriangularNumber]


def fuzzify(
    x0: float, universe: Universe, halfwidth: float | None = None
) -> FuzzifiedInput:
    """Turn a crisp measurement into a fuzzy input over the given universe.

    With no halfwidth the result is a Singleton; with a positive halfwidth it
    is a TriangularNumber centred on the measurement. Out-of-range
    measurements clamp to the nearest universe bound so a slightly
    miscalibrated sensor still yields a control action.
    """
    if not math.isfinite(x0):
        raise InvalidMeasurementError(f"measurement must be finite, got {x0!r}")
    x0 = universe.clamp(float(x0))
    if halfwidth is None:
        return Singleton(x0)
    return TriangularNumber(x0, float(halfwidth))
