import itertools
import math

import numpy as np
import pytest

from flckit import (
    DiscretizedFuzzySet,
    InvalidMeasurementError,
    Universe,
    WashPlan,
    WashRequest,
    builtin_definition,
    recommend,
    serialize,
    validate,
)
from flckit import washer as washer_mod

import oracles

SPANS = {"wash_time": 60.0, "water_volume": 60.0, "detergent": 200.0}


class TestBuiltinDefinition:
    def test_validates_clean(self, washer_def):
        assert validate(washer_def) == []

    def test_rule_grid_shape(self, washer_def):
        assert len(washer_def.rules) == 27
        input_names = {v.name for v in washer_def.inputs}
        combos = set()
        for rule in washer_def.rules:
            assert set(rule.antecedent) == input_names
            assert set(rule.consequent) == {v.name for v in washer_def.outputs}
            combos.add(tuple(sorted(rule.antecedent.items())))
        assert len(combos) == 27

    def test_serialized_form_matches_fixture(self, washer_def, washer_fixture_bytes):
        assert serialize(washer_def).encode() == washer_fixture_bytes

    def test_matches_oracle_tables(self, washer_def):
        for name, ((lo, hi), terms) in {
            **oracles.WASHER_INPUTS,
            **oracles.WASHER_OUTPUTS,
        }.items():
            var = next(
                v for v in washer_def.inputs + washer_def.outputs if v.name == name
            )
            assert (var.universe.lo, var.universe.hi) == (lo, hi)
            got = [(mf.a, mf.b, mf.c) for mf in var.terms.values()]
            assert got == [tuple(map(float, t)) for t in terms]


class TestRecommend:
    def test_midpoint_symmetry_point(self):
        plan = recommend(WashRequest(50.0, 5.0, 4.0))
        assert plan.wash_time == pytest.approx(30.0, rel=1e-6)
        assert plan.water_volume == pytest.approx(30.0, rel=1e-6)
        assert plan.detergent == pytest.approx(100.0, rel=1e-6)
        assert not plan.degraded

    def test_minimum_corner_against_independent_pipeline(self):
        # oracle values frozen from the straight-line pipeline at N=2001:
        # wash_time 9.99, water_volume 9.99, detergent 33.3
        want = oracles.washer_pipeline(0.0, 0.0, 0.0)
        assert want["wash_time"] == pytest.approx(9.99, abs=1e-9)
        assert want["detergent"] == pytest.approx(33.3, abs=1e-9)
        plan = recommend(WashRequest(0.0, 0.0, 0.0))
        got = {
            "wash_time": plan.wash_time,
            "water_volume": plan.water_volume,
            "detergent": plan.detergent,
        }
        for name, span in SPANS.items():
            assert abs(got[name] - want[name]) <= 0.001 * span

    def test_dirty_heavy_corner_dominates(self):
        low = recommend(WashRequest(0.0, 0.0, 0.0))
        high = recommend(WashRequest(100.0, 10.0, 8.0))
        assert high.wash_time > low.wash_time
        assert high.water_volume > low.water_volume
        assert high.detergent > low.detergent

    @pytest.mark.parametrize("field", ["dirt_degree", "fabric_thickness", "load_volume"])
    def test_monotone_single_input_sweeps(self, field, washer_def):
        var = next(v for v in washer_def.inputs if v.name == field)
        mid = {"dirt_degree": 50.0, "fabric_thickness": 5.0, "load_volume": 4.0}
        prev = None
        for x in np.linspace(var.universe.lo, var.universe.hi, 101):
            args = dict(mid)
            args[field] = float(x)
            plan = recommend(WashRequest(**args))
            if prev is not None:
                assert plan.wash_time >= prev.wash_time
                assert plan.water_volume >= prev.water_volume
                assert plan.detergent >= prev.detergent
            prev = plan

    def test_reflection_symmetry(self):
        rng = np.random.default_rng(31)
        for _ in range(40):
            d = float(rng.uniform(0, 100))
            f = float(rng.uniform(0, 10))
            v = float(rng.uniform(0, 8))
            a = recommend(WashRequest(d, f, v))
            b = recommend(WashRequest(100 - d, 10 - f, 8 - v))
            assert a.wash_time + b.wash_time == pytest.approx(60.0, rel=1e-6)
            assert a.water_volume + b.water_volume == pytest.approx(60.0, rel=1e-6)
            assert a.detergent + b.detergent == pytest.approx(200.0, rel=1e-6)

    def test_range_safety_random_requests(self):
        # includes out-of-range values, which clamp instead of failing
        rng = np.random.default_rng(77)
        for _ in range(10_000):
            plan = recommend(
                WashRequest(
                    float(rng.uniform(-50, 150)),
                    float(rng.uniform(-5, 15)),
                    float(rng.uniform(-4, 12)),
                )
            )
            assert 0.0 <= plan.wash_time <= 60.0
            assert 0.0 <= plan.water_volume <= 60.0
            assert 0.0 <= plan.detergent <= 200.0

    def test_determinism(self):
        a = recommend(WashRequest(37.3, 6.1, 2.9))
        b = recommend(WashRequest(37.3, 6.1, 2.9))
        assert (a.wash_time, a.water_volume, a.detergent) == (
            b.wash_time,
            b.water_volume,
            b.detergent,
        )

    def test_rejects_non_finite(self):
        with pytest.raises(InvalidMeasurementError):
            recommend(WashRequest(math.nan, 5.0, 4.0))
        with pytest.raises(InvalidMeasurementError):
            recommend(WashRequest(50.0, math.inf, 4.0))

    def test_degraded_fallback_uses_midpoints(self, monkeypatch):
        def holed_sets(defn, values, resolution=None):
            u = Universe(0.0, 60.0)
            xs = u.grid(5)
            return {
                "wash_time": DiscretizedFuzzySet(u, xs, np.zeros(5), name="wash_time"),
                "water_volume": DiscretizedFuzzySet(
                    u, xs, np.array([0, 1, 1, 0, 0.0]), name="water_volume"
                ),
                "detergent": DiscretizedFuzzySet(
                    Universe(0.0, 200.0),
                    Universe(0.0, 200.0).grid(5),
                    np.zeros(5),
                    name="detergent",
                ),
            }

        monkeypatch.setattr(washer_mod, "evaluate_sets", holed_sets)
        plan = recommend(WashRequest(50.0, 5.0, 4.0))
        assert plan.degraded
        assert plan.wash_time == 30.0  # universe midpoint fallback
        assert plan.detergent == 100.0
        assert 0.0 < plan.water_volume < 60.0  # the live output still defuzzifies


def test_agreement_with_independent_pipeline_random():
    rng = np.random.default_rng(41)
    for _ in range(25):
        d = float(rng.uniform(0, 100))
        f = float(rng.uniform(0, 10))
        v = float(rng.uniform(0, 8))
        plan = recommend(WashRequest(d, f, v))
        want = oracles.washer_pipeline(d, f, v)
        assert abs(plan.wash_time - want["wash_time"]) <= 0.001 * 60
        assert abs(plan.water_volume - want["water_volume"]) <= 0.001 * 60
        assert abs(plan.detergent - want["detergent"]) <= 0.001 * 200


def test_wash_plan_defaults():
    plan = WashPlan(10.0, 20.0, 30.0)
    assert not plan.degraded
