"""Doubling membership test: verdicts, query costs, and error bounds."""

import math

import numpy as np
import pytest

from epiwalk.adaptive import (AdaptiveConfig, MembershipDecision, Verdict,
                              decide, default_confidence, error_bound)
from epiwalk.oracle import NoiseModel, NoisyOracle, get_function


class ScriptedOracle:
    """Returns a fixed estimate regardless of m; counts queries."""

    def __init__(self, value):
        self.value = value
        self.spent = 0

    def mean_query(self, x, m, phase):
        self.spent += m
        return self.value


class QueryOnlyOracle:
    """Exposes only query(); exercises the duck-typed fallback."""

    def query(self, x, m, phase):
        return 0.0


def make_cfg(confidence=3.0, sigma=1.0, band=0.2):
    return AdaptiveConfig.create(sigma=sigma, give_up_band=band,
                                 confidence=confidence)


class TestDefaultConfidence:
    def test_frozen_values(self):
        assert default_confidence(10, 2) == pytest.approx(
            3.7169221888498383, rel=1e-12)
        assert default_confidence(100, 4) == pytest.approx(
            6.7861404244151124, rel=1e-12)

    def test_small_n_floors_at_two(self):
        assert default_confidence(1, 2) == default_confidence(2, 2)
        assert default_confidence(0, 0) == pytest.approx(
            math.sqrt(2.0 * math.log(2.0)))

    def test_monotone_in_both_arguments(self):
        assert default_confidence(10, 2) < default_confidence(100, 2)
        assert default_confidence(10, 2) < default_confidence(10, 3)

    def test_negative_ell_rejected(self):
        with pytest.raises(ValueError):
            default_confidence(10, -1)


class TestAdaptiveConfig:
    @pytest.mark.parametrize("confidence,sigma,band,expected", [
        (3.0, 1.0, 0.2, 1024),   # 4*9/0.04 = 900 -> next power of two
        (1.0, 1.0, 1.0, 4),      # exactly 4 stays 4
        (1.0, 1.0, 2.0, 1),      # ratio 1 -> single round
        (2.0, 0.0, 0.1, 1),      # noiseless: one exact round
    ])
    def test_max_m_formula(self, confidence, sigma, band, expected):
        cfg = AdaptiveConfig.create(sigma=sigma, give_up_band=band,
                                    confidence=confidence)
        assert cfg.max_m == expected

    def test_inconsistent_max_m_rejected(self):
        with pytest.raises(ValueError, match="max_m"):
            AdaptiveConfig(confidence=3.0, sigma=1.0, give_up_band=0.2,
                           max_m=512)

    def test_create_derives_confidence_from_n(self):
        cfg = AdaptiveConfig.create(sigma=1.0, give_up_band=0.1, n=10,
                                    error_exponent=2)
        assert cfg.confidence == pytest.approx(3.7169221888498383)

    def test_create_needs_confidence_or_n(self):
        with pytest.raises(ValueError):
            AdaptiveConfig.create(sigma=1.0, give_up_band=0.1)

    @pytest.mark.parametrize("kwargs", [
        {"confidence": -1.0}, {"sigma": -0.5}, {"give_up_band": 0.0},
    ])
    def test_invalid_parameters_rejected(self, kwargs):
        base = dict(confidence=3.0, sigma=1.0, give_up_band=0.2)
        base.update(kwargs)
        with pytest.raises(ValueError):
            AdaptiveConfig.create(**base)


class TestDecide:
    def test_clear_inside_resolves_in_one_round(self):
        oracle = ScriptedOracle(0.0)
        out = decide(np.array([0.0, 10.0]), make_cfg(), oracle)
        assert out.verdict is Verdict.INSIDE
        assert out.final_m == 1 and out.queries_spent == 1

    def test_clear_outside_resolves_in_one_round(self):
        oracle = ScriptedOracle(0.0)
        out = decide(np.array([0.0, -10.0]), make_cfg(), oracle)
        assert out.verdict is Verdict.OUTSIDE
        assert out.queries_spent == 1

    def test_moderate_gap_doubles_until_width_fits(self):
        # Gap 0.5 with width 3/sqrt(m) needs m >= 36, so the first
        # resolving round is m = 64.
        oracle = ScriptedOracle(0.0)
        out = decide(np.array([0.0, 0.5]), make_cfg(), oracle)
        assert out.verdict is Verdict.INSIDE
        assert out.final_m == 64
        assert out.queries_spent == 2 * 64 - 1 == oracle.spent

    def test_gap_inside_band_gives_up_by_sign(self):
        oracle = ScriptedOracle(0.0)
        out = decide(np.array([0.0, 0.05]), make_cfg(), oracle)
        assert out.verdict is Verdict.GAVE_UP_INSIDE
        assert out.verdict.inside and out.verdict.gave_up
        assert out.final_m == 1024 and out.queries_spent == 2047

    def test_give_up_below_reports_outside(self):
        oracle = ScriptedOracle(0.0)
        out = decide(np.array([0.0, -0.05]), make_cfg(), oracle)
        assert out.verdict is Verdict.GAVE_UP_OUTSIDE
        assert not out.verdict.inside and out.verdict.gave_up

    def test_cost_identity_holds_for_every_decision(self):
        # Total queries of a doubling run are 1 + 2 + ... + final_m.
        cfg = make_cfg()
        rng = np.random.default_rng(0)

        class NoisyFlat:
            def mean_query(self, x, m, phase):
                return rng.normal(0.0, 1.0 / math.sqrt(m))

        for y in np.linspace(-0.5, 0.5, 41):
            out = decide(np.array([0.0, y]), cfg, NoisyFlat())
            assert out.queries_spent == 2 * out.final_m - 1

    def test_noiseless_single_exact_round(self):
        fn = get_function("quadratic", 1)
        oracle = NoisyOracle(fn, NoiseModel("none", 0.0), seed=0)
        cfg = AdaptiveConfig.create(sigma=0.0, give_up_band=0.1,
                                    confidence=3.0)
        above = decide(np.array([0.3, 0.10]), cfg, oracle)
        below = decide(np.array([0.3, 0.08]), cfg, oracle)
        assert above.verdict is Verdict.INSIDE
        assert below.verdict is Verdict.OUTSIDE
        assert above.queries_spent == below.queries_spent == 1

    def test_noiseless_tie_counts_as_inside(self):
        # On the graph exactly, y == f(x): kept, not rejected.
        fn = get_function("quadratic", 1)
        oracle = NoisyOracle(fn, NoiseModel("none", 0.0), seed=0)
        cfg = AdaptiveConfig.create(sigma=0.0, give_up_band=0.1,
                                    confidence=3.0)
        out = decide(np.array([0.3, 0.09]), cfg, oracle)
        assert out.verdict is Verdict.INSIDE

    def test_query_only_oracle_accepted(self):
        out = decide(np.array([0.0, 10.0]), make_cfg(), QueryOnlyOracle())
        assert out.verdict is Verdict.INSIDE

    def test_phase_is_forwarded(self):
        seen = []

        class Recorder:
            def mean_query(self, x, m, phase):
                seen.append(phase)
                return 0.0

        decide(np.array([0.0, 10.0]), make_cfg(), Recorder(),
               phase="warmstart")
        assert seen == ["warmstart"]


class TestErrorBound:
    def test_frozen_value(self):
        cfg = make_cfg(confidence=3.0, sigma=1.0, band=0.2)
        assert error_bound(0.2, cfg) == pytest.approx(0.1201303, abs=1e-6)

    def test_clamped_to_unit_interval(self):
        cfg = make_cfg(confidence=1.0, sigma=1.0, band=0.2)
        assert error_bound(1e-6, cfg) == 1.0
        assert 0.0 <= error_bound(2.0, cfg) <= 1.0

    def test_zero_gap_promises_nothing(self):
        assert error_bound(0.0, make_cfg()) == 1.0

    def test_noiseless_is_error_free(self):
        cfg = make_cfg(sigma=0.0, band=0.2)
        assert error_bound(0.3, cfg) == 0.0

    def test_monotone_decreasing_in_gap(self):
        cfg = make_cfg(confidence=4.0, sigma=1.0, band=0.05)
        gaps = [0.05, 0.1, 0.2, 0.4, 0.8]
        bounds = [error_bound(g, cfg) for g in gaps]
        assert all(a >= b for a, b in zip(bounds, bounds[1:]))

    def test_negative_gap_rejected(self):
        with pytest.raises(ValueError):
            error_bound(-0.1, make_cfg())

    def test_empirical_error_within_bound(self):
        # Monte-Carlo calibration on a flat function: a point with true
        # vertical gap +0.3 must be misclassified no more often than the
        # analytic bound says.
        fn = get_function("quadratic", 1)
        cfg = AdaptiveConfig.create(sigma=1.0, give_up_band=0.3,
                                    confidence=2.5)
        bound = error_bound(0.3, cfg)
        trials, wrong, cost = 2000, 0, 0
        oracle = NoisyOracle(fn, NoiseModel("gaussian", 1.0), seed=21)
        point = np.array([0.0, 0.3])
        for t in range(trials):
            out = decide(point, cfg, oracle.channel((t,)))
            wrong += not out.verdict.inside
            cost += out.queries_spent
        assert wrong / trials <= bound
        assert cost / trials <= 2 * cfg.max_m - 1
