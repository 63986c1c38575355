"""Local fractional Taylor models and piecewise-scaling approximation."""

import json
import math

import numpy as np
import pytest

from lofrac.catalog import eval_1d, holder_cusp, polynomial, sine, weierstrass_1d
from lofrac.fraccalc import gamma_value
from lofrac.lfd import Side, WindowSchedule
from lofrac.taylor import (
    LocalModel,
    build_local_model,
    evaluate_model,
    evaluate_piecewise,
    frac_residual,
    piecewise_scaling_approx,
    piecewise_to_json,
    remainder_profile,
)

CUSP_SCHED = WindowSchedule(delta0=1e-4, ratio=0.5, count=8, samples_per_window=256)
WEIER_SCHED = WindowSchedule(delta0=0.2, ratio=0.5, count=10, samples_per_window=256)


class TestBuildLocalModel:
    def test_cusp_half(self):
        m = build_local_model(holder_cusp(1, 2, 3, 0.5), 0.0, sched=CUSP_SCHED)
        assert m.N == 0
        assert m.derivs == (1.0,)
        assert m.alpha == pytest.approx(0.5, abs=0.05)
        assert m.lfd_value == pytest.approx(3 * math.gamma(1.5), abs=5e-2)

    def test_cusp_three_halves(self):
        m = build_local_model(holder_cusp(1, 2, 3, 1.5), 0.0, sched=CUSP_SCHED)
        assert m.N == 1
        assert m.derivs == (1.0, 2.0)
        assert m.alpha == pytest.approx(1.5, abs=0.05)
        assert m.lfd_value == pytest.approx(3 * math.gamma(2.5), abs=1e-1)

    def test_smooth_sine(self):
        m = build_local_model(sine(), 0.0, sched=CUSP_SCHED)
        assert math.isinf(m.alpha)
        assert m.N == 3
        assert m.lfd_value is None
        assert m.derivs[0] == 0.0
        assert m.derivs[1] == pytest.approx(1.0)

    def test_alpha_respects_taylor_window(self):
        m = build_local_model(holder_cusp(1, 2, 3, 1.5), 0.0, sched=CUSP_SCHED)
        assert m.N < m.alpha <= m.N + 1


class TestEvaluateModel:
    def test_tangent_line(self):
        # alpha = 1, N = 0 is the tangent: f(y) + value * (x - y)
        m = LocalModel(
            y=0.3, N=0, derivs=(math.sin(0.3),), alpha=1.0,
            lfd_value=math.cos(0.3), side=Side.Right,
        )
        for dx in (0.0, 0.01, 0.1):
            want = math.sin(0.3) + math.cos(0.3) * dx
            assert evaluate_model(m, 0.3 + dx) == pytest.approx(want, abs=1e-8)

    def test_base_point_exact(self):
        m = LocalModel(
            y=0.5, N=0, derivs=(2.25,), alpha=0.5, lfd_value=1.0, side=Side.Right
        )
        assert evaluate_model(m, 0.5) == 2.25

    def test_cusp_model_reproduces_function(self):
        m = build_local_model(holder_cusp(1, 2, 3, 1.5), 0.0, sched=CUSP_SCHED)
        got = evaluate_model(m, 0.01)
        want = 1 + 2 * 0.01 + 3 * 0.01 ** 1.5
        assert got == pytest.approx(want, abs=5e-3)

    def test_side_violation(self):
        m = LocalModel(
            y=0.0, N=0, derivs=(0.0,), alpha=0.5, lfd_value=1.0, side=Side.Right
        )
        with pytest.raises(ValueError, match="side|left"):
            evaluate_model(m, -0.1)

    def test_left_model_uses_magnitude(self):
        m = LocalModel(
            y=0.0, N=0, derivs=(1.0,), alpha=0.5, lfd_value=2.0, side=Side.Left
        )
        want = 1.0 + 2.0 / gamma_value(1.5) * 0.04 ** 0.5
        assert evaluate_model(m, -0.04) == pytest.approx(want, rel=1e-12)

    def test_exact_power_law_generator(self):
        # a model built with exact parameters reproduces a + c|x|^alpha
        c, alpha = 3.0, 0.5
        m = LocalModel(
            y=0.0, N=0, derivs=(1.0,), alpha=alpha,
            lfd_value=c * gamma_value(alpha + 1.0), side=Side.Right,
        )
        t = np.linspace(0, 0.5, 64)
        np.testing.assert_allclose(evaluate_model(m, t), 1.0 + c * t ** alpha, rtol=1e-14)


class TestFracResidual:
    def test_cusp_delta_independent(self):
        spec = holder_cusp(0, 0, 1, 0.5)
        vals = [frac_residual(spec, 0.0, 0.5, 0, d, 256) for d in (0.1, 0.01, 0.001)]
        for v in vals:
            assert v == pytest.approx(math.gamma(1.5), abs=5e-3)

    def test_smooth_sine_vanishes(self):
        # local behaviour ~ t, so values scale like delta**(1-q) -> 0
        deltas = (0.1, 0.05, 0.025, 0.0125, 1e-3, 1e-4)
        vals = [abs(frac_residual(sine(), 0.0, 0.5, 0, d, 256)) for d in deltas]
        assert all(b < a for a, b in zip(vals, vals[1:]))
        assert vals[-1] < 0.02

    def test_zero_function(self):
        assert frac_residual(polynomial([0.0]), 0.0, 0.5, 0, 0.1, 256) == 0.0

    def test_consistency_with_lfd_value(self):
        # F at q = alpha converges to the Finite LFD value across the schedule
        from lofrac.lfd import lfd_at

        spec = holder_cusp(0, 0, 2, 1.5)
        est = lfd_at(spec, 0.0, 1.5, sched=CUSP_SCHED)
        f_vals = [
            frac_residual(spec, 0.0, 1.5, 1, d, 256)
            for d in CUSP_SCHED.windows()
        ]
        assert f_vals[-1] == pytest.approx(est.value, rel=0.02)

    def test_order_must_match_degree(self):
        with pytest.raises(ValueError, match="N"):
            frac_residual(sine(), 0.0, 0.5, 1, 0.1, 256)


class TestRemainderProfile:
    def test_exact_model_flagged_exact(self):
        c, alpha = 3.0, 0.5
        m = LocalModel(
            y=0.0, N=0, derivs=(1.0,), alpha=alpha,
            lfd_value=c * gamma_value(alpha + 1.0), side=Side.Right,
        )
        rep = remainder_profile(holder_cusp(1, 0, c, alpha), m, np.linspace(0.001, 0.05, 9))
        assert rep.exact
        assert rep.decay_slope is None

    def test_estimated_model_on_own_generator(self):
        # a pure power law is the model's own generator: the only residual
        # is estimator error in alpha and the coefficient
        spec = holder_cusp(1, 0, 3, 0.5)
        m = build_local_model(spec, 0.0, sched=CUSP_SCHED)
        rep = remainder_profile(spec, m, [0.01])
        rel = abs(rep.residuals[0]) / abs(eval_1d(spec, 0.01))
        assert rel <= 1e-2

    def test_sine_linear_model_quadratic_remainder(self):
        # degree-1 model of sine at a generic point: remainder ~ t^2
        y = 0.4
        m = LocalModel(
            y=y, N=1, derivs=(math.sin(y), math.cos(y)), alpha=math.inf,
            lfd_value=None, side=Side.Right,
        )
        rep = remainder_profile(sine(), m, np.geomspace(1e-3, 0.1, 12))
        assert rep.decay_slope == pytest.approx(2.0, abs=0.1)

    def test_weierstrass_residual_decay(self):
        spec = weierstrass_1d(2, 1.5)
        m = build_local_model(spec, 0.0, sched=WEIER_SCHED)
        offsets = np.geomspace(1e-3, 0.05, 12)
        rep = remainder_profile(spec, m, offsets)
        # brute-force best-fit exponent of the residual sequence itself
        brute = np.polyfit(np.log(offsets), np.log(np.abs(rep.residuals)), 1)[0]
        assert rep.decay_slope == pytest.approx(brute, rel=1e-12)
        assert rep.decay_slope >= m.alpha - 0.1

    def test_rejects_bad_offsets(self):
        m = LocalModel(
            y=0.0, N=0, derivs=(0.0,), alpha=0.5, lfd_value=1.0, side=Side.Right
        )
        with pytest.raises(ValueError):
            remainder_profile(sine(), m, [-0.1, 0.1])


class TestPiecewiseScaling:
    def test_single_knot_symmetric_interval(self):
        spec = holder_cusp(1, 0, 3, 0.5)
        pm = piecewise_scaling_approx(spec, (-0.5, 0.5), 1, sched=CUSP_SCHED)
        assert pm.knots == (0.0,)
        right = pm.right_pieces[0]
        direct = build_local_model(spec, 0.0, sched=CUSP_SCHED, side=Side.Right)
        assert right.alpha == direct.alpha
        assert right.derivs == direct.derivs
        # the piece's coefficient is cell-calibrated but agrees on the
        # model's own generator
        assert right.lfd_value == pytest.approx(direct.lfd_value, rel=0.02)
        # the two-sided pair reproduces the cusp on both half-cells
        xs = np.linspace(-0.4, 0.4, 101)
        np.testing.assert_allclose(
            evaluate_piecewise(pm, xs), eval_1d(spec, xs), rtol=0.02, atol=1e-3
        )

    def test_smooth_sine_equals_piecewise_taylor(self):
        spec = sine()
        pm = piecewise_scaling_approx(spec, (0.0, 1.0), 4, sched=CUSP_SCHED)
        xs = np.linspace(0.0, 1.0, 200)
        got = evaluate_piecewise(pm, xs)
        # same-degree piecewise Taylor polynomials at the same knots
        knots = np.asarray(pm.knots)
        want = np.empty_like(xs)
        for i, x in enumerate(xs):
            y = knots[np.argmin(np.abs(knots - x))]
            dx = x - y
            want[i] = (
                math.sin(y) + math.cos(y) * dx - math.sin(y) / 2 * dx ** 2
                - math.cos(y) / 6 * dx ** 3
            )
        np.testing.assert_allclose(got, want, atol=1e-12)

    def test_weierstrass_beats_piecewise_constant(self):
        spec = weierstrass_1d(2, 1.5)
        pm = piecewise_scaling_approx(spec, (0.0, 1.0), 16, sched=WEIER_SCHED)
        xs = np.linspace(0.0, 1.0, 1000)
        fv = eval_1d(spec, xs)
        mv = evaluate_piecewise(pm, xs)
        knots = np.asarray(pm.knots)
        nearest = knots[np.argmin(np.abs(xs[:, None] - knots[None, :]), axis=1)]
        cv = eval_1d(spec, nearest)
        assert np.max(np.abs(fv - mv)) < np.max(np.abs(fv - cv))

    def test_monotone_refinement(self):
        spec = weierstrass_1d(2, 1.5)
        xs = np.linspace(0.0, 1.0, 500)
        fv = eval_1d(spec, xs)
        errs = []
        for K in (8, 16):
            pm = piecewise_scaling_approx(spec, (0.0, 1.0), K, sched=WEIER_SCHED)
            errs.append(float(np.max(np.abs(fv - evaluate_piecewise(pm, xs)))))
        assert errs[1] <= errs[0] * 1.05  # doubling K never costs more than 5%

    def test_validation(self):
        with pytest.raises(ValueError):
            piecewise_scaling_approx(sine(), (1.0, 0.0), 4)
        with pytest.raises(ValueError):
            piecewise_scaling_approx(sine(), (0.0, 1.0), 0)

    def test_workers_agree(self):
        spec = weierstrass_1d(2, 1.5)
        pm1 = piecewise_scaling_approx(spec, (0.0, 0.5), 4, sched=WEIER_SCHED, workers=1)
        pm4 = piecewise_scaling_approx(spec, (0.0, 0.5), 4, sched=WEIER_SCHED, workers=4)
        assert piecewise_to_json(pm1) == piecewise_to_json(pm4)


class TestPiecewiseSerialization:
    def test_json_schema(self):
        pm = piecewise_scaling_approx(sine(), (0.0, 1.0), 2, sched=CUSP_SCHED)
        doc = piecewise_to_json(pm)
        text = json.dumps(doc)
        again = json.loads(text)
        assert again["interval"] == [0.0, 1.0]
        assert len(again["knots"]) == 2
        assert len(again["pieces"]) == 4  # left and right per knot
        for piece in again["pieces"]:
            assert set(piece) == {"y", "N", "derivs", "alpha", "lfd_value", "side", "degraded"}
            assert piece["alpha"] == "inf"
