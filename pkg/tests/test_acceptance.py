"""Acceptance criteria, one test per criterion, each printing PASS/FAIL.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines.  Every tolerance is fixed here; nothing is calibrated at run time.
"""

import json
import math
import time

import numpy as np
import pytest

from lofrac.catalog import (
    eval_1d,
    holder_cusp,
    weierstrass_1d,
    weierstrass_prod_2d,
    weierstrass_sum_2d,
)
from lofrac.cli import main as cli_main
from lofrac.directional import DirectionProbe, directional_critical_order, partial_lfd
from lofrac.fraccalc import (
    SampledPath,
    power_law_rl_derivative,
    rl_frac_derivative,
    scaling_defect,
)
from lofrac.lfd import (
    Classification,
    Side,
    WindowSchedule,
    critical_order,
    holder_exponent_oracle,
    lfd_at,
)
from lofrac.taylor import LocalModel, evaluate_model, evaluate_piecewise, piecewise_scaling_approx

# Schedules used by the acceptance runs.  Small windows keep a cusp's linear
# term from contaminating the scaling fit; the Weierstrass ladder shrinks by
# 1/lambda per window so successive windows sample the lacunary structure at
# the same phase.
CUSP_SCHED = WindowSchedule(delta0=1e-3, ratio=0.5, count=8, samples_per_window=256)


def weier_sched(lam: float) -> WindowSchedule:
    return WindowSchedule(delta0=0.2, ratio=1.0 / lam, count=10, samples_per_window=256)


WEIER_CASES = ((2.0, 1.25), (2.0, 1.5), (4.0, 1.75))
WEIER_POINTS = (0.1, 0.3, 0.5, 0.7, 0.9)

_cusp_alphas: dict[float, float] = {}
_weier_alphas: dict[tuple[float, float, float], float] = {}


def report(num: int, ok: bool, detail: str) -> None:
    print(f"{'PASS' if ok else 'FAIL'} criterion {num}: {detail}")
    assert ok, f"criterion {num}: {detail}"


class TestCriterion1ClosedFormOracle:
    def test_l1_matches_power_law(self):
        start = time.time()
        worst = 0.0
        M = 10000
        t = np.arange(M + 1) * 1e-4
        for p in (0.3, 0.5, 1.0, 1.7, 2.5):
            path = SampledPath(1e-4, t ** p)
            for q in (0.25, 0.5, 0.75):
                got = rl_frac_derivative(path, q, M)
                want = power_law_rl_derivative(p, q, 1.0)
                worst = max(worst, abs(got - want) / abs(want))
        elapsed = time.time() - start
        report(
            1,
            worst <= 1e-2 and elapsed < 10,
            f"max relative error {worst:.2e} (<= 1e-2) in {elapsed:.1f}s (< 10s)",
        )


class TestCriterion2ScalingProperty:
    def test_dilation_identity(self):
        start = time.time()
        spec = holder_cusp(0, 0, 1, 0.7)
        worst = 0.0
        for beta in (0.5, 2.0, 4.0):
            for q in (0.25, 0.5, 0.75):
                worst = max(worst, scaling_defect(spec, beta, q, 1.0, 1e-4).defect)
        elapsed = time.time() - start
        report(
            2,
            worst <= 5e-3 and elapsed < 10,
            f"max defect {worst:.2e} (<= 5e-3) in {elapsed:.1f}s (< 10s)",
        )


class TestCriterion3CuspCriticalOrders:
    def test_cusp_family(self):
        start = time.time()
        worst = 0.0
        for gamma in (0.3, 0.5, 0.7, 1.5, 2.5):
            est = critical_order(holder_cusp(1, 2, 3, gamma), 0.0, sched=CUSP_SCHED)
            _cusp_alphas[gamma] = est.alpha
            worst = max(worst, abs(est.alpha - gamma))
        elapsed = time.time() - start
        report(
            3,
            worst <= 0.05 and elapsed < 60,
            f"max |alpha - gamma| = {worst:.3f} (<= 0.05) in {elapsed:.1f}s (< 60s)",
        )


class TestCriterion4WeierstrassCriticalOrder:
    def test_alpha_and_classifications(self):
        start = time.time()
        worst = 0.0
        bad_classes = []
        for lam, s in WEIER_CASES:
            alpha_true = 2.0 - s
            spec = weierstrass_1d(lam, s)
            sched = weier_sched(lam)
            for y in WEIER_POINTS:
                est = critical_order(spec, y, sched=sched)
                _weier_alphas[(lam, s, y)] = est.alpha
                worst = max(worst, abs(est.alpha - alpha_true))
                low = lfd_at(spec, y, alpha_true - 0.15, sched=sched)
                if low.classification not in (Classification.Zero, Classification.Finite):
                    bad_classes.append((lam, s, y, "low", low.classification))
                high = lfd_at(spec, y, alpha_true + 0.15, sched=sched)
                if high.classification is not Classification.Divergent:
                    bad_classes.append((lam, s, y, "high", high.classification))
        elapsed = time.time() - start
        report(
            4,
            worst <= 0.1 and not bad_classes and elapsed < 300,
            f"max |alpha - (2-s)| = {worst:.3f} (<= 0.1), "
            f"misclassifications {bad_classes or 'none'} in {elapsed:.1f}s (< 5min)",
        )


class TestCriterion5Example1:
    def test_directional_orders_on_x_axis(self):
        start = time.time()
        spec = weierstrass_sum_2d(2, 1.5)
        sched = weier_sched(2.0)
        worst = 0.0
        degenerate_ok = True
        for x0 in (0.5, 1.0, 1.5):
            for v in ((1.0, 0.0), (0.0, 1.0), (1.0, 1.0)):
                est = directional_critical_order(
                    spec, DirectionProbe((x0, 0.0), v), sched=sched
                )
                worst = max(worst, abs(est.alpha - 0.5))
            deg = directional_critical_order(
                spec, DirectionProbe((x0, 0.0), (1.0, -1.0)), sched=sched
            )
            degenerate_ok = degenerate_ok and deg.is_infinite
        elapsed = time.time() - start
        report(
            5,
            worst <= 0.1 and degenerate_ok and elapsed < 180,
            f"max |alpha - 0.5| = {worst:.3f} (<= 0.1), degenerate direction "
            f"infinite: {degenerate_ok}, in {elapsed:.1f}s (< 3min)",
        )


class TestCriterion6Example2:
    def test_partials_and_directions(self):
        start = time.time()
        spec = weierstrass_prod_2d(2, 1.5)
        sched = weier_sched(2.0)
        axis_ok = True
        worst = 0.0
        for pt in ((1.0, 0.0), (2.0, 0.0)):
            for q in (0.25, 0.5, 0.75):
                est = partial_lfd(spec, pt, 1, q, sched=sched)
                axis_ok = axis_ok and est.classification is Classification.IdenticallyZero
            for v in ((0.0, 1.0), (1.0, 1.0)):
                est = directional_critical_order(
                    spec, DirectionProbe(pt, v), sched=sched
                )
                worst = max(worst, abs(est.alpha - 0.5))
        elapsed = time.time() - start
        report(
            6,
            axis_ok and worst <= 0.1 and elapsed < 120,
            f"axis-1 partials identically zero: {axis_ok}, max |alpha - 0.5| = "
            f"{worst:.3f} (<= 0.1), in {elapsed:.1f}s (< 2min)",
        )


class TestCriterion7HolderEquivalence:
    def test_alpha_matches_holder_exponent(self):
        worst = 0.0
        for gamma in (0.3, 0.5, 0.7, 1.5, 2.5):
            alpha = _cusp_alphas.get(gamma)
            if alpha is None:
                alpha = critical_order(
                    holder_cusp(1, 2, 3, gamma), 0.0, sched=CUSP_SCHED
                ).alpha
            h = holder_exponent_oracle(holder_cusp(1, 2, 3, gamma), 0.0, sched=CUSP_SCHED).h
            worst = max(worst, abs(alpha - h))
        for lam, s in WEIER_CASES:
            spec = weierstrass_1d(lam, s)
            sched = weier_sched(lam)
            for y in WEIER_POINTS:
                alpha = _weier_alphas.get((lam, s, y))
                if alpha is None:
                    alpha = critical_order(spec, y, sched=sched).alpha
                h = holder_exponent_oracle(spec, y, sched=sched).h
                worst = max(worst, abs(alpha - h))
        report(7, worst <= 0.1, f"max |alpha - h| = {worst:.3f} (<= 0.1)")


class TestCriterion8LfdValueAtCriticalOrder:
    def test_values_match_gamma_closed_form(self):
        c = 3.0
        worst = 0.0
        for gamma in (0.5, 1.5):
            est = lfd_at(holder_cusp(0, 0, c, gamma), 0.0, gamma)
            assert est.classification is Classification.Finite
            want = c * math.gamma(gamma + 1.0)
            worst = max(worst, abs(est.value - want) / want)
        report(8, worst <= 0.05, f"max relative value error {worst:.2e} (<= 5%)")


class TestCriterion9TaylorModel:
    def test_beats_piecewise_constant_and_tangent(self):
        spec = weierstrass_1d(2, 1.5)
        pm = piecewise_scaling_approx(spec, (0.0, 1.0), 16, sched=weier_sched(2.0))
        xs = np.linspace(0.0, 1.0, 1000)
        fv = eval_1d(spec, xs)
        mv = evaluate_piecewise(pm, xs)
        knots = np.asarray(pm.knots)
        nearest = knots[np.argmin(np.abs(xs[:, None] - knots[None, :]), axis=1)]
        cv = eval_1d(spec, nearest)
        err_model = float(np.max(np.abs(fv - mv)))
        err_const = float(np.max(np.abs(fv - cv)))

        y = 0.3
        tangent_model = LocalModel(
            y=y, N=0, derivs=(math.sin(y),), alpha=1.0,
            lfd_value=math.cos(y), side=Side.Right,
        )
        tangent_err = max(
            abs(evaluate_model(tangent_model, y + dx) - (math.sin(y) + math.cos(y) * dx))
            for dx in (0.0, 1e-3, 1e-2, 0.1)
        )
        report(
            9,
            err_model < err_const and tangent_err <= 1e-8,
            f"model max error {err_model:.3f} < piecewise-constant {err_const:.3f}; "
            f"tangent recovery error {tangent_err:.1e} (<= 1e-8)",
        )


class TestCriterion10Determinism:
    def test_byte_identical_across_workers(self, tmp_path):
        spec = json.dumps({"kind": "WeierstrassSum2D", "params": {"lambda": 2, "s": 1.5}})
        cfg = tmp_path / "cfg.json"
        cfg.write_text(
            json.dumps(
                {"schedule": {"delta0": 0.2, "ratio": 0.5, "count": 10,
                              "samples_per_window": 256}}
            )
        )
        points = ";".join(f"{y},0" for y in WEIER_POINTS)
        outputs = []
        for workers in (1, 8):
            out = tmp_path / f"map_w{workers}.csv"
            code = cli_main(
                ["direction-map", "--spec", spec, "--points", points,
                 "--fan", "4", "--config", str(cfg),
                 "--workers", str(workers), "--output", str(out)]
            )
            assert code == 0
            outputs.append(out.read_bytes())
        report(
            10,
            outputs[0] == outputs[1],
            f"workers=1 and workers=8 outputs byte-identical "
            f"({len(outputs[0])} bytes)",
        )
