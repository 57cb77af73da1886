"""
Validation Service - reproduction checks for the reference scenarios.

Each check records the claim, the computed value and the tolerance. Binding
checks decide the suite's verdict; informational ones report headline
numbers the weak-pump model is not expected to reproduce exactly.
Failures and errors are recorded in the report, never raised.
"""
import logging
import time
from typing import Callable, Dict, List, Optional

import numpy as np

from app.core.exceptions import FWMError
from app.schemas.params import CoupledEmitterParams, SingleEmitterParams
from app.schemas.run_config import RunConfig
from app.schemas.state import IntegrationSettings, SteadyStateResult
from app.schemas.sweep import BaselineKind, SweepSpec
from app.schemas.validation import CheckResult, ValidationReport
from app.services.analytic_service import AnalyticService
from app.services.config_service import ConfigService
from app.services.integration_service import IntegrationService
from app.services.optimum_service import OptimumService
from app.services.sweep_service import SweepService, evaluate_steady_state

logger = logging.getLogger(__name__)

RANDOM_DRAWS = 1000
LAB_FRAME_HORIZON = 1e3
CALIBRATION_TARGET = 80.0
CALIBRATION_DOUBLINGS = 12


class ValidationService:

    def __init__(self, settings: Optional[IntegrationSettings] = None, workers: int = 1, seed: int = 20240611):
        self.settings = settings or IntegrationSettings()
        self.integration = IntegrationService(self.settings)
        self.analytic = AnalyticService()
        self.sweeps = SweepService(self.settings, workers)
        self.optima = OptimumService(self.sweeps)
        self.rng = np.random.default_rng(seed)
        self._integrated: Dict[str, SteadyStateResult] = {}

    def run_validation_suite(self) -> ValidationReport:
        checks: List[CheckResult] = []
        for runner in (
            self.check_suppression,
            self.check_population_peak,
            self.check_single_enhancement,
            self.check_calibrated_pump,
            self.check_coupled_enhancement,
            self.check_cross_solver,
            self.check_reduction_identity,
            self.check_frame_equivalence,
            self.check_physical_invariants,
            self.check_root_oracle,
            self.check_pump_insensitivity,
        ):
            checks.extend(self._timed(runner))

        report = ValidationReport(checks=checks)
        failed = [check.name for check in checks if check.binding and not check.passed]
        if failed:
            logger.warning("Validation FAILED: %s", ", ".join(failed))
        else:
            logger.info("Validation PASSED (%d checks)", len(checks))
        return report

    def _timed(self, runner: Callable[[], List[CheckResult]]) -> List[CheckResult]:
        name = runner.__name__.removeprefix("check_")
        started = time.perf_counter()
        try:
            results = runner()
        except FWMError as exc:
            logger.error("Check %s raised %s: %s", name, type(exc).__name__, exc.detail)
            results = [CheckResult(
                name=name, claim="completes without error", computed=type(exc).__name__,
                tolerance="-", passed=False, detail=exc.detail,
            )]
        elapsed = time.perf_counter() - started
        share = elapsed / len(results)
        return [result.model_copy(update={"runtime_s": share}) for result in results]

    # ========================================================================
    # Scenario helpers
    # ========================================================================

    @staticmethod
    def preset(name: str) -> RunConfig:
        return ConfigService.build({"preset": name, "mode": "sweep"})

    def fast_spec(self, name: str) -> SweepSpec:
        return self.preset(name).sweep_spec().model_copy(update={"solver": "fixed_point"})

    def integrated(self, name: str) -> SteadyStateResult:
        """Time-integrated steady state of a preset's default point, cached."""
        if name not in self._integrated:
            self._integrated[name] = self.integration.integrate_to_steady_state(self.preset(name).params)
        return self._integrated[name]

    # ========================================================================
    # Checks
    # ========================================================================

    def check_suppression(self) -> List[CheckResult]:
        params = self.preset("fig1").params
        result = self.integrated("fig1")
        baseline = self.sweeps.baseline_intensity(params, BaselineKind.RESONANT_NO_EMITTER)
        ratio = result.fwm_intensity / baseline

        _, breakdown = self.analytic.alpha3_single(1.0, 1.0, -1.0, params)
        predicted = (params.gamma3 / abs(breakdown.total)) ** 2
        passed = result.converged and ratio <= 1e-9 and 0.5 <= ratio / predicted <= 2.0
        return [CheckResult(
            name="fig1_suppression",
            claim="|α3|²/resonant ≤ 1e-9, within 2x of (γ3/|D|)²",
            computed=f"{ratio:.4e} (analytic {predicted:.4e})",
            tolerance="≤ 1e-9; ratio to analytic in [0.5, 2]",
            passed=passed,
        )]

    def check_population_peak(self) -> List[CheckResult]:
        spec = self.fast_spec("fig2")
        curve = self.sweeps.run_sweep(spec, BaselineKind.RESONANT_NO_EMITTER)
        rho = curve.populations(0)
        peak = float(curve.param_values[int(np.argmax(rho))])
        target = spec.base_params.fwm_frequency

        at_target = int(np.argmin(np.abs(curve.param_values - target)))
        inversion_gap = abs(2.0 * rho[at_target] - 1.0 + 1.0)
        passed = abs(peak - target) <= spec.step and inversion_gap < 0.1
        return [CheckResult(
            name="fig2_population",
            claim="ρ_ee peaks at ω_eg = 2ω − ω′; y ≈ −1 there",
            computed=f"peak at {peak:.5f}, |y+1| = {inversion_gap:.2e}",
            tolerance=f"within {spec.step:.1e}; |y+1| < 0.1",
            passed=passed,
        )]

    def check_single_enhancement(self) -> List[CheckResult]:
        spec = self.fast_spec("fig3")
        optimum = self.optima.find_optimum(spec, BaselineKind.OFF_RESONANT_NO_EMITTER)
        root = self.analytic.enhancement_roots(spec.base_params, -1.0).omega_eg_enhancement

        # confirm the fast solver's optimum with a full time integration
        at_optimum = self.integration.integrate_to_steady_state(spec.params_at(optimum.param_value))
        integrated_factor = at_optimum.fwm_intensity / self.sweeps.baseline_intensity(
            spec.base_params, BaselineKind.OFF_RESONANT_NO_EMITTER
        )

        interior = (
            1.50 <= optimum.param_value <= 1.56
            and abs(optimum.param_value - root) < 0.01
            and integrated_factor > 10.0
            and at_optimum.converged
        )
        return [
            CheckResult(
                name="fig3_interior_optimum",
                claim="interior optimum near the enhancement root, factor > 10",
                computed=f"ω_eg = {optimum.param_value:.5f} (root {root:.5f}), factor {integrated_factor:.4g}",
                tolerance="ω_eg in [1.50, 1.56], |Δroot| < 0.01, factor > 10",
                passed=interior,
            ),
            CheckResult(
                name="fig3_factor_band",
                claim="enhanced nearly 80 times",
                computed=f"{optimum.factor:.4g}",
                tolerance="[40, 160]",
                passed=40.0 <= optimum.factor <= 160.0,
                binding=False,
                detail="weak-pump steady state; see DESIGN.md",
            ),
        ]

    def check_calibrated_pump(self) -> List[CheckResult]:
        """
        Single-emitter optimum at a pump raised once, by doubling, until
        saturation brings the factor at the weak-pump optimum down to 80.
        """
        spec = self.fast_spec("fig3")
        kind = BaselineKind.OFF_RESONANT_NO_EMITTER
        row = {"name": "fig3_calibrated_pump", "claim": "enhanced nearly 80 times", "tolerance": "[40, 160]"}
        try:
            weak = self.optima.find_optimum(spec, kind)
            at_weak = spec.params_at(weak.param_value)
            scale = 1.0
            for _ in range(CALIBRATION_DOUBLINGS):
                scale *= 2.0
                pumped = at_weak.with_pumps_scaled(scale)
                intensity = evaluate_steady_state(pumped, "fixed_point", self.settings).fwm_intensity
                if intensity / self.sweeps.baseline_intensity(pumped, kind, "fixed_point") <= CALIBRATION_TARGET:
                    break
            calibrated = spec.model_copy(update={"base_params": spec.base_params.with_pumps_scaled(scale)})
            optimum = self.optima.find_optimum(calibrated, kind)
        except FWMError as exc:
            return [CheckResult(
                **row, computed=type(exc).__name__, passed=False, binding=False, detail=exc.detail,
            )]

        pump = abs(calibrated.base_params.eps_p)
        return [CheckResult(
            **row,
            computed=f"ε_p = {pump:.3g}: factor {optimum.factor:.4g} at ω_eg = {optimum.param_value:.5f}",
            passed=40.0 <= optimum.factor <= 160.0,
            binding=False,
            detail="pump calibrated once; the default pump is in the unsaturated regime",
        )]

    def check_coupled_enhancement(self) -> List[CheckResult]:
        report = self.optima.coupled_vs_single_report(self.fast_spec("fig3"), self.fast_spec("fig4"))
        coupled = report.coupled
        return [
            CheckResult(
                name="fig4_optimum_location",
                claim="coupled optimum near ω_eg1 ≈ 1.5732",
                computed=f"{coupled.param_value:.5f}",
                tolerance="within 0.01",
                passed=abs(coupled.param_value - 1.5732) <= 0.01,
            ),
            CheckResult(
                name="fig4_factor_band",
                claim="enhancement around 1200-1600 times",
                computed=f"{coupled.factor:.4g}",
                tolerance="[600, 3200]",
                passed=600.0 <= coupled.factor <= 3200.0,
            ),
            CheckResult(
                name="coupled_vs_single",
                claim="coupled optimum ≥ 10x single optimum",
                computed=f"ratio {report.ratio:.4g}",
                tolerance="≥ 10",
                passed=report.ratio >= 10.0,
                binding=False,
                detail="both normalised to their own off-resonant baselines",
            ),
        ]

    def check_cross_solver(self) -> List[CheckResult]:
        results = []
        for name in ("fig1", "fig2", "fig3", "fig4"):
            integrated = self.integrated(name)
            fixed = self.analytic.fixed_point_solve(self.preset(name).params)
            error = abs(fixed.fwm_intensity - integrated.fwm_intensity) / integrated.fwm_intensity
            results.append(CheckResult(
                name=f"cross_solver_{name}",
                claim="fixed point and time integration agree on |α3|²",
                computed=f"{error:.2e}",
                tolerance="< 1e-6",
                passed=integrated.converged and error < 1e-6,
            ))
        return results

    def check_reduction_identity(self) -> List[CheckResult]:
        worst = 0.0
        for _ in range(RANDOM_DRAWS):
            coupled = self._random_coupled(decoupled=True)
            a1, a2 = self._random_complex(), self._random_complex()
            y = float(self.rng.uniform(-1.0, 1.0))
            two, _ = self.analytic.alpha3_coupled(a1, a2, y, float(self.rng.uniform(-1.0, 1.0)), coupled)
            one, _ = self.analytic.alpha3_single(a1, a2, y, coupled.first_emitter_only())
            worst = max(worst, abs(two - one) / abs(one))
        return [CheckResult(
            name="reduction_identity",
            claim="two-emitter closed form with f2 = g = 0 equals the single-emitter one",
            computed=f"max rel. diff {worst:.2e} over {RANDOM_DRAWS} draws",
            tolerance="< 1e-12",
            passed=worst < 1e-12,
        )]

    def check_frame_equivalence(self) -> List[CheckResult]:
        results = []
        for name in ("fig1", "fig3", "fig4"):
            deviation = self.integration.lab_frame_check(self.preset(name).params, LAB_FRAME_HORIZON)
            results.append(CheckResult(
                name=f"frame_equivalence_{name}",
                claim="lab-frame envelopes match the rotating frame",
                computed=f"{deviation:.2e}",
                tolerance="< 1e-6",
                passed=deviation < 1e-6,
            ))
        return results

    def check_physical_invariants(self) -> List[CheckResult]:
        worst = max(self.integrated(name).max_invariant_excess for name in ("fig1", "fig3", "fig4"))
        return [CheckResult(
            name="physical_invariants",
            claim="ρ_ee in [0, 1] and |ρ_ge|² ≤ ρ_ee(1 − ρ_ee) at every step",
            computed=f"max excess {worst:.2e}",
            tolerance=f"≤ {self.settings.positivity_tol:.0e}",
            passed=worst <= self.settings.positivity_tol,
        )]

    def check_root_oracle(self) -> List[CheckResult]:
        worst = 0.0
        for _ in range(RANDOM_DRAWS):
            params = SingleEmitterParams(
                omega1=1.0, omega2=0.5, omega3=1.5 + self.rng.uniform(0.2, 0.5),
                gamma1=0.01, gamma2=0.01, gamma3=0.01,
                omega_eg=1.5, gamma_ee=2e-5, gamma_eg=10 ** self.rng.uniform(-6, -3),
                chi=1e-5, f=self.rng.uniform(0.05, 0.2), omega_drive_prime=0.5,
            )
            y = float(self.rng.choice([-1.0, 1.0]) * self.rng.uniform(0.5, 1.0))
            roots = self.analytic.enhancement_roots(params, y)
            scale = max(abs(c) for c in roots.coefficients)
            for x in (roots.x_suppression, roots.x_enhancement):
                worst = max(worst, self.analytic.polynomial_residual(x, roots.coefficients) / scale)

        guess = self.analytic.printed_root_guess(self.preset("fig3").params)
        exact = self.analytic.enhancement_roots(self.preset("fig3").params)
        return [
            CheckResult(
                name="root_oracle",
                claim="both roots satisfy the enhancement polynomial",
                computed=f"max residual/max|coef| {worst:.2e}",
                tolerance="< 1e-15",
                passed=worst < 1e-15,
            ),
            CheckResult(
                name="printed_root_guess",
                claim="approximate two-root formula as a seed",
                computed=f"guess {guess[1]:.5f} vs exact {exact.omega_eg_enhancement:.5f}",
                tolerance="informational",
                passed=True,
                binding=False,
            ),
        ]

    def check_pump_insensitivity(self) -> List[CheckResult]:
        results = []
        for name in ("fig1", "fig3", "fig4"):
            config = self.preset(name)
            factors = []
            for scale in (1.0, 0.5):
                params = config.params.with_pumps_scaled(scale)
                intensity = self.analytic.fixed_point_solve(params).fwm_intensity
                baseline = self.sweeps.baseline_intensity(params, config.baseline, "fixed_point")
                factors.append(intensity / baseline)
            change = abs(factors[1] - factors[0]) / factors[0]
            results.append(CheckResult(
                name=f"pump_insensitivity_{name}",
                claim="halving both pumps leaves the factor unchanged",
                computed=f"{change:.2e}",
                tolerance="< 1%",
                passed=change < 0.01,
            ))
        return results

    # ========================================================================
    # Random draws
    # ========================================================================

    def _random_complex(self) -> complex:
        return complex(*self.rng.normal(size=2))

    def _random_coupled(self, decoupled: bool) -> CoupledEmitterParams:
        uniform = self.rng.uniform
        return CoupledEmitterParams(
            omega1=uniform(0.5, 1.5), omega2=uniform(0.3, 0.7), omega3=uniform(1.2, 2.0),
            gamma1=uniform(1e-3, 0.1), gamma2=uniform(1e-3, 0.1), gamma3=uniform(1e-3, 0.1),
            chi=uniform(1e-6, 1e-4),
            omega_eg_1=uniform(1.2, 1.8), omega_eg_2=uniform(1.2, 1.8),
            gamma_ee_1=uniform(1e-6, 1e-4), gamma_ee_2=uniform(1e-6, 1e-4),
            gamma_eg_1=uniform(1e-6, 1e-4), gamma_eg_2=uniform(1e-6, 1e-4),
            f1=complex(uniform(0.01, 0.3), uniform(-0.1, 0.1)),
            f2=0j if decoupled else complex(uniform(0.01, 0.3), uniform(-0.1, 0.1)),
            g=0j if decoupled else complex(uniform(0.0, 0.2), uniform(-0.05, 0.05)),
            omega_drive_prime=0.5,
        )
