"""
Optimum Service - locating the enhancement maximum of a sweep.

Coarse grid scan, optionally seeded with the analytic enhancement root, then
golden-section refinement inside the bracket around the best grid point.
"""
import logging
import math
from typing import Callable, Optional, Tuple

import numpy as np

from app.core.exceptions import ComplexRoots, NoInteriorOptimum
from app.schemas.state import IntegrationSettings
from app.schemas.sweep import BaselineKind, CoupledVsSingleReport, OptimumResult, SweepSpec
from app.services.analytic_service import AnalyticService
from app.services.sweep_service import SweepService, evaluate_steady_state

logger = logging.getLogger(__name__)

INV_PHI = (math.sqrt(5) - 1) / 2  # 1 / phi
INV_PHI_SQUARE = (3 - math.sqrt(5)) / 2  # 1 / phi^2

Evaluator = Callable[[float], float]


def golden_section_max(f: Evaluator, a: float, b: float, tol: float = 1e-5) -> Tuple[float, float, int]:
    """
    Maximise a unimodal f on [a, b] down to an interval of width tol.

    Returns (x, f(x), evaluations) with x the midpoint of the final interval.
    """
    a, b = min(a, b), max(a, b)
    h = b - a
    if h <= tol:
        x = 0.5 * (a + b)
        return x, f(x), 1

    n = int(math.ceil(math.log(tol / h) / math.log(INV_PHI)))

    c = a + INV_PHI_SQUARE * h
    d = a + INV_PHI * h
    yc = f(c)
    yd = f(d)
    evaluations = 2

    for _ in range(n - 1):
        if yc > yd:
            b = d
            d = c
            yd = yc
            h = INV_PHI * h
            c = a + INV_PHI_SQUARE * h
            yc = f(c)
        else:
            a = c
            c = d
            yc = yd
            h = INV_PHI * h
            d = a + INV_PHI * h
            yd = f(d)
        evaluations += 1

    if yc > yd:
        b = d
    else:
        a = c
    x = 0.5 * (a + b)
    return x, f(x), evaluations + 1


class OptimumService:

    def __init__(self, sweep_service: Optional[SweepService] = None):
        self.sweep_service = sweep_service or SweepService()

    def find_optimum(
        self,
        spec: SweepSpec,
        baseline: BaselineKind,
        settings: Optional[IntegrationSettings] = None,
        evaluator: Optional[Evaluator] = None,
        tol: float = 1e-5,
        reference: Optional[SweepSpec] = None,
    ) -> OptimumResult:
        """
        Maximum factor over the sweep range, refined to tol in the parameter.

        evaluator, when given, replaces the steady-state solve: it maps a
        parameter value to a factor and the baseline is taken as 1. reference is
        the single-emitter sweep a SINGLE_EMITTER_OPTIMUM baseline is read from.
        Raises NoInteriorOptimum when the best grid point is an end point.
        """
        settings = settings or self.sweep_service.settings
        if evaluator is None:
            baseline_value = self.sweep_service.baseline_intensity(
                spec.base_params, baseline, spec.solver, reference, settings
            )
            evaluator = self._factor_evaluator(spec, settings, baseline_value)
            batch = True
        else:
            baseline_value = 1.0
            batch = False

        values = spec.grid()
        seed = self._root_seed(spec)
        if seed is not None:
            values = np.sort(np.append(values, seed))

        if batch:
            outcomes = self.sweep_service.evaluate_many(
                [spec.params_at(float(v)) for v in values], spec.solver, settings
            )
            factors = np.array([intensity for intensity, _, _ in outcomes]) / baseline_value
        else:
            factors = np.array([evaluator(float(v)) for v in values])

        best = int(np.argmax(factors))
        if best in (0, len(values) - 1):
            raise NoInteriorOptimum(float(values[best]), float(factors[best]))

        bracket = (float(values[best - 1]), float(values[best + 1]))
        x, factor, evaluations = golden_section_max(evaluator, *bracket, tol=tol)
        if factors[best] > factor:
            x, factor = float(values[best]), float(factors[best])

        logger.info(
            "Optimum of %s: %.6f (factor %.6g, %d refinement evaluations)",
            spec.target, x, factor, evaluations,
        )
        return OptimumResult(
            param_value=x,
            factor=factor,
            fwm_intensity=factor * baseline_value,
            baseline_intensity=baseline_value,
            bracket=bracket,
            evaluations=len(values) + evaluations,
            seed=seed,
        )

    def coupled_vs_single_report(
        self,
        single_spec: SweepSpec,
        coupled_spec: SweepSpec,
        settings: Optional[IntegrationSettings] = None,
    ) -> CoupledVsSingleReport:
        """Both optima against their own off-resonant emitter-free baselines."""
        single_params, coupled_params = single_spec.base_params, coupled_spec.base_params
        if single_params.omega3 != coupled_params.omega3:
            logger.warning(
                "Comparing optima at different converted-mode frequencies (%.4f vs %.4f)",
                single_params.omega3, coupled_params.omega3,
            )

        kind = BaselineKind.OFF_RESONANT_NO_EMITTER
        single = self.find_optimum(single_spec, kind, settings)
        coupled = self.find_optimum(coupled_spec, kind, settings)
        ratio = coupled.factor / single.factor
        logger.info("Coupled/single optimum ratio: %.4g", ratio)
        return CoupledVsSingleReport(single=single, coupled=coupled, ratio=ratio)

    # ========================================================================
    # Helpers
    # ========================================================================

    @staticmethod
    def _root_seed(spec: SweepSpec) -> Optional[float]:
        """Enhancement root (y = −1) of the swept emitter, if it lies inside the range."""
        params = spec.base_params
        if spec.target == "omega_eg":
            single = params
        elif spec.target == "omega_eg_1":
            single = params.first_emitter_only()
        elif spec.target == "omega_eg_2":
            single = params.swapped().first_emitter_only()
        else:
            return None

        try:
            seed = AnalyticService.enhancement_roots(single, -1.0).omega_eg_enhancement
        except (ComplexRoots, ValueError):
            return None
        if not spec.start < seed < spec.stop or abs(single.f) == 0:
            return None
        return seed

    @staticmethod
    def _factor_evaluator(spec: SweepSpec, settings: IntegrationSettings, baseline_value: float) -> Evaluator:
        def evaluate(value: float) -> float:
            result = evaluate_steady_state(spec.params_at(value), spec.solver, settings)
            if not result.converged:
                logger.warning("Optimum search point %.6f did not converge", value)
            return result.fwm_intensity / baseline_value

        return evaluate
