"""
Sweep Service - steady-state intensity curves over one parameter.
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional, Tuple

from app.core.exceptions import DegenerateDenominator, NonConvergenceError, SimulationError
from app.schemas.state import IntegrationSettings, SteadyStateResult
from app.schemas.sweep import BaselineKind, SolverKind, SweepCurve, SweepPoint, SweepSpec
from app.services.analytic_service import AnalyticService
from app.services.dynamics_service import AnyParams
from app.services.integration_service import IntegrationService

logger = logging.getLogger(__name__)

PointOutcome = Tuple[float, Tuple[float, ...], bool]


def evaluate_steady_state(params: AnyParams, solver: SolverKind, settings: IntegrationSettings) -> SteadyStateResult:
    """Steady state by the requested solver; fixed-point failures fall back to integration."""
    if solver == "fixed_point":
        try:
            return AnalyticService().fixed_point_solve(params)
        except (NonConvergenceError, DegenerateDenominator) as exc:
            logger.warning("Fixed point failed (%s); integrating instead", exc.detail)
    return IntegrationService(settings).integrate_to_steady_state(params)


def _evaluate_point(job: Tuple[AnyParams, SolverKind, IntegrationSettings]) -> PointOutcome:
    # module level so worker processes can unpickle it
    params, solver, settings = job
    result = evaluate_steady_state(params, solver, settings)
    return result.fwm_intensity, result.populations, result.converged


class SweepService:

    def __init__(self, settings: Optional[IntegrationSettings] = None, workers: int = 1):
        self.settings = settings or IntegrationSettings()
        self.workers = max(1, workers)

    # ========================================================================
    # Baselines
    # ========================================================================

    @staticmethod
    def baseline_params(params: AnyParams, kind: BaselineKind) -> AnyParams:
        """Emitter-free reference system; the resonant kind also tunes ω₃ to 2ω − ω′."""
        bare = params.without_emitters()
        if kind == BaselineKind.RESONANT_NO_EMITTER:
            return bare.with_updates(omega3=params.fwm_frequency)
        if kind == BaselineKind.OFF_RESONANT_NO_EMITTER:
            return bare
        raise ValueError(f"{kind.value} baseline is not an emitter-free system")

    def baseline_intensity(
        self,
        params: AnyParams,
        kind: BaselineKind,
        solver: SolverKind = "integrate",
        reference: Optional[SweepSpec] = None,
        settings: Optional[IntegrationSettings] = None,
    ) -> float:
        """
        Intensity every factor is divided by.

        SINGLE_EMITTER_OPTIMUM needs a reference single-emitter sweep whose
        refined optimum intensity becomes the baseline. settings defaults to
        the service settings and should match the sweep the baseline serves.
        """
        settings = settings or self.settings
        if kind == BaselineKind.SINGLE_EMITTER_OPTIMUM:
            if reference is None:
                raise ValueError("single_emitter_optimum baseline needs a reference sweep")
            from app.services.optimum_service import OptimumService

            optimum = OptimumService(self).find_optimum(reference, BaselineKind.OFF_RESONANT_NO_EMITTER, settings)
            intensity = optimum.fwm_intensity
        else:
            result = evaluate_steady_state(self.baseline_params(params, kind), solver, settings)
            if not result.converged:
                raise NonConvergenceError(f"{kind.value} baseline did not reach a steady state")
            intensity = result.fwm_intensity

        if not intensity > 0.0:
            raise SimulationError(f"{kind.value} baseline intensity is zero; is chi > 0?")
        logger.info("Baseline %s: |α3|² = %.6e", kind.value, intensity)
        return intensity

    # ========================================================================
    # Sweeps
    # ========================================================================

    def run_sweep(
        self,
        spec: SweepSpec,
        baseline: BaselineKind,
        settings: Optional[IntegrationSettings] = None,
        reference: Optional[SweepSpec] = None,
        baseline_value: Optional[float] = None,
    ) -> SweepCurve:
        """
        Steady state at every grid point, each started from the empty state.

        Non-converged points are kept and flagged. Only a failing baseline
        aborts the sweep.
        """
        settings = settings or self.settings
        if baseline_value is None:
            baseline_value = self.baseline_intensity(spec.base_params, baseline, spec.solver, reference, settings)

        values = spec.grid()
        outcomes = self.evaluate_many([spec.params_at(float(v)) for v in values], spec.solver, settings)

        points: List[SweepPoint] = []
        for value, (intensity, populations, converged) in zip(values, outcomes):
            factor = intensity / baseline_value
            points.append(SweepPoint(
                param_value=float(value),
                fwm_intensity=factor * baseline_value,
                factor=factor,
                rho_ee=populations,
                converged=converged,
            ))

        curve = SweepCurve(
            points=points,
            baseline_intensity=baseline_value,
            baseline_kind=baseline,
            target=spec.target,
            solver=spec.solver,
        )
        if curve.flagged:
            logger.warning("%d of %d sweep points did not converge", len(curve.flagged), len(points))
        logger.info("Sweep of %s over [%g, %g]: %d points", spec.target, spec.start, spec.stop, len(points))
        return curve

    def evaluate_many(
        self, params_list: List[AnyParams], solver: SolverKind, settings: Optional[IntegrationSettings] = None
    ) -> List[PointOutcome]:
        """Evaluate independent points, in order, on the worker pool."""
        jobs = [(params, solver, settings or self.settings) for params in params_list]
        if self.workers == 1 or len(jobs) < 2:
            return [_evaluate_point(job) for job in jobs]

        chunksize = max(1, len(jobs) // (4 * self.workers))
        with ProcessPoolExecutor(max_workers=self.workers) as pool:
            return list(pool.map(_evaluate_point, jobs, chunksize=chunksize))
