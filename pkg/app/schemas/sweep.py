"""
Sweep Schemas - grids, baselines, curves and optima.
"""
import enum
from typing import List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.schemas.params import SystemParams

SweepTarget = Literal[
    "omega_eg", "omega3", "f", "chi",
    "omega_eg_1", "omega_eg_2", "f1", "f2", "g_modulus",
]
SINGLE_TARGETS = {"omega_eg", "omega3", "f", "chi"}
COUPLED_TARGETS = {"omega3", "chi", "omega_eg_1", "omega_eg_2", "f1", "f2", "g_modulus"}
EMITTER_SPACING_TARGETS = {"omega_eg", "omega_eg_1", "omega_eg_2"}

SolverKind = Literal["integrate", "fixed_point"]


class BaselineKind(str, enum.Enum):
    RESONANT_NO_EMITTER = "resonant_no_emitter"
    OFF_RESONANT_NO_EMITTER = "off_resonant_no_emitter"
    SINGLE_EMITTER_OPTIMUM = "single_emitter_optimum"


def _with_modulus(value: complex, modulus: float) -> complex:
    """Set |value| while keeping its phase (zero phase for value == 0)."""
    if value == 0:
        return complex(modulus, 0.0)
    return value / abs(value) * modulus


class SweepSpec(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    target: SweepTarget
    start: float
    stop: float
    n_points: int = Field(ge=2)
    scale: Literal["linear"] = "linear"
    solver: SolverKind = "integrate"
    base_params: SystemParams

    @model_validator(mode="after")
    def check_range_and_target(self) -> "SweepSpec":
        if not self.start < self.stop:
            raise ValueError("start must be < stop")
        allowed = SINGLE_TARGETS if self.base_params.n_emitters == 1 else COUPLED_TARGETS
        if self.target not in allowed:
            raise ValueError(
                f"target '{self.target}' does not apply to {self.base_params.variant} params"
            )
        return self

    def grid(self) -> np.ndarray:
        """Point i at start + (stop − start)·i/(n − 1); refined grids share points exactly."""
        steps = np.arange(self.n_points, dtype=float)
        values = self.start + (self.stop - self.start) * steps / (self.n_points - 1)
        values[-1] = self.stop
        return values

    @property
    def step(self) -> float:
        return (self.stop - self.start) / (self.n_points - 1)

    def params_at(self, value: float):
        """Base params with the swept parameter set to value."""
        p = self.base_params
        if self.target in ("f", "f1", "f2"):
            return p.with_updates(**{self.target: _with_modulus(getattr(p, self.target), value)})
        if self.target == "g_modulus":
            return p.with_updates(g=_with_modulus(p.g, value))
        return p.with_updates(**{self.target: value})

    def with_window(self, start: float, stop: float, n_points: Optional[int] = None) -> "SweepSpec":
        return self.model_validate({
            **self.model_dump(),
            "start": start,
            "stop": stop,
            "n_points": n_points or self.n_points,
        })


class SweepPoint(BaseModel):
    model_config = ConfigDict(frozen=True)

    param_value: float
    fwm_intensity: float
    factor: float
    rho_ee: Tuple[float, ...]
    converged: bool


class SweepCurve(BaseModel):
    model_config = ConfigDict(frozen=True)

    points: List[SweepPoint]
    baseline_intensity: float = Field(gt=0)
    baseline_kind: BaselineKind
    target: str
    solver: SolverKind

    @model_validator(mode="after")
    def check_sorted(self) -> "SweepCurve":
        values = [point.param_value for point in self.points]
        if values != sorted(values):
            raise ValueError("sweep points must be sorted by param_value")
        return self

    @property
    def param_values(self) -> np.ndarray:
        return np.array([point.param_value for point in self.points])

    @property
    def factors(self) -> np.ndarray:
        return np.array([point.factor for point in self.points])

    def populations(self, emitter: int = 0) -> np.ndarray:
        return np.array([point.rho_ee[emitter] for point in self.points])

    @property
    def flagged(self) -> List[SweepPoint]:
        return [point for point in self.points if not point.converged]


class OptimumResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    param_value: float
    factor: float
    fwm_intensity: float
    baseline_intensity: float
    bracket: Tuple[float, float]
    evaluations: int
    seed: Optional[float] = None  # enhancement-root guess inserted into the scan


class CoupledVsSingleReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    single: OptimumResult
    coupled: OptimumResult
    ratio: float
