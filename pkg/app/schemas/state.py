"""
State Schemas - mode envelopes, emitter density-matrix elements, steady states.
"""
from typing import Any, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, computed_field, model_validator

from app.core.config import settings
from app.core.exceptions import InvariantViolation


class EmitterState(BaseModel):
    """ρ_gg is never stored (read as 1 − ρ_ee); ρ_eg is conj(ρ_ge)."""
    model_config = ConfigDict(frozen=True)

    rho_ge: complex = 0j
    rho_ee: float = 0.0

    @property
    def inversion(self) -> float:
        """y = ρ_ee − ρ_gg."""
        return 2.0 * self.rho_ee - 1.0


class HybridState(BaseModel):
    """Rotating-frame envelopes of the three modes plus one or two emitters."""
    model_config = ConfigDict(frozen=True)

    alpha: Tuple[complex, complex, complex]
    emitters: Tuple[EmitterState, ...] = Field(min_length=1, max_length=2)

    @classmethod
    def zero(cls, n_emitters: int) -> "HybridState":
        """The initial condition of every simulation: everything empty."""
        return cls(alpha=(0j, 0j, 0j), emitters=tuple(EmitterState() for _ in range(n_emitters)))

    @property
    def n_emitters(self) -> int:
        return len(self.emitters)

    @property
    def alpha3(self) -> complex:
        return self.alpha[2]

    def to_vector(self) -> np.ndarray:
        values = list(self.alpha)
        for emitter in self.emitters:
            values.extend([emitter.rho_ge, complex(emitter.rho_ee, 0.0)])
        return np.array(values, dtype=complex)

    @classmethod
    def from_vector(cls, vector: Any) -> "HybridState":
        values = np.asarray(vector, dtype=complex).tolist()
        n_emitters = (len(values) - 3) // 2
        emitters = tuple(
            EmitterState(rho_ge=values[3 + 2 * k], rho_ee=values[4 + 2 * k].real)
            for k in range(n_emitters)
        )
        return cls(alpha=(values[0], values[1], values[2]), emitters=emitters)

    def invariant_excess(self) -> float:
        return float(vector_invariant_excess(self.to_vector()[:, None]).max())

    def check_invariants(self, tol: float) -> None:
        excess = self.invariant_excess()
        if excess > tol:
            raise InvariantViolation(
                f"Emitter state outside the physical region by {excess:.3e}", excess=excess
            )


def vector_invariant_excess(columns: np.ndarray) -> np.ndarray:
    """
    Per-column amount by which population range or positivity is broken.

    columns: state vectors stacked as columns (shape n_components x n_times).
    Returns 0 where 0 <= ρ_ee <= 1 and |ρ_ge|² <= ρ_ee(1 − ρ_ee).
    """
    n_emitters = (columns.shape[0] - 3) // 2
    excess = np.zeros(columns.shape[1])
    for k in range(n_emitters):
        rho_ge = columns[3 + 2 * k]
        rho_ee = columns[4 + 2 * k].real
        positivity = np.abs(rho_ge) ** 2 - rho_ee * (1.0 - rho_ee)
        excess = np.maximum.reduce([excess, -rho_ee, rho_ee - 1.0, positivity])
    return excess


class IntegrationSettings(BaseModel):
    """Integrator tolerances and steady-state detection (times in units of 1/ω)."""
    model_config = ConfigDict(frozen=True, extra="forbid", validate_default=True)

    method: Literal["RK45", "DOP853", "RK23"] = Field(default_factory=lambda: settings.FWM_RK_METHOD)
    rel_tol: float = Field(default_factory=lambda: settings.FWM_REL_TOL, gt=0)
    abs_tol: float = Field(default_factory=lambda: settings.FWM_ABS_TOL, gt=0)
    steady_residual_tol: float = Field(default_factory=lambda: settings.FWM_STEADY_RESIDUAL_TOL, gt=0)
    max_time: Optional[float] = Field(None, gt=0, description="Default 50/min(γ_eg, γ_ee)")
    residual_window: Optional[float] = Field(None, gt=0, description="Default 10/γ₃")
    positivity_tol: float = Field(1e-9, gt=0)
    population_rel_tol: Optional[float] = Field(None, gt=0)

    @model_validator(mode="after")
    def check_horizon(self) -> "IntegrationSettings":
        if self.max_time is not None and self.residual_window is not None:
            if self.max_time < self.residual_window:
                raise ValueError("max_time must be >= residual_window")
        return self

    def resolved_for(self, params: Any) -> "IntegrationSettings":
        """Fill in the parameter-dependent horizon and window."""
        if params.n_emitters == 1:
            slowest = min(params.gamma_eg, params.gamma_ee)
        else:
            slowest = min(params.gamma_eg_1, params.gamma_eg_2, params.gamma_ee_1, params.gamma_ee_2)
        window = self.residual_window or 10.0 / params.gamma3
        max_time = self.max_time or max(50.0 / slowest, window)
        return self.model_validate({**self.model_dump(), "max_time": max_time, "residual_window": window})


class SteadyStateResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    state: HybridState
    converged: bool
    final_residual: float
    elapsed_sim_time: float
    solver: Literal["integrate", "fixed_point"] = "integrate"
    n_steps: int = 0
    max_invariant_excess: float = 0.0

    @computed_field
    @property
    def fwm_intensity(self) -> float:
        """|α̃₃|² of the stored state."""
        return abs(self.state.alpha3) ** 2

    @property
    def populations(self) -> Tuple[float, ...]:
        return tuple(emitter.rho_ee for emitter in self.state.emitters)
