"""
System Parameter Schemas - plasmon modes, drives and quantum emitters.

All frequencies and rates are dimensionless, in units of the first drive
frequency ω (so the presets use omega_drive = 1.0).
"""
from typing import Annotated, Any, Literal, Union

from pydantic import BaseModel, BeforeValidator, ConfigDict, Field


def _coerce_complex(value: Any) -> Any:
    """Accept [re, im] pairs and {re, im} tables besides complex literals."""
    if isinstance(value, dict):
        return complex(float(value.get("re", 0.0)), float(value.get("im", 0.0)))
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    return value


ComplexValue = Annotated[complex, BeforeValidator(_coerce_complex)]


class ModeParams(BaseModel):
    """Grating modes, drives and the FWM coupling shared by both variants."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    omega1: float = Field(gt=0, description="Mode 1 frequency")
    omega2: float = Field(gt=0, description="Mode 2 frequency")
    omega3: float = Field(gt=0, description="Converted (FWM) mode frequency")
    gamma1: float = Field(gt=0)
    gamma2: float = Field(gt=0)
    gamma3: float = Field(gt=0)
    chi: float = Field(ge=0, description="FWM nonlinear coupling")
    eps_p: ComplexValue = Field(1e-3, description="Pump amplitude on mode 1")
    eps_p_prime: ComplexValue = Field(1e-3, description="Pump amplitude on mode 2")
    omega_drive: float = Field(1.0, gt=0, description="Drive ω (frequency unit)")
    omega_drive_prime: float = Field(gt=0, description="Drive ω′")

    @property
    def fwm_frequency(self) -> float:
        """2ω − ω′, the frequency the converted wave oscillates at."""
        return 2.0 * self.omega_drive - self.omega_drive_prime

    @property
    def eps1(self) -> complex:
        return complex(self.gamma1, self.omega1 - self.omega_drive)

    @property
    def eps2(self) -> complex:
        return complex(self.gamma2, self.omega2 - self.omega_drive_prime)

    @property
    def eps3(self) -> complex:
        return complex(self.gamma3, self.omega3 + self.omega_drive_prime - 2.0 * self.omega_drive)

    @property
    def mode3_detuning(self) -> float:
        return self.omega3 + self.omega_drive_prime - 2.0 * self.omega_drive

    def emitter_detuning(self, omega_eg: float) -> float:
        return omega_eg + self.omega_drive_prime - 2.0 * self.omega_drive

    def with_updates(self, **changes: Any):
        """Copy with changed fields, re-validated."""
        return type(self).model_validate({**self.model_dump(), **changes})

    def with_pumps_scaled(self, scale: float):
        return self.with_updates(eps_p=self.eps_p * scale, eps_p_prime=self.eps_p_prime * scale)


class SingleEmitterParams(ModeParams):
    """One quantum emitter coupled to mode 3."""
    variant: Literal["single"] = "single"

    omega_eg: float = Field(gt=0, description="Emitter level spacing")
    gamma_ee: float = Field(gt=0, description="Population decay")
    gamma_eg: float = Field(gt=0, description="Coherence decay")
    f: ComplexValue = Field(description="Emitter-mode-3 coupling")

    @property
    def n_emitters(self) -> int:
        return 1

    @property
    def beta(self) -> complex:
        return complex(self.gamma_eg, self.emitter_detuning(self.omega_eg))

    def without_emitters(self) -> "SingleEmitterParams":
        return self.with_updates(f=0j)


class CoupledEmitterParams(ModeParams):
    """Two mutually coupled quantum emitters, both coupled to mode 3."""
    variant: Literal["coupled"] = "coupled"

    omega_eg_1: float = Field(gt=0)
    omega_eg_2: float = Field(gt=0)
    gamma_ee_1: float = Field(gt=0)
    gamma_ee_2: float = Field(gt=0)
    gamma_eg_1: float = Field(gt=0)
    gamma_eg_2: float = Field(gt=0)
    f1: ComplexValue
    f2: ComplexValue
    g: ComplexValue = Field(description="Emitter-emitter coupling")

    @property
    def n_emitters(self) -> int:
        return 2

    @property
    def beta1(self) -> complex:
        return complex(self.gamma_eg_1, self.emitter_detuning(self.omega_eg_1))

    @property
    def beta2(self) -> complex:
        return complex(self.gamma_eg_2, self.emitter_detuning(self.omega_eg_2))

    def without_emitters(self) -> "CoupledEmitterParams":
        return self.with_updates(f1=0j, f2=0j, g=0j)

    def swapped(self) -> "CoupledEmitterParams":
        """Relabel emitters 1 <-> 2; the exchange coupling becomes g*."""
        return self.with_updates(
            omega_eg_1=self.omega_eg_2, omega_eg_2=self.omega_eg_1,
            gamma_ee_1=self.gamma_ee_2, gamma_ee_2=self.gamma_ee_1,
            gamma_eg_1=self.gamma_eg_2, gamma_eg_2=self.gamma_eg_1,
            f1=self.f2, f2=self.f1,
            g=self.g.conjugate(),
        )

    def first_emitter_only(self) -> SingleEmitterParams:
        """Single-emitter system made of emitter 1 (the f2 = g = 0 limit)."""
        shared = self.model_dump(include=set(ModeParams.model_fields))
        return SingleEmitterParams(
            **shared,
            omega_eg=self.omega_eg_1,
            gamma_ee=self.gamma_ee_1,
            gamma_eg=self.gamma_eg_1,
            f=self.f1,
        )


SystemParams = Annotated[
    Union[SingleEmitterParams, CoupledEmitterParams],
    Field(discriminator="variant"),
]
