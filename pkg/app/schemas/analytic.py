"""
Closed-form Steady-State Schemas
"""
from typing import Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field


class InversionEstimate(BaseModel):
    """Population inversions y = ρ_ee − ρ_gg fed into the closed forms."""
    model_config = ConfigDict(frozen=True)

    y1: float = Field(ge=-1.0, le=1.0)
    y2: Optional[float] = Field(None, ge=-1.0, le=1.0)


class DenominatorBreakdown(BaseModel):
    """Denominator of the α̃₃ closed form, split into its interfering paths."""
    model_config = ConfigDict(frozen=True)

    emitter_term: complex
    bare_term: complex
    total: complex
    # β₁β₂ + y₁y₂|g|² for two emitters, 1 for one
    numerator_factor: complex = 1 + 0j


class EnhancementRoots(BaseModel):
    """
    Solutions x = ω_eg + ω′ − 2ω of the enhancement condition.

    x_suppression is the root near 2ω − ω′, x_enhancement the one that
    minimises the closed-form denominator.
    """
    model_config = ConfigDict(frozen=True)

    x_suppression: float
    x_enhancement: float
    omega_eg_suppression: float
    omega_eg_enhancement: float
    coefficients: Tuple[float, float, float]  # a x² + b x + c
    discriminant: float
