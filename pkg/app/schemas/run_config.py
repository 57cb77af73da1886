"""
Run Configuration Schemas - what a config file materialises into.
"""
from pathlib import Path
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.schemas.params import SystemParams
from app.schemas.state import IntegrationSettings
from app.schemas.sweep import BaselineKind, SolverKind, SweepSpec, SweepTarget

RunMode = Literal["simulate", "sweep", "optimize", "validate"]
PresetName = Literal["fig1", "fig2", "fig3", "fig4"]


class SweepBlock(BaseModel):
    """The [sweep] section; the swept params come from [params]."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    target: SweepTarget
    start: float
    stop: float
    n_points: int = Field(ge=2)
    scale: Literal["linear"] = "linear"
    solver: SolverKind = "integrate"


class RunConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    mode: RunMode = "simulate"
    preset: Optional[PresetName] = None
    params: SystemParams
    sweep: Optional[SweepBlock] = None
    baseline: BaselineKind = BaselineKind.RESONANT_NO_EMITTER
    output_path: Optional[Path] = None
    settings: IntegrationSettings = Field(default_factory=IntegrationSettings)
    workers: Optional[int] = Field(None, ge=1)

    @model_validator(mode="after")
    def check_sweep_block(self) -> "RunConfig":
        if self.mode in ("sweep", "optimize") and self.sweep is None:
            raise ValueError(f"mode '{self.mode}' requires a [sweep] section")
        return self

    def sweep_spec(self) -> SweepSpec:
        return SweepSpec(**self.sweep.model_dump(), base_params=self.params)
