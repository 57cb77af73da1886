"""
CSV Export Service - sweep curves and single steady states as CSV.

Numbers are written with 17 significant digits so every double survives a
re-read unchanged. Run metadata goes to a JSON sidecar next to the CSV.
"""
import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional, Union

import numpy as np
import pandas as pd

from app.core.exceptions import OutputWriteError
from app.schemas.state import SteadyStateResult
from app.schemas.sweep import SweepCurve

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"
SWEEP_COLUMNS = ["param_value", "fwm_intensity", "factor", "rho_ee_1", "rho_ee_2", "converged"]


class CsvExportService:

    @staticmethod
    def sweep_frame(curve: SweepCurve) -> pd.DataFrame:
        rows = [
            {
                "param_value": point.param_value,
                "fwm_intensity": point.fwm_intensity,
                "factor": point.factor,
                "rho_ee_1": point.rho_ee[0],
                "rho_ee_2": point.rho_ee[1] if len(point.rho_ee) > 1 else np.nan,
                "converged": point.converged,
            }
            for point in curve.points
        ]
        return pd.DataFrame(rows, columns=SWEEP_COLUMNS)

    @staticmethod
    def steady_state_frame(result: SteadyStateResult) -> pd.DataFrame:
        row: Dict[str, Any] = {}
        for index, value in enumerate(result.state.alpha, start=1):
            row[f"alpha{index}_re"] = value.real
            row[f"alpha{index}_im"] = value.imag
        for index, emitter in enumerate(result.state.emitters, start=1):
            row[f"rho_ge_{index}_re"] = emitter.rho_ge.real
            row[f"rho_ge_{index}_im"] = emitter.rho_ge.imag
            row[f"rho_ee_{index}"] = emitter.rho_ee
        row["fwm_intensity"] = result.fwm_intensity
        row["final_residual"] = result.final_residual
        row["converged"] = result.converged
        return pd.DataFrame([row])

    def emit_csv(
        self,
        data: Union[SweepCurve, SteadyStateResult],
        path: Path,
        metadata: Optional[Dict[str, Any]] = None,
    ) -> Path:
        """Write data to path plus <path>.meta.json; raises OutputWriteError."""
        path = Path(path)
        if isinstance(data, SweepCurve):
            frame = self.sweep_frame(data)
            meta = {
                "kind": "sweep",
                "target": data.target,
                "solver": data.solver,
                "baseline_kind": data.baseline_kind.value,
                "baseline_intensity": data.baseline_intensity,
                "flagged_points": len(data.flagged),
            }
        else:
            frame = self.steady_state_frame(data)
            meta = {
                "kind": "steady_state",
                "solver": data.solver,
                "elapsed_sim_time": data.elapsed_sim_time,
                "n_steps": data.n_steps,
                "max_invariant_excess": data.max_invariant_excess,
            }
        meta.update(metadata or {})

        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, na_rep="")
            self.meta_path(path).write_text(json.dumps(meta, indent=2, default=str), encoding="utf-8")
        except OSError as exc:
            raise OutputWriteError(f"Cannot write {path}: {exc}") from exc

        logger.info("Wrote %d rows to %s", len(frame), path)
        return path

    @staticmethod
    def meta_path(path: Path) -> Path:
        return Path(f"{path}.meta.json")
