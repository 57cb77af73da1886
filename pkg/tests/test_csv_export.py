import json

import pandas as pd
import pytest

from app.core.exceptions import OutputWriteError
from app.schemas.state import EmitterState, HybridState, SteadyStateResult
from app.schemas.sweep import BaselineKind, SweepCurve, SweepPoint
from app.services.csv_export_service import SWEEP_COLUMNS, CsvExportService


def make_curve(n_emitters: int = 1) -> SweepCurve:
    baseline = 1.0000000000000002e-12
    points = []
    for index, factor in enumerate([9.999800003999921e-11, 0.123456789012345678, 1196.4837261]):
        points.append(SweepPoint(
            param_value=1.3 + 0.1 * index,
            fwm_intensity=factor * baseline,
            factor=factor,
            rho_ee=(1e-14 * (index + 1),) * n_emitters,
            converged=index != 1,
        ))
    return SweepCurve(
        points=points, baseline_intensity=baseline,
        baseline_kind=BaselineKind.RESONANT_NO_EMITTER, target="omega_eg", solver="fixed_point",
    )


def test_sweep_csv_layout(tmp_path):
    path = CsvExportService().emit_csv(make_curve(), tmp_path / "curve.csv")
    lines = path.read_text().splitlines()

    assert len(lines) == 4
    assert lines[0] == ",".join(SWEEP_COLUMNS)
    assert lines[1].split(",")[4] == ""
    assert lines[2].endswith("False")


def test_factor_times_baseline_round_trips_exactly(tmp_path):
    path = CsvExportService().emit_csv(make_curve(), tmp_path / "curve.csv")
    frame = pd.read_csv(path, float_precision="round_trip")
    meta = json.loads(CsvExportService.meta_path(path).read_text())

    assert meta["kind"] == "sweep"
    assert list(frame["factor"] * meta["baseline_intensity"]) == list(frame["fwm_intensity"])
    assert list(frame["param_value"]) == [point.param_value for point in make_curve().points]


def test_two_emitter_sweep_fills_second_population(tmp_path):
    path = CsvExportService().emit_csv(make_curve(n_emitters=2), tmp_path / "curve.csv")
    frame = pd.read_csv(path, float_precision="round_trip")
    assert list(frame["rho_ee_2"]) == [1e-14, 2e-14, 3e-14]


def test_identical_input_gives_identical_bytes(tmp_path):
    service = CsvExportService()
    first = service.emit_csv(make_curve(), tmp_path / "a.csv").read_bytes()
    second = service.emit_csv(make_curve(), tmp_path / "b.csv").read_bytes()
    assert first == second


def test_steady_state_row(tmp_path):
    result = SteadyStateResult(
        state=HybridState(alpha=(0.1 + 0j, 0.1 - 0.02j, 3e-9j), emitters=(EmitterState(rho_ge=1e-8j, rho_ee=1e-14),)),
        converged=True, final_residual=1e-12, elapsed_sim_time=5000.0,
    )
    path = CsvExportService().emit_csv(result, tmp_path / "state.csv", {"preset": "fig1"})
    frame = pd.read_csv(path, float_precision="round_trip")

    assert len(frame) == 1
    assert frame.loc[0, "alpha3_im"] == 3e-9
    assert frame.loc[0, "fwm_intensity"] == result.fwm_intensity
    assert json.loads(CsvExportService.meta_path(path).read_text())["preset"] == "fig1"


def test_unwritable_destination(tmp_path):
    blocker = tmp_path / "file.txt"
    blocker.write_text("x")
    with pytest.raises(OutputWriteError):
        CsvExportService().emit_csv(make_curve(), blocker / "curve.csv")
