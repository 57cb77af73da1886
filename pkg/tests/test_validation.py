import pytest

from app.cli.validate import format_report
from app.core.exceptions import NonConvergenceError
from app.main import main
from app.schemas.state import IntegrationSettings
from app.schemas.validation import CheckResult, ValidationReport
from app.services.validation_service import ValidationService


def check(passed: bool, binding: bool = True) -> CheckResult:
    return CheckResult(name="c", claim="", computed="", tolerance="", passed=passed, binding=binding)


def test_informational_rows_do_not_fail_the_suite():
    report = ValidationReport(checks=[check(True), check(False, binding=False)])
    assert report.passed
    assert [c.status for c in report.checks] == ["PASS", "INFO"]


def test_binding_failure_fails_the_suite():
    report = ValidationReport(checks=[check(True), check(False)])
    assert not report.passed
    assert "validation FAIL" in format_report(report)


def test_errors_become_failed_rows():
    service = ValidationService()

    def check_exploding():
        raise NonConvergenceError("no steady state")

    rows = service._timed(check_exploding)
    assert len(rows) == 1
    assert rows[0].name == "exploding"
    assert not rows[0].passed
    assert rows[0].detail == "no steady state"


@pytest.mark.parametrize("name", [
    "check_reduction_identity",
    "check_root_oracle",
    "check_population_peak",
    "check_pump_insensitivity",
])
def test_fast_checks_pass(name):
    rows = getattr(ValidationService(), name)()
    assert all(row.passed for row in rows if row.binding)


@pytest.mark.slow
def test_full_suite_passes():
    report = ValidationService().run_validation_suite()
    failed = [row.name for row in report.checks if row.binding and not row.passed]
    assert failed == []


def test_loose_integrator_is_caught():
    service = ValidationService(IntegrationSettings(rel_tol=1e-3))
    rows = service._timed(service.check_frame_equivalence)
    assert any(row.binding and not row.passed for row in rows)


@pytest.mark.slow
def test_validate_command_fails_with_loose_tolerance(capsys):
    assert main(["validate", "--rel-tol", "1e-3"]) == 1
    failing = [line for line in capsys.readouterr().out.splitlines() if " FAIL " in line]
    assert any("frame_equivalence" in line for line in failing)


@pytest.mark.slow
def test_calibrated_pump_row_is_informational():
    rows = ValidationService().check_calibrated_pump()
    assert [row.name for row in rows] == ["fig3_calibrated_pump"]
    assert not rows[0].binding
    assert rows[0].status in ("PASS", "INFO")
