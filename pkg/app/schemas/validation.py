"""
Validation Report Schemas
"""
from typing import List

from pydantic import BaseModel


class CheckResult(BaseModel):
    name: str
    claim: str
    computed: str
    tolerance: str
    passed: bool
    binding: bool = True  # informational rows never fail the suite
    runtime_s: float = 0.0
    detail: str = ""

    @property
    def status(self) -> str:
        if self.passed:
            return "PASS"
        return "FAIL" if self.binding else "INFO"


class ValidationReport(BaseModel):
    checks: List[CheckResult]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks if check.binding)
