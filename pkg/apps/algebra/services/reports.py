"""
Validation reports.

Law checks never raise: each check appends a CheckResult, and callers decide
whether a failed report is an error.
"""
import logging
from dataclasses import dataclass, field

logger = logging.getLogger(__name__)


@dataclass
class CheckResult:
    name: str
    passed: bool
    witness: str = ''
    detail: str = ''

    def to_dict(self) -> dict:
        return {
            'name': self.name,
            'passed': self.passed,
            'witness': self.witness,
            'detail': self.detail,
        }


@dataclass
class ValidationReport:
    """Ordered list of check outcomes for one validation run."""

    subject: str
    checks: list = field(default_factory=list)

    def record(self, name: str, passed: bool, witness: str = '', detail: str = '') -> bool:
        self.checks.append(CheckResult(name, passed, witness, detail))
        if not passed:
            logger.debug(f'{self.subject}: {name} failed at {witness} {detail}'.rstrip())
        return passed

    def extend(self, other: 'ValidationReport', prefix: str = ''):
        for check in other.checks:
            name = f'{prefix}{check.name}' if prefix else check.name
            self.checks.append(CheckResult(name, check.passed, check.witness, check.detail))

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> list:
        return [check for check in self.checks if not check.passed]

    def witnesses(self, name: str | None = None) -> list:
        return [
            check.witness for check in self.failures
            if name is None or check.name == name
        ]

    def counts(self) -> dict:
        failed = len(self.failures)
        return {'total': len(self.checks), 'passed': len(self.checks) - failed, 'failed': failed}

    def to_dict(self) -> dict:
        return {
            'subject': self.subject,
            'passed': self.passed,
            'counts': self.counts(),
            'checks': [check.to_dict() for check in self.checks],
        }
