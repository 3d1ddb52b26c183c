"""
Scenario and suite report generation.

Output is deterministic: quantities keep their computation order, checks
keep the order of the batteries, and JSON keys are sorted.
"""
import json
from difflib import ndiff

from apps.algebra.services.reports import ValidationReport
from apps.scenarios.services.results import ScenarioResult


def dump_json(data: dict) -> str:
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + '\n'


def _failure_lines(report: ValidationReport) -> list[str]:
    lines = []
    for check in report.failures:
        line = f'FAILED {check.name} at {check.witness}'
        if check.detail:
            line += f': {check.detail}'
        lines.append(line)
    return lines


def _counts_line(report: ValidationReport) -> str:
    counts = report.counts()
    return f'checks: {counts["passed"]} passed, {counts["failed"]} failed'


class ScenarioReporter:
    """Generate reports from a scenario result."""

    def __init__(self, result: ScenarioResult):
        self.result = result

    def generate_summary(self) -> dict:
        result = self.result
        summary = result.to_dict()
        summary['exit_code'] = result.exit_code
        summary['mismatches'] = [quantity.name for quantity in result.mismatches]
        return summary

    def generate_json(self) -> str:
        return dump_json(self.generate_summary())

    def generate_text(self) -> str:
        result = self.result
        lines = [f'scenario {result.scenario}: {result.description}']
        for quantity in result.quantities:
            lines.append(f'{quantity.name} = {quantity.rendered}')
        for quantity in result.mismatches:
            lines.append(f'mismatch {quantity.name}:')
            for line in ndiff([quantity.target or ''], [quantity.rendered]):
                if line[:1] in '-+':
                    lines.append(f'  {line}')
        if result.report is not None:
            lines.append(_counts_line(result.report))
            lines.extend(_failure_lines(result.report))
        lines.append(f'result: {"PASS" if result.passed else "FAIL"}')
        return '\n'.join(lines) + '\n'

    def render(self, output: str = 'text') -> str:
        return self.generate_json() if output == 'json' else self.generate_text()


class SuiteReporter:
    """Generate reports from a suite run."""

    def __init__(self, name: str, report: ValidationReport):
        self.name = name
        self.report = report

    def generate_summary(self, include_checks: bool = True) -> dict:
        report = self.report
        summary = {
            'suite': self.name,
            'passed': report.passed,
            'counts': report.counts(),
            'failures': [check.to_dict() for check in report.failures],
        }
        if include_checks:
            summary['checks'] = [check.to_dict() for check in report.checks]
        return summary

    def generate_text(self) -> str:
        lines = [f'suite {self.name}', _counts_line(self.report)]
        lines.extend(_failure_lines(self.report))
        lines.append(f'result: {"PASS" if self.report.passed else "FAIL"}')
        return '\n'.join(lines) + '\n'

    def render(self, output: str = 'text') -> str:
        return dump_json(self.generate_summary()) if output == 'json' else self.generate_text()
