"""
Computed quantities of a scenario and their targets.
"""
import logging
from dataclasses import dataclass, field

from apps.algebra.exceptions import PoleError
from apps.algebra.services.linear import Combination
from apps.algebra.services.reports import ValidationReport

logger = logging.getLogger(__name__)

# Checks that classify a connection instead of testing a law, including the
# regularity criteria on a gauge potential; scenarios compare the
# classification with its target as a quantity.
PROPERTY_CHECKS = ('regular', 'multiplicative', 'potential_graded_commutes', 'potential_counit_invariant')


def yes_no(flag: bool) -> str:
    return 'yes' if flag else 'no'


@dataclass
class Quantity:
    """
    One computed value, rendered in the scalars grammar.

    A quantity matches when its exact value equals the expected combination,
    or else when its rendering equals the target text; quantities without a
    target are informational.
    """

    name: str
    rendered: str
    target: str | None = None
    value: Combination | None = field(default=None, repr=False)
    expected: Combination | None = field(default=None, repr=False)

    @property
    def matched(self) -> bool:
        if self.expected is not None:
            return self.value == self.expected
        if self.target is not None:
            return self.rendered == self.target
        return True

    def spot_check(self, mu) -> bool | None:
        """Compare value and expected at mu; None when there is nothing to compare or mu is a pole."""
        if self.value is None or self.expected is None:
            return None
        try:
            return self.value.subs('mu', mu) == self.expected.subs('mu', mu)
        except PoleError as exc:
            logger.warning(f'{self.name}: no spot check at mu = {mu}: {exc}')
            return None

    def to_dict(self) -> dict:
        return {
            'name': self.name,
            'value': self.rendered,
            'target': self.target,
            'matched': self.matched,
        }


@dataclass
class ScenarioResult:
    scenario: str
    description: str
    quantities: list = field(default_factory=list)
    report: ValidationReport | None = None

    def add(self, name: str, rendered: str, target: str | None = None, value: Combination | None = None,
            expected: Combination | None = None) -> Quantity:
        quantity = Quantity(name, rendered, target, value, expected)
        self.quantities.append(quantity)
        return quantity

    @property
    def mismatches(self) -> list:
        return [quantity for quantity in self.quantities if not quantity.matched]

    @property
    def passed(self) -> bool:
        return not self.mismatches and (self.report is None or self.report.passed)

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def to_dict(self) -> dict:
        return {
            'scenario': self.scenario,
            'description': self.description,
            'passed': self.passed,
            'quantities': [quantity.to_dict() for quantity in self.quantities],
            'report': self.report.to_dict() if self.report is not None else None,
        }
