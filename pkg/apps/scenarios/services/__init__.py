from .config import ScenarioConfig
from .exports import EXPORT_KINDS, export_data, write_export
from .registry import SCENARIOS, available_scenarios, run_scenario
from .reporter import ScenarioReporter, SuiteReporter
from .results import Quantity, ScenarioResult
from .suites import SUITES, run_suite

__all__ = [
    'EXPORT_KINDS', 'SCENARIOS', 'SUITES', 'Quantity', 'ScenarioConfig', 'ScenarioReporter', 'ScenarioResult',
    'SuiteReporter', 'available_scenarios', 'export_data', 'run_scenario', 'run_suite', 'write_export',
]
