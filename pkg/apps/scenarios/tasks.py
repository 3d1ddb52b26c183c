"""
Celery tasks for scenario runs.
"""
from celery import shared_task
import logging

from apps.algebra.exceptions import BundleCalcError

logger = logging.getLogger(__name__)


@shared_task(bind=True, max_retries=3)
def run_scenario_task(self, scenario_id: str, options: dict | None = None):
    """
    Run a scenario in the background.

    Args:
        scenario_id: Registered scenario id
        options: ScenarioConfig options, e.g. {'cap': 3, 't': '1/2'}

    Returns:
        The report summary, with exit_code 2 and an error message when the
        configuration is rejected
    """
    from .services.config import ScenarioConfig
    from .services.registry import run_scenario
    from .services.reporter import ScenarioReporter

    try:
        config = ScenarioConfig.from_options(scenario_id, **(options or {}))
        return ScenarioReporter(run_scenario(config)).generate_summary()
    except BundleCalcError as e:
        logger.warning(f"Scenario {scenario_id} rejected: {e}")
        return {'scenario': scenario_id, 'error': str(e), 'exit_code': 2}
    except Exception as e:
        logger.error(f"Error in run_scenario_task: {e}")
        # Retry with exponential backoff
        raise self.retry(exc=e, countdown=60 * (2 ** self.request.retries))
