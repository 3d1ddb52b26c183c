from django.test import SimpleTestCase as DjangoSimpleTestCase

from apps.scenarios.tasks import run_scenario_task


class RunScenarioTaskTests(DjangoSimpleTestCase):

    def test_returns_summary(self):
        summary = run_scenario_task.apply(args=('trivial-default', {'cap': 3})).get()
        self.assertEqual(summary['scenario'], 'trivial-default')
        self.assertTrue(summary['passed'])
        self.assertEqual(summary['exit_code'], 0)

    def test_special_parameter(self):
        summary = run_scenario_task.apply(args=('hopf-4dplus', {'cap': 3, 't': '-(1+mu)/(1-mu^3)'})).get()
        values = {quantity['name']: quantity['value'] for quantity in summary['quantities']}
        self.assertEqual(values['curvature'], '0')
        self.assertEqual(values['multiplicative'], 'yes')

    def test_rejected_configuration(self):
        summary = run_scenario_task.apply(args=('hopf-5d',)).get()
        self.assertEqual(summary['exit_code'], 2)
        self.assertIn('hopf-5d', summary['error'])

    def test_invalid_cap(self):
        summary = run_scenario_task.apply(args=('hopf-3d', {'cap': 1})).get()
        self.assertEqual(summary['exit_code'], 2)
