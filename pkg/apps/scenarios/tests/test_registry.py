from django.test import SimpleTestCase as DjangoSimpleTestCase, override_settings

from apps.algebra.exceptions import ParseError, UnknownScenarioError
from apps.algebra.services.linear import Combination
from apps.algebra.services.scalars import parse_scalar
from apps.scenarios.services.config import ScenarioConfig
from apps.scenarios.services.registry import MULTIPLICATIVE_T, SCENARIOS, available_scenarios, run_scenario
from apps.scenarios.services.reporter import ScenarioReporter
from apps.scenarios.services.results import Quantity


def _quantity(result, name):
    return next(quantity for quantity in result.quantities if quantity.name == name)


class ScenarioConfigTests(DjangoSimpleTestCase):

    def test_cap_below_two_is_rejected(self):
        with self.assertRaises(ParseError):
            ScenarioConfig(scenario='hopf-3d', cap=1)

    def test_unknown_mode_is_rejected(self):
        with self.assertRaises(ParseError):
            ScenarioConfig(scenario='hopf-3d', mode='symmetric')

    def test_scalar_options_must_parse(self):
        with self.assertRaises(ParseError):
            ScenarioConfig(scenario='hopf-4dplus', t='1/(')

    @override_settings(BUNDLECALC_DEGREE_CAP=5, BUNDLECALC_QUOTIENT_MODE='exterior', BUNDLECALC_MU_VALUE='')
    def test_from_options_falls_back_to_settings(self):
        config = ScenarioConfig.from_options('hopf-3d', cap=None, lam='2')
        self.assertEqual(config.cap, 5)
        self.assertEqual(config.mode, 'exterior')
        self.assertEqual(config.lam, '2')
        self.assertIsNone(config.mu_value)


class QuantityTests(DjangoSimpleTestCase):

    def test_expected_value_beats_target_text(self):
        one = Combination.monomial(())
        quantity = Quantity('x', 'rendered differently', 'target', one, one)
        self.assertTrue(quantity.matched)

    def test_target_text(self):
        self.assertTrue(Quantity('x', '0', '0').matched)
        self.assertFalse(Quantity('x', '1', '0').matched)

    def test_informational_quantity_always_matches(self):
        self.assertTrue(Quantity('x', 'anything').matched)

    def test_spot_check_needs_both_values(self):
        self.assertIsNone(Quantity('x', '0', '0').spot_check(parse_scalar('2')))


class RegistryTests(DjangoSimpleTestCase):

    def test_available_scenarios(self):
        ids = [entry['id'] for entry in available_scenarios()]
        self.assertEqual(ids, list(SCENARIOS))
        for scenario_id in ('hopf-3d', 'hopf-4dplus', 'hopf-classical', 'trivial-default', 'line-bundle',
                            'trivial-transgression', 'hopf-reconstruct'):
            self.assertIn(scenario_id, ids)

    def test_unknown_scenario(self):
        with self.assertRaises(UnknownScenarioError) as ctx:
            run_scenario(ScenarioConfig(scenario='hopf-5d'))
        self.assertEqual(str(ctx.exception), "unknown scenario 'hopf-5d'")


class HopfScenarioTests(DjangoSimpleTestCase):

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.result = run_scenario(ScenarioConfig(scenario='hopf-3d', cap=3))

    def test_passes(self):
        self.assertTrue(self.result.passed, [q.name for q in self.result.mismatches] + self.result.report.failures)
        self.assertEqual(self.result.exit_code, 0)

    def test_curvature_line(self):
        self.assertIn('R(zeta) = mu*(1+mu^2)*em*ep', ScenarioReporter(self.result).generate_text())

    def test_horizontal_relations(self):
        self.assertEqual(_quantity(self.result, 'relation ep*em').rendered, 'ep*em = -mu^2*em*ep')

    def test_classification(self):
        self.assertEqual(_quantity(self.result, 'regular').rendered, 'yes')
        self.assertEqual(_quantity(self.result, 'multiplicative').rendered, 'yes')


class FamilyScenarioTests(DjangoSimpleTestCase):

    def test_symbolic_t_is_neither_regular_nor_multiplicative(self):
        result = run_scenario(ScenarioConfig(scenario='hopf-4dplus', cap=3))
        self.assertTrue(result.passed, [q.name for q in result.mismatches])
        self.assertEqual(_quantity(result, 'regular').rendered, 'no')
        self.assertEqual(_quantity(result, 'multiplicative').rendered, 'no')
        self.assertTrue(any(q.name == 'regularity defect' for q in result.quantities))

    def test_special_t_is_flat_and_multiplicative(self):
        result = run_scenario(ScenarioConfig(scenario='hopf-4dplus', cap=3, t=MULTIPLICATIVE_T))
        self.assertTrue(result.passed, [q.name for q in result.mismatches])
        text = ScenarioReporter(result).generate_text()
        self.assertIn('curvature = 0', text)
        self.assertIn('multiplicative = yes', text)


class TrivialScenarioTests(DjangoSimpleTestCase):

    def test_trivial_default(self):
        result = run_scenario(ScenarioConfig(scenario='trivial-default', cap=3))
        self.assertTrue(result.passed, result.report.failures)
        self.assertEqual(_quantity(result, 'curvature').rendered, '0')

    def test_line_bundle_on_default_base(self):
        result = run_scenario(ScenarioConfig(scenario='line-bundle', cap=3, lam='2'))
        self.assertTrue(result.passed, [q.name for q in result.mismatches])
        self.assertEqual(_quantity(result, 'omega(zeta)^2').rendered, '0')

    def test_line_bundle_with_nonzero_square_fails(self):
        result = run_scenario(ScenarioConfig(scenario='line-bundle', cap=3, lam='2', omega_sq='nonzero'))
        self.assertFalse(result.passed)
        self.assertEqual(result.exit_code, 1)
        names = [quantity.name for quantity in result.mismatches]
        self.assertIn('omega(zeta)^2', names)
        self.assertIn('multiplicative', names)
        self.assertIn('mismatch multiplicative:', ScenarioReporter(result).generate_text())

    def test_transgression(self):
        result = run_scenario(ScenarioConfig(scenario='trivial-transgression', cap=3))
        self.assertTrue(result.passed, [q.name for q in result.mismatches] + result.report.failures)
        self.assertEqual(_quantity(result, 'residual').rendered, '0')

    def test_transgression_raises_a_low_cap(self):
        result = run_scenario(ScenarioConfig(scenario='trivial-transgression', cap=3))
        self.assertTrue(_quantity(result, 'integral of psi').matched)
        self.assertTrue(_quantity(result, 'R_tau(x)(zeta (x) zeta)').matched)
        self.assertEqual(result.exit_code, 0)

    def test_mu_spot_check(self):
        result = run_scenario(ScenarioConfig(scenario='trivial-transgression', cap=3, mu_value='2'))
        spot = [check for check in result.report.checks if check.name == 'mu_spot_check']
        self.assertTrue(spot)
        self.assertTrue(all(check.passed for check in spot))


class ReconstructionScenarioTests(DjangoSimpleTestCase):

    def test_reconstruction_is_vertical(self):
        result = run_scenario(ScenarioConfig(scenario='hopf-reconstruct', cap=3))
        self.assertTrue(result.passed, result.report.failures)
        names = {check.name for check in result.report.checks}
        self.assertIn('vertical_product', names)
        self.assertIn('vertical_differential', names)
