from django.test import SimpleTestCase as DjangoSimpleTestCase

from apps.algebra.exceptions import CapExceededError, NonRegularError, ParseError
from apps.algebra.services.linear import ZERO_COMBINATION, Combination
from apps.bundles.services.connections import build_connection, curvature
from apps.bundles.services.loader import load_bundle
from apps.bundles.services.weil import evaluate_tensor, invariant_space, parse_tensor, transgress, weil_eval
from apps.calculus.services.focalc import load_calculus

ZETA = Combination.monomial((0,))
ZETA_SQUARED = Combination.monomial((0, 0))


class InvariantTensorTests(DjangoSimpleTestCase):

    def test_circle_invariants(self):
        calculus = load_calculus('u1-classical')
        self.assertEqual(len(invariant_space(calculus, 1)), 1)
        self.assertEqual(len(invariant_space(calculus, 2)), 1)

    def test_parse_tensor(self):
        calculus = load_calculus('u1-classical')
        self.assertEqual(parse_tensor(calculus, [['1', ['zeta', 'zeta']]]), ZETA_SQUARED)
        with self.assertRaises(ParseError):
            parse_tensor(calculus, [['1', ['zeta']], ['1', ['zeta', 'zeta']]])
        with self.assertRaises(ParseError):
            parse_tensor(calculus, [['1', ['eta']]])


class HopfWeilTests(DjangoSimpleTestCase):

    def test_first_class(self):
        bundle = load_bundle('hopf-3d')
        value, report = weil_eval(build_connection(bundle), ZETA)
        self.assertEqual(bundle.total.render(value), 'mu*(1+mu^2)*em*ep')
        self.assertTrue(report.passed, report.failures)

    def test_irregular_family(self):
        bundle = load_bundle('hopf-4dplus')
        with self.assertRaises(NonRegularError):
            weil_eval(build_connection(bundle), ZETA)


class TransgressionTests(DjangoSimpleTestCase):

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.bundle = load_bundle('trivial-transgression')
        cls.omega = build_connection(cls.bundle)
        cls.tau = build_connection(cls.bundle, cls.bundle.pack['second_connection'])

    def _lift(self, x):
        return self.bundle.total.embed_left(self.bundle.hor.embed_left(x))

    def test_transgression_between_flat_and_curved(self):
        base, total = self.bundle.base, self.bundle.total
        result = transgress(self.omega, self.tau, ZETA_SQUARED)
        self.assertEqual(result.residual, ZERO_COMBINATION)
        self.assertTrue(result.report.passed, result.report.failures)
        self.assertEqual(result.integral, -self._lift(base.mul(base.letter('e1'), base.letter('f'))))
        f = self._lift(base.letter('f'))
        self.assertEqual(evaluate_tensor(curvature(self.tau), ZETA_SQUARED), -total.mul(f, f))
        self.assertIn('residual', result.to_dict(total))

    def test_equal_endpoints(self):
        result = transgress(self.tau, self.tau, ZETA_SQUARED)
        self.assertEqual(result.psi, ZERO_COMBINATION)
        self.assertEqual(result.residual, ZERO_COMBINATION)

    def test_irregular_endpoint(self):
        bundle = load_bundle('line-bundle', params={'lambda': '2'})
        omega = build_connection(bundle)
        with self.assertRaises(NonRegularError):
            transgress(omega, omega, ZETA_SQUARED)


    def test_rank_two_needs_degree_four(self):
        bundle = load_bundle('trivial-transgression', cap=3)
        omega = build_connection(bundle)
        tau = build_connection(bundle, bundle.pack['second_connection'])
        with self.assertRaises(CapExceededError) as ctx:
            transgress(omega, tau, ZETA_SQUARED)
        self.assertEqual(ctx.exception.cap, 3)
