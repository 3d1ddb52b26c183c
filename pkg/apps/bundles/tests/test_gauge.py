from django.test import SimpleTestCase as DjangoSimpleTestCase

from apps.algebra.exceptions import DomainMismatchError, ParseError
from apps.algebra.services.linear import ZERO_COMBINATION, Combination
from apps.algebra.services.scalars import parse_scalar
from apps.bundles.services.connections import build_connection
from apps.bundles.services.gauge import contract, gauge_apply, gauge_field, gauge_report, lie
from apps.bundles.services.loader import load_bundle


class HopfGaugeTests(DjangoSimpleTestCase):

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.bundle = load_bundle('hopf-3d')
        cls.omega = build_connection(cls.bundle)
        cls.zeta = gauge_field(cls.bundle, {'zeta': '1'})
        cls.unit = Combination.monomial(cls.bundle.total.unit_key)
        cls.alpha = Combination.monomial((((0,), ()), ()))

    def test_contraction_of_the_connection(self):
        self.assertEqual(contract(self.zeta, self.omega.images[0]), self.unit)

    def test_functions_contract_to_zero(self):
        self.assertEqual(contract(self.zeta, self.alpha), ZERO_COMBINATION)

    def test_lie_derivative_of_alpha(self):
        self.assertEqual(lie(self.zeta, self.alpha), self.alpha.scale(parse_scalar('1/(1+mu^2)')))

    def test_operators_by_name(self):
        self.assertEqual(gauge_apply('iota', self.zeta, self.omega.images[0]), self.unit)
        self.assertEqual(gauge_apply('lie', self.zeta, self.alpha), lie(self.zeta, self.alpha))

    def test_unknown_operator(self):
        with self.assertRaises(ParseError):
            gauge_apply('flow', self.zeta, self.alpha, self.omega)

    def test_unknown_form(self):
        with self.assertRaises(ParseError):
            gauge_field(self.bundle, {'xi': '1'})


class TrivialGaugeTests(DjangoSimpleTestCase):

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.bundle = load_bundle('trivial-transgression')
        cls.omega = build_connection(cls.bundle)
        cls.zeta = gauge_field(cls.bundle, {'zeta': '1'})

    def test_gauge_report(self):
        second = gauge_field(self.bundle, {'zeta': 'i'}, name='xi')
        report = gauge_report(self.omega, [self.zeta, second])
        self.assertTrue(report.passed, report.failures)
        names = {check.name for check in report.checks}
        self.assertIn('contract_first_order', names)
        self.assertIn('lie_bracket', names)

    def test_transported_contraction(self):
        unit = Combination.monomial(self.bundle.total.unit_key)
        self.assertEqual(gauge_apply('contract_star', self.zeta, self.omega.images[0], self.omega), unit)


class TotalSpaceGaugeTests(DjangoSimpleTestCase):

    def test_starred_operators_need_vh_form(self):
        bundle = load_bundle('hopf-4dplus')
        omega = build_connection(bundle)
        zeta = gauge_field(bundle, {'zeta': '1'})
        with self.assertRaises(DomainMismatchError):
            gauge_apply('contract_star', zeta, omega.images[0], omega)
