from django.test import SimpleTestCase as DjangoSimpleTestCase
from hypothesis import given, settings, strategies as st
from hypothesis.extra.django import SimpleTestCase

from apps.algebra.exceptions import DomainMismatchError, InvalidConnectionError, NotInIdealError, ParseError
from apps.algebra.services.linear import ZERO_COMBINATION, Combination
from apps.algebra.services.scalars import Scalar, parse_scalar
from apps.bundles.services.connections import (
    bianchi_residual,
    bracket,
    build_connection,
    connection_from_potential,
    connection_report,
    curvature,
    horizontal_project,
    is_multiplicative,
    is_regular,
    m_omega_inverse,
    multiplicativity_defect,
    multiplicativity_witnesses,
    regularity_defect,
    regularity_witnesses,
    trivial_bundle_report,
)
from apps.bundles.services.loader import load_bundle


def _checks(report, name):
    return [check for check in report.checks if check.name == name]


class HopfConnectionTests(DjangoSimpleTestCase):

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.bundle = load_bundle('hopf-3d')
        cls.omega = build_connection(cls.bundle)

    def test_curvature_value(self):
        value = curvature(self.omega).images[0]
        self.assertEqual(self.bundle.total.render(value), 'mu*(1+mu^2)*em*ep')

    def test_curvature_is_tensorial_and_horizontal(self):
        curvature_map = curvature(self.omega)
        self.assertTrue(curvature_map.is_tensorial())
        self.assertTrue(curvature_map.is_horizontal())

    def test_canonical_connection_is_regular_and_multiplicative(self):
        self.assertTrue(is_regular(self.omega))
        self.assertTrue(is_multiplicative(self.omega))

    def test_connection_report(self):
        report = connection_report(self.omega)
        self.assertTrue(report.passed, report.failures)
        self.assertTrue(_checks(report, 'bianchi'))

    def test_laws_of_a_regular_multiplicative_connection(self):
        report = connection_report(self.omega)
        for name in ('D_leibniz', 'D_hermitian', 'D_squared', 'dr_omega'):
            checks = _checks(report, name)
            self.assertTrue(checks, name)
            self.assertTrue(all(check.passed for check in checks), [check.witness for check in checks])

    def test_bianchi_sides_agree(self):
        left, right = bianchi_residual(self.omega)
        self.assertEqual(left.images, right.images)

    def test_horizontal_projection(self):
        total = self.bundle.total
        alpha = Combination.monomial((((0,), ()), ()))
        self.assertEqual(horizontal_project(self.omega, alpha), alpha)
        self.assertEqual(horizontal_project(self.omega, self.omega.images[0]), ZERO_COMBINATION)
        self.assertEqual(horizontal_project(self.omega, total.mul(alpha, self.omega.images[0])), ZERO_COMBINATION)

    def test_defect_needs_an_ideal_element(self):
        z = self.bundle.group.element([('1', ['z'])])
        with self.assertRaises(NotInIdealError):
            multiplicativity_defect(self.omega, z)
        for generator in self.bundle.calculus.ideal:
            self.assertEqual(multiplicativity_defect(self.omega, generator), ZERO_COMBINATION)

    def test_unknown_bracket(self):
        with self.assertRaises(ParseError):
            bracket('anti', self.omega, self.omega)


class ClassicalConnectionTests(DjangoSimpleTestCase):

    def test_flat_connection(self):
        omega = build_connection(load_bundle('hopf-classical'))
        self.assertFalse(curvature(omega))
        report = connection_report(omega)
        self.assertTrue(report.passed, report.failures)


class FourDimensionalFamilyTests(DjangoSimpleTestCase):

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.bundle = load_bundle('hopf-4dplus')
        cls.omega = build_connection(cls.bundle)

    def test_curvature_of_the_family(self):
        bundle, total = self.bundle, self.bundle.total
        tau, eta = bundle.space_form('tau'), bundle.space_form('eta')
        coefficient = parse_scalar('mu*t/(1-mu^2) + mu/((1-mu)*(1-mu^3))')
        expected = (total.mul(tau, eta) + total.mul(eta, tau)).scale(coefficient)
        self.assertEqual(curvature(self.omega).images[0], expected)

    def test_no_member_is_regular(self):
        self.assertTrue(regularity_witnesses(self.omega))
        fixed = self.omega.subs('t', '1/2')
        self.assertFalse(is_regular(fixed))

    def test_multiplicative_member(self):
        self.assertTrue(multiplicativity_witnesses(self.omega))
        special = self.omega.subs('t', '-(1+mu)/(1-mu^3)')
        self.assertEqual(multiplicativity_witnesses(special), [])

    def test_parameter_from_the_caller(self):
        omega = build_connection(self.bundle, params={'t': '0'})
        self.assertEqual(omega.images[0], self.bundle.space_form('eta'))

    def test_no_horizontal_projection_on_the_total_space(self):
        with self.assertRaises(DomainMismatchError):
            m_omega_inverse(self.omega, self.omega.images[0])

    def test_laws_implied_by_regularity_are_skipped(self):
        report = connection_report(self.omega)
        self.assertTrue(_checks(report, 'regular'))
        self.assertFalse(any(check.passed for check in _checks(report, 'regular')))
        for name in ('D_leibniz', 'D_hermitian', 'D_squared', 'dr_omega'):
            self.assertEqual(_checks(report, name), [], name)


class TrivialConnectionTests(DjangoSimpleTestCase):

    def test_flat_potential(self):
        omega = build_connection(load_bundle('trivial-default'))
        self.assertFalse(curvature(omega))
        self.assertTrue(is_regular(omega))
        report = trivial_bundle_report(omega)
        self.assertTrue(report.passed, report.failures)

    def test_line_bundle_regularity_defect(self):
        bundle = load_bundle('line-bundle', params={'lambda': '2'})
        omega = build_connection(bundle)
        z = Combination.monomial((((), (0,)), ()))
        expected = Combination.monomial((((0,), (0,)), ()), parse_scalar('-i'))
        self.assertEqual(regularity_defect(omega, 0, z), expected)
        self.assertFalse(is_regular(omega))

    def test_square_of_the_connection_depends_on_the_base(self):
        flat = load_bundle('line-bundle')
        omega = build_connection(flat)
        self.assertEqual(flat.total.mul(omega.images[0], omega.images[0]), ZERO_COMBINATION)
        free = load_bundle('line-bundle', base='free')
        omega = build_connection(free)
        self.assertNotEqual(free.total.mul(omega.images[0], omega.images[0]), ZERO_COMBINATION)

    def test_field_strength_on_the_exact_base(self):
        bundle = load_bundle('trivial-transgression')
        tau = build_connection(bundle, bundle.pack['second_connection'])
        f = bundle.total.embed_left(bundle.hor.embed_left(bundle.base.letter('f')))
        self.assertEqual(curvature(tau).images[0], f.scale(parse_scalar('i')))
        report = trivial_bundle_report(tau)
        self.assertTrue(report.passed, report.failures)

    def test_bianchi_for_a_curved_potential(self):
        bundle = load_bundle('trivial-transgression')
        tau = build_connection(bundle, bundle.pack['second_connection'])
        self.assertTrue(curvature(tau))
        left, right = bianchi_residual(tau)
        for letter, name in enumerate(bundle.calculus.basis):
            self.assertEqual(left.images[letter], right.images[letter], name)
        checks = _checks(connection_report(tau), 'bianchi')
        self.assertEqual(len(checks), len(bundle.calculus.basis))
        self.assertTrue(all(check.passed for check in checks))

    def test_potential_must_be_hermitian(self):
        bundle = load_bundle('trivial-default')
        with self.assertRaises(InvalidConnectionError):
            build_connection(bundle, {'kind': 'potential', 'zeta': [['1', ['e1']]]})

    def test_potential_needs_a_trivial_bundle(self):
        with self.assertRaises(DomainMismatchError):
            build_connection(load_bundle('hopf-3d'), {'kind': 'potential', 'zeta': []})

    def test_unknown_connection_kind(self):
        with self.assertRaises(ParseError):
            build_connection(load_bundle('trivial-default'), {'kind': 'spin'})


class PotentialPropertyTests(SimpleTestCase):

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.bundle = load_bundle('trivial-default', cap=3)

    @settings(max_examples=5, deadline=None)
    @given(st.integers(-3, 3), st.integers(-3, 3))
    def test_real_potentials_give_connections(self, first, second):
        base = self.bundle.base
        potential = base.letter('e1').scale(Scalar.rational(first)) + base.letter('e2').scale(Scalar.rational(second))
        omega = connection_from_potential(self.bundle, {0: potential.scale(parse_scalar('i'))})
        curvature_map = curvature(omega)
        self.assertTrue(curvature_map.is_tensorial())
        self.assertTrue(curvature_map.is_horizontal())
