from django.test import SimpleTestCase as DjangoSimpleTestCase
from hypothesis import given, settings, strategies as st
from hypothesis.extra.django import SimpleTestCase

from apps.algebra.exceptions import ParseError, SpecIncompleteError
from apps.algebra.services.linear import ZERO_COMBINATION, Combination
from apps.algebra.services.packs import APPS_DIR, read_pack_file
from apps.algebra.services.scalars import parse_scalar
from apps.calculus.services.focalc import calculus_from_pack, load_calculus


class ThreeDimensionalCalculusTests(DjangoSimpleTestCase):

    def setUp(self):
        self.calculus = load_calculus('3d')
        self.group = self.calculus.group

    def test_germs_of_generators(self):
        pi = self.calculus.pi
        self.assertEqual(pi(self.group.word('gamma')), self.calculus.form('ep'))
        self.assertEqual(pi(self.group.word('alpha') - self.group.word('alpha*')), self.calculus.form('eta'))

    def test_germs_kill_the_ideal(self):
        self.assertEqual(self.calculus.pi(self.group.word('gamma', 'gamma')), ZERO_COMBINATION)
        self.assertEqual(self.calculus.pi(self.group.word('gamma', 'gamma*')), ZERO_COMBINATION)

    def test_germ_of_alpha_squared(self):
        expected = self.calculus.forms([('1/mu^2', 'eta')])
        self.assertEqual(self.calculus.pi(self.group.word('alpha', 'alpha')), expected)

    def test_right_action(self):
        eta = self.calculus.form('eta')
        self.assertEqual(self.calculus.circ(eta, self.group.word('alpha')), eta.scale(parse_scalar('mu^-2')))
        self.assertEqual(self.calculus.circ(eta, self.group.word('gamma')), ZERO_COMBINATION)

    def test_star_of_basis_forms(self):
        calculus = self.calculus
        self.assertEqual(calculus.star(calculus.form('eta')), -calculus.form('eta'))
        self.assertEqual(calculus.star(calculus.form('ep')), calculus.forms([('mu', 'em')]))
        self.assertEqual(calculus.star(calculus.form('em')), calculus.forms([('1/mu', 'ep')]))

    def test_tables_validate(self):
        report = self.calculus.validate(cap=2)
        self.assertTrue(report.passed, report.failures)

    def test_unknown_form(self):
        with self.assertRaises(ParseError):
            self.calculus.form('zeta')


class FourDimensionalCalculusTests(DjangoSimpleTestCase):

    def setUp(self):
        self.calculus = load_calculus('4d+')

    def test_tau_is_biinvariant(self):
        tau = self.calculus.form('tau')
        self.assertEqual(self.calculus.varpi(tau), Combination.monomial(((0,), ())))

    def test_braid_fixes_tau_square(self):
        key = (self.calculus.index['tau'], self.calculus.index['tau'])
        self.assertEqual(self.calculus.sigma_key(key), Combination.monomial(key))

    def test_right_action_on_the_transgression_form(self):
        calculus = self.calculus
        xi = calculus.forms([('1', 'tau'), ('(1-mu^3)/(1+mu)', 'eta')])
        alpha = calculus.group.word('alpha')
        self.assertEqual(calculus.circ(xi, alpha), xi.scale(parse_scalar('1/mu')))

    def test_tables_validate(self):
        report = self.calculus.validate(cap=2)
        self.assertTrue(report.passed, report.failures)


class CircleCalculusTests(DjangoSimpleTestCase):

    def test_germs_with_lambda_from_3d(self):
        calculus = load_calculus('u1-from-3d')
        zeta = calculus.form('zeta')
        self.assertEqual(calculus.pi(calculus.group.word('z')), zeta.scale(parse_scalar('1/(1+mu^2)')))
        self.assertEqual(calculus.circ(zeta, calculus.group.word('z')), zeta.scale(parse_scalar('mu^-2')))

    def test_star_and_commutator(self):
        calculus = load_calculus('u1-line')
        zeta = calculus.form('zeta')
        self.assertEqual(calculus.star(zeta), -zeta)
        self.assertEqual(calculus.ctop(zeta), ZERO_COMBINATION)

    def test_symbolic_line_calculus_validates(self):
        report = load_calculus('u1-line').validate(cap=3)
        self.assertTrue(report.passed, report.failures)

    def test_lambda_parameter_is_substituted(self):
        calculus = load_calculus('u1-line', params={'lambda': '2'})
        zeta = calculus.form('zeta')
        self.assertEqual(calculus.pi(calculus.group.word('z')), zeta.scale(parse_scalar('2/3')))

    def test_missing_preimage_is_rejected(self):
        data = read_pack_file(self._pack_path('u1-line'))
        data['preimages'] = {}
        with self.assertRaises(SpecIncompleteError):
            calculus_from_pack(data)

    def test_wrong_preimage_is_rejected(self):
        data = read_pack_file(self._pack_path('u1-line'))
        data['preimages'] = {'zeta': [['1', ['z']]]}
        with self.assertRaises(SpecIncompleteError):
            calculus_from_pack(data)

    @staticmethod
    def _pack_path(pack_id):
        return str(APPS_DIR / 'calculus' / 'packs' / f'{pack_id}.json')


class ClassicalCalculusTests(DjangoSimpleTestCase):

    def test_germs_and_action(self):
        calculus = load_calculus('classical')
        group = calculus.group
        tau = calculus.form('tau')
        self.assertEqual(calculus.pi(group.word('alpha')), tau.scale(parse_scalar('1/2')))
        self.assertEqual(calculus.pi(group.word('alpha*')), tau.scale(parse_scalar('-1/2')))
        self.assertEqual(calculus.circ(tau, group.word('alpha', 'alpha*')), tau)


class ModuleLawPropertyTests(SimpleTestCase):

    @settings(max_examples=20, deadline=None)
    @given(
        st.sampled_from(['eta', 'ep', 'em']),
        st.lists(st.sampled_from(['alpha', 'alpha*', 'gamma', 'gamma*']), max_size=3),
        st.lists(st.sampled_from(['alpha', 'alpha*', 'gamma', 'gamma*']), max_size=3),
    )
    def test_action_is_a_right_module(self, form, first, second):
        calculus = load_calculus('3d')
        group = calculus.group
        theta = calculus.form(form)
        a, b = group.word(*first), group.word(*second)
        self.assertEqual(calculus.circ(calculus.circ(theta, a), b), calculus.circ(theta, group.mul(a, b)))
