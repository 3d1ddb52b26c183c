from django.test import SimpleTestCase as DjangoSimpleTestCase

from apps.algebra.exceptions import (
    DomainMismatchError,
    InvalidSplittingError,
    PackNotFoundError,
    ParseError,
    ReconstructionPreconditionError,
)
from apps.algebra.services.linear import Combination, join_labels
from apps.algebra.services.packs import load_pack
from apps.algebra.services.scalars import parse_scalar
from apps.bundles.services.base import make_base_dga
from apps.bundles.services.bundlecalc import omega_build
from apps.bundles.services.crossed import GradedTensorProduct
from apps.bundles.services.homogeneous import lp_relations
from apps.bundles.services.loader import available_bundles, bundle_from_pack, load_bundle
from apps.calculus.services.focalc import load_calculus
from apps.calculus.services.grext import build_invariant_forms


class HopfBundleTests(DjangoSimpleTestCase):

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.bundle = load_bundle('hopf-3d')

    def test_bundle_laws(self):
        report = self.bundle.validate()
        self.assertTrue(report.passed, report.failures)

    def test_horizontal_relations(self):
        relations = self.bundle.lstar.render_relations(2)
        for expected in ('ep*ep = 0', 'ep*em = -mu^2*em*ep', 'em*em = 0'):
            self.assertIn(expected, relations)

    def test_cross_relations(self):
        rows = lp_relations(self.bundle)
        self.assertEqual(len(rows), 6)
        self.assertIn('zeta*zeta = 0', rows)
        total = self.bundle.total
        ep = total.embed_left(self.bundle.hor.embed_right(self.bundle.lstar.letter('ep')))
        product = total.mul(self.bundle.form('zeta'), ep)
        self.assertEqual(set(product.keys()), set(total.mul(ep, self.bundle.form('zeta')).keys()))
        with self.assertRaises(DomainMismatchError):
            lp_relations(load_bundle('trivial-default'))

    def test_covariant_derivative_of_alpha(self):
        hor = self.bundle.hor
        alpha = Combination.monomial(((0,), ()))
        expected = Combination.monomial(((3,), (0,)), parse_scalar('-mu'))
        self.assertEqual(hor.d(alpha), expected)

    def test_translation_pairs(self):
        space, group = self.bundle.space, self.bundle.group
        pairs = self.bundle.translation(group.element([('1', ['z'])]))
        rendered = {(space.render(q), space.render(b)) for q, b in pairs}
        self.assertEqual(rendered, {('alpha*', 'alpha'), ('gamma*', 'gamma')})

    def test_curvature_from_the_horizontal_differential(self):
        group = self.bundle.group
        a = group.element([('1', ['z']), ('-1', [])])
        expected = self.bundle.curvature_table[0].scale(parse_scalar('1/(1+mu^2)'))
        self.assertEqual(self.bundle.curvature_from_D(a), expected)

    def test_functions_on_the_base(self):
        basis = self.bundle.omega_M_basis(0, max_length=2)
        self.assertEqual(len(basis), 4)
        for label, element in self.bundle.base_generators:
            self.assertTrue(self.bundle.in_base(element), label)

    def test_degree_above_the_cap_is_empty(self):
        self.assertEqual(self.bundle.omega_M_basis(self.bundle.cap + 1), [])

    def test_starred_generators_render_unambiguously(self):
        space, vertical = self.bundle.space, self.bundle.vertical
        starred = Combination.monomial((space.letters('alpha*'), (0,)))
        self.assertEqual(vertical.render(starred), '(alpha*)*zeta')
        plain = Combination.monomial((space.letters('gamma', 'alpha*'), ()))
        self.assertEqual(vertical.render(plain), 'gamma.alpha*')
        self.assertEqual(join_labels(['alpha*', 'gamma*', 'tau']), '(alpha*)*(gamma*)*tau')
        self.assertEqual(join_labels(['alpha*', 'tau'], ' (x) '), 'alpha* (x) tau')


class FamilyBundleTests(DjangoSimpleTestCase):

    def test_classical_bundle(self):
        report = load_bundle('hopf-classical').validate()
        self.assertTrue(report.passed, report.failures)

    def test_trivial_bundle(self):
        bundle = load_bundle('trivial-default')
        report = bundle.validate()
        self.assertTrue(report.passed, report.failures)
        e1 = bundle.total.embed_left(bundle.hor.embed_left(bundle.base.letter('e1')))
        self.assertTrue(bundle.in_base(e1))

    def test_reconstruction_reproduces_the_vertical_algebra(self):
        bundle = load_bundle('hopf-reconstruct')
        report = bundle.validate()
        self.assertTrue(report.passed, report.failures)
        alpha = Combination.monomial(((0,), ()))
        zeta = Combination.monomial(((), (0,)))
        self.assertEqual(bundle.total.mul(zeta, alpha), bundle.vertical.mul(zeta, alpha))
        self.assertEqual(bundle.total.d(alpha), bundle.vertical.d(alpha))

    def test_total_space_bundle(self):
        bundle = load_bundle('hopf-4dplus')
        report = bundle.validate()
        self.assertTrue(report.passed, report.failures)
        for label, element in bundle.horizontal_forms.items():
            self.assertTrue(bundle.is_horizontal(element), label)

    def test_line_bundle_parameters(self):
        bundle = load_bundle('line-bundle', params={'lambda': '2'})
        self.assertEqual(bundle.parameters['lambda'], '2')
        self.assertEqual(bundle.kind, 'trivial')

    def test_available_bundles(self):
        self.assertIn('hopf-3d', available_bundles())
        self.assertIn('trivial-transgression', available_bundles())


class ReconstructionPreconditionTests(DjangoSimpleTestCase):

    def test_curvature_that_breaks_the_square_law(self):
        calculus = load_calculus('u1-line')
        group = calculus.group
        forms = build_invariant_forms(calculus, 'envelope', 3)
        base = make_base_dga('default', cap=3)
        hor = GradedTensorProduct('bad:hor', base, group, cap=3)

        def twist(key):
            form, word = key
            return group.coproduct_word(word).map_keys(lambda pair: ((form, pair[0]), pair[1]))

        generators = [('z', Combination.monomial(((), (0,))))]
        with self.assertRaises(ReconstructionPreconditionError) as caught:
            omega_build('bad', hor, forms, twist, lambda letter: Combination.monomial(((0,), ())), generators, 3)
        self.assertTrue(caught.exception.condition)


class BundlePackErrorTests(DjangoSimpleTestCase):

    def test_unknown_pack(self):
        with self.assertRaises(PackNotFoundError):
            load_bundle('no-such-bundle')

    def test_unknown_type(self):
        with self.assertRaises(ParseError):
            bundle_from_pack({'name': 'odd', 'type': 'spherical', 'calculus': 'u1-line'})

    def test_missing_calculus(self):
        with self.assertRaises(ParseError):
            bundle_from_pack({'name': 'odd', 'type': 'trivial'})

    def test_group_calculus_must_receive_the_ideal(self):
        data = dict(load_pack('bundles', 'hopf-3d', kind='bundle'), calculus='u1-classical')
        with self.assertRaises(InvalidSplittingError) as ctx:
            bundle_from_pack(data, cap=3)
        self.assertIn('j(R) is not contained in the ideal of u1-classical', str(ctx.exception))
        self.assertIn('maps to', str(ctx.exception))
