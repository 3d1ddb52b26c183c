import copy

from django.test import SimpleTestCase as DjangoSimpleTestCase
from hypothesis import given, settings, strategies as st
from hypothesis.extra.django import SimpleTestCase

from apps.algebra.exceptions import DomainMismatchError, NonConfluentError, PackNotFoundError, ParseError
from apps.algebra.services.hopf import (
    HopfElement, HopfPresentation, load_group, load_restriction, multiply, presentation_from_pack,
    restrict_j, structure_map,
)
from apps.algebra.services.linear import ZERO_COMBINATION, Accumulator, Combination
from apps.algebra.services.packs import APPS_DIR, read_pack_file
from apps.algebra.services.scalars import ZERO, parse_scalar


class SUq2ProductTests(DjangoSimpleTestCase):

    def setUp(self):
        self.group = load_group('suq2')

    def test_commutation_is_reoriented(self):
        gamma, alpha = self.group.el('gamma'), self.group.el('alpha')
        self.assertEqual(gamma * alpha, parse_scalar('1/mu') * (alpha * gamma))

    def test_unitarity_relation(self):
        expected = self.group.element([('1', []), ('-mu^2', ['gamma', 'gamma*'])])
        self.assertEqual(self.group.el('alpha') * self.group.el('alpha*'), expected)

    def test_multiply_helper_and_unit(self):
        alpha = self.group.el('alpha')
        one = HopfElement(self.group, self.group.one())
        self.assertEqual(multiply(one, alpha), alpha)
        self.assertEqual(multiply(alpha, one), alpha)

    def test_mixed_presentations_refused(self):
        with self.assertRaises(DomainMismatchError):
            self.group.el('alpha') * load_group('u1').el('z')

    def test_unknown_generator(self):
        with self.assertRaises(ParseError):
            self.group.word('beta')


class NormalFormPropertyTests(SimpleTestCase):

    @settings(max_examples=25, deadline=None)
    @given(st.lists(st.sampled_from(['alpha', 'alpha*', 'gamma', 'gamma*']), max_size=6), st.data())
    def test_any_bracketing_gives_the_same_normal_form(self, names, data):
        group = load_group('suq2')
        split = data.draw(st.integers(min_value=0, max_value=len(names)))
        left, right = group.word(*names[:split]), group.word(*names[split:])
        self.assertEqual(group.mul(left, right), group.word(*names))
        for key in group.word(*names):
            self.assertTrue(group.is_normal(key))


class CoproductTests(DjangoSimpleTestCase):

    def setUp(self):
        self.group = load_group('suq2')
        self.u1 = load_group('u1')

    def test_gamma(self):
        letters = self.group.letters
        expected = Combination({
            (letters('gamma'), letters('alpha')): 1,
            (letters('alpha*'), letters('gamma')): 1,
        })
        self.assertEqual(self.group.comultiply(self.group.word('gamma')), expected)

    def test_unit_is_grouplike(self):
        self.assertEqual(self.group.comultiply(self.group.one()), Combination.monomial(((), ())))

    def test_grouplike_powers(self):
        z3 = self.u1.letters('z', 'z', 'z')
        self.assertEqual(
            self.u1.comultiply(self.u1.word('z', 'z', 'z'), 3),
            Combination.monomial((z3, z3, z3)),
        )

    def test_bracketings_agree(self):
        delta = self.group.coproduct(self.group.word('alpha', 'gamma*'))
        self.assertEqual(self.group.expand_leg(delta, 0), self.group.expand_leg(delta, 1))

    def test_tensor_expand_matches_coproduct(self):
        group = self.group
        alpha, gamma, gamma_star = (group.word(name) for name in ('alpha', 'gamma', 'gamma*'))
        expanded = group.tensor_expand([(1, [alpha, alpha]), (parse_scalar('-mu'), [gamma_star, gamma])])
        self.assertEqual(expanded, group.coproduct(alpha))
        self.assertIn('gamma* (x) gamma', group.render_tensor(expanded))


class StructureMapTests(DjangoSimpleTestCase):

    def setUp(self):
        self.group = load_group('suq2')
        self.u1 = load_group('u1')

    def test_counit(self):
        self.assertEqual(structure_map('counit', self.group.el('alpha', 'gamma*')), ZERO)

    def test_antipode(self):
        gamma = self.group.el('gamma')
        self.assertEqual(structure_map('antipode', gamma), parse_scalar('-mu') * gamma)
        self.assertEqual(structure_map('antipode', self.u1.el('z')), self.u1.el('z*'))

    def test_star_is_antimultiplicative(self):
        x, y = self.group.el('alpha'), self.group.el('gamma')
        self.assertEqual(structure_map('star', x * y), structure_map('star', y) * structure_map('star', x))

    def test_unknown_kind(self):
        with self.assertRaises(ValueError):
            structure_map('coproduct', self.group.el('alpha'))


class AdjointActionTests(DjangoSimpleTestCase):

    def test_unit(self):
        group = load_group('suq2')
        self.assertEqual(group.adjoint_ad(group.one()), Combination.monomial(((), ())))

    def test_grouplike_in_commutative_algebra(self):
        u1 = load_group('u1')
        self.assertEqual(u1.adjoint_ad(u1.word('z')), Combination.monomial((u1.letters('z'), ())))

    def test_counit_on_second_leg(self):
        group = load_group('suq2')
        accumulator = Accumulator()
        for (left, right), coeff in group.adjoint_ad(group.word('alpha')).items():
            accumulator.add_term(left, coeff * group.counit_word(right))
        self.assertEqual(accumulator.result(), group.word('alpha'))


class AxiomSweepTests(DjangoSimpleTestCase):

    def test_suq2_passes_at_cap_3(self):
        report = load_group('suq2').validate_axioms(cap=3)
        self.assertTrue(report.passed, report.failures[:3])

    def test_u1_passes_at_cap_5(self):
        report = load_group('u1').validate_axioms(cap=5)
        self.assertTrue(report.passed, report.failures[:3])

    def test_corrupted_coproduct_is_caught(self):
        data = copy.deepcopy(read_pack_file(APPS_DIR / 'algebra' / 'packs' / 'suq2.json'))
        data['name'] = 'suq2-corrupted'
        data['coproduct']['gamma'] = [['1', ['gamma'], ['alpha']]]
        report = presentation_from_pack(data).validate_axioms(cap=1)
        self.assertFalse(report.passed)
        self.assertIn('gamma', report.witnesses('coassociativity'))

    def test_non_confluent_rules_rejected(self):
        x = Combination.monomial((0,))
        with self.assertRaises(NonConfluentError):
            HopfPresentation(
                'broken', ['x'], {'x': 'x'},
                rules=[((0, 0), x), ((0, 0), ZERO_COMBINATION)],
                coproduct={'x': Combination.monomial(((0,), (0,)))},
                counit={'x': 1},
                antipode={'x': x},
            )

    def test_missing_pack(self):
        with self.assertRaises(PackNotFoundError):
            load_group('so3')


class RestrictionTests(DjangoSimpleTestCase):

    def setUp(self):
        self.group = load_group('suq2')
        self.u1 = load_group('u1')

    def test_generators(self):
        self.assertEqual(restrict_j(self.group.word('alpha')), self.u1.word('z'))
        self.assertEqual(restrict_j(self.group.word('gamma')), ZERO_COMBINATION)
        self.assertEqual(restrict_j(self.group.word('alpha*')), self.u1.word('z*'))

    def test_multiplicative(self):
        self.assertEqual(restrict_j(self.group.word('alpha', 'alpha*')), self.u1.one())

    def test_intertwines_structure_maps(self):
        report = load_restriction('suq2', 'u1').validate(cap=3)
        self.assertTrue(report.passed, report.failures[:3])
