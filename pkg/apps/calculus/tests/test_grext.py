from django.test import SimpleTestCase as DjangoSimpleTestCase
from hypothesis import given, settings, strategies as st
from hypothesis.extra.django import SimpleTestCase

from apps.algebra.exceptions import CapExceededError, ParseError
from apps.algebra.services.linear import ZERO_COMBINATION, Combination
from apps.algebra.services.scalars import parse_scalar
from apps.calculus.services.focalc import load_calculus
from apps.calculus.services.grext import (
    GradedQuotient, InvariantForms, antisymmetrizer, antisymmetrizer_factorized, build_invariant_forms,
    envelope_generators, minimal_shuffles, permutation_sign, reduced_word, shuffle_antisymmetrizer,
)


class GradedQuotientTests(DjangoSimpleTestCase):

    def setUp(self):
        # Quantum plane with y*x = mu x*y and x^2 = 0.
        relations = {2: [
            Combination({(1, 0): parse_scalar('1'), (0, 1): parse_scalar('-mu')}),
            Combination.monomial((0, 0)),
        ]}
        self.algebra = GradedQuotient('plane', ['x', 'y'], relations=relations, cap=3)

    def test_normal_words_are_the_larger_ones(self):
        self.assertEqual(self.algebra.word('x', 'y'), self.algebra.word('y', 'x').scale(parse_scalar('1/mu')))
        self.assertEqual(self.algebra.word('x', 'x'), ZERO_COMBINATION)

    def test_dimensions(self):
        self.assertEqual(self.algebra.dimensions(), [1, 2, 2, 2])

    def test_cap_is_enforced(self):
        y = self.algebra.letter('y')
        with self.assertRaises(CapExceededError):
            self.algebra.power(y, 4)

    def test_relations_render_as_rewrites(self):
        self.assertIn('x*y = 1/mu*y*x', self.algebra.render_relations(2))

    def test_unknown_letter(self):
        with self.assertRaises(ParseError):
            self.algebra.letter('z')


class CircleFormsTests(DjangoSimpleTestCase):

    def test_square_of_zeta_vanishes(self):
        forms = build_invariant_forms(load_calculus('u1-from-3d'), 'envelope', 3)
        zeta = forms.letter('zeta')
        self.assertEqual(forms.mul(zeta, zeta), ZERO_COMBINATION)
        self.assertEqual(forms.dimensions(), [1, 1, 0, 0])
        self.assertEqual(forms.top, 1)

    def test_envelope_ideal_is_spanned_by_zeta_square(self):
        calculus = load_calculus('u1-line')
        self.assertEqual(envelope_generators(calculus), [Combination.monomial((0, 0))])

    def test_embedded_differential_on_the_line(self):
        calculus = load_calculus('u1-line')
        forms = build_invariant_forms(calculus, 'envelope', 2)
        expected = Combination.monomial((0, 0), parse_scalar('-(lambda-1)/(lambda+1)'))
        self.assertEqual(forms.delta(forms.letter('zeta')), expected)
        self.assertEqual(forms.d(forms.letter('zeta')), ZERO_COMBINATION)

    def test_section_differential_vanishes(self):
        forms = build_invariant_forms(load_calculus('u1-from-4d+'), 'envelope', 2)
        self.assertEqual(forms.delta(forms.letter('zeta')), ZERO_COMBINATION)

    def test_star_of_zeta(self):
        forms = build_invariant_forms(load_calculus('u1-line'), 'envelope', 2)
        self.assertEqual(forms.star(forms.letter('zeta')), -forms.letter('zeta'))

    def test_line_forms_validate(self):
        report = build_invariant_forms(load_calculus('u1-line'), 'envelope', 3).validate()
        self.assertTrue(report.passed, report.failures)

    def test_unknown_mode(self):
        with self.assertRaises(ParseError):
            InvariantForms(load_calculus('u1-line'), 'symmetric')


class ThreeDimensionalEnvelopeTests(DjangoSimpleTestCase):

    def setUp(self):
        self.forms = build_invariant_forms(load_calculus('3d'), 'envelope', 4)

    def test_dimensions(self):
        self.assertEqual(self.forms.dimensions(), [1, 3, 3, 1, 0])

    def test_quadratic_relations(self):
        forms = self.forms
        self.assertEqual(forms.word('ep', 'ep'), ZERO_COMBINATION)
        self.assertEqual(forms.word('em', 'em'), ZERO_COMBINATION)
        self.assertEqual(forms.word('eta', 'eta'), ZERO_COMBINATION)
        self.assertEqual(forms.word('ep', 'em'), forms.word('em', 'ep').scale(parse_scalar('-mu^2')))
        self.assertEqual(forms.word('eta', 'ep'), forms.word('ep', 'eta').scale(parse_scalar('-mu^-4')))

    def test_differential_of_ep(self):
        forms = self.forms
        expected = forms.word('ep', 'eta').scale(parse_scalar('-mu^-2'))
        self.assertEqual(forms.d(forms.letter('ep')), expected)

    def test_envelope_validates(self):
        forms = build_invariant_forms(load_calculus('3d'), 'envelope', 3)
        report = forms.validate()
        self.assertTrue(report.passed, report.failures)


class ExteriorAlgebraTests(DjangoSimpleTestCase):

    def test_four_dimensional_exterior_degree_two(self):
        forms = build_invariant_forms(load_calculus('4d+'), 'exterior', 2)
        self.assertEqual(forms.dimensions(), [1, 4, 6])

    def test_tau_squares_to_zero(self):
        forms = build_invariant_forms(load_calculus('4d+'), 'exterior', 2)
        tau = forms.letter('tau')
        self.assertEqual(forms.mul(tau, tau), ZERO_COMBINATION)

    def test_exterior_circle_algebra(self):
        forms = build_invariant_forms(load_calculus('u1-line'), 'exterior', 3)
        self.assertEqual(forms.dimensions(), [1, 1, 0, 0])


class AntisymmetrizerTests(DjangoSimpleTestCase):

    def test_reduced_words(self):
        self.assertEqual(reduced_word((0, 1, 2)), ())
        self.assertEqual(reduced_word((1, 0)), (0,))
        self.assertEqual(len(reduced_word((2, 1, 0))), 3)
        self.assertEqual(permutation_sign((1, 2, 0)), 1)
        self.assertEqual(permutation_sign((0, 2, 1)), -1)

    def test_minimal_shuffles_are_binomial(self):
        self.assertEqual(len(minimal_shuffles(2, 1)), 3)
        self.assertEqual(len(minimal_shuffles(2, 2)), 6)
        self.assertIn((0, 1, 2), minimal_shuffles(2, 1))

    def test_commuting_braid_kills_squares(self):
        calculus = load_calculus('u1-line')
        square = Combination.monomial((0, 0))
        self.assertEqual(antisymmetrizer(calculus, square, 2), ZERO_COMBINATION)
        self.assertEqual(shuffle_antisymmetrizer(calculus, square, 1, 1), ZERO_COMBINATION)

    def test_factorization_on_four_dimensional_tensors(self):
        calculus = load_calculus('4d+')
        for key in [(0, 1, 2), (3, 2, 1), (1, 3, 0)]:
            element = Combination.monomial(key)
            direct = antisymmetrizer(calculus, element, 3)
            self.assertEqual(antisymmetrizer_factorized(calculus, element, 2, 1), direct)
            self.assertEqual(antisymmetrizer_factorized(calculus, element, 1, 2), direct)

    def test_recursive_antisymmetrizer_matches_the_direct_sum(self):
        calculus = load_calculus('4d+')
        forms = build_invariant_forms(calculus, 'exterior', 3)
        key = (2, 0, 3)
        self.assertEqual(forms.antisymmetrized_key(key), antisymmetrizer(calculus, Combination.monomial(key), 3))


class EnvelopeAssociativityTests(SimpleTestCase):

    @settings(max_examples=25, deadline=None)
    @given(
        st.lists(st.sampled_from(['eta', 'ep', 'em']), min_size=1, max_size=2),
        st.lists(st.sampled_from(['eta', 'ep', 'em']), min_size=1, max_size=1),
        st.lists(st.sampled_from(['eta', 'ep', 'em']), min_size=0, max_size=1),
    )
    def test_products_associate(self, first, second, third):
        forms = build_invariant_forms(load_calculus('3d'), 'envelope', 4)
        a, b, c = forms.word(*first), forms.word(*second), forms.word(*third)
        self.assertEqual(forms.mul(forms.mul(a, b), c), forms.mul(a, forms.mul(b, c)))
