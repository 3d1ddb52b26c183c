from django.test import SimpleTestCase as DjangoSimpleTestCase

from apps.algebra.services.linear import ZERO_COMBINATION, Combination
from apps.algebra.services.scalars import parse_scalar
from apps.bundles.services.base import make_base_dga
from apps.bundles.services.crossed import GradedTensorProduct
from apps.bundles.services.loader import load_bundle


class VerticalAlgebraTests(DjangoSimpleTestCase):

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.vertical = load_bundle('hopf-3d').vertical
        cls.alpha = Combination.monomial(((0,), ()))
        cls.zeta = Combination.monomial(((), (0,)))

    def test_form_moves_past_alpha_through_the_action(self):
        expected = Combination.monomial(((0,), (0,)), parse_scalar('1/mu^2'))
        self.assertEqual(self.vertical.mul(self.zeta, self.alpha), expected)

    def test_vertical_differential_of_alpha(self):
        expected = Combination.monomial(((0,), (0,)), parse_scalar('1/(1+mu^2)'))
        self.assertEqual(self.vertical.d(self.alpha), expected)

    def test_differential_squares_to_zero(self):
        self.assertEqual(self.vertical.d(self.vertical.d(self.alpha)), ZERO_COMBINATION)

    def test_dga_laws_on_generators(self):
        keys = [((letter,), ()) for letter in range(4)] + [((), (0,))]
        report = self.vertical.check_dga(keys)
        self.assertTrue(report.passed, report.failures)


class GradedTensorProductTests(DjangoSimpleTestCase):

    def setUp(self):
        base = make_base_dga('exact', cap=4)
        self.product = GradedTensorProduct('exact2', base, base, cap=4)
        self.left = self.product.embed_left(base.letter('e1'))
        self.right = self.product.embed_right(base.letter('e1'))

    def test_odd_factors_anticommute(self):
        self.assertEqual(self.product.mul(self.right, self.left), -self.product.mul(self.left, self.right))

    def test_differential_is_graded(self):
        f_left = self.product.embed_left(self.product.left.letter('f'))
        f_right = self.product.embed_right(self.product.right.letter('f'))
        product = self.product.mul(self.left, self.right)
        expected = self.product.mul(f_left, self.right) - self.product.mul(self.left, f_right)
        self.assertEqual(self.product.d(product), expected)
        self.assertEqual(self.product.d(self.product.d(product)), ZERO_COMBINATION)
