import math
from fractions import Fraction

from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st

from core import corpus
from core.algebra import (
    DGA,
    GRADING_VIOLATION,
    NOT_SQUARE_ZERO,
    Element,
    HeightAssignment,
    apply_differential,
    height_of_element,
    substitute,
    validate_dga,
    word_grading,
)
from core.exceptions import PreconditionError, StructuralError
from core.tests.strategies import CORPUS_DGAS, corpus_elements, corpus_knot, knot_elements, knot_words


class ElementTest(SimpleTestCase):
    def test_sum_cancels_mod_two(self):
        x = Element.generator(0)
        self.assertTrue((x + x).is_zero())
        self.assertEqual(Element.from_words([(0,), (1,), (0,)]), Element.generator(1))

    def test_product_is_noncommutative(self):
        a, b = Element.generator(0), Element.generator(1)
        self.assertEqual((a * b).words, frozenset([(0, 1)]))
        self.assertNotEqual(a * b, b * a)

    def test_unit_and_distributivity(self):
        a, b = Element.generator(0), Element.generator(1)
        self.assertEqual(Element.one() * a, a)
        self.assertEqual((a + Element.one()) * b, Element.from_words([(0, 1), (1,)]))

    def test_sorted_words_by_length_then_ids(self):
        elem = Element.from_words([(2, 1), (3,), (), (1,)])
        self.assertEqual(elem.sorted_words(), [(), (1,), (3,), (2, 1)])


class DGATest(SimpleTestCase):
    def setUp(self):
        self.trefoil = corpus.load('trefoil').dga

    def test_from_names_and_format(self):
        self.assertEqual(self.trefoil.names, ['q1', 'q2', 'q3', 'q4', 'q5'])
        self.assertEqual(self.trefoil.format(self.trefoil.d(0)), '1 + q3 + q5 + q5q4q3')
        self.assertEqual(self.trefoil.format(self.trefoil.d(2)), '0')

    def test_unknown_letter_is_structural(self):
        with self.assertRaises(StructuralError):
            DGA.from_names([('a', 1)], {'a': [['b']]})
        with self.assertRaises(StructuralError):
            DGA.from_names([('a', 1), ('a', 0)])

    def test_word_grading(self):
        self.assertEqual(word_grading((4, 3, 2), self.trefoil), 0)
        self.assertEqual(word_grading((0, 2), self.trefoil), 1)
        self.assertEqual(word_grading((), self.trefoil), 0)

    def test_leibniz_rule(self):
        dga = DGA.from_names([('a', 1), ('b', 0)], {'a': [['b']]})
        square = apply_differential(dga.element(['a', 'a']), dga)
        self.assertEqual(square, dga.element(['b', 'a'], ['a', 'b']))
        self.assertTrue(apply_differential(dga.element(['b', 'b']), dga).is_zero())
        self.assertTrue(apply_differential(Element.one(), dga).is_zero())

    def test_substitute_fixes_other_generators(self):
        dga = self.trefoil
        images = {2: dga.element(['q3'], ['q4'])}
        result = substitute(dga.element(['q5', 'q3']), images)
        self.assertEqual(result, dga.element(['q5', 'q3'], ['q5', 'q4']))


class HeightTest(SimpleTestCase):
    def test_height_of_element(self):
        trefoil = corpus.load('trefoil')
        h = trefoil.heights
        self.assertEqual(height_of_element(trefoil.dga.d(0), h), 3)
        self.assertEqual(height_of_element(Element.one(), h), 0)
        self.assertEqual(height_of_element(Element.zero(), h), -math.inf)

    def test_heights_are_exact(self):
        h = HeightAssignment({0: 2.3, 1: '3/10'})
        self.assertEqual(h[0], Fraction(23, 10))
        self.assertEqual(h[1], Fraction(3, 10))

    def test_non_positive_height_rejected(self):
        with self.assertRaises(PreconditionError):
            HeightAssignment({0: 0})
        with self.assertRaises(PreconditionError):
            HeightAssignment({0: -1})

    def test_missing_height_is_structural(self):
        with self.assertRaises(StructuralError):
            HeightAssignment({0: 1})[1]


class ValidateTest(SimpleTestCase):
    def test_corpus_is_valid(self):
        for name in corpus.CORPUS_NAMES:
            with self.subTest(name=name):
                self.assertTrue(validate_dga(corpus.load(name).dga).is_valid)

    def test_grading_violation_reported_first(self):
        dga = DGA.from_names([('q', 1)], {'q': [['q']]})
        report = validate_dga(dga)
        self.assertFalse(report.is_valid)
        self.assertEqual(report.first().kind, GRADING_VIOLATION)
        self.assertEqual(report.first().generator, 'q')

    def test_not_square_zero(self):
        dga = DGA.from_names([('x', 2), ('y', 1)], {'x': [['y']], 'y': [[]]})
        report = validate_dga(dga)
        self.assertEqual([(v.kind, v.generator) for v in report.violations], [(NOT_SQUARE_ZERO, 'x')])


class AlgebraPropertiesTest(SimpleTestCase):
    @settings(max_examples=100)
    @given(corpus_elements(), st.data())
    def test_addition_is_self_inverse_group(self, case, data):
        knot, a = case
        b = data.draw(knot_elements(knot.dga))
        c = data.draw(knot_elements(knot.dga))
        self.assertTrue((a + a).is_zero())
        self.assertEqual(a + Element.zero(), a)
        self.assertEqual(a + b, b + a)
        self.assertEqual((a + b) + c, a + (b + c))
        self.assertEqual(a - b, a + b)

    @settings(max_examples=100)
    @given(corpus_elements(), st.data())
    def test_product_laws(self, case, data):
        knot, a = case
        b = data.draw(knot_elements(knot.dga))
        c = data.draw(knot_elements(knot.dga))
        self.assertEqual((a * b) * c, a * (b * c))
        self.assertEqual(a * (b + c), a * b + a * c)
        self.assertEqual((a + b) * c, a * c + b * c)
        self.assertEqual(Element.one() * a, a)
        self.assertEqual(a * Element.one(), a)
        self.assertTrue((Element.zero() * a).is_zero())

    @settings(max_examples=100)
    @given(corpus_elements())
    def test_differential_squares_to_zero(self, case):
        knot, elem = case
        self.assertTrue(apply_differential(apply_differential(elem, knot.dga), knot.dga).is_zero())

    @settings(max_examples=100)
    @given(corpus_elements(), st.data())
    def test_leibniz_on_products(self, case, data):
        knot, a = case
        dga = knot.dga
        b = data.draw(knot_elements(dga))
        self.assertEqual(
            apply_differential(a * b, dga),
            apply_differential(a, dga) * b + a * apply_differential(b, dga),
        )

    @settings(max_examples=100)
    @given(st.sampled_from(CORPUS_DGAS), st.data())
    def test_grading_and_height_add_under_concatenation(self, name, data):
        knot = corpus_knot(name)
        u = data.draw(knot_words(knot.dga))
        v = data.draw(knot_words(knot.dga))
        self.assertEqual(word_grading(u + v, knot.dga), word_grading(u, knot.dga) + word_grading(v, knot.dga))

        def height(word):
            return height_of_element(Element.from_words([word]), knot.heights)

        self.assertEqual(height(u + v), height(u) + height(v))

    @settings(max_examples=100)
    @given(corpus_elements(), st.data())
    def test_height_of_sum_is_bounded_by_max(self, case, data):
        knot, a = case
        b = data.draw(knot_elements(knot.dga))
        h = knot.heights
        bound = max(height_of_element(a, h), height_of_element(b, h))
        self.assertLessEqual(height_of_element(a + b, h), bound)
        if not a.words & b.words:
            self.assertEqual(height_of_element(a + b, h), bound)
