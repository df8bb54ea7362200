from fractions import Fraction

import numpy as np
from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st

from core import corpus, gf2
from core.algebra import HeightAssignment
from core.augment import Augmentation, enumerate_augmentations, linearized_differential
from core.exceptions import FiltrationError, PreconditionError, StructuralError
from core.persist import INF, Bar, Barcode, build_filtered_complex, compute_barcode, homology_rank_oracle
from core.tests.strategies import filtered_complexes
from core.transform import TameIsomorphism, apply_tame

TREFOIL_SIGNATURE = ((0, 1, 4), (0, 1, INF), (0, 1, INF), (1, 4, INF))


def corpus_complex(name, aug_index):
    knot = corpus.load(name)
    eps = enumerate_augmentations(knot.dga)[aug_index]
    return build_filtered_complex(linearized_differential(knot.dga, eps), knot.heights)


class BuildTest(SimpleTestCase):
    def test_corpus_heights_filter(self):
        fc = corpus_complex('trefoil', 2)
        self.assertEqual(fc.order(), [2, 3, 4, 0, 1])

    def test_equal_heights_break_filtration(self):
        knot = corpus.load('trefoil')
        lin = linearized_differential(knot.dga, enumerate_augmentations(knot.dga)[2])
        flat = HeightAssignment({i: 1 for i in range(5)})
        with self.assertRaises(FiltrationError) as ctx:
            build_filtered_complex(lin, flat)
        self.assertEqual(ctx.exception.source, 'q1')
        self.assertIn(ctx.exception.target, ('q3', 'q5'))

    def test_missing_heights(self):
        knot = corpus.load('unknot')
        lin = linearized_differential(knot.dga, enumerate_augmentations(knot.dga)[0])
        with self.assertRaises(StructuralError):
            build_filtered_complex(lin, HeightAssignment({}))


class BarTest(SimpleTestCase):
    def test_birth_before_death(self):
        with self.assertRaises(PreconditionError):
            Bar(0, 2, 2)
        with self.assertRaises(PreconditionError):
            Bar(0, 3, 1)

    def test_order_ignores_labels(self):
        self.assertEqual(Bar(0, 1, 2, birth_label='a'), Bar(0, 1, 2, birth_label='b'))
        barcode = Barcode((Bar(1, 1), Bar(0, 2), Bar(0, 1, 3)))
        self.assertEqual(barcode.signature(), ((0, 1, 3), (0, 2, INF), (1, 1, INF)))

    def test_half_open(self):
        bar = Bar(0, 1, 4)
        self.assertTrue(bar.contains(1))
        self.assertFalse(bar.contains(4))
        self.assertEqual(bar.length, 3)


class BarcodeTest(SimpleTestCase):
    def test_unknot(self):
        barcode = compute_barcode(corpus_complex('unknot', 0))
        self.assertEqual(barcode.signature(), ((1, 1, INF),))
        self.assertEqual(barcode.bars[0].birth_label, 'q')

    def test_trefoil(self):
        for index in (0, 2):
            with self.subTest(aug=index):
                barcode = compute_barcode(corpus_complex('trefoil', index))
                self.assertEqual(barcode.signature(), TREFOIL_SIGNATURE)

    def test_trefoil_labels(self):
        barcode = compute_barcode(corpus_complex('trefoil', 2))
        finite = barcode.finite()[0]
        self.assertEqual((finite.birth_label, finite.death_label), ('q3 + q5', 'q1'))
        self.assertEqual([bar.birth_label for bar in barcode.in_degree(0)[1:]], ['q3', 'q4'])
        self.assertEqual(barcode.in_degree(1)[0].birth_label, 'q1 + q2')

    def test_rii_adds_short_bar(self):
        barcode = compute_barcode(corpus_complex('trefoil_rii', 2))
        expected = tuple(sorted(TREFOIL_SIGNATURE + ((0, 2, Fraction(23, 10)),)))
        self.assertEqual(barcode.signature(), expected)

    def test_trefoil_rank_oracle(self):
        fc = corpus_complex('trefoil', 2)
        self.assertEqual(homology_rank_oracle(fc, 0, Fraction(1, 2)), 0)
        self.assertEqual(homology_rank_oracle(fc, 0, 2), 3)
        self.assertEqual(homology_rank_oracle(fc, 0, 5), 2)
        self.assertEqual(homology_rank_oracle(fc, 1, 5), 1)
        self.assertEqual(homology_rank_oracle(fc, 2, 5), 0)

    def test_corpus_matches_rank_oracle(self):
        for name in ('unknot', 'trefoil', 'trefoil_rii'):
            knot = corpus.load(name)
            for index, eps in enumerate(enumerate_augmentations(knot.dga)):
                with self.subTest(name=name, aug=index):
                    fc = build_filtered_complex(linearized_differential(knot.dga, eps), knot.heights)
                    barcode = compute_barcode(fc)
                    for t in probe_levels(knot.heights):
                        for degree in set(fc.gradings):
                            self.assertEqual(barcode.count_containing(degree, t), homology_rank_oracle(fc, degree, t))

    def test_deterministic(self):
        first = compute_barcode(corpus_complex('trefoil_rii', 4))
        second = compute_barcode(corpus_complex('trefoil_rii', 4))
        self.assertEqual(first, second)
        self.assertEqual(
            [(b.birth_label, b.death_label) for b in first],
            [(b.birth_label, b.death_label) for b in second],
        )


def probe_levels(heights):
    low = min(heights.heights.values()) - 1
    high = max(heights.heights.values()) + 1
    return [low + (high - low) * Fraction(i, 19) for i in range(20)]


class BarcodePropertiesTest(SimpleTestCase):
    @settings(max_examples=200)
    @given(filtered_complexes())
    def test_counts_match_rank_oracle(self, case):
        dga, heights, eps = case
        fc = build_filtered_complex(linearized_differential(dga, eps), heights)
        barcode = compute_barcode(fc)
        gradings = set(fc.gradings)
        for t in probe_levels(heights):
            for degree in gradings:
                self.assertEqual(barcode.count_containing(degree, t), homology_rank_oracle(fc, degree, t))

    @settings(max_examples=200)
    @given(filtered_complexes())
    def test_bar_count_and_ranks(self, case):
        dga, heights, eps = case
        fc = build_filtered_complex(linearized_differential(dga, eps), heights)
        barcode = compute_barcode(fc)
        self.assertEqual(len(barcode.infinite()) + 2 * len(barcode.finite()), len(dga))
        for degree in set(fc.gradings):
            rows = [i for i, k in enumerate(fc.gradings) if k == degree - 1]
            cols = [i for i, k in enumerate(fc.gradings) if k == degree]
            rank = gf2.rank(fc.matrix[np.ix_(rows, cols)]) if rows and cols else 0
            self.assertEqual(len([b for b in barcode.finite() if b.degree == degree - 1]), rank)

    @settings(max_examples=100)
    @given(filtered_complexes(), st.randoms(use_true_random=False))
    def test_invariant_under_relabeling(self, case, rnd):
        dga, heights, eps = case
        sigma = list(range(len(dga)))
        rnd.shuffle(sigma)
        iso = TameIsomorphism(relabel=tuple(sigma))
        moved = apply_tame(dga, iso)
        moved_heights = HeightAssignment({sigma[i]: value for i, value in heights.heights.items()})
        before = compute_barcode(build_filtered_complex(linearized_differential(dga, eps), heights))
        after = compute_barcode(build_filtered_complex(
            linearized_differential(moved, Augmentation.zero(moved)), moved_heights,
        ))
        self.assertEqual(before.signature(), after.signature())
