from fractions import Fraction

from django.test import SimpleTestCase, override_settings

from api.knotfile import parse_knot_document
from core import corpus
from core.exceptions import FloodingError, PreconditionError, StructuralError
from core.persist import INF
from core.pipeline import (
    HEIGHTS_FILE,
    HEIGHTS_FLOOD,
    compute_barcode_for,
    resolve_heights,
    run_flooding,
    select_augmentation,
)


class CorpusTest(SimpleTestCase):
    def test_all_knots_load(self):
        for name in corpus.CORPUS_NAMES:
            with self.subTest(name=name):
                knot = corpus.load(name)
                self.assertEqual(knot.meta['name'], name)

    def test_island_has_no_heights(self):
        self.assertIsNone(corpus.load('island').heights)

    def test_unknown_name(self):
        with self.assertRaises(StructuralError):
            corpus.load('figure_eight')

    @override_settings(LEGCH_CORPUS_DIR='/nonexistent')
    def test_corpus_dir_from_settings(self):
        with self.assertRaises(StructuralError):
            corpus.corpus_path('trefoil')

    def test_rii_builder_matches_file(self):
        built = parse_knot_document(corpus.trefoil_rii())
        self.assertEqual(built, corpus.load('trefoil_rii'))

    def test_rii_builder_delta(self):
        knot = parse_knot_document(corpus.trefoil_rii(Fraction(1, 2)))
        self.assertEqual(knot.heights[knot.dga.id_of('a')], Fraction(5, 2))
        for delta in (0, 1, Fraction(3, 2)):
            with self.subTest(delta=delta), self.assertRaises(PreconditionError):
                corpus.trefoil_rii(delta)


class PipelineTest(SimpleTestCase):
    def test_unknot(self):
        result = compute_barcode_for(corpus.load('unknot'))
        self.assertEqual(result.barcode.signature(), ((1, 1, INF),))

    def test_trefoil_file_heights(self):
        result = compute_barcode_for(corpus.load('trefoil'), 2)
        self.assertEqual(result.augmentation.degree_zero_vector(), (1, 0, 0))
        self.assertEqual(result.barcode.signature(), ((0, 1, 4), (0, 1, INF), (0, 1, INF), (1, 4, INF)))

    def test_trefoil_flood_heights(self):
        result = compute_barcode_for(corpus.load('trefoil'), 2, HEIGHTS_FLOOD)
        self.assertEqual(result.barcode.signature(), ((0, 1, 7), (0, 1, INF), (0, 1, INF), (1, 7, INF)))

    def test_flooding(self):
        result = run_flooding(corpus.load('trefoil'))
        self.assertTrue(result.tiering.succeeded)
        self.assertEqual([result.heights[i] for i in range(5)], [7, 7, 1, 1, 1])

        island = run_flooding(corpus.load('island'))
        self.assertFalse(island.tiering.succeeded)
        self.assertIsNone(island.heights)

    def test_island_heights_fail(self):
        knot = corpus.load('island')
        with self.assertRaises(FloodingError) as ctx:
            resolve_heights(knot)
        self.assertEqual(ctx.exception.tiering.unassigned, frozenset(range(3, 9)))
        with self.assertRaises(PreconditionError):
            resolve_heights(knot, HEIGHTS_FILE)

    def test_unknown_heights_mode(self):
        with self.assertRaises(PreconditionError):
            resolve_heights(corpus.load('trefoil'), 'guess')

    def test_augmentation_index(self):
        knot = corpus.load('trefoil')
        self.assertEqual(select_augmentation(knot, 4).degree_zero_vector(), (1, 1, 1))
        for index in (-1, 5):
            with self.subTest(index=index), self.assertRaises(PreconditionError):
                select_augmentation(knot, index)
