from django.test import SimpleTestCase
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from core import corpus
from core.algebra import HeightAssignment
from core.diagram import (
    FAILURE,
    SUCCESS,
    AreaPatch,
    InequalitySystem,
    LagrangianDiagramData,
    area_inequalities,
    assign_heights,
    flood,
    perturb_heights,
    validate_heights,
)
from core.exceptions import FloodingError, PreconditionError, StructuralError
from core.tests.strategies import COEFFICIENTS, floodable_systems, inequality_systems


class PatchTest(SimpleTestCase):
    def test_rejects_bad_patches(self):
        with self.assertRaises(StructuralError):
            AreaPatch(())
        with self.assertRaises(StructuralError):
            AreaPatch(((0, 1), (0, -1)))
        with self.assertRaises(StructuralError):
            AreaPatch(((0, 3),))

    def test_unknown_crossing(self):
        with self.assertRaises(StructuralError):
            LagrangianDiagramData((0,), (AreaPatch(((1, 1),)),))


class InequalityTest(SimpleTestCase):
    def test_unknot(self):
        system = area_inequalities(corpus.load('unknot').diagram)
        self.assertEqual([f.terms for f in system.inequalities], [((0, 1),), ((0, 1),)])

    def test_trefoil_topmost_patch(self):
        system = area_inequalities(corpus.load('trefoil').diagram)
        self.assertEqual(len(system), 6)
        self.assertEqual(system.inequalities[0].terms, ((0, 1), (2, -1), (3, -1), (4, -1)))

    def test_island_keeps_file_order(self):
        system = area_inequalities(corpus.load('island').diagram)
        self.assertEqual(len(system), 10)
        self.assertEqual(system.inequalities[3].terms, ((1, 1), (2, -1), (4, 1), (6, -1), (8, -1)))

    def test_from_dicts_drops_zero_terms(self):
        system = InequalitySystem.from_dicts([{1: -1, 0: 1, 2: 0}])
        self.assertEqual(system.inequalities[0].terms, ((0, 1), (1, -1)))
        self.assertEqual(system.variables(), {0, 1})


class FloodTest(SimpleTestCase):
    def test_single_inequality(self):
        tiering = flood(InequalitySystem.from_dicts([{0: 1}]), (0,))
        self.assertEqual(tiering.status, SUCCESS)
        self.assertEqual(tiering.tiers, (frozenset({0}), frozenset()))
        self.assertEqual(assign_heights(tiering).heights, {0: 1})

    def test_chain(self):
        tiering = flood(InequalitySystem.from_dicts([{0: 1, 1: -1}, {1: 1}]), (0, 1))
        self.assertEqual(tiering.tiers, (frozenset({0}), frozenset({1}), frozenset()))
        self.assertEqual(assign_heights(tiering).heights, {0: 3, 1: 1})

    def test_trefoil(self):
        knot = corpus.load('trefoil')
        tiering = flood(area_inequalities(knot.diagram), knot.diagram.crossings)
        self.assertEqual(tiering.tiers, (frozenset({0, 1}), frozenset({2, 3, 4}), frozenset()))
        heights = assign_heights(tiering)
        self.assertEqual([heights[i] for i in range(5)], [7, 7, 1, 1, 1])

    def test_rii(self):
        knot = corpus.load('trefoil_rii')
        tiering = flood(area_inequalities(knot.diagram), knot.diagram.crossings)
        self.assertTrue(tiering.succeeded)
        self.assertEqual(tiering.tiers[:4], (frozenset({0, 1}), frozenset({2, 3, 4}), frozenset({5}), frozenset({6})))
        heights = assign_heights(tiering)
        self.assertEqual([heights[i] for i in range(7)], [63, 63, 9, 9, 9, 3, 1])
        self.assertTrue(validate_heights(heights, area_inequalities(knot.diagram)))

    def test_island_fails(self):
        knot = corpus.load('island')
        tiering = flood(area_inequalities(knot.diagram), knot.diagram.crossings)
        self.assertEqual(tiering.status, FAILURE)
        self.assertEqual(tiering.tiers, (frozenset({0, 1}), frozenset({2})))
        self.assertEqual(tiering.unassigned, frozenset(range(3, 9)))
        with self.assertRaises(FloodingError):
            assign_heights(tiering)

    def test_stray_variable(self):
        with self.assertRaises(StructuralError):
            flood(InequalitySystem.from_dicts([{5: 1}]), (0,))

    def test_empty_system(self):
        tiering = flood(InequalitySystem(), (0, 1))
        self.assertEqual(tiering.tiers, (frozenset({0, 1}),))
        self.assertEqual(assign_heights(tiering).heights, {0: 1, 1: 1})


class ValidateHeightsTest(SimpleTestCase):
    def test_file_heights_are_valid(self):
        for name in ('unknot', 'trefoil', 'trefoil_rii'):
            knot = corpus.load(name)
            with self.subTest(name=name):
                self.assertTrue(validate_heights(knot.heights, area_inequalities(knot.diagram)))

    def test_reports_violations(self):
        system = InequalitySystem.from_dicts([{0: 1, 1: -1}, {1: 1}])
        check = validate_heights(HeightAssignment({0: 1, 1: 1}), system)
        self.assertFalse(check)
        self.assertEqual(check.violations, ((0, 0),))


class PerturbTest(SimpleTestCase):
    def test_trefoil_heights_become_distinct(self):
        knot = corpus.load('trefoil')
        system = area_inequalities(knot.diagram)
        tiering = flood(system, knot.diagram.crossings)
        perturbed = perturb_heights(tiering, assign_heights(tiering), system)
        values = [perturbed[i] for i in range(5)]
        self.assertEqual(len(set(values)), 5)
        self.assertTrue(validate_heights(perturbed, system))

    def test_requires_valid_heights(self):
        system = InequalitySystem.from_dicts([{0: 1, 1: -1}, {1: 1}])
        tiering = flood(system, (0, 1))
        with self.assertRaises(PreconditionError):
            perturb_heights(tiering, HeightAssignment({0: 1, 1: 1}), system)


class FloodPropertiesTest(SimpleTestCase):
    @settings(max_examples=500)
    @given(inequality_systems())
    def test_success_gives_valid_heights(self, case):
        forms, crossings = case
        system = InequalitySystem.from_dicts(forms)
        tiering = flood(system, crossings)
        if tiering.succeeded:
            self.assertTrue(validate_heights(assign_heights(tiering), system))
            self.assertEqual(set().union(*tiering.tiers), set(crossings))
        else:
            self.assertTrue(tiering.unassigned)

    @settings(max_examples=500)
    @given(floodable_systems())
    def test_layered_systems_always_flood(self, case):
        forms, crossings = case
        system = InequalitySystem.from_dicts(forms)
        tiering = flood(system, crossings)
        self.assertTrue(tiering.succeeded)
        heights = assign_heights(tiering)
        self.assertTrue(validate_heights(heights, system))
        self.assertTrue(validate_heights(perturb_heights(tiering, heights, system), system))

    @settings(max_examples=200)
    @given(inequality_systems(), st.randoms(use_true_random=False))
    def test_order_of_inequalities_is_irrelevant(self, case, rnd):
        forms, crossings = case
        shuffled = list(forms)
        rnd.shuffle(shuffled)
        first = flood(InequalitySystem.from_dicts(forms), crossings)
        second = flood(InequalitySystem.from_dicts(shuffled), crossings)
        self.assertEqual(first, second)

    @settings(max_examples=200)
    @given(inequality_systems(), st.randoms(use_true_random=False))
    def test_relabeling_maps_tiers(self, case, rnd):
        forms, crossings = case
        sigma = list(crossings)
        rnd.shuffle(sigma)
        moved = [{sigma[k]: v for k, v in form.items()} for form in forms]
        first = flood(InequalitySystem.from_dicts(forms), crossings)
        second = flood(InequalitySystem.from_dicts(moved), crossings)
        self.assertEqual(second.status, first.status)
        self.assertEqual(second.tiers, tuple(frozenset(sigma[i] for i in tier) for tier in first.tiers))

    @settings(max_examples=200)
    @given(
        inequality_systems(),
        st.dictionaries(st.integers(0, 7), st.sampled_from(COEFFICIENTS), min_size=1, max_size=4),
    )
    def test_extra_inequality_keeps_failure(self, case, extra):
        forms, crossings = case
        extra = {k: v for k, v in extra.items() if k in crossings}
        assume(extra)
        before = flood(InequalitySystem.from_dicts(forms), crossings)
        after = flood(InequalitySystem.from_dicts(forms + [extra]), crossings)
        if not before.succeeded:
            self.assertFalse(after.succeeded)

    def test_island_stays_failed_with_extra_inequality(self):
        knot = corpus.load('island')
        system = area_inequalities(knot.diagram)
        extended = InequalitySystem(system.inequalities + InequalitySystem.from_dicts([{0: 1, 4: -1}]).inequalities)
        self.assertFalse(flood(extended, knot.diagram.crossings).succeeded)
