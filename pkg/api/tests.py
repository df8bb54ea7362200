from io import StringIO

from django.core.management import call_command
from django.test import SimpleTestCase, override_settings
from rest_framework import status
from rest_framework.test import APITestCase

from api import knotfile
from api.knotfile import (
    dump_json,
    load_json,
    parse_barcode_document,
    parse_knot_document,
    parse_knot_file,
    serialize_barcode,
    serialize_knot,
)
from core import corpus
from core.exceptions import KnotFileError
from core.models import Knot
from core.persist import Bar, Barcode

UNKNOT = {
    'generators': [{'name': 'q', 'grading': 1}],
    'differential': {'q': [[]]},
    'patches': [[{'name': 'q', 'coeff': 1}], [{'name': 'q', 'coeff': 1}]],
    'heights': {'q': 1},
}


def with_changes(**changes):
    document = dict(UNKNOT)
    document.update(changes)
    return document


class KnotFileTest(SimpleTestCase):
    def assertFileError(self, document, code, key=None):
        with self.assertRaises(KnotFileError) as ctx:
            parse_knot_document(document)
        self.assertEqual(ctx.exception.code, code)
        if key is not None:
            self.assertEqual(ctx.exception.key, key)
        return ctx.exception

    def test_minimal_document(self):
        knot = parse_knot_document({'generators': [{'name': 'x', 'grading': 0}]})
        self.assertEqual(knot.dga.names, ['x'])
        self.assertIsNone(knot.heights)
        self.assertFalse(knot.diagram.ng_resolved)

    def test_malformed_json(self):
        with self.assertRaises(KnotFileError) as ctx:
            parse_knot_file(b'{"generators": [')
        self.assertEqual(ctx.exception.code, knotfile.MALFORMED_JSON)
        self.assertTrue(ctx.exception.key.startswith('line 1'))

    def test_missing_generators(self):
        self.assertFileError({}, knotfile.SCHEMA_ERROR, 'generators')

    def test_bad_grading(self):
        error = self.assertFileError({'generators': [{'name': 'q', 'grading': 'x'}]}, knotfile.SCHEMA_ERROR)
        self.assertEqual(error.key, 'generators[0].grading')

    def test_duplicate_generator(self):
        generators = [{'name': 'q', 'grading': 1}, {'name': 'q', 'grading': 0}]
        self.assertFileError(with_changes(generators=generators), knotfile.DUPLICATE_GENERATOR, 'generators[1].name')

    def test_unknown_generator(self):
        self.assertFileError(with_changes(differential={'q': [['x']]}), knotfile.UNKNOWN_GENERATOR, 'differential.q[0]')
        self.assertFileError(with_changes(differential={'x': [[]]}), knotfile.UNKNOWN_GENERATOR, 'differential.x')
        self.assertFileError(with_changes(heights={'q': 1, 'x': 1}), knotfile.UNKNOWN_GENERATOR, 'heights.x')

    def test_grading_violation(self):
        self.assertFileError(with_changes(differential={'q': [['q']]}), 'GRADING_VIOLATION', 'differential.q')

    def test_not_square_zero(self):
        document = {
            'generators': [{'name': 'x', 'grading': 2}, {'name': 'y', 'grading': 1}],
            'differential': {'x': [['y']], 'y': [[]]},
        }
        self.assertFileError(document, 'NOT_SQUARE_ZERO', 'differential.x')

    def test_invalid_height(self):
        self.assertFileError(with_changes(heights={'q': 0}), knotfile.INVALID_HEIGHT, 'heights.q')
        self.assertFileError(with_changes(heights={'q': 'tall'}), knotfile.INVALID_HEIGHT)
        self.assertFileError(with_changes(heights={}), knotfile.INVALID_HEIGHT, 'heights')

    def test_invalid_patch(self):
        error = self.assertFileError(with_changes(patches=[[{'name': 'q', 'coeff': 3}]]), knotfile.INVALID_PATCH)
        self.assertTrue(error.key.startswith('patches[0]'))
        doubled = [[{'name': 'q', 'coeff': 1}, {'name': 'q', 'coeff': -1}]]
        self.assertFileError(with_changes(patches=doubled), knotfile.INVALID_PATCH, 'patches[0]')

    def test_error_message_format(self):
        error = self.assertFileError(with_changes(heights={'q': -2}), knotfile.INVALID_HEIGHT)
        self.assertTrue(str(error).startswith('INVALID_HEIGHT [heights.q]: '))

    def test_corpus_round_trip(self):
        for name in corpus.CORPUS_NAMES:
            with self.subTest(name=name):
                knot = corpus.load(name)
                again = parse_knot_file(dump_json(serialize_knot(knot)))
                self.assertEqual(again, knot)

    def test_exact_heights_survive(self):
        raw = dump_json(serialize_knot(corpus.load('trefoil_rii')))
        self.assertIn(b'"a": 2.3', raw)
        self.assertTrue(raw.endswith(b'\n'))

    def test_load_json_keeps_decimals_exact(self):
        self.assertEqual(str(load_json('{"h": 2.3}')['h']), '2.3')


class BarcodeFileTest(SimpleTestCase):
    def test_round_trip_with_labels(self):
        barcode = Barcode((Bar(0, 1, 4, birth_label='q3 + q5', death_label='q1'), Bar(1, 4, birth_label='q')))
        document = serialize_barcode(barcode)
        self.assertEqual(document['bars'][1]['death'], 'inf')
        again = parse_barcode_document(document)
        self.assertEqual(again, barcode)
        self.assertEqual([b.birth_label for b in again], ['q3 + q5', 'q'])

    def test_exact_fraction_strings(self):
        barcode = parse_barcode_document({'bars': [{'degree': 0, 'birth': '1/3', 'death': 2.3}]})
        self.assertEqual(serialize_barcode(barcode)['bars'][0], {'degree': 0, 'birth': '1/3', 'death': 2.3})

    def test_invalid_bars(self):
        for bar in (
            {'degree': 0, 'birth': 2, 'death': 2},
            {'degree': 0, 'birth': 0, 'death': 2},
            {'degree': 0, 'birth': 'soon', 'death': 2},
        ):
            with self.subTest(bar=bar), self.assertRaises(KnotFileError) as ctx:
                parse_barcode_document({'bars': [bar]})
            self.assertEqual(ctx.exception.code, knotfile.INVALID_BAR)


class KnotAPITest(APITestCase):
    def setUp(self):
        call_command('load_corpus', stdout=StringIO())
        self.pk = {knot.name: knot.pk for knot in Knot.objects.all()}

    def url(self, name, action=None):
        base = f'/api/knots/{self.pk[name]}/'
        return f'{base}{action}/' if action else base

    def test_list(self):
        response = self.client.get('/api/knots/')
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual([k['name'] for k in response.data['results']], ['island', 'trefoil', 'trefoil_rii', 'unknot'])

    def test_load_corpus_is_idempotent(self):
        call_command('load_corpus', 'trefoil', stdout=StringIO())
        self.assertEqual(Knot.objects.count(), 4)

    def test_augmentations(self):
        response = self.client.get(self.url('trefoil', 'augmentations'))
        self.assertEqual(response.data['count'], 5)
        self.assertEqual(response.data['augmentations'][0], {'index': 0, 'values': {'q3': 0, 'q4': 0, 'q5': 1}})

    def test_flood(self):
        response = self.client.get(self.url('trefoil', 'flood'))
        self.assertEqual(response.data['status'], 'success')
        self.assertEqual(response.data['tiers'], [['q1', 'q2'], ['q3', 'q4', 'q5'], []])
        self.assertEqual(response.data['heights'], {'q1': 7, 'q2': 7, 'q3': 1, 'q4': 1, 'q5': 1})

    def test_flood_failure(self):
        response = self.client.get(self.url('island', 'flood'))
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(response.data['status'], 'failure')
        self.assertEqual(response.data['unassigned'], ['q4', 'q5', 'q6', 'q7', 'q8', 'q9'])
        self.assertNotIn('heights', response.data)

    def test_barcode(self):
        response = self.client.get(self.url('trefoil', 'barcode'), {'aug': 2})
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(response.data['bars'][0], {
            'degree': 0, 'birth': 1, 'death': 4, 'birth_label': 'q3 + q5', 'death_label': 'q1',
        })
        self.assertEqual(response.data['bars'][-1]['death'], 'inf')

    def test_barcode_errors(self):
        for params, code in (({'aug': 'x'}, 'PRECONDITION'), ({'aug': 9}, 'PRECONDITION')):
            with self.subTest(params=params):
                response = self.client.get(self.url('trefoil', 'barcode'), params)
                self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
                self.assertEqual(response.data['code'], code)
        response = self.client.get(self.url('island', 'barcode'))
        self.assertEqual(response.data['code'], 'FLOODING_FAILED')

    def test_morse(self):
        response = self.client.get(self.url('trefoil_rii', 'morse'), {'aug': 2})
        self.assertEqual(response.data, {'mc': '3z+4', 'pc': 'z+2', 'r': '2', 'holds': True})

    def test_write_requires_token(self):
        response = self.client.post('/api/knots/', {'name': 'custom', 'document': UNKNOT}, format='json')
        self.assertEqual(response.status_code, status.HTTP_403_FORBIDDEN)

    @override_settings(LEGCH_API_TOKEN='secret')
    def test_create_with_token(self):
        self.client.credentials(HTTP_AUTHORIZATION='Token secret')
        response = self.client.post('/api/knots/', {'name': 'custom', 'document': UNKNOT}, format='json')
        self.assertEqual(response.status_code, status.HTTP_201_CREATED)
        self.assertEqual(Knot.objects.get(name='custom').load(), parse_knot_document(UNKNOT))

        bad = with_changes(differential={'q': [['q']]})
        response = self.client.post('/api/knots/', {'name': 'broken', 'document': bad}, format='json')
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
        self.assertIn('document', response.data)

    @override_settings(LEGCH_API_TOKEN='secret')
    def test_wrong_token(self):
        self.client.credentials(HTTP_AUTHORIZATION='Token other')
        response = self.client.delete(self.url('unknot'))
        self.assertEqual(response.status_code, status.HTTP_403_FORBIDDEN)


class DistanceAPITest(APITestCase):
    def test_distance(self):
        first = serialize_barcode(Barcode((Bar(0, 1, 5),)))
        second = serialize_barcode(Barcode((Bar(0, 2, 5),)))
        response = self.client.post('/api/distance/', {'first': first, 'second': second}, format='json')
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(response.data, {'distance': 1})

    def test_rii_distance(self):
        trefoil = serialize_barcode(Barcode((Bar(0, 1, 4), Bar(0, 1), Bar(0, 1), Bar(1, 4))))
        rii = {'bars': trefoil['bars'] + [{'degree': 0, 'birth': 2, 'death': 2.3}]}
        response = self.client.post('/api/distance/', {'first': trefoil, 'second': rii}, format='json')
        self.assertEqual(response.data, {'distance': 0.15})

    def test_infinite_distance(self):
        first = serialize_barcode(Barcode((Bar(0, 1),)))
        response = self.client.post('/api/distance/', {'first': first, 'second': {'bars': []}}, format='json')
        self.assertEqual(response.data, {'distance': 'inf'})

    def test_bad_barcode(self):
        response = self.client.post('/api/distance/', {'first': {'bars': []}}, format='json')
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
        self.assertEqual(response.data['code'], 'SCHEMA_ERROR')
