import json
import tempfile
from contextlib import redirect_stderr, redirect_stdout
from fractions import Fraction
from io import StringIO
from pathlib import Path

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

import legch
from cli.management.commands.legch import USAGE, UsageError
from cli.render import HEADER, render_svg, render_text
from core import corpus
from core.persist import Bar, Barcode

TREFOIL_TEXT = """# legch barcode
H0  [1, 4)  q3 + q5
H0  [1, inf)  q3
H0  [1, inf)  q4
H1  [4, inf)  q1 + q2
"""


def knot_path(name):
    return str(corpus.corpus_path(name))


def run(*args):
    out = StringIO()
    call_command('legch', *args, stdout=out)
    return out.getvalue()


class CommandTest(SimpleTestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)

    def write(self, name, content):
        path = Path(self.tmp.name) / name
        path.write_text(content, encoding='utf-8')
        return str(path)

    def test_validate(self):
        self.assertEqual(run('validate', knot_path('trefoil')), 'OK: 5 generators, 6 patches, heights: yes\n')
        self.assertEqual(run('validate', knot_path('island')), 'OK: 9 generators, 10 patches, heights: no\n')

    def test_validate_reports_code(self):
        path = self.write('broken.json', '{"generators": [')
        with self.assertRaisesMessage(CommandError, 'MALFORMED_JSON'):
            run('validate', path)

    def test_missing_file(self):
        with self.assertRaises(CommandError) as ctx:
            run('validate', str(Path(self.tmp.name) / 'absent.json'))
        self.assertEqual(ctx.exception.returncode, 1)

    def test_augment(self):
        lines = run('augment', knot_path('trefoil')).splitlines()
        self.assertEqual(lines[0], '5 augmentations')
        self.assertEqual(lines[1], '0  q3=0 q4=0 q5=1')
        self.assertEqual(lines[5], '4  q3=1 q4=1 q5=1')

    def test_linearize(self):
        output = run('linearize', knot_path('trefoil'), '--aug', '2')
        self.assertEqual(output, (
            'augmentation 2: q3=1 q4=0 q5=0\n'
            '∂q1 = q3 + q5\n'
            '∂q2 = q3 + q5\n'
            '∂q3 = 0\n'
            '∂q4 = 0\n'
            '∂q5 = 0\n'
        ))

    def test_flood(self):
        output = run('flood', knot_path('trefoil'))
        self.assertEqual(output, (
            'T1: q1 q2\n'
            'T2: q3 q4 q5\n'
            'T3: -\n'
            'heights:\n'
            '  q1 = 7\n'
            '  q2 = 7\n'
            '  q3 = 1\n'
            '  q4 = 1\n'
            '  q5 = 1\n'
        ))

    def test_flood_failure_exit_code(self):
        out = StringIO()
        with self.assertRaises(CommandError) as ctx:
            call_command('legch', 'flood', knot_path('island'), stdout=out)
        self.assertEqual(ctx.exception.returncode, 2)
        self.assertIn('flooding failed\nunassigned: q4 q5 q6 q7 q8 q9', out.getvalue())

    def test_barcode_text(self):
        self.assertEqual(run('barcode', knot_path('trefoil'), '--aug', '2', '--render', 'text'), TREFOIL_TEXT)
        self.assertEqual(
            run('barcode', knot_path('unknot'), '--render', 'text'),
            f'{HEADER}\nH1  [1, inf)  q\n',
        )

    def test_barcode_json_with_flood_heights(self):
        document = json.loads(run('barcode', knot_path('trefoil'), '--aug', '2', '--heights', 'flood'))
        self.assertEqual([(b['degree'], b['birth'], b['death']) for b in document['bars']], [
            (0, 1, 7), (0, 1, 'inf'), (0, 1, 'inf'), (1, 7, 'inf'),
        ])

    def test_barcode_is_deterministic(self):
        for render in ('json', 'text', 'svg'):
            with self.subTest(render=render):
                first = run('barcode', knot_path('trefoil_rii'), '--aug', '3', '--render', render)
                self.assertEqual(first, run('barcode', knot_path('trefoil_rii'), '--aug', '3', '--render', render))

    def test_bad_render_is_usage_error(self):
        with self.assertRaises(UsageError):
            run('barcode', knot_path('trefoil'), '--render', 'pdf')

    def test_augmentation_out_of_range(self):
        with self.assertRaisesMessage(CommandError, 'PRECONDITION'):
            run('barcode', knot_path('trefoil'), '--aug', '5')

    def test_distance(self):
        trefoil = self.write('trefoil.json', run('barcode', knot_path('trefoil'), '--aug', '2'))
        rii = self.write('rii.json', run('barcode', knot_path('trefoil_rii'), '--aug', '2'))
        unknot = self.write('unknot.json', run('barcode', knot_path('unknot')))
        self.assertEqual(run('distance', trefoil, rii), '0.15\n')
        self.assertEqual(run('distance', trefoil, trefoil), '0\n')
        self.assertEqual(run('distance', trefoil, unknot), 'inf\n')

    def test_distance_rejects_bad_bars(self):
        bad = self.write('bad.json', '{"bars": [{"degree": 0, "birth": 3, "death": 1}]}')
        with self.assertRaisesMessage(CommandError, 'INVALID_BAR'):
            run('distance', bad, bad)

    def test_morse(self):
        expected = 'MC = 2z+3\nPC = z+2\nR = 1\nTheorem 6.1: HOLDS\n'
        for aug in ('0', '2', '4'):
            with self.subTest(aug=aug):
                self.assertEqual(run('morse', knot_path('trefoil'), '--aug', aug), expected)
        self.assertTrue(run('morse', knot_path('trefoil_rii'), '--aug', '2').endswith('Theorem 6.1: HOLDS\n'))


class RenderTest(SimpleTestCase):
    def test_empty_barcode(self):
        self.assertEqual(render_text(Barcode()), f'{HEADER}\n')

    def test_fractions_are_exact(self):
        text = render_text(Barcode((Bar(0, 2, Fraction(23, 10), birth_label='b'), Bar(0, Fraction(1, 3)))))
        self.assertEqual(text.splitlines()[1:], ['H0  [1/3, inf)', 'H0  [2, 2.3)  b'])

    def test_color(self):
        text = render_text(Barcode((Bar(1, 1),)), color=True)
        self.assertIn('\x1b[', text)

    def test_svg(self):
        barcode = Barcode((Bar(0, 1, 4, birth_label='q3 + q5'), Bar(1, 4)))
        svg = render_svg(barcode)
        self.assertTrue(svg.startswith(b'<?xml'))
        self.assertEqual(svg, render_svg(barcode))
        self.assertTrue(render_svg(Barcode()).startswith(b'<?xml'))


class MainTest(SimpleTestCase):
    def call(self, *argv):
        out, err = StringIO(), StringIO()
        with redirect_stdout(out), redirect_stderr(err):
            code = legch.main(list(argv))
        return code, out.getvalue(), err.getvalue()

    def test_help(self):
        self.assertEqual(self.call('-h'), (0, USAGE, ''))

    def test_no_command(self):
        code, out, err = self.call()
        self.assertEqual((code, out), (1, ''))
        self.assertIn('usage: legch', err)

    def test_unknown_command(self):
        code, _, err = self.call('frobnicate')
        self.assertEqual(code, 1)
        self.assertIn('frobnicate', err)

    def test_success(self):
        code, out, _ = self.call('morse', knot_path('unknot'))
        self.assertEqual(code, 0)
        self.assertIn('Theorem 6.1: HOLDS', out)

    def test_flooding_failure(self):
        code, out, err = self.call('barcode', knot_path('island'))
        self.assertEqual(code, 2)
        self.assertEqual(out, '')
        self.assertIn('FLOODING_FAILED', err)

    def test_usage_error(self):
        code, _, err = self.call('barcode', knot_path('trefoil'), '--heights', 'guess')
        self.assertEqual(code, 1)
        self.assertIn('usage:', err)
