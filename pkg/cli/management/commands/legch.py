import logging
from pathlib import Path

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError, CommandParser

from api.knotfile import dump_json, parse_barcode_file, parse_knot_file, serialize_barcode
from cli.render import render_svg, render_text
from core.augment import enumerate_augmentations, linearized_differential
from core.exceptions import FloodingError, KnotFileError, LegchError
from core.metrics import check_strong_morse, interleaving_distance
from core.numbers import format_number
from core.pipeline import HEIGHTS_AUTO, HEIGHTS_MODES, compute_barcode_for, run_flooding, select_augmentation

logger = logging.getLogger(__name__)

SUBCOMMANDS = ('validate', 'augment', 'linearize', 'flood', 'barcode', 'distance', 'morse')

MORSE_VERDICT = "Theorem 6.1"

USAGE = """usage: legch <command> [options]

commands:
  validate <file>                         проверить файл узла
  augment <file>                          список аугментаций с номерами
  linearize <file> [--aug I]              линеаризованный дифференциал
  flood <file> [--perturb]                ярусы и высоты затопления (код 2 при неудаче)
  barcode <file> [--aug I] [--heights auto|flood|file] [--render json|text|svg]
  distance <barcode1> <barcode2>          расстояние между баркодами
  morse <file> [--aug I] [--heights auto|flood|file]
"""


class UsageError(CommandError):
    pass


class LegchParser(CommandParser):
    """Ошибки аргументов подкоманд: текст usage и код выхода 1"""

    def error(self, message):
        raise UsageError(f"{message}\n{self.format_usage()}".rstrip())


def _describe(exc: LegchError) -> str:
    if isinstance(exc, KnotFileError):
        return str(exc)
    return f"{exc.code}: {exc.message}"


class Command(BaseCommand):
    help = 'Персистентная лежандрова контактная гомология: аугментации, затопление, баркоды'

    def add_arguments(self, parser):
        subparsers = parser.add_subparsers(dest='subcommand', required=True, parser_class=LegchParser)

        validate = subparsers.add_parser('validate', help='Проверить файл узла')
        validate.add_argument('file')

        augment = subparsers.add_parser('augment', help='Перечислить аугментации')
        augment.add_argument('file')

        linearize = subparsers.add_parser('linearize', help='Линеаризованный дифференциал')
        linearize.add_argument('file')
        linearize.add_argument('--aug', type=int, default=0)

        flood = subparsers.add_parser('flood', help='Алгоритм затопления')
        flood.add_argument('file')
        flood.add_argument('--perturb', action='store_true', help='Развести равные высоты внутри ярусов')

        barcode = subparsers.add_parser('barcode', help='Баркод')
        barcode.add_argument('file')
        barcode.add_argument('--aug', type=int, default=0)
        barcode.add_argument('--heights', choices=HEIGHTS_MODES, default=HEIGHTS_AUTO)
        barcode.add_argument('--render', choices=('json', 'text', 'svg'), default='json')

        distance = subparsers.add_parser('distance', help='Расстояние между баркодами')
        distance.add_argument('first')
        distance.add_argument('second')

        morse = subparsers.add_parser('morse', help='Сильное неравенство Морса')
        morse.add_argument('file')
        morse.add_argument('--aug', type=int, default=0)
        morse.add_argument('--heights', choices=HEIGHTS_MODES, default=HEIGHTS_AUTO)

    def handle(self, *args, **options):
        handler = getattr(self, f"handle_{options['subcommand']}")
        try:
            handler(options)
        except FloodingError as exc:
            raise CommandError(_describe(exc), returncode=2)
        except LegchError as exc:
            raise CommandError(_describe(exc))

    def _read(self, path):
        try:
            return Path(path).read_bytes()
        except OSError as exc:
            raise CommandError(f"Не удалось прочитать {path}: {exc.strerror}")

    def _knot(self, path):
        return parse_knot_file(self._read(path))

    def _write(self, text):
        self.stdout.write(text, ending='' if text.endswith('\n') else '\n')

    def handle_validate(self, options):
        knot = self._knot(options['file'])
        heights = 'yes' if knot.heights is not None else 'no'
        self._write(
            f"OK: {len(knot.dga)} generators, {len(knot.diagram.patches)} patches, heights: {heights}"
        )

    def handle_augment(self, options):
        knot = self._knot(options['file'])
        augmentations = enumerate_augmentations(knot.dga)
        lines = [f"{len(augmentations)} augmentations"]
        lines += [f"{index}  {eps.describe()}" for index, eps in enumerate(augmentations)]
        self._write('\n'.join(lines))

    def handle_linearize(self, options):
        knot = self._knot(options['file'])
        eps = select_augmentation(knot, options['aug'])
        lin = linearized_differential(knot.dga, eps)
        lines = [f"augmentation {options['aug']}: {eps.describe()}"]
        lines += [f"∂{g.name} = {lin.format_image(g.id)}" for g in knot.dga.generators]
        self._write('\n'.join(lines))

    def handle_flood(self, options):
        knot = self._knot(options['file'])
        result = run_flooding(knot, perturb=options['perturb'])
        name = knot.dga.format_word

        lines = []
        for index, tier in enumerate(result.tiering.tiers, start=1):
            members = ' '.join(name((i,)) for i in sorted(tier)) or '-'
            lines.append(f"T{index}: {members}")
        if not result.tiering.succeeded:
            unassigned = ' '.join(name((i,)) for i in sorted(result.tiering.unassigned))
            lines += ['flooding failed', f"unassigned: {unassigned}"]
            self._write('\n'.join(lines))
            raise FloodingError(f"Затопление не удалось, не распределены: {unassigned}", tiering=result.tiering)

        lines.append('heights:')
        lines += [f"  {g.name} = {format_number(result.heights[g.id])}" for g in knot.dga.generators]
        self._write('\n'.join(lines))

    def handle_barcode(self, options):
        knot = self._knot(options['file'])
        result = compute_barcode_for(knot, options['aug'], options['heights'])
        if options['render'] == 'text':
            color = settings.LEGCH_COLOR and self.stdout.isatty()
            self._write(render_text(result.barcode, color=color))
        elif options['render'] == 'svg':
            self._write(render_svg(result.barcode).decode('utf-8'))
        else:
            self._write(dump_json(serialize_barcode(result.barcode)).decode('utf-8'))

    def handle_distance(self, options):
        first = parse_barcode_file(self._read(options['first']))
        second = parse_barcode_file(self._read(options['second']))
        self._write(format_number(interleaving_distance(first, second)))

    def handle_morse(self, options):
        knot = self._knot(options['file'])
        result = compute_barcode_for(knot, options['aug'], options['heights'])
        report = check_strong_morse(knot.dga, result.barcode)
        verdict = 'HOLDS' if report.holds else 'FAILS'
        self._write('\n'.join([
            f"MC = {report.mc}",
            f"PC = {report.pc}",
            f"R = {report.r}",
            f"{MORSE_VERDICT}: {verdict}",
        ]))
