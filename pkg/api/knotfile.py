"""
Форматы файлов: KnotFile и BarcodeFile (UTF-8 JSON).

Числа читаются через Decimal и хранятся как Fraction, поэтому высоты
вида 2.3 не теряют точности.
"""

import json
import logging
from decimal import Decimal

from api.serializers import BarcodeFileSerializer, KnotFileSerializer
from core.algebra import DGA, HeightAssignment, validate_dga
from core.diagram import AreaPatch, LagrangianDiagramData
from core.exceptions import KnotFileError, PreconditionError, StructuralError
from core.numbers import json_number
from core.persist import Bar, Barcode
from core.pipeline import KnotData

logger = logging.getLogger(__name__)

MALFORMED_JSON = 'MALFORMED_JSON'
SCHEMA_ERROR = 'SCHEMA_ERROR'
DUPLICATE_GENERATOR = 'DUPLICATE_GENERATOR'
UNKNOWN_GENERATOR = 'UNKNOWN_GENERATOR'
INVALID_HEIGHT = 'INVALID_HEIGHT'
INVALID_PATCH = 'INVALID_PATCH'
INVALID_BAR = 'INVALID_BAR'

# Код ошибки схемы по ключу верхнего уровня
SECTION_CODES = {
    'heights': INVALID_HEIGHT,
    'patches': INVALID_PATCH,
    'bars': INVALID_BAR,
}


def load_json(raw):
    """bytes/str -> объект; числа с точкой как Decimal"""
    if isinstance(raw, (bytes, bytearray)):
        try:
            raw = raw.decode('utf-8')
        except UnicodeDecodeError as exc:
            raise KnotFileError(f"Файл не в UTF-8: {exc.reason}", code=MALFORMED_JSON) from None
    try:
        return json.loads(raw, parse_float=Decimal)
    except json.JSONDecodeError as exc:
        raise KnotFileError(exc.msg, code=MALFORMED_JSON, key=f"line {exc.lineno}, column {exc.colno}") from None


def dump_json(document) -> bytes:
    return (json.dumps(document, indent=2, ensure_ascii=False) + '\n').encode('utf-8')


def _first_error(detail, path=''):
    """Первая ошибка сериализатора и путь до неё: generators[2].grading"""
    if isinstance(detail, dict):
        for key, value in detail.items():
            if key == 'non_field_errors':
                sub = path
            elif isinstance(key, int):
                sub = f"{path}[{key}]"
            else:
                sub = f"{path}.{key}" if path else str(key)
            return _first_error(value, sub)
    if isinstance(detail, list):
        for index, value in enumerate(detail):
            if isinstance(value, (dict, list)):
                if value:
                    return _first_error(value, f"{path}[{index}]")
            else:
                return path, value
    return path, detail


def _validated(serializer_class, document):
    serializer = serializer_class(data=document)
    if serializer.is_valid():
        return serializer.validated_data
    key, message = _first_error(serializer.errors)
    section = key.split('[')[0].split('.')[0]
    raise KnotFileError(str(message), code=SECTION_CODES.get(section, SCHEMA_ERROR), key=key or None)


def parse_knot_document(document) -> KnotData:
    """Разобранный JSON -> KnotData; первая найденная ошибка с кодом и ключом"""
    data = _validated(KnotFileSerializer, document)

    index = {}
    generators = []
    for position, gen in enumerate(data['generators']):
        if gen['name'] in index:
            raise KnotFileError(
                f"Образующая {gen['name']!r} объявлена дважды",
                code=DUPLICATE_GENERATOR,
                key=f"generators[{position}].name",
            )
        index[gen['name']] = position
        generators.append((gen['name'], gen['grading']))

    for name, words in data['differential'].items():
        if name not in index:
            raise KnotFileError(f"∂ задан для неизвестной образующей {name!r}", code=UNKNOWN_GENERATOR, key=f"differential.{name}")
        for w, word in enumerate(words):
            for letter in word:
                if letter not in index:
                    raise KnotFileError(
                        f"Неизвестная образующая {letter!r}",
                        code=UNKNOWN_GENERATOR,
                        key=f"differential.{name}[{w}]",
                    )

    patches = []
    for p, corners in enumerate(data['patches']):
        for c, corner in enumerate(corners):
            if corner['name'] not in index:
                raise KnotFileError(
                    f"Неизвестная образующая {corner['name']!r}",
                    code=UNKNOWN_GENERATOR,
                    key=f"patches[{p}][{c}].name",
                )
        try:
            patches.append(AreaPatch(tuple((index[c['name']], c['coeff']) for c in corners)))
        except StructuralError as exc:
            raise KnotFileError(exc.message, code=INVALID_PATCH, key=f"patches[{p}]") from None

    heights = None
    if 'heights' in data:
        values = {}
        for name, value in data['heights'].items():
            if name not in index:
                raise KnotFileError(f"Высота для неизвестной образующей {name!r}", code=UNKNOWN_GENERATOR, key=f"heights.{name}")
            if value <= 0:
                raise KnotFileError(f"Высота должна быть > 0, получено {value}", code=INVALID_HEIGHT, key=f"heights.{name}")
            values[index[name]] = value
        missing = [name for name in index if index[name] not in values]
        if missing:
            raise KnotFileError(f"Нет высот для: {', '.join(missing)}", code=INVALID_HEIGHT, key='heights')
        heights = HeightAssignment(values)

    dga = DGA.from_names(generators, data['differential'])
    report = validate_dga(dga)
    if not report.is_valid:
        violation = report.first()
        raise KnotFileError(violation.detail, code=violation.kind, key=f"differential.{violation.generator}")

    diagram = LagrangianDiagramData(tuple(range(len(dga))), tuple(patches), data['ng_resolved'])
    return KnotData(dga, diagram, heights, data['meta'])


def parse_knot_file(raw) -> KnotData:
    return parse_knot_document(load_json(raw))


def serialize_knot(knot: KnotData) -> dict:
    dga = knot.dga
    document = {
        'generators': [{'name': g.name, 'grading': g.grading} for g in dga.generators],
        'differential': {
            g.name: [[dga.generators[i].name for i in word] for word in dga.d(g.id).sorted_words()]
            for g in dga.generators
            if not dga.d(g.id).is_zero()
        },
        'patches': [
            [{'name': dga.generators[gen_id].name, 'coeff': coeff} for gen_id, coeff in patch.corners]
            for patch in knot.diagram.patches
        ],
    }
    if knot.heights is not None:
        document['heights'] = {g.name: json_number(knot.heights[g.id]) for g in dga.generators}
    document['ng_resolved'] = knot.diagram.ng_resolved
    document['meta'] = _plain(knot.meta)
    return document


def _plain(value):
    """Decimal из json.loads обратно в JSON-совместимые числа"""
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    if isinstance(value, list):
        return [_plain(v) for v in value]
    if isinstance(value, Decimal):
        return json_number(value)
    return value


def parse_barcode_document(document) -> Barcode:
    data = _validated(BarcodeFileSerializer, document)
    bars = []
    for position, bar in enumerate(data['bars']):
        if bar['birth'] <= 0:
            raise KnotFileError("birth должен быть > 0", code=INVALID_BAR, key=f"bars[{position}].birth")
        try:
            bars.append(Bar(
                bar['degree'],
                bar['birth'],
                bar['death'],
                birth_label=bar.get('birth_label') or None,
                death_label=bar.get('death_label') or None,
            ))
        except PreconditionError as exc:
            raise KnotFileError(exc.message, code=INVALID_BAR, key=f"bars[{position}]") from None
    return Barcode(tuple(bars))


def parse_barcode_file(raw) -> Barcode:
    return parse_barcode_document(load_json(raw))


def serialize_barcode(barcode: Barcode) -> dict:
    bars = []
    for bar in barcode:
        entry = {
            'degree': bar.degree,
            'birth': json_number(bar.birth),
            'death': json_number(bar.death),
        }
        if bar.birth_label:
            entry['birth_label'] = bar.birth_label
        if bar.death_label:
            entry['death_label'] = bar.death_label
        bars.append(entry)
    return {'bars': bars}
