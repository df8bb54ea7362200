"""
Поставляемые примеры узлов: unknot, trefoil, trefoil_rii, island.
"""

import json
import logging
from fractions import Fraction
from pathlib import Path

from django.conf import settings

from core.exceptions import PreconditionError, StructuralError
from core.numbers import json_number, to_fraction

logger = logging.getLogger(__name__)

CORPUS_NAMES = ('unknot', 'trefoil', 'trefoil_rii', 'island')


def corpus_dir() -> Path:
    return Path(settings.LEGCH_CORPUS_DIR)


def corpus_path(name: str) -> Path:
    path = corpus_dir() / f"{name}.json"
    if not path.exists():
        raise StructuralError(f"В корпусе нет узла {name!r} ({path})")
    return path


def load_document(name: str) -> dict:
    from api.knotfile import load_json
    return load_json(corpus_path(name).read_bytes())


def load(name: str):
    """KnotData для узла из корпуса"""
    from api.knotfile import parse_knot_document
    knot = parse_knot_document(load_document(name))
    logger.info(f"Загружен узел {name} из корпуса: {len(knot.dga)} образующих")
    return knot


def trefoil_rii(delta=Fraction(3, 10)) -> dict:
    """
    Трилистник после движения Рейдемейстера II: новые хорды a (|a| = 1)
    и b (|b| = 0) с ∂a = b + q4 и высотами 2 + delta и 2.
    """
    delta = to_fraction(delta)
    if not 0 < delta < 1:
        raise PreconditionError(f"delta должна лежать в (0, 1), получено {delta}")

    document = json.loads(corpus_path('trefoil').read_text(encoding='utf-8'))
    document['generators'] += [{'name': 'a', 'grading': 1}, {'name': 'b', 'grading': 0}]
    document['differential']['a'] = [['b'], ['q4']]

    patches = document['patches']
    patches[0] = patches[0] + [{'name': 'a', 'coeff': -1}, {'name': 'b', 'coeff': 1}]
    patches.insert(4, [{'name': 'a', 'coeff': 1}, {'name': 'b', 'coeff': -1}])
    # область q4 + q5 распадается на две
    patches.pop()
    patches.append([{'name': 'q4', 'coeff': 1}, {'name': 'a', 'coeff': 1}, {'name': 'b', 'coeff': -1}])
    patches.append([{'name': 'q5', 'coeff': 1}, {'name': 'b', 'coeff': 1}, {'name': 'a', 'coeff': -1}])

    document['heights']['a'] = json_number(2 + delta)
    document['heights']['b'] = 2
    document['meta'] = {
        'name': 'trefoil_rii',
        'description': 'Трилистник после движения Рейдемейстера II',
        'delta': json_number(delta),
    }
    return document
