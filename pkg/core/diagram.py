"""
Комбинаторика лагранжевой диаграммы: области, неравенства площадей,
алгоритм затопления и назначение высот.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction

from core.algebra import HeightAssignment
from core.exceptions import FloodingError, PreconditionError, StructuralError

logger = logging.getLogger(__name__)

ALLOWED_COEFFICIENTS = (-2, -1, 1, 2)

SUCCESS = 'success'
FAILURE = 'failure'


@dataclass(frozen=True)
class AreaPatch:
    corners: tuple

    def __post_init__(self):
        corners = tuple((int(gen_id), int(coeff)) for gen_id, coeff in self.corners)
        if not corners:
            raise StructuralError("Область без углов")
        ids = [gen_id for gen_id, _ in corners]
        if len(set(ids)) != len(ids):
            raise StructuralError(f"Образующая встречается в углах области дважды: {ids}")
        for gen_id, coeff in corners:
            if coeff not in ALLOWED_COEFFICIENTS:
                raise StructuralError(f"Коэффициент {coeff} при {gen_id} вне {{-2, -1, 1, 2}}")
        object.__setattr__(self, 'corners', corners)


@dataclass(frozen=True)
class LagrangianDiagramData:
    crossings: tuple
    patches: tuple = ()
    ng_resolved: bool = False

    def __post_init__(self):
        object.__setattr__(self, 'crossings', tuple(self.crossings))
        object.__setattr__(self, 'patches', tuple(self.patches))
        known = set(self.crossings)
        for index, patch in enumerate(self.patches):
            unknown = {gen_id for gen_id, _ in patch.corners} - known
            if unknown:
                raise StructuralError(f"Область {index} ссылается на неизвестные пересечения {sorted(unknown)}")


@dataclass(frozen=True)
class LinearForm:
    """Разреженная форма Σ c_i h(q_i), которая должна быть > 0"""

    terms: tuple

    def coefficient(self, gen_id: int) -> int:
        for term_id, coeff in self.terms:
            if term_id == gen_id:
                return coeff
        return 0

    def variables(self) -> set:
        return {gen_id for gen_id, _ in self.terms}

    def evaluate(self, h: HeightAssignment) -> Fraction:
        return sum((coeff * h[gen_id] for gen_id, coeff in self.terms), Fraction(0))


@dataclass(frozen=True)
class InequalitySystem:
    inequalities: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, 'inequalities', tuple(self.inequalities))

    @classmethod
    def from_dicts(cls, forms) -> 'InequalitySystem':
        """Из списка словарей {id: коэффициент}"""
        return cls(tuple(_form_from_dict(form) for form in forms))

    def variables(self) -> set:
        return set().union(*(f.variables() for f in self.inequalities)) if self.inequalities else set()

    def __len__(self):
        return len(self.inequalities)


def _form_from_dict(form: dict) -> LinearForm:
    terms = tuple(sorted((k, v) for k, v in form.items() if v))
    return LinearForm(AreaPatch(terms).corners)


@dataclass(frozen=True)
class Tiering:
    tiers: tuple
    status: str
    unassigned: frozenset = frozenset()

    @property
    def succeeded(self) -> bool:
        return self.status == SUCCESS


def area_inequalities(d: LagrangianDiagramData) -> InequalitySystem:
    return InequalitySystem(tuple(LinearForm(patch.corners) for patch in d.patches))


def flood(sys: InequalitySystem, crossings) -> Tiering:
    """
    Затопление: на шаге k ярус T_k: все ещё не распределённые образующие
    с неотрицательным коэффициентом во всех оставшихся неравенствах.
    Неравенства, где ярус входит с плюсом, удаляются. Пустой ярус при
    непустой системе означает неудачу, а при пустой системе остаток уходит в последний ярус.
    """
    untiered = set(crossings)
    stray = sys.variables() - untiered
    if stray:
        raise StructuralError(f"Переменные {sorted(stray)} не являются пересечениями")
    remaining = list(sys.inequalities)
    tiers = []

    # Каждый раунд либо уменьшает остаток, либо завершает алгоритм
    for _ in range(len(untiered) + 2):
        if not remaining:
            tiers.append(frozenset(untiered))
            logger.info(f"Затопление успешно: {len(tiers)} ярусов")
            return Tiering(tuple(tiers), SUCCESS)
        tier = frozenset(
            gen_id for gen_id in untiered
            if all(form.coefficient(gen_id) >= 0 for form in remaining)
        )
        if not tier:
            logger.warning(f"Затопление остановилось на ярусе {len(tiers) + 1}, не распределены {sorted(untiered)}")
            return Tiering(tuple(tiers), FAILURE, frozenset(untiered))
        tiers.append(tier)
        untiered -= tier
        remaining = [f for f in remaining if not any(f.coefficient(g) > 0 for g in tier)]
    raise AssertionError("Затопление не завершилось за n + 1 раунд")


def assign_heights(t: Tiering) -> HeightAssignment:
    """h_M = 1, h_k = 1 + Σ_{i>k} 2·h_i·|T_i|"""
    if not t.succeeded:
        raise FloodingError("Нельзя назначить высоты по неудавшемуся затоплению", tiering=t)
    levels = [Fraction(0)] * len(t.tiers)
    tail = Fraction(0)
    for k in range(len(t.tiers) - 1, -1, -1):
        levels[k] = 1 + tail
        tail += 2 * levels[k] * len(t.tiers[k])
    return HeightAssignment({gen_id: levels[k] for k, tier in enumerate(t.tiers) for gen_id in tier})


@dataclass(frozen=True)
class HeightCheck:
    valid: bool
    violations: tuple = ()

    def __bool__(self):
        return self.valid


def validate_heights(h: HeightAssignment, sys: InequalitySystem) -> HeightCheck:
    violations = []
    for index, form in enumerate(sys.inequalities):
        value = form.evaluate(h)
        if value <= 0:
            violations.append((index, value))
    return HeightCheck(not violations, tuple(violations))


def perturb_heights(t: Tiering, h: HeightAssignment, sys: InequalitySystem) -> HeightAssignment:
    """
    Разводит равные высоты внутри ярусов: образующая с рангом r в ярусе
    (по id) получает добавку r·η/n, где η = slack/(2n+1).
    """
    check = validate_heights(h, sys)
    if not check:
        raise PreconditionError(f"Исходные высоты нарушают неравенства {[i for i, _ in check.violations]}")
    n = len(h.heights)
    if n == 0:
        return h
    if sys.inequalities:
        slack = min(form.evaluate(h) for form in sys.inequalities)
    else:
        slack = min(h.heights.values())
    eta = slack / (2 * n + 1)
    shifted = dict(h.heights)
    for tier in t.tiers:
        for rank, gen_id in enumerate(sorted(tier)):
            if gen_id in shifted:
                shifted[gen_id] += rank * eta / n
    return HeightAssignment(shifted)
