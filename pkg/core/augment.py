"""
Аугментации DGA над Z2 и линеаризованный дифференциал.
"""

import itertools
import logging
from dataclasses import dataclass

import numpy as np
from django.conf import settings

from core import gf2
from core.algebra import DGA, Element, substitute
from core.exceptions import PreconditionError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Augmentation:
    dga: DGA
    values: tuple

    def __post_init__(self):
        values = tuple(int(v) for v in self.values)
        object.__setattr__(self, 'values', values)
        if len(values) != len(self.dga):
            raise PreconditionError(f"Аугментация задана на {len(values)} образующих, в DGA их {len(self.dga)}")
        if any(v not in (0, 1) for v in values):
            raise PreconditionError(f"Значения аугментации должны быть 0 или 1: {values}")

    @classmethod
    def from_names(cls, dga: DGA, values: dict) -> 'Augmentation':
        vector = [0] * len(dga)
        for name, value in values.items():
            vector[dga.id_of(name)] = value
        return cls(dga, tuple(vector))

    @classmethod
    def zero(cls, dga: DGA) -> 'Augmentation':
        return cls(dga, (0,) * len(dga))

    def __getitem__(self, gen_id: int) -> int:
        return self.values[gen_id]

    def degree_zero_vector(self) -> tuple:
        """Значения на образующих градуировки 0 (в порядке id)"""
        return tuple(self.values[g.id] for g in self.dga.generators if g.grading == 0)

    def violations(self) -> list:
        """Имена образующих, на которых нарушено ε = 0 вне градуировки 0 или ε∘∂ = 0"""
        bad = []
        for gen in self.dga.generators:
            if gen.grading != 0 and self.values[gen.id]:
                bad.append(gen.name)
            elif evaluate(self, self.dga.d(gen.id)):
                bad.append(gen.name)
        return bad

    def is_valid(self) -> bool:
        return not self.violations()

    def check(self):
        bad = self.violations()
        if bad:
            raise PreconditionError(f"ε не является аугментацией: нарушение на {', '.join(bad)}")

    def extend_by_zero(self, dga: DGA) -> 'Augmentation':
        """Продолжает ε нулём на образующие, добавленные в конец (например, стабилизацией)"""
        if len(dga) < len(self.dga):
            raise PreconditionError("Новая DGA меньше исходной")
        return Augmentation(dga, self.values + (0,) * (len(dga) - len(self.dga)))

    def describe(self) -> str:
        return ' '.join(
            f"{g.name}={self.values[g.id]}" for g in self.dga.generators if g.grading == 0
        )


def evaluate(eps: Augmentation, elem: Element) -> int:
    total = 0
    for word in elem.words:
        product = 1
        for letter in word:
            product &= eps.values[letter]
        total ^= product
    return total


def enumerate_augmentations(dga: DGA, max_generators: int = None) -> list:
    """
    Полный перебор значений на образующих градуировки 0.

    Порядок лексикографический по вектору значений (по возрастанию id).
    """
    if max_generators is None:
        max_generators = settings.LEGCH_MAX_AUGMENTATION_GENERATORS
    free = [g.id for g in dga.generators if g.grading == 0]
    if len(free) > max_generators:
        raise PreconditionError(
            f"Слишком много образующих степени 0 для перебора: {len(free)} > {max_generators}"
        )

    # ε∘∂ может быть ненулевым только на ∂q с |q| = 1
    constrained = [dga.d(g.id) for g in dga.generators if g.grading == 1]
    found = []
    for bits in itertools.product((0, 1), repeat=len(free)):
        values = [0] * len(dga)
        for gen_id, bit in zip(free, bits):
            values[gen_id] = bit
        candidate = Augmentation(dga, tuple(values))
        if all(evaluate(candidate, image) == 0 for image in constrained):
            found.append(candidate)
    logger.info(f"Найдено аугментаций: {len(found)} (перебор 2^{len(free)})")
    return found


@dataclass(frozen=True)
class LinearizedComplex:
    dga: DGA
    matrix: np.ndarray

    @property
    def generators(self):
        return self.dga.generators

    @property
    def gradings(self) -> list:
        return [g.grading for g in self.dga.generators]

    def image(self, gen_id: int) -> Element:
        rows = np.nonzero(self.matrix[:, gen_id])[0]
        return Element.from_words((int(r),) for r in rows)

    def format_image(self, gen_id: int) -> str:
        return self.dga.format(self.image(gen_id))

    def violations(self) -> list:
        problems = []
        if not gf2.is_zero(gf2.matmul(self.matrix, self.matrix)):
            problems.append("∂₁∂₁ ≠ 0")
        gradings = self.gradings
        for p, q in zip(*np.nonzero(self.matrix)):
            if gradings[p] != gradings[q] - 1:
                problems.append(f"∂₁{self.dga.format_word((int(q),))} содержит {self.dga.format_word((int(p),))} неверной степени")
        return problems

    def __eq__(self, other):
        if not isinstance(other, LinearizedComplex):
            return NotImplemented
        return self.dga == other.dga and np.array_equal(self.matrix, other.matrix)

    __hash__ = None


def linearized_differential(dga: DGA, eps: Augmentation) -> LinearizedComplex:
    """
    Линейная часть ∂, сопряжённого заменой q -> q + ε(q).

    Каждое слово q_{i1}...q_{ik} из ∂q даёт сумму по ℓ произведений ε
    всех букв, кроме ℓ-й, умноженных на q_{iℓ}.
    """
    if eps.dga != dga:
        raise PreconditionError("Аугментация задана для другой DGA")
    eps.check()
    n = len(dga)
    matrix = gf2.zeros(n)
    for gen in dga.generators:
        for word in dga.d(gen.id).words:
            for position, letter in enumerate(word):
                others = word[:position] + word[position + 1:]
                if all(eps.values[o] for o in others):
                    matrix[letter, gen.id] ^= 1
    lin = LinearizedComplex(dga, matrix)
    problems = lin.violations()
    if problems:
        raise PreconditionError(f"Линеаризованный дифференциал некорректен: {problems[0]}")
    return lin


def linearize_by_conjugation(dga: DGA, eps: Augmentation) -> LinearizedComplex:
    """Та же матрица через явное сопряжение φ^ε∘∂∘φ^ε и проекцию на слова длины 1"""
    shift = {
        g.id: Element.generator(g.id) + (Element.one() if eps.values[g.id] else Element.zero())
        for g in dga.generators
    }
    n = len(dga)
    matrix = gf2.zeros(n)
    for gen in dga.generators:
        conjugated = substitute(dga.d(gen.id), shift)
        for word in conjugated.words:
            if len(word) == 1:
                matrix[word[0], gen.id] = 1
    return LinearizedComplex(dga, matrix)
