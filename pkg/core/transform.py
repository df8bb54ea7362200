"""
Стабилизации, элементарные автоморфизмы и ручные изоморфизмы DGA.
"""

import logging
from dataclasses import dataclass, field

import numpy as np

from core import gf2
from core.algebra import (
    DGA,
    Element,
    Generator,
    HeightAssignment,
    _as_height,
    apply_differential,
    substitute,
    word_grading,
)
from core.augment import Augmentation, LinearizedComplex, evaluate
from core.exceptions import PreconditionError, StructuralError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ElementaryAutomorphism:
    target: int
    addend: Element = field(default_factory=Element)

    def __post_init__(self):
        if self.target in self.addend.letters():
            raise PreconditionError(f"Добавка не должна содержать саму образующую {self.target}")

    def images(self) -> dict:
        return {self.target: Element.generator(self.target) + self.addend}


@dataclass(frozen=True)
class TameIsomorphism:
    steps: tuple = ()
    relabel: tuple = None

    def __post_init__(self):
        object.__setattr__(self, 'steps', tuple(self.steps))
        if self.relabel is not None:
            relabel = tuple(int(i) for i in self.relabel)
            if sorted(relabel) != list(range(len(relabel))):
                raise PreconditionError(f"relabel должен быть перестановкой: {relabel}")
            object.__setattr__(self, 'relabel', relabel)

    def sigma(self, gen_id: int) -> int:
        return gen_id if self.relabel is None else self.relabel[gen_id]


def _fresh_name(dga: DGA, base: str) -> str:
    name, suffix = base, 1
    while name in dga.names:
        name = f"{base}_{suffix}"
        suffix += 1
    return name


def stabilize(dga: DGA, k: int, h_top, h_bot, h: HeightAssignment):
    """Добавляет пару e_k, e_{k-1} с ∂e_k = e_{k-1}; новые id идут в конец"""
    h_top, h_bot = _as_height(h_top), _as_height(h_bot)
    if not h_top > h_bot > 0:
        raise PreconditionError(f"Нужно h_top > h_bot > 0, получено {h_top} и {h_bot}")
    n = len(dga)
    top = Generator(n, _fresh_name(dga, f"e{k}"), k)
    bottom = Generator(n + 1, _fresh_name(dga, f"e{k - 1}"), k - 1)
    stabilized = DGA(
        dga.generators + (top, bottom),
        dga.differential + (Element.generator(bottom.id), Element.zero()),
    )
    heights = h.with_heights({top.id: h_top, bottom.id: h_bot})
    logger.debug(f"Стабилизация в степени {k}: {top.name} -> {bottom.name}")
    return stabilized, heights


def _check_homogeneous(dga: DGA, phi: ElementaryAutomorphism):
    if not 0 <= phi.target < len(dga):
        raise StructuralError(f"Неизвестная образующая {phi.target}")
    degree = dga.grading(phi.target)
    for word in phi.addend.words:
        if word_grading(word, dga) != degree:
            raise PreconditionError(
                f"Добавка неоднородна: слово {dga.format_word(word)} не степени {degree}"
            )


def apply_elementary(dga: DGA, phi: ElementaryAutomorphism) -> DGA:
    """Сопрягает дифференциал: ∂' = φ∘∂∘φ (над Z2 φ обратен сам себе)"""
    _check_homogeneous(dga, phi)
    images = phi.images()
    differential = []
    for gen in dga.generators:
        image = dga.d(gen.id)
        if gen.id == phi.target:
            image = image + apply_differential(phi.addend, dga)
        differential.append(substitute(image, images))
    return DGA(dga.generators, tuple(differential))


def apply_tame(dga: DGA, iso: TameIsomorphism) -> DGA:
    """Шаги по порядку, затем перенумерация образующих"""
    result = dga
    for step in iso.steps:
        result = apply_elementary(result, step)
    if iso.relabel is None:
        return result
    if len(iso.relabel) != len(result):
        raise PreconditionError("relabel должен покрывать все образующие")

    generators = [None] * len(result)
    differential = [None] * len(result)
    for gen in result.generators:
        new_id = iso.sigma(gen.id)
        generators[new_id] = Generator(new_id, gen.name, gen.grading)
        differential[new_id] = Element.from_words(
            tuple(iso.sigma(letter) for letter in word) for word in result.d(gen.id).words
        )
    return DGA(tuple(generators), tuple(differential))


def is_semimonotonic(phi: ElementaryAutomorphism, h: HeightAssignment) -> bool:
    """Каждая буква каждого слова добавки строго ниже образующей"""
    top = h[phi.target]
    return all(h[letter] < top for letter in phi.addend.letters())


def is_semimonotonic_tame(iso: TameIsomorphism, h: HeightAssignment) -> bool:
    return all(is_semimonotonic(step, h) for step in iso.steps)


def induced_linear_map(phi: ElementaryAutomorphism, eps: Augmentation) -> np.ndarray:
    """
    Матрица линейного отображения на линейной оболочке образующих.

    Столбец target: q + сумма по словам добавки и позициям ℓ произведений ε
    остальных букв, умноженных на ℓ-ю букву. Остальные столбцы единичные.
    """
    eps.check()
    _check_homogeneous(eps.dga, phi)
    matrix = gf2.identity(len(eps.dga))
    for word in phi.addend.words:
        for position, letter in enumerate(word):
            others = word[:position] + word[position + 1:]
            if all(eps.values[o] for o in others):
                matrix[letter, phi.target] ^= 1
    return matrix


def pullback_augmentation(eps: Augmentation, phi: ElementaryAutomorphism, dga: DGA) -> Augmentation:
    """ε∘φ как аугментация DGA после сопряжения элементарным автоморфизмом"""
    values = list(eps.values)
    values[phi.target] ^= evaluate(eps, phi.addend)
    return Augmentation(dga, tuple(values))


def induced_tame_map(iso: TameIsomorphism, eps: Augmentation) -> np.ndarray:
    """Произведение матриц шагов и матрицы перестановки"""
    n = len(eps.dga)
    total = gf2.identity(n)
    current = eps
    dga = eps.dga
    for step in iso.steps:
        total = gf2.matmul(induced_linear_map(step, current), total)
        dga = apply_elementary(dga, step)
        current = pullback_augmentation(current, step, dga)
    if iso.relabel is not None:
        permutation = gf2.zeros(n)
        for gen_id in range(n):
            permutation[iso.sigma(gen_id), gen_id] = 1
        total = gf2.matmul(permutation, total)
    return total


def conjugate_linearized(lin: LinearizedComplex, matrix: np.ndarray) -> LinearizedComplex:
    """Комплекс с дифференциалом M·∂₁·M⁻¹"""
    try:
        inverse = gf2.inverse(matrix)
    except ValueError:
        raise PreconditionError("Матрица отображения вырождена") from None
    return LinearizedComplex(lin.dga, gf2.matmul(gf2.matmul(matrix, lin.matrix), inverse))


def relabel_height_shift(iso: TameIsomorphism, h: HeightAssignment, h_prime: HeightAssignment):
    """max |h'(σ(q)) - h(q)| по всем образующим h"""
    shift = 0
    for gen_id, height in h.heights.items():
        shift = max(shift, abs(h_prime[iso.sigma(gen_id)] - height))
    return shift
