"""
Свободная некоммутативная алгебра над Z2 и DGA Чеканова-Элиашберга.

Слова хранятся как кортежи id образующих (пустой кортеж это единица),
элементы хранятся как множества слов после приведения по модулю 2.
"""

import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from typing import Iterable, Mapping

from core.exceptions import PreconditionError, StructuralError

logger = logging.getLogger(__name__)

Word = tuple

UNIT_WORD: Word = ()


@dataclass(frozen=True)
class Generator:
    id: int
    name: str
    grading: int


@dataclass(frozen=True)
class Element:
    words: frozenset = field(default_factory=frozenset)

    @classmethod
    def from_words(cls, words: Iterable) -> 'Element':
        """Собирает элемент, сокращая повторяющиеся слова по модулю 2"""
        counts = Counter(tuple(w) for w in words)
        return cls(frozenset(w for w, c in counts.items() if c % 2))

    @classmethod
    def zero(cls) -> 'Element':
        return cls()

    @classmethod
    def one(cls) -> 'Element':
        return cls(frozenset([UNIT_WORD]))

    @classmethod
    def generator(cls, gen_id: int) -> 'Element':
        return cls(frozenset([(gen_id,)]))

    def is_zero(self) -> bool:
        return not self.words

    def letters(self) -> set:
        return {letter for word in self.words for letter in word}

    def sorted_words(self) -> list:
        return sorted(self.words, key=lambda w: (len(w), w))

    def __add__(self, other: 'Element') -> 'Element':
        return Element(self.words ^ other.words)

    __sub__ = __add__

    def __mul__(self, other: 'Element') -> 'Element':
        return Element.from_words(a + b for a in self.words for b in other.words)

    def __bool__(self):
        return bool(self.words)

    def __len__(self):
        return len(self.words)


def _as_height(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Decimal, str)):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    raise StructuralError(f"Высота должна быть числом, получено {value!r}")


@dataclass(frozen=True)
class HeightAssignment:
    heights: Mapping = field(default_factory=dict)

    def __post_init__(self):
        converted = {int(k): _as_height(v) for k, v in self.heights.items()}
        for gen_id, value in converted.items():
            if value <= 0:
                raise PreconditionError(f"Высота образующей {gen_id} должна быть > 0, получено {value}")
        object.__setattr__(self, 'heights', converted)

    def __getitem__(self, gen_id: int) -> Fraction:
        try:
            return self.heights[gen_id]
        except KeyError:
            raise StructuralError(f"Нет высоты для образующей {gen_id}") from None

    def __contains__(self, gen_id):
        return gen_id in self.heights

    def with_heights(self, extra: Mapping) -> 'HeightAssignment':
        return HeightAssignment({**self.heights, **extra})


@dataclass(frozen=True)
class DGA:
    generators: tuple
    differential: tuple

    def __post_init__(self):
        gens = tuple(self.generators)
        diff = tuple(self.differential)
        object.__setattr__(self, 'generators', gens)
        object.__setattr__(self, 'differential', diff)
        if [g.id for g in gens] != list(range(len(gens))):
            raise StructuralError("id образующих должны идти подряд с нуля")
        names = [g.name for g in gens]
        if len(set(names)) != len(names):
            raise StructuralError(f"Имена образующих повторяются: {names}")
        if len(diff) != len(gens):
            raise StructuralError("Дифференциал должен быть задан для каждой образующей")
        for gen, value in zip(gens, diff):
            unknown = value.letters() - set(range(len(gens)))
            if unknown:
                raise StructuralError(f"В ∂{gen.name} встречаются неизвестные образующие {sorted(unknown)}")

    @classmethod
    def from_names(cls, generators, differential: Mapping = None) -> 'DGA':
        """
        Собирает DGA из списка (имя, градуировка) и словаря имя -> список слов,
        где слово задано списком имён, а пустой список означает единицу.
        """
        gens = tuple(Generator(i, name, int(grading)) for i, (name, grading) in enumerate(generators))
        index = {g.name: g.id for g in gens}
        differential = differential or {}
        unknown = set(differential) - set(index)
        if unknown:
            raise StructuralError(f"Дифференциал задан для неизвестных образующих: {sorted(unknown)}")
        diff = []
        for gen in gens:
            words = []
            for word in differential.get(gen.name, []):
                try:
                    words.append(tuple(index[letter] for letter in word))
                except KeyError as exc:
                    raise StructuralError(f"Неизвестная образующая {exc.args[0]!r} в ∂{gen.name}") from None
            diff.append(Element.from_words(words))
        return cls(gens, tuple(diff))

    def __len__(self):
        return len(self.generators)

    @property
    def names(self) -> list:
        return [g.name for g in self.generators]

    def id_of(self, name: str) -> int:
        for gen in self.generators:
            if gen.name == name:
                return gen.id
        raise StructuralError(f"Неизвестная образующая {name!r}")

    def grading(self, gen_id: int) -> int:
        if not 0 <= gen_id < len(self.generators):
            raise StructuralError(f"Неизвестная образующая {gen_id}")
        return self.generators[gen_id].grading

    def d(self, gen_id: int) -> Element:
        return self.differential[gen_id]

    def element(self, *words) -> Element:
        """Элемент из слов, записанных именами: dga.element(['q5', 'q4'], [])"""
        return Element.from_words(tuple(self.id_of(n) for n in w) for w in words)

    def format_word(self, word) -> str:
        if not word:
            return '1'
        return ''.join(self.generators[i].name for i in word)

    def format(self, elem: Element) -> str:
        if elem.is_zero():
            return '0'
        return ' + '.join(self.format_word(w) for w in elem.sorted_words())


def word_grading(word, dga: DGA) -> int:
    return sum(dga.grading(letter) for letter in word)


def word_height(word, h: HeightAssignment) -> Fraction:
    return sum((h[letter] for letter in word), Fraction(0))


def height_of_element(elem: Element, h: HeightAssignment):
    """Высота слова равна сумме высот букв, высота суммы равна максимуму, у нуля −∞"""
    if elem.is_zero():
        return -math.inf
    return max(word_height(w, h) for w in elem.words)


def _differential_of_word(word, dga: DGA) -> Element:
    # Правило Лейбница, знаки над Z2 не нужны
    result = []
    for i, letter in enumerate(word):
        prefix, suffix = word[:i], word[i + 1:]
        for middle in dga.d(letter).words:
            result.append(prefix + middle + suffix)
    return Element.from_words(result)


def apply_differential(elem: Element, dga: DGA) -> Element:
    total = Element.zero()
    for word in elem.words:
        for letter in word:
            if not 0 <= letter < len(dga):
                raise StructuralError(f"Неизвестная образующая {letter}")
        total = total + _differential_of_word(word, dga)
    return total


def substitute(elem: Element, images: Mapping) -> Element:
    """Применяет гомоморфизм алгебр, заданный образами образующих (остальные неподвижны)"""
    total = Element.zero()
    for word in elem.words:
        product = Element.one()
        for letter in word:
            product = product * images.get(letter, Element.generator(letter))
        total = total + product
    return total


@dataclass(frozen=True)
class Violation:
    kind: str
    generator: str
    detail: str

    def __str__(self):
        return f"{self.kind}: {self.generator}: {self.detail}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple = ()

    @property
    def is_valid(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.is_valid

    def first(self):
        return self.violations[0] if self.violations else None


GRADING_VIOLATION = 'GRADING_VIOLATION'
NOT_SQUARE_ZERO = 'NOT_SQUARE_ZERO'


def validate_dga(dga: DGA) -> ValidationReport:
    """Проверяет падение градуировки на 1 в каждом слове ∂q и ∂∂q = 0"""
    violations = []
    for gen in dga.generators:
        image = dga.d(gen.id)
        for word in image.sorted_words():
            degree = word_grading(word, dga)
            if degree != gen.grading - 1:
                violations.append(Violation(
                    GRADING_VIOLATION, gen.name,
                    f"слово {dga.format_word(word)} имеет градуировку {degree}, ожидалась {gen.grading - 1}",
                ))
        square = apply_differential(image, dga)
        if not square.is_zero():
            violations.append(Violation(NOT_SQUARE_ZERO, gen.name, f"∂∂{gen.name} = {dga.format(square)}"))
    if violations:
        logger.warning(f"DGA не прошла проверку: {len(violations)} нарушений")
    return ValidationReport(tuple(violations))
