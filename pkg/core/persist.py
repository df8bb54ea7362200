"""
Фильтрованные по высоте комплексы и баркоды по степеням Маслова.
"""

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from core import gf2
from core.algebra import HeightAssignment
from core.augment import LinearizedComplex
from core.exceptions import FiltrationError, PreconditionError, StructuralError

logger = logging.getLogger(__name__)

INF = math.inf


@dataclass(frozen=True)
class FilteredComplex:
    lin: LinearizedComplex
    heights: HeightAssignment

    @property
    def dga(self):
        return self.lin.dga

    @property
    def matrix(self):
        return self.lin.matrix

    @property
    def gradings(self):
        return self.lin.gradings

    def order(self) -> list:
        """Порядок столбцов: по (высота, id)"""
        return sorted(range(len(self.dga)), key=lambda i: (self.heights[i], i))


def build_filtered_complex(lin: LinearizedComplex, h: HeightAssignment) -> FilteredComplex:
    missing = [g.name for g in lin.generators if g.id not in h]
    if missing:
        raise StructuralError(f"Нет высот для образующих: {', '.join(missing)}")
    problems = lin.violations()
    if problems:
        raise PreconditionError(problems[0])
    for p, q in zip(*np.nonzero(lin.matrix)):
        p, q = int(p), int(q)
        if not h[p] < h[q]:
            source, target = lin.dga.format_word((q,)), lin.dga.format_word((p,))
            raise FiltrationError(
                f"∂₁{source} содержит {target}, но h({target}) = {h[p]} не меньше h({source}) = {h[q]}",
                source=source,
                target=target,
            )
    return FilteredComplex(lin, h)


@dataclass(frozen=True, order=True)
class Bar:
    degree: int
    birth: object
    death: object = INF
    birth_label: str = field(default=None, compare=False)
    death_label: str = field(default=None, compare=False)

    def __post_init__(self):
        if not self.birth < self.death:
            raise PreconditionError(f"У полосы должно быть birth < death: [{self.birth}, {self.death})")

    @property
    def is_infinite(self) -> bool:
        return self.death == INF

    @property
    def length(self):
        return self.death - self.birth

    def contains(self, t) -> bool:
        return self.birth <= t < self.death

    def key(self) -> tuple:
        return self.degree, self.birth, self.death


@dataclass(frozen=True)
class Barcode:
    bars: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, 'bars', tuple(sorted(self.bars)))

    def __len__(self):
        return len(self.bars)

    def __iter__(self):
        return iter(self.bars)

    def degrees(self) -> list:
        return sorted({bar.degree for bar in self.bars})

    def in_degree(self, degree: int) -> list:
        return [bar for bar in self.bars if bar.degree == degree]

    def finite(self) -> list:
        return [bar for bar in self.bars if not bar.is_infinite]

    def infinite(self) -> list:
        return [bar for bar in self.bars if bar.is_infinite]

    def count_containing(self, degree: int, t) -> int:
        return sum(1 for bar in self.in_degree(degree) if bar.contains(t))

    def signature(self) -> tuple:
        return tuple(bar.key() for bar in self.bars)


def _label(fc: FilteredComplex, column, order) -> str:
    ids = sorted(order[i] for i in np.nonzero(column)[0])
    return ' + '.join(fc.dga.format_word((i,)) for i in ids)


def compute_barcode(fc: FilteredComplex) -> Barcode:
    """
    Стандартная редукция столбцов над Z2 с отслеживанием V (R = D·V).

    Пара (low, j) даёт конечную полосу [h(low), h(j)) в степени |low|,
    неспаренный нулевой столбец даёт бесконечную полосу [h(j), ∞).
    """
    order = fc.order()
    n = len(order)
    reduced = fc.matrix[np.ix_(order, order)].copy()
    basis = gf2.identity(n)
    pivot_of = {}
    for j in range(n):
        low = gf2.low(reduced[:, j])
        while low is not None and low in pivot_of:
            k = pivot_of[low]
            reduced[:, j] ^= reduced[:, k]
            basis[:, j] ^= basis[:, k]
            low = gf2.low(reduced[:, j])
        if low is not None:
            pivot_of[low] = j

    bars = []
    for j in range(n):
        gen_id = order[j]
        if gf2.low(reduced[:, j]) is not None:
            low = gf2.low(reduced[:, j])
            birth_id = order[low]
            bars.append(Bar(
                fc.gradings[birth_id],
                fc.heights[birth_id],
                fc.heights[gen_id],
                birth_label=_label(fc, reduced[:, j], order),
                death_label=fc.dga.format_word((gen_id,)),
            ))
        elif j not in pivot_of:
            bars.append(Bar(
                fc.gradings[gen_id],
                fc.heights[gen_id],
                INF,
                birth_label=_label(fc, basis[:, j], order),
            ))
    barcode = Barcode(tuple(bars))
    logger.debug(f"Баркод: {len(barcode.finite())} конечных и {len(barcode.infinite())} бесконечных полос")
    return barcode


def homology_rank_oracle(fc: FilteredComplex, degree: int, t) -> int:
    """dim ker - dim im в степени degree на подкомплексе образующих с h <= t"""
    alive = [g.id for g in fc.dga.generators if fc.heights[g.id] <= t]
    chains = {k: [i for i in alive if fc.gradings[i] == k] for k in (degree - 1, degree, degree + 1)}
    if not chains[degree]:
        return 0

    def block_rank(rows, cols):
        if not rows or not cols:
            return 0
        return gf2.rank(fc.matrix[np.ix_(rows, cols)])

    outgoing = block_rank(chains[degree - 1], chains[degree])
    incoming = block_rank(chains[degree], chains[degree + 1])
    return len(chains[degree]) - outgoing - incoming
