"""
Многочлены Лорана (Морса-Чеканова, Пуанкаре-Чеканова, конечных полос),
сильное неравенство Морса и расстояние между баркодами.
"""

import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

import networkx as nx
from networkx.algorithms import bipartite

from core.algebra import DGA
from core.persist import Barcode

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LaurentPolynomial:
    coefficients: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {int(e): int(c) for e, c in self.coefficients.items() if c}
        object.__setattr__(self, 'coefficients', clean)

    @classmethod
    def from_counts(cls, exponents) -> 'LaurentPolynomial':
        return cls(dict(Counter(exponents)))

    def __add__(self, other):
        merged = Counter(self.coefficients)
        merged.update(other.coefficients)
        return LaurentPolynomial(dict(merged))

    def __neg__(self):
        return LaurentPolynomial({e: -c for e, c in self.coefficients.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        product = Counter()
        for e1, c1 in self.coefficients.items():
            for e2, c2 in other.coefficients.items():
                product[e1 + e2] += c1 * c2
        return LaurentPolynomial(dict(product))

    def __eq__(self, other):
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self):
        return hash(frozenset(self.coefficients.items()))

    def __getitem__(self, exponent: int) -> int:
        return self.coefficients.get(exponent, 0)

    def evaluate(self, z):
        z = Fraction(z)
        return sum((c * z ** e for e, c in self.coefficients.items()), Fraction(0))

    def __str__(self):
        if not self.coefficients:
            return '0'
        parts = []
        for exponent in sorted(self.coefficients, reverse=True):
            coeff = self.coefficients[exponent]
            sign = '-' if coeff < 0 else '+'
            magnitude = abs(coeff)
            if exponent == 0:
                body = str(magnitude)
            else:
                power = 'z' if exponent == 1 else f"z^{exponent}"
                body = power if magnitude == 1 else f"{magnitude}{power}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ('-' if first_sign == '-' else '') + first_body
        return text + ''.join(f"{sign}{body}" for sign, body in parts[1:])


Z_PLUS_ONE = LaurentPolynomial({1: 1, 0: 1})


def morse_chekanov(dga: DGA) -> LaurentPolynomial:
    return LaurentPolynomial.from_counts(g.grading for g in dga.generators)


def poincare_chekanov(b: Barcode) -> LaurentPolynomial:
    return LaurentPolynomial.from_counts(bar.degree for bar in b.infinite())


def finite_bar_polynomial(b: Barcode) -> LaurentPolynomial:
    return LaurentPolynomial.from_counts(bar.degree for bar in b.finite())


@dataclass(frozen=True)
class StrongMorseReport:
    mc: LaurentPolynomial
    pc: LaurentPolynomial
    r: LaurentPolynomial

    @property
    def lhs(self) -> LaurentPolynomial:
        return self.mc - self.pc

    @property
    def rhs(self) -> LaurentPolynomial:
        return Z_PLUS_ONE * self.r

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


def check_strong_morse(dga: DGA, b: Barcode) -> StrongMorseReport:
    """MC(z) - PC(z) = (z+1)·R(z)"""
    report = StrongMorseReport(morse_chekanov(dga), poincare_chekanov(b), finite_bar_polynomial(b))
    if not report.holds:
        logger.warning(f"Сильное неравенство Морса нарушено: {report.lhs} != {report.rhs}")
    return report


def _pair_cost(a, b):
    if a.is_infinite != b.is_infinite:
        return math.inf
    if a.is_infinite:
        return abs(a.birth - b.birth)
    return max(abs(a.birth - b.birth), abs(a.death - b.death))


def _half_length(bar):
    return Fraction(bar.length) / 2


def _matching_exists(first, second, delta) -> bool:
    """Совершенное паросочетание, где конечную полосу можно сдать на диагональ"""
    graph = nx.Graph()
    left = [('L', i) for i in range(len(first))] + [('Ld', j) for j, bar in enumerate(second) if not bar.is_infinite]
    right = [('R', j) for j in range(len(second))] + [('Rd', i) for i, bar in enumerate(first) if not bar.is_infinite]
    if len(left) != len(right):
        return False
    graph.add_nodes_from(left, bipartite=0)
    graph.add_nodes_from(right, bipartite=1)
    for i, a in enumerate(first):
        for j, b in enumerate(second):
            if _pair_cost(a, b) <= delta:
                graph.add_edge(('L', i), ('R', j))
        if not a.is_infinite and _half_length(a) <= delta:
            graph.add_edge(('L', i), ('Rd', i))
    for j, b in enumerate(second):
        if not b.is_infinite and _half_length(b) <= delta:
            graph.add_edge(('Ld', j), ('R', j))
    for node in left:
        if node[0] == 'Ld':
            for other in right:
                if other[0] == 'Rd':
                    graph.add_edge(node, other)
    matching = bipartite.hopcroft_karp_matching(graph, top_nodes=left)
    return len(matching) // 2 == len(left)


def _degree_distance(first, second):
    if len([b for b in first if b.is_infinite]) != len([b for b in second if b.is_infinite]):
        return math.inf
    candidates = {Fraction(0)}
    for a in first:
        for b in second:
            cost = _pair_cost(a, b)
            if cost != math.inf:
                candidates.add(Fraction(cost))
    for bar in list(first) + list(second):
        if not bar.is_infinite:
            candidates.add(_half_length(bar))
    ordered = sorted(candidates)
    lo, hi = 0, len(ordered) - 1
    # наибольший кандидат всегда допустим: все конечные полосы уходят на диагональ
    while lo < hi:
        mid = (lo + hi) // 2
        if _matching_exists(first, second, ordered[mid]):
            hi = mid
        else:
            lo = mid + 1
    return ordered[lo]


def interleaving_distance(b1: Barcode, b2: Barcode):
    """Бутылочное расстояние по каждой степени, максимум по степеням; ∞ при разном числе бесконечных полос"""
    distance = Fraction(0)
    for degree in sorted(set(b1.degrees()) | set(b2.degrees())):
        value = _degree_distance(b1.in_degree(degree), b2.in_degree(degree))
        if value == math.inf:
            return math.inf
        distance = max(distance, value)
    return distance
