"""Точные числа: разбор из JSON и печать без потери точности."""

import math
from decimal import Decimal
from fractions import Fraction

INF_TOKEN = 'inf'


def to_fraction(value) -> Fraction:
    """int, Decimal (из json с parse_float=Decimal), Fraction или строка '3/10' / '0.3'"""
    if isinstance(value, bool):
        raise ValueError(f"Ожидалось число, получено {value!r}")
    if isinstance(value, (int, Fraction, Decimal)):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"Ожидалось конечное число, получено {value!r}")
        return Fraction(repr(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    raise ValueError(f"Ожидалось число, получено {value!r}")


def _decimal_digits(x: Fraction):
    """Число знаков после запятой, если дробь конечна в десятичной записи, иначе None"""
    d = x.denominator
    twos = fives = 0
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    return max(twos, fives) if d == 1 else None


def format_number(x) -> str:
    """'4', '2.3', '3/7' или 'inf'"""
    if x == math.inf:
        return INF_TOKEN
    x = Fraction(x)
    digits = _decimal_digits(x)
    if digits is None:
        return f"{x.numerator}/{x.denominator}"
    if digits == 0:
        return str(x.numerator)
    scaled = abs(x.numerator) * 10 ** digits // x.denominator
    whole, frac = divmod(scaled, 10 ** digits)
    sign = '-' if x < 0 else ''
    return f"{sign}{whole}.{str(frac).zfill(digits)}"


def json_number(x):
    """Значение для json.dumps: int, float с точным repr, 'inf' или строка 'p/q'"""
    if x == math.inf:
        return INF_TOKEN
    x = Fraction(x)
    if x.denominator == 1:
        return x.numerator
    as_float = float(x)
    if Fraction(repr(as_float)) == x:
        return as_float
    return f"{x.numerator}/{x.denominator}"
