"""Линейная алгебра над Z2 на numpy-массивах uint8."""

import numpy as np


def zeros(rows, cols=None):
    return np.zeros((rows, rows if cols is None else cols), dtype=np.uint8)


def identity(n):
    return np.eye(n, dtype=np.uint8)


def matmul(a, b):
    """Произведение матриц по модулю 2"""
    return (a.astype(np.int64) @ b.astype(np.int64) % 2).astype(np.uint8)


def is_zero(a):
    return not np.any(a)


def rank(matrix):
    """Ранг над Z2 (гауссово исключение по строкам)"""
    m = np.array(matrix, dtype=np.uint8, copy=True) % 2
    rows, cols = m.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pivots = np.nonzero(m[r:, c])[0]
        if pivots.size == 0:
            continue
        p = r + pivots[0]
        if p != r:
            m[[r, p]] = m[[p, r]]
        below = np.nonzero(m[:, c])[0]
        for i in below:
            if i != r:
                m[i] ^= m[r]
        r += 1
    return r


def low(column):
    """Индекс последнего ненулевого элемента столбца или None"""
    nz = np.nonzero(column)[0]
    return int(nz[-1]) if nz.size else None


def inverse(matrix):
    """Обратная матрица над Z2 (Гаусс-Жордан), на вырожденной ValueError"""
    n = matrix.shape[0]
    m = np.concatenate([np.array(matrix, dtype=np.uint8) % 2, identity(n)], axis=1)
    for c in range(n):
        pivots = np.nonzero(m[c:, c])[0]
        if pivots.size == 0:
            raise ValueError("Матрица вырождена над Z2")
        p = c + pivots[0]
        if p != c:
            m[[c, p]] = m[[p, c]]
        for i in np.nonzero(m[:, c])[0]:
            if i != c:
                m[i] ^= m[c]
    return m[:, n:].copy()
