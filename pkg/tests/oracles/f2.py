"""Tiny F2 linear algebra on numpy arrays, independent of the package under test.

All matrices are int8 arrays with entries in {0, 1}; shapes are exact, so
zero-dimensional edges (a 0 x 3 matrix, say) behave correctly.
"""

from __future__ import annotations

import itertools

import numpy as np


def zeros(m: int, n: int) -> np.ndarray:
    return np.zeros((m, n), dtype=np.int8)


def eye(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int8)


def mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return (a.astype(np.int64) @ b.astype(np.int64) % 2).astype(np.int8)


def add(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return ((a + b) % 2).astype(np.int8)


def eq(a: np.ndarray, b: np.ndarray) -> bool:
    return a.shape == b.shape and bool(np.array_equal(a % 2, b % 2))


def key(a: np.ndarray) -> tuple:
    return (a.shape, (a % 2).astype(np.int8).tobytes())


def all_matrices(m: int, n: int):
    """All m x n matrices over F2, row-major lexicographic."""
    for bits in itertools.product((0, 1), repeat=m * n):
        yield np.array(bits, dtype=np.int8).reshape(m, n)


def rank(a: np.ndarray) -> int:
    rows = (a % 2).astype(np.int8).copy()
    r = 0
    for c in range(rows.shape[1]):
        piv = None
        for i in range(r, rows.shape[0]):
            if rows[i, c]:
                piv = i
                break
        if piv is None:
            continue
        rows[[r, piv]] = rows[[piv, r]]
        for i in range(rows.shape[0]):
            if i != r and rows[i, c]:
                rows[i] = (rows[i] + rows[r]) % 2
        r += 1
    return r


def is_injective(a: np.ndarray) -> bool:
    return rank(a) == a.shape[1]


def is_surjective(a: np.ndarray) -> bool:
    return rank(a) == a.shape[0]


def inverse(a: np.ndarray) -> np.ndarray | None:
    n = a.shape[0]
    if a.shape[1] != n or rank(a) != n:
        return None
    for cand in all_matrices(n, n):
        if eq(mul(a, cand), eye(n)) and eq(mul(cand, a), eye(n)):
            return cand
    return None


def nullspace(a: np.ndarray) -> np.ndarray:
    """A matrix whose columns are a basis of the kernel of a."""
    m, n = a.shape
    rows = (a % 2).astype(np.int8).copy()
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if rows[i, c]), None)
        if piv is None:
            continue
        rows[[r, piv]] = rows[[piv, r]]
        for i in range(m):
            if i != r and rows[i, c]:
                rows[i] = (rows[i] + rows[r]) % 2
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = zeros(n, len(free))
    for idx, c in enumerate(free):
        basis[c, idx] = 1
        for i, pc in enumerate(pivots):
            basis[pc, idx] = rows[i, c]
    return basis


def block_diag(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = zeros(a.shape[0] + b.shape[0], a.shape[1] + b.shape[1])
    out[: a.shape[0], : a.shape[1]] = a
    out[a.shape[0] :, a.shape[1] :] = b
    return out
