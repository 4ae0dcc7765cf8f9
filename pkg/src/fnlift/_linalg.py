"""Small exact linear algebra over polynomial matrices."""

from __future__ import annotations

import itertools

import numpy as np

from .polyring import Poly


class NonPolynomialError(ArithmeticError):
    """An exact inverse exists only over the rational-function field."""


def det(M: np.ndarray) -> Poly:
    """Determinant by cofactor expansion along the first row."""
    k = M.shape[0]
    if k == 1:
        return M[0, 0]
    if k == 2:
        return M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]
    total = Poly.zero(M[0, 0].nvars)
    for j in range(k):
        a = M[0, j]
        if a.is_zero():
            continue
        minor = np.delete(np.delete(M, 0, axis=0), j, axis=1)
        term = a * det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def minors(M: np.ndarray, k: int):
    """Yield ``(rows, cols, det)`` for every ``k x k`` minor of ``M``."""
    nr, nc = M.shape
    for rows in itertools.combinations(range(nr), k):
        sub = M[list(rows), :]
        for cols in itertools.combinations(range(nc), k):
            yield rows, cols, det(sub[:, list(cols)])


def inverse(M: np.ndarray) -> np.ndarray:
    """Exact inverse of a square polynomial matrix with polynomial entries.

    Raises :class:`NonPolynomialError` when the adjugate is not divisible by
    the determinant, and :class:`ZeroDivisionError` when the matrix is
    singular.
    """
    k = M.shape[0]
    d = det(M)
    if d.is_zero():
        raise ZeroDivisionError("matrix is singular")
    adj = np.empty((k, k), dtype=object)
    for i in range(k):
        for j in range(k):
            if k == 1:
                cof = Poly.const(d.nvars, 1)
            else:
                cof = det(np.delete(np.delete(M, j, axis=0), i, axis=1))
            adj[i, j] = cof if (i + j) % 2 == 0 else -cof
    out = np.empty((k, k), dtype=object)
    if d.is_constant():
        inv = 1 / d.constant_value()
        for idx in np.ndindex(out.shape):
            out[idx] = adj[idx] * inv
        return out
    for idx in np.ndindex(out.shape):
        q = adj[idx].divexact(d)
        if q is None:
            raise NonPolynomialError(f"inverse entry {idx} is not a polynomial (det = {d})")
        out[idx] = q
    return out
