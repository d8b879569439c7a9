"""Exact row reduction and rank computations over a finite field.

Matrices are numpy int64 arrays of element codes.  All routines go through
the field's lookup tables, so they work uniformly for prime fields and small
extensions; canonical output (reduced row echelon form with ascending pivot
columns) makes row spaces directly comparable.
"""

from __future__ import annotations

import numpy as np

from .field import Field


def as_matrix(rows) -> np.ndarray:
    a = np.asarray(rows, dtype=np.int64)
    if a.ndim == 1:
        a = a.reshape(1, -1)
    return a


def rref(field: Field, mat: np.ndarray) -> tuple[np.ndarray, tuple[int, ...]]:
    """Reduced row echelon form with zero rows dropped; returns (R, pivots)."""
    t = field.tables()
    m = as_matrix(mat).copy()
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        inv = t.inv[m[r, c]]
        m[r] = t.mul[inv, m[r]]
        others = np.nonzero(m[:, c])[0]
        others = others[others != r]
        if others.size:
            factors = t.neg[m[others, c]]
            m[others] = t.add[m[others], t.mul[factors[:, None], m[r][None, :]]]
        pivots.append(c)
        r += 1
    return m[:r], tuple(pivots)


def rank(field: Field, mat: np.ndarray) -> int:
    return rref(field, mat)[0].shape[0]


def nullspace(field: Field, mat: np.ndarray) -> np.ndarray:
    """Canonical basis of {v : mat . v^T = 0}, as RREF rows."""
    t = field.tables()
    R, pivots = rref(field, mat)
    cols = as_matrix(mat).shape[1]
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for j, p in enumerate(pivots):
            basis[i, p] = t.neg[R[j, f]]
    if basis.shape[0] > 1:
        basis, _ = rref(field, basis)
    return basis


def matmul(field: Field, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    t = field.tables()
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ValueError("inner dimensions differ")
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for k in range(a.shape[1]):
        out = t.add[out, t.mul[a[:, k][:, None], b[k][None, :]]]
    return out


def reduce_against(field: Field, R: np.ndarray, pivots: tuple[int, ...], v: np.ndarray) -> np.ndarray:
    """Residue of v modulo the row space of (R, pivots) from rref."""
    t = field.tables()
    v = np.array(v, dtype=np.int64)
    for j, p in enumerate(pivots):
        c = v[p]
        if c:
            v = t.add[v, t.mul[t.neg[c], R[j]]]
    return v


def in_row_space(field: Field, R: np.ndarray, pivots: tuple[int, ...], v) -> bool:
    return not np.any(reduce_against(field, R, pivots, np.asarray(v, dtype=np.int64)))


def intersection_dim(field: Field, a: np.ndarray, b: np.ndarray) -> int:
    """dim of the intersection of two row spaces, by inclusion-exclusion."""
    ra = rank(field, a)
    rb = rank(field, b)
    rs = rank(field, np.vstack([as_matrix(a), as_matrix(b)]))
    return ra + rb - rs


def enumerate_span(field: Field, basis: np.ndarray) -> np.ndarray:
    """All q^k vectors of the row space, message-digit order (row 0 = zero)."""
    t = field.tables()
    basis = as_matrix(basis)
    k, n = basis.shape
    words = np.zeros((1, n), dtype=np.int64)
    for i in range(k):
        scaled = t.mul[np.arange(field.q)[:, None], basis[i][None, :]]
        words = t.add[words[:, None, :], scaled[None, :, :]].reshape(-1, n)
    return words
