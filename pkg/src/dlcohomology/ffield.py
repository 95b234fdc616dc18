"""Exact linear algebra over the prime field GF(p) on integer numpy arrays.

Vectors are rows. Every routine returns canonical (reduced echelon) bases so
results are deterministic.
"""
from __future__ import annotations

import numpy as np

from .errors import InvalidArgument


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    f = 2
    while f * f <= p:
        if p % f == 0:
            return False
        f += 1
    return True


def check_prime(p: int) -> int:
    if not is_prime(p):
        raise InvalidArgument(f"{p} is not prime")
    return p


def as_matrix(A, p: int, shape: tuple[int, int] | None = None) -> np.ndarray:
    M = np.array(A, dtype=np.int64)
    if shape is not None:
        M = M.reshape(shape)
    return M % p


def zeros(r: int, c: int) -> np.ndarray:
    return np.zeros((r, c), dtype=np.int64)


def eye(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def rref(A: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    M = np.array(A, dtype=np.int64) % p
    rows, cols = M.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(M[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            M[[r, k]] = M[[k, r]]
        M[r] = (M[r] * pow(int(M[r, c]), -1, p)) % p
        col = M[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            M[nzr] = (M[nzr] - np.outer(col[nzr], M[r])) % p
        pivots.append(c)
        r += 1
    return M, pivots


def rank(A: np.ndarray, p: int) -> int:
    A = np.asarray(A)
    if A.size == 0:
        return 0
    return len(rref(A, p)[1])


def row_space(A: np.ndarray, p: int) -> np.ndarray:
    """Canonical basis (rows) of the row space."""
    A = np.asarray(A, dtype=np.int64)
    if A.size == 0:
        return zeros(0, A.shape[1] if A.ndim == 2 else 0)
    R, piv = rref(A, p)
    return R[: len(piv)]


def nullspace(A: np.ndarray, p: int) -> np.ndarray:
    """Basis (rows) of ``{x : A x = 0}``, one vector per free column."""
    A = np.asarray(A, dtype=np.int64)
    rows, cols = A.shape
    if rows == 0:
        return eye(cols)
    R, piv = rref(A, p)
    free = [c for c in range(cols) if c not in set(piv)]
    basis = zeros(len(free), cols)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, pc in enumerate(piv):
            basis[k, pc] = (-R[i, f]) % p
    return basis


def solve(A: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """One solution of ``A x = b`` or ``None``."""
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64).reshape(-1)
    rows, cols = A.shape
    if rows == 0:
        return np.zeros(cols, dtype=np.int64)
    aug = np.concatenate([A, b.reshape(-1, 1)], axis=1)
    R, piv = rref(aug, p)
    if cols in piv:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for i, pc in enumerate(piv):
        x[pc] = R[i, cols]
    return x


def inverse(A: np.ndarray, p: int) -> np.ndarray | None:
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[0]
    if A.shape != (n, n):
        return None
    if n == 0:
        return zeros(0, 0)
    R, piv = rref(np.concatenate([A, eye(n)], axis=1), p)
    if piv[:n] != list(range(n)):
        return None
    return R[:, n:]


def is_invertible(A: np.ndarray, p: int) -> bool:
    A = np.asarray(A)
    return A.shape[0] == A.shape[1] and rank(A, p) == A.shape[0]


def in_span(rows: np.ndarray, v: np.ndarray, p: int) -> bool:
    rows = np.asarray(rows, dtype=np.int64)
    v = np.asarray(v, dtype=np.int64).reshape(1, -1)
    if rows.size == 0:
        return not np.any(v % p)
    return rank(np.concatenate([rows, v]), p) == rank(rows, p)


def complement(rows: np.ndarray, dim: int, p: int) -> np.ndarray:
    """Standard basis vectors completing the span of ``rows`` to the whole space."""
    if dim == 0:
        return zeros(0, 0)
    rows = np.asarray(rows, dtype=np.int64).reshape(-1, dim)
    piv = set(rref(rows, p)[1]) if rows.size else set()
    out = zeros(dim - len(piv), dim)
    for k, c in enumerate(c for c in range(dim) if c not in piv):
        out[k, c] = 1
    return out


def matmul(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    return (np.asarray(A, dtype=np.int64) @ np.asarray(B, dtype=np.int64)) % p
