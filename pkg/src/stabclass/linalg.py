"""Dense linear algebra over Z/p on int64 numpy arrays."""
from __future__ import annotations

import numpy as np

from . import _kernels


def as_mod(A, p) -> np.ndarray:
    return np.array(A, dtype=np.int64, ndmin=2) % p


def rref(A, p):
    """Return (R, pivots) with R the reduced row echelon form of A mod p."""
    R = np.array(A, dtype=np.int64, copy=True) % p
    if R.ndim != 2:
        R = R.reshape(-1, R.shape[-1] if R.ndim else 0)
    if R.size == 0:
        return R, []
    R = np.ascontiguousarray(R)
    piv = _kernels.rref_inplace(R, p)
    return R, list(piv)


def rank(A, p) -> int:
    A = np.asarray(A)
    if A.size == 0:
        return 0
    return len(rref(A, p)[1])


def nullspace(A, p) -> np.ndarray:
    """Rows form a basis of {x : A x = 0}."""
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[1]
    if A.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    R, piv = rref(A, p)
    free = [j for j in range(n) if j not in set(piv)]
    out = np.zeros((len(free), n), dtype=np.int64)
    for k, f in enumerate(free):
        out[k, f] = 1
        for i, c in enumerate(piv):
            out[k, c] = (-R[i, f]) % p
    return out


def solve(A, b, p):
    """Some x with A x = b mod p, or None."""
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64).reshape(-1, 1)
    n = A.shape[1]
    if A.shape[0] == 0:
        return np.zeros(n, dtype=np.int64)
    R, piv = rref(np.hstack([A % p, b % p]), p)
    if n in piv:
        return None
    x = np.zeros(n, dtype=np.int64)
    for i, c in enumerate(piv):
        x[c] = R[i, n]
    return x


def inverse(A, p) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    R, piv = rref(np.hstack([A % p, np.eye(n, dtype=np.int64)]), p)
    if n and piv[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular mod p")
    return R[:, n:].copy()


def row_basis(A, p) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    if A.size == 0:
        return np.zeros((0, A.shape[1] if A.ndim == 2 else 0), dtype=np.int64)
    R, piv = rref(A, p)
    return R[: len(piv)].copy()


def complement_basis(sub, n, p) -> np.ndarray:
    """Rows extending the row space of ``sub`` to all of (Z/p)^n."""
    B = row_basis(sub, p) if np.asarray(sub).size else np.zeros((0, n), dtype=np.int64)
    piv = set(rref(B, p)[1]) if B.size else set()
    rows = [np.eye(n, dtype=np.int64)[j] for j in range(n) if j not in piv]
    return np.array(rows, dtype=np.int64).reshape(len(rows), n)
