"""Gaussian elimination over small finite fields.

Matrices are 2-d ``int64`` numpy arrays of element codes; all arithmetic goes
through the field's addition/multiplication tables, so prime and non-prime
ground fields share one code path.
"""

from __future__ import annotations

import functools
import itertools

import numpy as np

from .fields import FiniteField


def as_matrix(rows, ncols: int | None = None) -> np.ndarray:
    M = np.array(rows, dtype=np.int64)
    if M.ndim == 1:
        M = M.reshape(1, -1) if M.size else np.zeros((0, ncols or 0), dtype=np.int64)
    if M.size == 0 and ncols is not None:
        M = M.reshape(0, ncols)
    return M


def rref(K: FiniteField, M) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form with unit pivots; zero rows dropped."""
    M = np.array(M, dtype=np.int64, copy=True)
    if M.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    rows, cols = M.shape
    ADD, MUL, NEG, INV = K.ADD, K.MUL, K.NEG, K.INV
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(M[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            M[[r, i]] = M[[i, r]]
        if M[r, c] != 1:
            M[r] = MUL[INV[M[r, c]], M[r]]
        col = M[:, c].copy()
        col[r] = 0
        others = np.flatnonzero(col)
        if others.size:
            M[others] = ADD[M[others], MUL[NEG[col[others]][:, None], M[r][None, :]]]
        pivots.append(c)
        r += 1
    return M[:r], pivots


def rank(K: FiniteField, M) -> int:
    M = np.asarray(M)
    if M.size == 0:
        return 0
    return len(rref(K, M)[1])


def matmul(K: FiniteField, A, B) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if K.ground is None:
        return (A @ B) % K.order
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for k in range(A.shape[1]):
        out = K.ADD[out, K.MUL[A[:, k, None], B[None, k, :]]]
    return out


def nullspace(K: FiniteField, M) -> np.ndarray:
    """Basis (as rows, in RREF) of ``{x : M x = 0}``."""
    M = np.asarray(M, dtype=np.int64)
    ncols = M.shape[1]
    if M.shape[0] == 0:
        return np.eye(ncols, dtype=np.int64)
    R, piv = rref(K, M)
    free = [c for c in range(ncols) if c not in piv]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for r, p in enumerate(piv):
            basis[i, p] = K.NEG[R[r, f]]
    if basis.shape[0]:
        basis = rref(K, basis)[0]
    return basis


def left_nullspace(K: FiniteField, M) -> np.ndarray:
    """Basis of ``{y : y M = 0}``."""
    return nullspace(K, np.asarray(M).T)


def inverse(K: FiniteField, M) -> np.ndarray:
    M = np.asarray(M, dtype=np.int64)
    n = M.shape[0]
    if M.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    R, piv = rref(K, np.concatenate([M, np.eye(n, dtype=np.int64)], axis=1))
    if piv[:n] != list(range(n)):
        raise np.linalg.LinAlgError("singular matrix")
    return R[:, n:]


def solve(K: FiniteField, A, b) -> np.ndarray:
    """A particular solution of ``A x = b``; raises if inconsistent."""
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64).reshape(-1, 1)
    R, piv = rref(K, np.concatenate([A, b], axis=1))
    n = A.shape[1]
    if n in piv:
        raise np.linalg.LinAlgError("inconsistent system")
    x = np.zeros(n, dtype=np.int64)
    for r, p in enumerate(piv):
        x[p] = R[r, n]
    return x


def normalize_rows(K: FiniteField, V) -> np.ndarray:
    """Scale each nonzero row so that its first nonzero entry is 1."""
    V = np.asarray(V, dtype=np.int64)
    if V.ndim == 1:
        return normalize_rows(K, V[None, :])[0]
    nz = V != 0
    first = np.argmax(nz, axis=1)
    lead = V[np.arange(V.shape[0]), first]
    scale = K.INV[lead]
    scale[lead == 0] = 0
    return K.MUL[scale[:, None], V]


def encode(K: FiniteField, V) -> np.ndarray | int:
    """Integer codes of vectors (big-endian base q); order = lexicographic."""
    V = np.asarray(V, dtype=np.int64)
    w = K.order ** np.arange(V.shape[-1] - 1, -1, -1, dtype=np.int64)
    out = V @ w
    return int(out) if V.ndim == 1 else out


def decode(K: FiniteField, code: int, length: int) -> tuple[int, ...]:
    out = []
    for _ in range(length):
        code, r = divmod(code, K.order)
        out.append(r)
    return tuple(reversed(out))


@functools.lru_cache(maxsize=None)
def normalized_vectors(q: int, r: int) -> np.ndarray:
    """All length-``r`` vectors over a field of order ``q`` whose first nonzero
    entry is 1, in lexicographic order.  Shape ``((q^r-1)/(q-1), r)``."""
    rows = []
    for lead in range(r):
        tail = r - lead - 1
        for rest in itertools.product(range(q), repeat=tail):
            rows.append((0,) * lead + (1,) + rest)
    out = np.array(rows, dtype=np.int64).reshape(-1, r)
    out.flags.writeable = False
    return out


@functools.lru_cache(maxsize=None)
def all_vectors(q: int, r: int) -> np.ndarray:
    out = np.array(list(itertools.product(range(q), repeat=r)), dtype=np.int64).reshape(-1, r)
    out.flags.writeable = False
    return out
