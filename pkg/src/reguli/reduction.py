"""Field reduction PG(m-1, q^n) -> PG(mn-1, q), Desarguesian spreads and the
linear-set trace ``B(.)`` with point weights."""

from __future__ import annotations

from collections import Counter

import numpy as np

from . import linalg as la
from .fields import FieldTower
from .projective import Subspace, span


class ReductionContext:
    """Field reduction for ``m`` coordinates over the top field of ``tower``.

    ``flatten`` writes the GF(q)-coordinates of the first GF(q^n)-coordinate
    first, then those of the second, and so on: coordinate ``j`` of the big
    vector occupies positions ``j*n .. j*n+n-1``.
    """

    def __init__(self, tower: FieldTower, m: int):
        if m < 2:
            raise ValueError("field reduction needs m >= 2")
        self.tower = tower
        self.m = m
        self.n = tower.n
        self.K = tower.base
        self.L = tower.top
        self.ambient_dim = m * tower.n - 1
        self._basis = [int(w) for w in self.L.weights]  # 1, x, ..., x^{n-1}

    def __repr__(self) -> str:
        return f"ReductionContext(m={self.m}, n={self.n}, q={self.K.order})"

    # -- vectors ------------------------------------------------------------
    def flatten(self, v) -> np.ndarray:
        v = np.asarray(v, dtype=np.int64)
        return self.L.vec[v].reshape(*v.shape[:-1], self.m * self.n)

    def unflatten(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        blocks = x.reshape(*x.shape[:-1], self.m, self.n)
        return blocks @ self.L.weights

    def normalize_top(self, V) -> np.ndarray:
        """Normalize rows of top-field vectors (first nonzero entry 1)."""
        V = np.asarray(V, dtype=np.int64)
        single = V.ndim == 1
        V = np.atleast_2d(V)
        first = np.argmax(V != 0, axis=1)
        lead = V[np.arange(V.shape[0]), first]
        if (lead == 0).any():
            raise ValueError("zero vector has no projective point")
        out = self.L.mul_array(self.L.inv_array(lead)[:, None], V)
        return out[0] if single else out

    def top_point(self, v) -> tuple[int, ...]:
        return tuple(int(c) for c in self.normalize_top(v))

    def top_points(self) -> list[tuple[int, ...]]:
        """All points of PG(m-1, q^n), normalized, lexicographic."""
        return [tuple(int(c) for c in r) for r in la.normalized_vectors(self.L.order, self.m)]

    def scale(self, lam: int, v) -> np.ndarray:
        return self.L.mul_array(lam, np.asarray(v, dtype=np.int64))

    # -- reduction ------------------------------------------------------------
    def reduce_point(self, X) -> Subspace:
        """F(X): the (n-1)-space {flatten(lam * v) : lam in GF(q^n)}."""
        v = np.asarray(X, dtype=np.int64)
        if not v.any():
            raise ValueError("the zero vector is not a projective point")
        rows = self.flatten(self.L.mul_array(np.array(self._basis)[:, None], v[None, :]))
        return Subspace(self.K, rows, self.ambient_dim)

    def reduce_subspace(self, rows) -> Subspace:
        """Span of F(X) over the points X of the top-field row space."""
        rows = np.atleast_2d(np.asarray(rows, dtype=np.int64))
        return span([self.reduce_point(r) for r in rows])

    def spread(self) -> dict[tuple[int, ...], Subspace]:
        return {X: self.reduce_point(X) for X in self.top_points()}

    def point_of(self, x) -> tuple[int, ...]:
        """The unique X with the GF(q)-point x in F(X)."""
        return self.top_point(self.unflatten(x))

    def points_of(self, P) -> np.ndarray:
        return self.normalize_top(self.unflatten(P))

    def spread_trace(self, S: Subspace) -> dict[tuple[int, ...], int]:
        """B(S) with weights w(X) = dim(F(X) cap S) + 1, sorted by point."""
        if S.ambient_dim != self.ambient_dim:
            raise ValueError("subspace is not in the reduced space")
        if S.rank == 0:
            return {}
        X = self.points_of(S.points())
        counts = Counter(tuple(int(c) for c in r) for r in X)
        q = self.K.order
        sizes = {(q**w - 1) // (q - 1): w for w in range(1, self.n + 1)}
        out = {}
        for x in sorted(counts):
            c = counts[x]
            if c not in sizes:
                raise AssertionError(f"{c} points of S in one spread element: not a subspace count")
            out[x] = sizes[c]
        return out

    def weight_identity_check(self, S: Subspace) -> bool:
        """sum over B(S) of (q^w - 1)/(q - 1) equals the number of points of S."""
        q = self.K.order
        trace = self.spread_trace(S)
        return sum((q**w - 1) // (q - 1) for w in trace.values()) == (q**S.rank - 1) // (q - 1)

    def induced_matrix(self, A) -> np.ndarray:
        """GF(q)-matrix of x -> A x for A in GL(m, q^n), acting on columns of
        flattened vectors."""
        A = np.asarray(A, dtype=np.int64)
        cols = []
        for j in range(self.m):
            for b in self._basis:
                e = np.zeros(self.m, dtype=np.int64)
                e[j] = b
                cols.append(self.flatten(self._matvec(A, e)))
        return np.array(cols, dtype=np.int64).T

    def _matvec(self, A, v) -> np.ndarray:
        L = self.L
        out = np.zeros(A.shape[0], dtype=np.int64)
        for k in range(A.shape[1]):
            out = L.add_array(out, L.mul_array(A[:, k], v[k]))
        return out

    def apply_top(self, A, X) -> tuple[int, ...]:
        return self.top_point(self._matvec(np.asarray(A), np.asarray(X, dtype=np.int64)))


class Subgeometry:
    """A q-subgeometry PG(m-1, q) inside PG(M-1, q^n).

    Given by ``m`` top-field vectors ``u_0..u_{m-1}`` (independent over
    GF(q^n)); its points are the GF(q)-combinations of them, and the unit
    point is ``u_0 + ... + u_{m-1}``.
    """

    def __init__(self, ctx: ReductionContext, vectors):
        V = np.atleast_2d(np.asarray(vectors, dtype=np.int64))
        if V.shape[1] != ctx.m:
            raise ValueError("subgeometry vectors have the wrong length")
        self.ctx = ctx
        self.vectors = V
        self.m = V.shape[0]
        self._check_independent()

    @classmethod
    def from_points(cls, ctx: ReductionContext, pts) -> "Subgeometry":
        """Subgeometry with frame ``pts`` (m + 1 points; the last is the unit)."""
        pts = [np.asarray(p, dtype=np.int64) for p in pts]
        if len({tuple(ctx.top_point(p)) for p in pts}) != len(pts):
            raise ValueError("the defining points are not distinct")
        base = np.array(pts[:-1])
        c = _solve_top(ctx, base.T, pts[-1])
        if c is None or any(ci == 0 for ci in c):
            raise ValueError("the defining points are not in general position")
        return cls(ctx, ctx.L.mul_array(np.array(c)[:, None], base))

    @classmethod
    def standard(cls, ctx: ReductionContext, m: int | None = None) -> "Subgeometry":
        m = m or ctx.m
        return cls(ctx, np.eye(m, ctx.m, dtype=np.int64))

    def _check_independent(self) -> None:
        if _rank_top(self.ctx, self.vectors) != self.m:
            raise ValueError("subgeometry vectors are dependent over GF(q^n)")

    def vector_of(self, s) -> np.ndarray:
        """Top-field vector of the GF(q)-combination s."""
        L = self.ctx.L
        out = np.zeros(self.ctx.m, dtype=np.int64)
        for si, u in zip(s, self.vectors):
            if si:
                out = L.add_array(out, L.mul_array(int(si), u))
        return out

    def parameters(self) -> np.ndarray:
        return la.normalized_vectors(self.ctx.K.order, self.m)

    def points(self) -> list[tuple[int, ...]]:
        return [self.ctx.top_point(self.vector_of(s)) for s in self.parameters()]

    def span_rows(self) -> np.ndarray:
        return self.vectors

    def transform(self) -> np.ndarray:
        """GF(q)-matrix T with T (s (x) v) = flatten(alpha * sum s_j u_j),
        alpha = sum v_i x^i; columns indexed j*n + i."""
        ctx = self.ctx
        cols = []
        for u in self.vectors:
            for b in ctx._basis:
                cols.append(ctx.flatten(ctx.L.mul_array(b, u)))
        return np.array(cols, dtype=np.int64).T

    def segre(self):
        from .segre import SegreVariety

        return SegreVariety(self.ctx.K, self.ctx.n, self.m, self.transform())


def _rank_top(ctx: ReductionContext, V) -> int:
    """Rank over GF(q^n), via the GF(q)-rank of the reduced row spaces."""
    V = np.atleast_2d(V)
    S = span([ctx.reduce_point(v) for v in V if np.any(v)], ctx.K, ctx.ambient_dim)
    return S.rank // ctx.n


def _solve_top(ctx: ReductionContext, A, b):
    """Solve A c = b over GF(q^n) by Gaussian elimination with field ops."""
    L = ctx.L
    A = [list(map(int, row)) + [int(bi)] for row, bi in zip(np.asarray(A), np.asarray(b))]
    rows, cols = len(A), len(A[0]) - 1
    piv, r = [], 0
    for c in range(cols):
        pr = next((i for i in range(r, rows) if A[i][c]), None)
        if pr is None:
            continue
        A[r], A[pr] = A[pr], A[r]
        inv = L.inv(A[r][c])
        A[r] = [L.mul(inv, a) for a in A[r]]
        for i in range(rows):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [L.sub(a, L.mul(f, b_)) for a, b_ in zip(A[i], A[r])]
        piv.append(c)
        r += 1
    if any(A[i][cols] for i in range(r, rows)):
        return None
    x = [0] * cols
    for i, c in enumerate(piv):
        x[c] = A[i][cols]
    return x


def solve_top(ctx: ReductionContext, A, b):
    return _solve_top(ctx, A, b)
