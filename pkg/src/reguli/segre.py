"""Segre varieties S_{n-1,m-1,q}, reguli and transversal traces.

Points are the images ``T (s (x) v)`` of pure tensors, with ``s`` in
GF(q)^m, ``v`` in GF(q)^n and tensor coordinate ``j*n + i`` for ``s_j v_i``.
For a q-subline ``b`` of PG(1, q^n) with frame vectors ``u, w`` the matrix
``T`` of :meth:`reguli.reduction.Subgeometry.transform` realizes the regulus
``F(b)``; the identity realizes the standard one.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import linalg as la
from .fields import FiniteField
from .projective import Subspace, meet


class SegreVariety:
    """S_{n-1,m-1,q} embedded by a full column rank matrix ``T``.

    The first family (``first_family``) holds the (n-1)-spaces
    ``T(s (x) GF(q)^n)``, indexed by the points ``s`` of PG(m-1, q); the
    second family holds the (m-1)-spaces ``T(GF(q)^m (x) v)``, indexed by the
    points ``v`` of PG(n-1, q).
    """

    def __init__(self, K: FiniteField, n: int, m: int, transform=None):
        self.K = K
        self.n = n
        self.m = m
        if transform is None:
            transform = np.eye(m * n, dtype=np.int64)
        T = np.asarray(transform, dtype=np.int64)
        if T.shape[1] != m * n or la.rank(K, T) != m * n:
            raise ValueError("Segre transform must have full column rank m*n")
        self.T = T
        self.ambient_dim = T.shape[0] - 1
        self.span = Subspace(K, T.T, self.ambient_dim)
        # left inverse: coordinates in the column space
        R, piv = la.rref(K, T.T)
        self._pivots = piv
        self._coord = la.inverse(K, T[piv, :])  # (T[piv])^-1 maps restricted coords back

    def __repr__(self) -> str:
        return f"SegreVariety(n={self.n}, m={self.m}, q={self.K.order}, ambient=PG({self.ambient_dim}))"

    # -- structure ----------------------------------------------------------
    @cached_property
    def s_points(self) -> list[tuple[int, ...]]:
        return [tuple(map(int, r)) for r in la.normalized_vectors(self.K.order, self.m)]

    @cached_property
    def v_points(self) -> list[tuple[int, ...]]:
        return [tuple(map(int, r)) for r in la.normalized_vectors(self.K.order, self.n)]

    def tensor(self, s, v) -> np.ndarray:
        s = np.asarray(s, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        t = self.K.MUL[s[:, None], v[None, :]].reshape(-1)
        return la.matmul(self.K, self.T, t[:, None])[:, 0]

    def point(self, s, v) -> tuple[int, ...]:
        return tuple(map(int, la.normalize_rows(self.K, self.tensor(s, v))))

    def first_element(self, s) -> Subspace:
        rows = [self.tensor(s, e) for e in np.eye(self.n, dtype=np.int64)]
        return Subspace(self.K, rows, self.ambient_dim)

    def second_element(self, v) -> Subspace:
        rows = [self.tensor(e, v) for e in np.eye(self.m, dtype=np.int64)]
        return Subspace(self.K, rows, self.ambient_dim)

    @cached_property
    def first_family(self) -> list[Subspace]:
        return [self.first_element(s) for s in self.s_points]

    @cached_property
    def second_family(self) -> list[Subspace]:
        return [self.second_element(v) for v in self.v_points]

    @cached_property
    def point_codes(self) -> np.ndarray:
        """Sorted codes of all points of the variety."""
        S = np.array(self.s_points)
        V = np.array(self.v_points)
        t = self.K.MUL[S[:, None, :, None], V[None, :, None, :]].reshape(-1, self.m * self.n)
        P = la.normalize_rows(self.K, la.matmul(self.K, t, self.T.T))
        return np.sort(la.encode(self.K, P))

    def num_points(self) -> int:
        return len(self.s_points) * len(self.v_points)

    # -- membership / decomposition -------------------------------------------
    def tensor_coords(self, P) -> np.ndarray:
        """Coordinates y with T y = P, as (N, m, n) arrays; rows outside the
        span give garbage, check ``self.span`` first."""
        P = np.atleast_2d(np.asarray(P, dtype=np.int64))
        y = la.matmul(self.K, P[:, self._pivots], self._coord.T)
        return y.reshape(-1, self.m, self.n)

    def contains_rows(self, P) -> np.ndarray:
        P = np.atleast_2d(np.asarray(P, dtype=np.int64))
        inside = self.span.contains_rows(P)
        Y = self.tensor_coords(P)
        MUL = self.K.MUL
        rank1 = np.ones(P.shape[0], dtype=bool)
        for a in range(self.m):
            for b in range(a + 1, self.m):
                M = MUL[Y[:, a, :, None], Y[:, b, None, :]]
                rank1 &= (M == M.transpose(0, 2, 1)).all(axis=(1, 2))
        return inside & rank1

    def decompose(self, P) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
        """(s, v) with P = T(s (x) v), or None if P is not on the variety."""
        if not self.contains_rows(P)[0]:
            return None
        Y = self.tensor_coords(P)[0]
        row = Y[np.flatnonzero(Y.any(axis=1))[0]]
        col = Y[:, np.flatnonzero(Y.any(axis=0))[0]]
        v = tuple(map(int, la.normalize_rows(self.K, row)))
        s = tuple(map(int, la.normalize_rows(self.K, col)))
        return s, v

    def decompose_rows(self, P) -> tuple[np.ndarray, np.ndarray]:
        """Vectorized :meth:`decompose` for rows known to be on the variety."""
        Y = self.tensor_coords(P)
        N = Y.shape[0]
        r = np.argmax(Y.any(axis=2), axis=1)
        c = np.argmax(Y.any(axis=1), axis=1)
        v = la.normalize_rows(self.K, Y[np.arange(N), r, :])
        s = la.normalize_rows(self.K, Y[np.arange(N), :, c])
        return s, v

    def first_index(self, s) -> int:
        return self.s_points.index(tuple(s))

    def intersection_points(self, H: Subspace) -> np.ndarray:
        """Points of H on the variety, by enumeration of H."""
        P = H.points()
        return P[self.contains_rows(P)]

    def meet_first_family(self, H: Subspace) -> list[Subspace]:
        """H cap S for each first-family element S, by linear algebra."""
        return [meet(H, S) for S in self.first_family]

    def transversal_through(self, P) -> Subspace:
        dec = self.decompose(P)
        if dec is None:
            raise ValueError("point is not on the Segre variety")
        return self.second_element(dec[1])


def regulus(K: FiniteField, n: int, transform=None) -> SegreVariety:
    """The regulus S_{n-1,1,q} of (n-1)-spaces in PG(2n-1, q)."""
    return SegreVariety(K, n, 2, transform)


@dataclass
class TraceResult:
    points: list[tuple[int, ...]]
    pairing: dict[tuple[int, ...], tuple[int, ...]]  # point of Phi -> its trace


def transversal_trace(R: SegreVariety, phi, s_target) -> TraceResult:
    """S(Phi, Xi): project Phi onto the first-family element indexed by
    ``s_target`` along second-family spaces.

    Raises ``ValueError`` unless Phi has exactly one point on each
    first-family element.
    """
    phi = [tuple(map(int, p)) for p in phi]
    if not phi:
        raise ValueError("empty point set")
    P = np.array(phi, dtype=np.int64)
    if not R.contains_rows(P).all():
        raise ValueError("Phi is not contained in the Segre variety")
    S, V = R.decompose_rows(P)
    firsts = [tuple(map(int, s)) for s in S]
    if sorted(firsts) != sorted(R.s_points):
        raise ValueError("Phi is not a one-point-per-element selection")
    pairing = {}
    for p, v in zip(phi, V):
        pairing[p] = R.point(s_target, v)
    return TraceResult(sorted(set(pairing.values())), pairing)
