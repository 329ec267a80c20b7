"""Points, subspaces and projectivities of PG(d, q).

A point is a tuple of field elements whose first nonzero entry is 1.  A
subspace is stored by its reduced row echelon basis, which is unique, so
equality of subspaces is equality of bases.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator

import numpy as np

from . import linalg as la
from .fields import FiniteField, is_prime, make_field


class DegenerateFrameError(ValueError):
    pass


def point(K: FiniteField, coords) -> tuple[int, ...]:
    v = np.asarray(coords, dtype=np.int64)
    if not v.any():
        raise ValueError("the zero vector is not a projective point")
    return tuple(int(c) for c in la.normalize_rows(K, v))


def points_from_rows(K: FiniteField, rows) -> list[tuple[int, ...]]:
    V = la.normalize_rows(K, np.asarray(rows, dtype=np.int64))
    return [tuple(int(c) for c in r) for r in V]


class Subspace:
    """A projective subspace of PG(d, q) in canonical (RREF) form."""

    __slots__ = ("field", "basis", "pivots", "ambient_dim", "_dual", "_key")

    def __init__(self, field: FiniteField, rows, ambient_dim: int | None = None):
        M = np.asarray(rows, dtype=np.int64)
        if M.ndim == 1:
            M = M.reshape(1, -1) if M.size else M.reshape(0, (ambient_dim or 0) + 1)
        if ambient_dim is None:
            ambient_dim = M.shape[1] - 1
        if M.shape[1] != ambient_dim + 1:
            raise ValueError("generator length does not match the ambient dimension")
        if M.shape[0]:
            R, piv = la.rref(field, M)
        else:
            R, piv = M.reshape(0, ambient_dim + 1), []
        R.flags.writeable = False
        self.field = field
        self.basis = R
        self.pivots = tuple(piv)
        self.ambient_dim = ambient_dim
        self._dual = None
        self._key = (ambient_dim, R.tobytes())

    # -- constructors -----------------------------------------------------
    @classmethod
    def empty(cls, field: FiniteField, ambient_dim: int) -> "Subspace":
        return cls(field, np.zeros((0, ambient_dim + 1), dtype=np.int64), ambient_dim)

    @classmethod
    def whole(cls, field: FiniteField, ambient_dim: int) -> "Subspace":
        return cls(field, np.eye(ambient_dim + 1, dtype=np.int64), ambient_dim)

    @classmethod
    def from_point(cls, field: FiniteField, p) -> "Subspace":
        return cls(field, [p])

    # -- basic properties -------------------------------------------------
    @property
    def rank(self) -> int:
        return self.basis.shape[0]

    @property
    def dim(self) -> int:
        return self.rank - 1

    def __eq__(self, other) -> bool:
        return isinstance(other, Subspace) and self._key == other._key and self.field == other.field

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim} in PG({self.ambient_dim},{self.field.order}))"

    def as_point(self) -> tuple[int, ...]:
        if self.rank != 1:
            raise ValueError(f"subspace of dimension {self.dim} is not a point")
        return tuple(int(c) for c in self.basis[0])

    def num_points(self) -> int:
        q = self.field.order
        return (q**self.rank - 1) // (q - 1)

    def points(self) -> np.ndarray:
        """All points as normalized rows, in lexicographic coefficient order."""
        if self.rank == 0:
            return np.zeros((0, self.ambient_dim + 1), dtype=np.int64)
        C = la.normalized_vectors(self.field.order, self.rank)
        return la.matmul(self.field, C, self.basis)

    def point_codes(self) -> np.ndarray:
        return la.encode(self.field, self.points())

    def point_list(self) -> list[tuple[int, ...]]:
        return [tuple(int(c) for c in r) for r in self.points()]

    def dual(self) -> np.ndarray:
        """Rows spanning the annihilator: ``x`` lies in the subspace iff ``D x = 0``."""
        if self._dual is None:
            D = la.nullspace(self.field, self.basis) if self.rank else np.eye(
                self.ambient_dim + 1, dtype=np.int64)
            D.flags.writeable = False
            self._dual = D
        return self._dual

    def contains(self, other) -> bool:
        if isinstance(other, Subspace):
            self._check_same(other)
            if other.rank == 0:
                return True
            return not la.matmul(self.field, self.dual(), other.basis.T).any()
        v = np.asarray(other, dtype=np.int64)
        if v.ndim == 1:
            return not la.matmul(self.field, self.dual(), v[:, None]).any()
        return not la.matmul(self.field, self.dual(), v.T).any()

    def contains_rows(self, V) -> np.ndarray:
        """Vectorized membership of many vectors."""
        V = np.asarray(V, dtype=np.int64)
        D = self.dual()
        if D.shape[0] == 0:
            return np.ones(V.shape[0], dtype=bool)
        return ~la.matmul(self.field, V, D.T).any(axis=1)

    __contains__ = contains

    def coordinates(self, v) -> tuple[int, ...]:
        """Coefficients of ``v`` in the canonical basis (entries at pivot columns)."""
        v = np.asarray(v, dtype=np.int64)
        if not self.contains(v):
            raise ValueError("vector not in subspace")
        return tuple(int(v[p]) for p in self.pivots)

    def lift(self, coeffs) -> np.ndarray:
        return la.matmul(self.field, np.asarray(coeffs, dtype=np.int64)[None, :], self.basis)[0]

    def _check_same(self, other: "Subspace") -> None:
        if other.ambient_dim != self.ambient_dim or other.field != self.field:
            raise ValueError("subspaces live in different projective spaces")


def span(parts: Iterable, field: FiniteField | None = None, ambient_dim: int | None = None) -> Subspace:
    """Smallest subspace containing all given points and subspaces."""
    rows = []
    dims = set()
    for part in parts:
        if isinstance(part, Subspace):
            field = field or part.field
            if part.field != field:
                raise ValueError("mixed fields in span")
            dims.add(part.ambient_dim)
            rows.extend(part.basis)
        else:
            v = np.asarray(part, dtype=np.int64)
            if v.ndim == 2:
                dims.add(v.shape[1] - 1)
                rows.extend(v)
            else:
                dims.add(v.shape[0] - 1)
                rows.append(v)
    if ambient_dim is not None:
        dims.add(ambient_dim)
    if len(dims) != 1:
        raise ValueError(f"mixed ambient dimensions in span: {sorted(dims)}")
    if field is None:
        raise ValueError("span of bare points needs an explicit field")
    d = dims.pop()
    if not rows:
        return Subspace.empty(field, d)
    return Subspace(field, np.array(rows, dtype=np.int64), d)


def meet(A: Subspace, B: Subspace) -> Subspace:
    """Intersection of two subspaces."""
    A._check_same(B)
    if A.rank == 0 or B.rank == 0:
        return Subspace.empty(A.field, A.ambient_dim)
    if A.rank > B.rank:
        A, B = B, A
    D = B.dual()
    if D.shape[0] == 0:
        return A
    K = A.field
    # c such that (c A) D^T = 0
    C = la.left_nullspace(K, la.matmul(K, A.basis, D.T))
    if C.shape[0] == 0:
        return Subspace.empty(K, A.ambient_dim)
    return Subspace(K, la.matmul(K, C, A.basis), A.ambient_dim)


def iter_subspaces(K: FiniteField, d: int, k: int) -> Iterator[np.ndarray]:
    """All ``k``-dimensional subspaces of PG(d, q) as RREF matrices, in
    lexicographic order of the flattened matrix."""
    r = k + 1
    if not 0 <= r <= d + 1:
        raise ValueError("dimension out of range")
    if r == 0:
        yield np.zeros((0, d + 1), dtype=np.int64)
        return
    mats = []
    q = K.order
    for piv in itertools.combinations(range(d + 1), r):
        free = [(i, c) for i in range(r) for c in range(piv[i] + 1, d + 1) if c not in piv]
        for vals in itertools.product(range(q), repeat=len(free)):
            M = np.zeros((r, d + 1), dtype=np.int64)
            for i, p in enumerate(piv):
                M[i, p] = 1
            for (i, c), v in zip(free, vals):
                M[i, c] = v
            mats.append(M)
    mats.sort(key=lambda M: tuple(M.ravel()))
    yield from mats


def extensions_through(S: Subspace, target_dim: int) -> Iterator[Subspace]:
    """Every subspace of dimension ``target_dim`` containing ``S``, once each,
    ordered lexicographically by canonical quotient representative."""
    d = S.ambient_dim
    if not S.dim < target_dim <= d:
        raise ValueError(f"target dimension {target_dim} out of range for a {S.dim}-space in PG({d})")
    free_cols = [c for c in range(d + 1) if c not in S.pivots]
    K = S.field
    k = target_dim - S.dim - 1
    if k == 0:
        reps = la.normalized_vectors(K.order, len(free_cols))
        for v in reps:
            row = np.zeros(d + 1, dtype=np.int64)
            row[free_cols] = v
            yield span([S, row])
        return
    for C in iter_subspaces(K, len(free_cols) - 1, k):
        rows = np.zeros((C.shape[0], d + 1), dtype=np.int64)
        rows[:, free_cols] = C
        yield span([S, rows])


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional vector subspaces of GF(q)^n."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


class Projectivity:
    """An element of PGL(d+1, q) acting on column vectors."""

    __slots__ = ("field", "matrix")

    def __init__(self, field: FiniteField, matrix):
        M = np.asarray(matrix, dtype=np.int64)
        if M.ndim != 2 or M.shape[0] != M.shape[1]:
            raise ValueError("projectivity matrix must be square")
        if la.rank(field, M) < M.shape[0]:
            raise ValueError("projectivity matrix is singular")
        flat = M.ravel()
        lead = flat[np.flatnonzero(flat)[0]]
        M = field.MUL[field.INV[lead], M]
        M.flags.writeable = False
        self.field = field
        self.matrix = M

    @classmethod
    def identity(cls, field: FiniteField, d: int) -> "Projectivity":
        return cls(field, np.eye(d + 1, dtype=np.int64))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0] - 1

    def __call__(self, x):
        if isinstance(x, Subspace):
            if x.rank == 0:
                return x
            return Subspace(self.field, la.matmul(self.field, x.basis, self.matrix.T), x.ambient_dim)
        return point(self.field, la.matmul(self.field, self.matrix, np.asarray(x)[:, None])[:, 0])

    def apply_rows(self, V) -> np.ndarray:
        return la.normalize_rows(self.field, la.matmul(self.field, np.asarray(V), self.matrix.T))

    def __matmul__(self, other: "Projectivity") -> "Projectivity":
        """Composition: ``(self @ other)(x) = self(other(x))``."""
        return Projectivity(self.field, la.matmul(self.field, self.matrix, other.matrix))

    def inverse(self) -> "Projectivity":
        return Projectivity(self.field, la.inverse(self.field, self.matrix))

    def __eq__(self, other) -> bool:
        return isinstance(other, Projectivity) and np.array_equal(self.matrix, other.matrix)

    def __hash__(self) -> int:
        return hash(self.matrix.tobytes())

    def __repr__(self) -> str:
        return f"Projectivity({self.matrix.tolist()})"


def standard_frame(K: FiniteField, d: int) -> list[tuple[int, ...]]:
    pts = [tuple(int(i == j) for i in range(d + 1)) for j in range(d + 1)]
    return pts + [(1,) * (d + 1)]


def is_frame(K: FiniteField, pts) -> bool:
    pts = np.asarray(pts, dtype=np.int64)
    d = pts.shape[1] - 1
    if pts.shape[0] != d + 2:
        return False
    return all(la.rank(K, pts[list(sub)]) == d + 1
               for sub in itertools.combinations(range(d + 2), d + 1))


def _frame_matrix(K: FiniteField, pts) -> np.ndarray:
    """Matrix sending the standard frame to ``pts``."""
    P = np.asarray(pts, dtype=np.int64)
    G = P[:-1].T
    c = la.solve(K, G, P[-1])
    return K.MUL[c[None, :], G]


def frame_projectivity(K: FiniteField, src, dst) -> Projectivity:
    """The unique projectivity with ``src[i] -> dst[i]`` for frames src, dst."""
    if not is_frame(K, src) or not is_frame(K, dst):
        raise DegenerateFrameError("degenerate frame")
    A = _frame_matrix(K, src)
    B = _frame_matrix(K, dst)
    return Projectivity(K, la.matmul(K, B, la.inverse(K, A)))


def random_invertible(K: FiniteField, n: int, rng) -> np.ndarray:
    while True:
        M = rng.integers(0, K.order, size=(n, n))
        if la.rank(K, M) == n:
            return M.astype(np.int64)


def random_projectivity(K: FiniteField, d: int, rng) -> Projectivity:
    return Projectivity(K, random_invertible(K, d + 1, rng))


def random_subspace(K: FiniteField, d: int, k: int, rng) -> Subspace:
    while True:
        M = rng.integers(0, K.order, size=(k + 1, d + 1))
        if la.rank(K, M) == k + 1:
            return Subspace(K, M, d)


# -- subspace file format ----------------------------------------------------

def field_for_order(q: int, modulus=None) -> FiniteField:
    for p in range(2, q + 1):
        if is_prime(p) and q % p == 0:
            k, r = 0, q
            while r % p == 0:
                r //= p
                k += 1
            if r != 1:
                break
            return make_field(p, k, tuple(modulus) if modulus is not None else None)
    raise ValueError(f"{q} is not a prime power")


def format_subspace(S: Subspace) -> str:
    K = S.field
    lines = [f"pg {S.ambient_dim} {K.order}"]
    for row in S.basis:
        lines.append(" ".join(K.format(int(c)) for c in row))
    return "\n".join(lines) + "\n"


def parse_subspace(text: str, strict: bool = False, field: FiniteField | None = None):
    """Parse the subspace text format.

    Returns ``(subspace, file_rows)``.  With ``strict`` a dependent generator
    list is rejected; otherwise it is reduced and the rank reported through
    ``subspace.rank``.
    """
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    if not lines:
        raise ValueError("empty subspace file")
    head = lines[0].split()
    if len(head) != 3 or head[0] != "pg":
        raise ValueError(f"bad header {lines[0]!r}; expected 'pg d q'")
    try:
        d, q = int(head[1]), int(head[2])
    except ValueError:
        raise ValueError(f"bad header {lines[0]!r}") from None
    K = field or field_for_order(q)
    if K.order != q:
        raise ValueError("field does not match header")
    rows = []
    for ln in lines[1:]:
        toks = ln.split()
        if len(toks) != d + 1:
            raise ValueError(f"row has {len(toks)} entries, expected {d + 1}: {ln!r}")
        rows.append([K.parse(t) for t in toks])
    S = Subspace(K, np.array(rows, dtype=np.int64).reshape(-1, d + 1), d)
    if strict and S.rank < len(rows):
        raise ValueError(f"dependent generators: {len(rows)} rows of rank {S.rank}")
    return S, len(rows)
