"""Normal rational curves: the moment curve, span order, an exhaustive NRC
recognizer with witnesses, and projectivities between paired curves.

Parameters of PG(1, q) are canonical pairs ``(y0, y1)``; ``(0, 1)`` is the
point at infinity.  The moment curve of order t is
``y -> (y0^t, y0^(t-1) y1, ..., y1^t)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .fields import FiniteField
from .projective import Projectivity, Subspace, frame_projectivity


class NotACandidateError(ValueError):
    """The point set does not have q + 1 points."""


def parameters(K: FiniteField) -> list[tuple[int, int]]:
    return [tuple(map(int, r)) for r in la.normalized_vectors(K.order, 2)]


def moment_vector(K: FiniteField, t: int, y) -> np.ndarray:
    y0, y1 = int(y[0]), int(y[1])
    return np.array([K.mul(K.pow(y0, t - k), K.pow(y1, k)) for k in range(t + 1)], dtype=np.int64)


def moment_matrix(K: FiniteField, t: int, params=None) -> np.ndarray:
    """Columns are the moment vectors of ``params`` (default: all of PG(1,q))."""
    params = parameters(K) if params is None else params
    return np.array([moment_vector(K, t, y) for y in params], dtype=np.int64).T


def moment_curve(t: int, K: FiniteField) -> list[tuple[int, ...]]:
    """The q + 1 points of the standard moment curve in PG(t, q), by parameter."""
    if t < 1:
        raise ValueError("order must be >= 1")
    M = moment_matrix(K, t)
    return [tuple(map(int, r)) for r in la.normalize_rows(K, M.T)]


def span_order(points, K: FiniteField | None = None) -> int:
    """Projective dimension of the span of a nonempty point set."""
    pts = np.atleast_2d(np.asarray(points, dtype=np.int64))
    if pts.shape[0] == 0:
        raise ValueError("empty point set")
    if K is None:
        raise ValueError("a field is required")
    return la.rank(K, pts) - 1


@dataclass
class NrcReport:
    points: list[tuple[int, ...]]
    order: int
    is_nrc: bool
    witness: np.ndarray | None = None  # (d+1) x (order+1): W M(y) ~ point(y)
    params: dict = field(default_factory=dict)  # point -> parameter
    degenerate: bool = False  # q == order convention
    reason: str = ""

    @property
    def labels_free(self) -> bool:
        """With at most order + 2 points every assignment of distinct
        parameters is a parametrization, so labels carry no information."""
        return len(self.points) <= self.order + 2

    def point_of(self, y) -> tuple[int, ...]:
        for p, yy in self.params.items():
            if yy == tuple(y):
                return p
        raise KeyError(y)

    def summary(self) -> dict:
        return {"order": self.order, "is_nrc": self.is_nrc, "num_points": len(self.points),
                "degenerate": self.degenerate}


def _binary_form_product(K: FiniteField, roots) -> np.ndarray:
    """Coefficients (index k <-> y0^(deg-k) y1^k) of prod [beta, y], where
    [beta, y] = b0*y1 - b1*y0 vanishes exactly at beta."""
    poly = np.array([1], dtype=np.int64)
    for b0, b1 in roots:
        lin = np.array([K.neg(b1), b0], dtype=np.int64)
        out = np.zeros(len(poly) + 1, dtype=np.int64)
        for i, a in enumerate(poly):
            for j, c in enumerate(lin):
                out[i + j] = K.add(int(out[i + j]), K.mul(int(a), int(c)))
        poly = out
    return poly


def _curve_matrix(K: FiniteField, t: int, betas) -> np.ndarray:
    """C with C M(beta_i) ~ e_i (i <= t) and C M(beta_{t+1}) = (1, ..., 1)."""
    rows = []
    unit = moment_vector(K, t, betas[t + 1])
    for i in range(t + 1):
        f = _binary_form_product(K, [b for j, b in enumerate(betas[: t + 1]) if j != i])
        val = K.sum(K.mul(int(a), int(b)) for a, b in zip(f, unit))
        rows.append(K.MUL[K.inv(val), f])
    return np.array(rows, dtype=np.int64)


def _general_position(K: FiniteField, X: np.ndarray) -> bool:
    r = X.shape[1]
    return all(la.rank(K, X[list(sub)]) == r for sub in itertools.combinations(range(X.shape[0]), r))


def _canonical(K: FiniteField, points) -> np.ndarray:
    P = la.normalize_rows(K, np.atleast_2d(np.asarray(points, dtype=np.int64)))
    codes = la.encode(K, P)
    _, idx = np.unique(codes, return_index=True)
    return P[idx]


def is_nrc(points, K: FiniteField, expected_order: int | None = None) -> NrcReport:
    """Decide whether ``points`` (q + 1 of them) form a normal rational curve.

    For order t = q every independent (t+1)-set qualifies.  Otherwise t + 2
    of the points are moved to the standard frame and every assignment of
    distinct parameters to them is tried, with the first three fixed to
    infinity, 0, 1 (PGL(2, q) is 3-transitive on parameters and acts on the
    moment curve by projectivities).  The first assignment whose curve
    contains the remaining points is the witness.
    """
    q = K.order
    P = _canonical(K, points)
    if P.shape[0] != q + 1:
        raise NotACandidateError(f"not a candidate curve: {P.shape[0]} distinct points, GF({q}) needs {q + 1}")
    S = Subspace(K, P)
    t = S.dim
    plist = [tuple(map(int, r)) for r in P]
    if expected_order is not None and expected_order != t:
        return NrcReport(plist, t, False, reason=f"span order {t} != {expected_order}")
    if t == 0:
        return NrcReport(plist, t, False, reason="points coincide")
    params = parameters(K)
    if t == q:
        M = moment_matrix(K, t, params)
        W = la.matmul(K, P.T, la.inverse(K, M))
        return NrcReport(plist, t, True, W, dict(zip(plist, params)), degenerate=True)
    X = P[:, list(S.pivots)]  # coordinates in the span
    frame = X[: t + 2]
    if not _general_position(K, frame):
        return NrcReport(plist, t, False, reason="frame points not in general position")
    G = frame[: t + 1].T
    c = la.solve(K, G, frame[t + 1])
    Gs = K.MUL[c[None, :], G]
    Z = la.normalize_rows(K, la.matmul(K, X, la.inverse(K, Gs).T))
    rest_codes = la.encode(K, Z[t + 2:])
    target = set(int(x) for x in rest_codes)
    code_to_point = {int(cd): plist[t + 2 + i] for i, cd in enumerate(rest_codes)}
    Mall = moment_matrix(K, t, params)
    n_par = len(params)
    fixed = [0, 1, 2]
    for tail in itertools.permutations(range(3, n_par), t - 1):
        idx = fixed + list(tail)
        betas = [params[i] for i in idx]
        C = _curve_matrix(K, t, betas)
        others = [i for i in range(n_par) if i not in idx]
        if others:
            img = la.normalize_rows(K, la.matmul(K, C, Mall[:, others]).T)
            codes = la.encode(K, img)
            if set(int(x) for x in codes) != target:
                continue
        else:
            codes = np.zeros(0, dtype=np.int64)
        par = {plist[i]: betas[i] for i in range(t + 2)}
        for i, cd in zip(others, codes):
            par[code_to_point[int(cd)]] = params[i]
        W = la.matmul(K, S.basis.T, la.matmul(K, Gs, C))
        return NrcReport(plist, t, True, W, dict(sorted(par.items())))
    return NrcReport(plist, t, False, reason="no parameter assignment fits")


def check_witness(report: NrcReport, K: FiniteField) -> bool:
    """Independent check: W M(y) is the point labelled y, for every y."""
    if not report.is_nrc or report.witness is None:
        return False
    for p, y in report.params.items():
        img = la.matmul(K, report.witness, moment_vector(K, report.order, y)[:, None])[:, 0]
        if not img.any() or tuple(map(int, la.normalize_rows(K, img))) != tuple(p):
            return False
    return len(report.params) == K.order + 1


def nrc_from_parametrization(K: FiniteField, labelled) -> NrcReport:
    """Report for a curve given with explicit parameters.

    ``labelled`` maps parameters (canonical pairs) to points.  The witness is
    fitted on the first t + 2 labels and checked on all of them.
    """
    items = sorted((tuple(y), tuple(map(int, la.normalize_rows(K, np.asarray(p))))) for y, p in labelled.items())
    pts = [p for _, p in items]
    q = K.order
    if len(set(pts)) != q + 1:
        raise NotACandidateError("a parametrized curve needs q + 1 distinct points")
    P = np.array(pts, dtype=np.int64)
    S = Subspace(K, P)
    t = S.dim
    ys = [y for y, _ in items]
    M = moment_matrix(K, t, ys)
    # solve W M = diag(lambda) P^T on the span coordinates, lambda unknown:
    # use the first t+2 labels as a frame, exactly as in is_nrc
    X = P[:, list(S.pivots)]
    if t == q:
        W = la.matmul(K, P.T, la.inverse(K, M))
        return NrcReport(sorted(pts), t, True, W, dict(zip(pts, ys)), degenerate=True)
    frame = X[: t + 2]
    if not _general_position(K, frame):
        return NrcReport(sorted(pts), t, False, reason="labels not on an NRC")
    G = frame[: t + 1].T
    c = la.solve(K, G, frame[t + 1])
    Gs = K.MUL[c[None, :], G]
    C = _curve_matrix(K, t, ys[: t + 2])
    W = la.matmul(K, S.basis.T, la.matmul(K, Gs, C))
    rep = NrcReport(sorted(pts), t, True, W, dict(zip(pts, ys)))
    if not check_witness(rep, K):
        return NrcReport(sorted(pts), t, False, reason="labels not on an NRC")
    return rep


def nrc_projectivity_witness(src: NrcReport, dst: NrcReport, pairing, K: FiniteField) -> Projectivity:
    """The map of parameter lines induced by a pairing ``src point -> dst point``.

    Raises ``ValueError`` if the pairing misses a point or is not induced by
    an element of PGL(2, q).
    """
    if not (src.is_nrc and dst.is_nrc):
        raise ValueError("both curves must be normal rational curves")
    missing = [p for p in src.points if tuple(p) not in pairing]
    if missing:
        raise ValueError(f"pairing not defined at {missing[0]}")
    mapping = {}
    for p in src.points:
        image = tuple(pairing[tuple(p)])
        if image not in dst.params:
            raise ValueError(f"paired point {image} is not on the target curve")
        mapping[src.params[tuple(p)]] = dst.params[image]
    pars = parameters(K)
    a, b, c = pars[0], pars[1], pars[2]
    kappa = frame_projectivity(K, [a, b, c], [mapping[a], mapping[b], mapping[c]])
    for y in pars:
        if kappa(y) != mapping[y]:
            raise ValueError("pairing is not a projectivity of the parameter lines")
    return kappa


def random_nrc_image(K: FiniteField, t: int, rng) -> tuple[list[tuple[int, ...]], np.ndarray]:
    """A random projective image of the moment curve of order t in PG(t, q)."""
    from .projective import random_invertible

    A = random_invertible(K, t + 1, rng)
    M = moment_matrix(K, t)
    pts = la.normalize_rows(K, la.matmul(K, A, M).T)
    return [tuple(map(int, r)) for r in pts], A


def is_arc(points, K: FiniteField) -> bool:
    """Every t+1 of the points are independent, where t is the ambient dimension."""
    P = np.asarray(points, dtype=np.int64)
    r = P.shape[1]
    if P.shape[0] < r:
        return la.rank(K, P) == P.shape[0]
    return all(la.rank(K, P[list(c)]) == r for c in itertools.combinations(range(P.shape[0]), r))


def corruption_can_be_nrc(q: int, t: int) -> bool:
    """Whether replacing one point of an order-t NRC by another point of PG(t, q)
    can give an NRC again.  For q >= t + 3 the q kept points already fix the
    curve, so never; otherwise the result is an NRC exactly when it is an arc."""
    return q <= t + 2


def corrupt_one_point(points, K: FiniteField, rng, want_nrc: bool | None = False):
    """Replace one point by a random point of PG(t, q) outside the set.

    With ``want_nrc`` set to False (True) resample until the result is known
    not to be (to be) an NRC of order t, using the arc criterion; None takes
    the first draw.
    Returns ``(new_points, index)``.
    """
    pts = [tuple(map(int, p)) for p in points]
    t = len(pts[0]) - 1
    if t < 1 or len(pts) != K.order + 1:
        raise ValueError("expected the q + 1 points of a curve")
    if t == 1:
        raise ValueError("PG(1, q) has no points off a curve of order 1")
    q = K.order
    taken = set(pts)
    for _ in range(10000):
        i = int(rng.integers(len(pts)))
        while True:
            v = rng.integers(0, q, size=t + 1)
            if v.any():
                break
        x = tuple(map(int, la.normalize_rows(K, v[None, :])[0]))
        if x in taken:
            continue
        new = pts[:i] + [x] + pts[i + 1:]
        if want_nrc is None:
            return new, i
        nrc = corruption_can_be_nrc(q, t) and is_arc(new, K)
        if nrc == want_nrc:
            return new, i
    raise RuntimeError("no corruption of the requested kind found")
