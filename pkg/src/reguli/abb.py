"""The Andre-Bruck-Bose representation of AG(2, q^n) in PG(3n-1, q), images
of q-sublines (normal rational curves) and of q-subplanes tangent to the line
at infinity (ruled surfaces)."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .fields import FieldTower
from .nrc import NotACandidateError, NrcReport, is_nrc, nrc_from_parametrization, nrc_projectivity_witness
from .projective import Projectivity, Subspace, meet, span
from .reduction import ReductionContext, Subgeometry


class AbbError(ValueError):
    pass


class AbbContext:
    """phi(X) = F(X) cap K with l_inf the line X0 = 0.

    K is spanned by <F(l_inf)> and one more point: the first standard basis
    vector by default, or a random point off <F(l_inf)> drawn from ``k_seed``.
    """

    def __init__(self, tower: FieldTower, k_seed: int | None = None):
        self.tower = tower
        self.ctx = ReductionContext(tower, 3)
        self.K = tower.base
        self.L = tower.top
        self.n = tower.n
        self.q = tower.q
        self.F_inf = self.ctx.reduce_subspace([[0, 1, 0], [0, 0, 1]])
        d = self.ctx.ambient_dim
        if k_seed is None:
            k = np.zeros(d + 1, dtype=np.int64)
            k[0] = 1
        else:
            rng = np.random.default_rng(k_seed)
            while True:
                k = rng.integers(0, self.q, size=d + 1).astype(np.int64)
                if not self.F_inf.contains(k):
                    break
        self.k_point = k
        self.space = span([self.F_inf, k])
        if self.F_inf.dim != 2 * self.n - 1 or self.space.dim != 2 * self.n:
            raise AssertionError("K is not a 2n-space through <F(l_inf)>")

    def is_affine(self, X) -> bool:
        return int(np.asarray(X)[0]) != 0

    def phi(self, X) -> tuple[int, ...]:
        """phi(X) for an affine point X of PG(2, q^n)."""
        X = np.asarray(X, dtype=np.int64)
        if not self.is_affine(X):
            raise AbbError("point lies on the line at infinity")
        P = meet(self.ctx.reduce_point(X), self.space)
        if P.rank != 1:
            raise AssertionError(f"F(X) meets K in rank {P.rank}")
        return P.as_point()

    def at_infinity(self, p) -> bool:
        return self.F_inf.contains(np.asarray(p, dtype=np.int64))

    def affine_points(self) -> list[tuple[int, int, int]]:
        N = self.L.order
        return [(1, a, b) for a in range(N) for b in range(N)]


@dataclass
class SublineImage:
    degree: int  # [Theta : b]
    delta: int
    kind: str  # "line" or "nrc"
    points: list[tuple[int, ...]]  # images of the affine points of b
    report: NrcReport | None
    infinite_points: int
    verified: bool
    notes: list[str] = field(default_factory=list)

    def summary(self) -> dict:
        return {"degree": self.degree, "delta": self.delta, "kind": self.kind,
                "affine_points": len(self.points), "infinite_points": self.infinite_points,
                "order": self.report.order if self.report else 1, "verified": self.verified}


def subline_degree(tower: FieldTower, u, w) -> int:
    """[Theta : b] for b = {s0 u + s1 w} and Theta = <b> cap {X0 = 0}."""
    L = tower.top
    u0, w0 = int(u[0]), int(w[0])
    if u0 == 0 or w0 == 0:
        return 1  # Theta is u or w, a point of b
    return tower.degree_over_base(L.mul(u0, L.inv(w0)))


def standard_subline(tower: FieldTower, h: int) -> tuple[np.ndarray, np.ndarray]:
    """u = (1, 0, 0), w = (eta, 0, 1) with eta of degree h (eta = 0 for h = 1)."""
    eta = tower.subfield_generator(h) if h > 1 else 0
    return np.array([1, 0, 0], dtype=np.int64), np.array([eta, 0, 1], dtype=np.int64)


def abb_subline_image(abb: AbbContext, u, w) -> SublineImage:
    """phi of the affine part of the q-subline {s0 u + s1 w}."""
    u = np.asarray(u, dtype=np.int64)
    w = np.asarray(w, dtype=np.int64)
    if u[0] == 0 and w[0] == 0:
        raise AbbError("the subline lies on the line at infinity")
    b = Subgeometry(abb.ctx, [u, w])
    h = subline_degree(abb.tower, u, w)
    delta = min(abb.q, h)
    vecs = [b.vector_of(s) for s in b.parameters()]
    affine = [v for v in vecs if v[0] != 0]
    pts = [abb.phi(v) for v in affine]
    inf = sum(abb.at_infinity(p) for p in pts)
    notes = []
    # n-space through F(Theta) cut out of <F(b)> by K
    Fb = span([abb.ctx.reduce_point(v) for v in vecs])
    H = meet(Fb, abb.space)
    theta = _theta(abb, u, w)
    FT = abb.ctx.reduce_point(theta)
    ok = H.dim == abb.n and H.contains(FT) and inf == 0
    if not ok:
        notes.append("n-space <F(b)> cap K does not contain F(Theta)")
    if delta == 1:
        line = Subspace(abb.K, np.array(pts), abb.ctx.ambient_dim)
        at_inf = meet(line, abb.F_inf)
        ok &= len(pts) == abb.q and line.dim == 1 and at_inf.rank == 1 and FT.contains(at_inf)
        return SublineImage(h, delta, "line", pts, None, inf, bool(ok), notes)
    try:
        rep = is_nrc(pts, abb.K)
    except NotACandidateError as e:
        return SublineImage(h, delta, "nrc", pts, None, inf, False, notes + [str(e)])
    ok &= len(affine) == abb.q + 1 and rep.is_nrc and rep.order == delta
    return SublineImage(h, delta, "nrc", pts, rep, inf, bool(ok), notes)


def _theta(abb: AbbContext, u, w) -> np.ndarray:
    """u0 w - w0 u, the point of <b> on the line at infinity."""
    L = abb.L
    a = L.mul_array(int(u[0]), w)
    c = L.mul_array(int(w[0]), u)
    return np.array([L.sub(int(x), int(y)) for x, y in zip(a, c)], dtype=np.int64)


@dataclass
class RuledSurface:
    C0: NrcReport
    C1: NrcReport
    kappa: Projectivity | None
    lines: list[tuple[list[tuple[int, ...]], tuple[int, ...]]]  # (affine points, point at infinity)
    degree: int
    delta: int
    delta_prime: int
    checks: dict

    @property
    def verified(self) -> bool:
        return all(self.checks.values())

    def summary(self) -> dict:
        return {"degree": self.degree, "delta": self.delta, "delta_prime": self.delta_prime,
                "lines": len(self.lines), "covered_points": sum(len(a) for a, _ in self.lines),
                "checks": dict(sorted(self.checks.items())), "verified": self.verified}


def delta_prime_ok(q: int, h: int, dp: int) -> bool:
    return dp == h - 1 if q > h else dp in (q - 1, q)


def _labelled(rep: NrcReport, labels: dict, K) -> NrcReport:
    """Relabel a curve whose labels are free (see ``NrcReport.labels_free``)."""
    return nrc_from_parametrization(K, {labels[p]: p for p in rep.points})


def abb_tangent_subplane(abb: AbbContext, u, t, w) -> RuledSurface:
    """Ruled surface of the q-subplane B = {s0 u + s1 t + s2 w} tangent to
    l_inf at T = <t>, using its line b = {s0 u + s2 w}."""
    ctx, K, L, q = abb.ctx, abb.K, abb.L, abb.q
    B = Subgeometry(ctx, [u, t, w])
    Bvecs = [B.vector_of(s) for s in B.parameters()]
    on_inf = {ctx.top_point(v) for v in Bvecs if v[0] == 0}
    T = ctx.top_point(t)
    if on_inf != {T}:
        raise AbbError(f"subplane is not tangent to l_inf at T: meets it in {len(on_inf)} points")
    b = Subgeometry(ctx, [u, w])
    bvecs = [b.vector_of(s) for s in b.parameters()]
    if T in {ctx.top_point(v) for v in bvecs}:
        raise AbbError("b passes through T")
    h = subline_degree(abb.tower, u, w)
    delta = min(q, h)
    FT = ctx.reduce_point(t)
    lines, pairing, C1pts = [], {}, []
    checks = {}
    c0 = []
    for v in bvecs:
        P = abb.phi(v)
        c0.append(P)
        aff = [abb.phi(L.add_array(v, L.mul_array(c, np.asarray(t)))) for c in range(q)]
        ln = Subspace(K, np.array(aff), ctx.ambient_dim)
        Pk = meet(ln, abb.F_inf)
        if ln.dim != 1 or Pk.rank != 1 or not FT.contains(Pk):
            checks["lines_meet_F(T)"] = False
            continue
        lines.append((aff, Pk.as_point()))
        pairing[P] = Pk.as_point()
        C1pts.append(Pk.as_point())
    checks.setdefault("lines_meet_F(T)", True)
    C0 = is_nrc(c0, K)
    checks["C0_order"] = C0.is_nrc and C0.order == delta
    try:
        C1 = is_nrc(C1pts, K)
    except NotACandidateError:
        C1 = NrcReport(sorted(set(C1pts)), -1, False, reason="points at infinity not distinct")
    checks["C1_nrc"] = C1.is_nrc
    checks["delta_prime"] = C1.is_nrc and delta_prime_ok(q, h, C1.order)
    covered = [p for aff, _ in lines for p in aff]
    target = {abb.phi(v) for v in Bvecs if v[0] != 0}
    checks["q_affine_points_per_line"] = all(len(set(a)) == q for a, _ in lines) and len(lines) == q + 1
    checks["lines_disjoint"] = len(covered) == len(set(covered))
    checks["union_is_image"] = set(covered) == target and len(target) == q * q + q
    kappa = None
    if C0.is_nrc and C1.is_nrc and len(pairing) == q + 1:
        src, dst = C0, C1
        if dst.labels_free:
            dst = _labelled(C1, {pairing[p]: src.params[p] for p in src.points}, K)
        elif src.labels_free:
            src = _labelled(C0, {p: dst.params[pairing[p]] for p in C0.points}, K)
        try:
            kappa = nrc_projectivity_witness(src, dst, pairing, K)
        except ValueError:
            kappa = None
    checks["kappa_projectivity"] = kappa is not None
    return RuledSurface(C0, C1, kappa, lines, h, delta, C1.order, checks)


def standard_tangent_subplane(tower: FieldTower, h: int):
    """u, t, w with b = {s0 u + s2 w} of degree h and T = (0, 1, 0); h >= 2."""
    if h < 2:
        raise AbbError("a subplane tangent at T has its line b off l_inf, so [Theta:b] >= 2")
    u, w = standard_subline(tower, h)
    return u, np.array([0, 1, 0], dtype=np.int64), w


def format_lines(abb: AbbContext, surface: RuledSurface) -> str:
    """One line per generator: its first affine point, then its point at infinity."""
    K = abb.K
    out = []
    for aff, inf in surface.lines:
        out.append(" ".join(K.format(c) for c in aff[0]) + " ; " + " ".join(K.format(c) for c in inf))
    return "\n".join(out) + "\n"
