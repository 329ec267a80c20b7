"""Clubs: rank-3 linear sets of PG(1, q^n) with a point of weight two.

A club is built by projecting the standard q-subplane of PG(2, q^n) from a
point Theta = (1, xi, 0) on the extension of its line X2 = 0 onto the line
X0 = 0.  In PG(2n-1, q) it is B(V) for the GF(q)-subspace
``V = {(x1 - x0 xi, x2) : x in GF(q)^3}``.  Everything after construction
only uses V, so a club can also be given by any rank-3 subspace.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import linalg as la
from .fields import FieldTower
from .parallel import pmap
from .projective import Subspace, meet, span
from .reduction import ReductionContext


class ClubError(ValueError):
    pass


@dataclass
class ClubSource:
    h: int
    xi: int  # Theta = (1, xi, 0)


class Club:
    """The linear set B(V) of a rank-3 subspace V of PG(2n-1, q) with one
    point of weight 2."""

    def __init__(self, ctx: ReductionContext, V: Subspace, source: ClubSource | None = None):
        if V.rank != 3:
            raise ClubError(f"a club has rank 3, got {V.rank}")
        self.ctx = ctx
        self.V = V
        self.source = source
        self.K = ctx.K
        self.L = ctx.L
        self.q = ctx.K.order
        self.n = ctx.n
        self.weights = ctx.spread_trace(V)
        heads = [X for X, w in self.weights.items() if w == 2]
        if len(heads) != 1 or any(w > 2 for w in self.weights.values()):
            raise ClubError("not a club: need exactly one point of weight 2 and none heavier")
        self.head = heads[0]
        self.F_head = ctx.reduce_point(self.head)

    @property
    def points(self) -> list[tuple[int, ...]]:
        return list(self.weights)

    def weight_identity(self) -> bool:
        return self.ctx.weight_identity_check(self.V)

    # -- families ---------------------------------------------------------------
    @cached_property
    def F1(self) -> list[Subspace]:
        return [self.ctx.reduce_point(X) for X in self.weights if X != self.head]

    @cached_property
    def scalars(self) -> list[int]:
        """Representatives of GF(q^n)* / GF(q)*: digit vectors with first
        nonzero digit 1, in lexicographic order."""
        return [self.L.from_coords(v) for v in la.normalized_vectors(self.q, self.n)]

    def scaled(self, lam: int) -> Subspace:
        """lam * V."""
        ctx = self.ctx
        top = ctx.unflatten(self.V.basis)
        return Subspace(self.K, ctx.flatten(self.L.mul_array(lam, top)), ctx.ambient_dim)

    @cached_property
    def F2(self) -> list[Subspace]:
        return [self.scaled(lam) for lam in self.scalars]

    @cached_property
    def F2_lines(self) -> list[Subspace]:
        """Each member of F2 cut with F(head)."""
        return [meet(P, self.F_head) for P in self.F2]

    @cached_property
    def planes_through(self) -> dict[int, list[int]]:
        """Point code of F(head) -> indices of F2 members through it."""
        out: dict[int, list[int]] = {}
        for i, ln in enumerate(self.F2_lines):
            for c in ln.point_codes().tolist():
                out.setdefault(int(c), []).append(i)
        return out

    # -- structural properties ----------------------------------------------------
    def check_F1(self) -> bool:
        """Pairwise disjoint (n-1)-spaces, all disjoint from F(head)."""
        codes = [set(E.point_codes().tolist()) for E in self.F1]
        head = set(self.F_head.point_codes().tolist())
        total = sum(len(c) for c in codes)
        union = set().union(*codes)
        return (len(self.F1) == self.q**2 and all(E.dim == self.n - 1 for E in self.F1)
                and total == len(union) and not (union & head))

    def check_F2_planes(self) -> bool:
        return all(P.dim == 2 for P in self.F2) and all(ln.dim == 1 for ln in self.F2_lines)

    def plane_counts(self) -> dict[int, int]:
        """Histogram: number of F2 members through a point -> number of points
        of F(head) with that count."""
        hist: dict[int, int] = {}
        through = self.planes_through
        for c in self.F_head.point_codes().tolist():
            k = len(through.get(int(c), []))
            hist[k] = hist.get(k, 0) + 1
        return hist

    def head_points(self) -> np.ndarray:
        return self.F_head.points()

    def invariant_at(self, X, exclude: int = -1) -> int:
        """Dimension of the span of the lines F2-member cap F(head) over the
        members through X, leaving out one of the q + 1 (default: the last in
        enumeration order)."""
        X = np.asarray(X, dtype=np.int64)
        if not self.F_head.contains(X):
            raise ClubError("point is not in F(head)")
        code = int(la.encode(self.K, la.normalize_rows(self.K, X)))
        idx = list(self.planes_through.get(code, []))
        if len(idx) != self.q + 1:
            raise ClubError(f"{len(idx)} planes through the point, expected {self.q + 1}")
        del idx[exclude]
        return span([self.F2_lines[i] for i in idx]).dim

    def invariant_all_exclusions(self, X) -> set[int]:
        return {self.invariant_at(X, j) for j in range(self.q + 1)}

    def reduced_codes(self) -> np.ndarray:
        """Sorted codes of the points of the union of F(X), X in the club."""
        parts = [self.F_head.point_codes()] + [E.point_codes() for E in self.F1]
        return np.sort(np.concatenate(parts))


def make_club(tower: FieldTower, h: int) -> Club:
    """The club from Theta = (1, xi_h, 0), xi_h the smallest element of degree h."""
    n = tower.n
    if n % h:
        raise ClubError(f"h = {h} does not divide n = {n}")
    if h == 1:
        raise ClubError("h = 1 puts Theta on the subline")
    xi = tower.subfield_generator(h)
    ctx = ReductionContext(tower, 2)
    L = tower.top
    # x0 -> (-xi, 0), x1 -> (1, 0), x2 -> (0, 1)
    gens = np.array([[L.neg(xi), 0], [1, 0], [0, 1]], dtype=np.int64)
    V = Subspace(tower.base, ctx.flatten(gens), ctx.ambient_dim)
    return Club(ctx, V, ClubSource(h, xi))


def project(club: Club, A) -> Club:
    """Image of the club under the projectivity of PG(1, q^n) with matrix A."""
    ctx = club.ctx
    M = ctx.induced_matrix(A)
    rows = la.matmul(club.K, club.V.basis, M.T)
    return Club(ctx, Subspace(club.K, rows, ctx.ambient_dim))


def random_top_matrix(tower: FieldTower, rng) -> np.ndarray:
    L = tower.top
    while True:
        A = rng.integers(0, L.order, size=(2, 2)).astype(np.int64)
        det = L.sub(L.mul(int(A[0, 0]), int(A[1, 1])), L.mul(int(A[0, 1]), int(A[1, 0])))
        if det:
            return A


def sample_head_points(club: Club, samples: int, rng) -> np.ndarray:
    P = club.head_points()
    if samples >= P.shape[0]:
        return P
    return P[np.sort(rng.choice(P.shape[0], size=samples, replace=False))]


def expected_invariant(q: int, h: int) -> set[int]:
    return {h - 1} if q > h else {q - 1, q}


@dataclass
class InvariantReport:
    h: int
    values: list[int]  # s at each sampled point
    plane_counts: dict
    size: int
    head_weight_ok: bool
    weight_identity: bool
    verified: bool
    notes: list[str] = field(default_factory=list)

    @property
    def s(self) -> int | None:
        return self.values[0] if len(set(self.values)) == 1 else None


def club_invariant_report(tower: FieldTower, h: int, samples: int, rng,
                          projectivity_trials: int = 0) -> InvariantReport:
    club = make_club(tower, h)
    q = tower.q
    pts = sample_head_points(club, samples, rng)
    values = [club.invariant_at(X) for X in pts]
    counts = club.plane_counts()
    size = len(club.weights)
    wt = sorted(club.weights.values())
    head_ok = wt.count(2) == 1 and wt.count(1) == size - 1
    notes = []
    ok = (len(set(values)) == 1 and set(values) <= expected_invariant(q, h)
          and counts == {q + 1: club.F_head.num_points()} and size == q * q + 1 and head_ok
          and club.weight_identity())
    for _ in range(projectivity_trials):
        A = random_top_matrix(tower, rng)
        img = project(club, A)
        Y = sample_head_points(img, 1, rng)[0]
        sv = img.invariant_at(Y)
        if sv != values[0]:
            ok = False
            notes.append(f"invariant {sv} after a projectivity, {values[0]} before")
    return InvariantReport(h, values, counts, size, head_ok, club.weight_identity(), bool(ok), notes)


def distinguishable_degrees(q: int, n: int) -> list[int]:
    return [h for h in range(2, q) if n % h == 0]


def orbit_distinguisher(tower: FieldTower, samples: int, rng, threads: int = 1) -> dict:
    """s for each h in I_{n,q}; pairwise distinct values certify distinct orbits."""
    q, n = tower.q, tower.n
    I = distinguishable_degrees(q, n)
    if not I:
        raise ClubError("no distinguishable pairs at these parameters")
    seeds = rng.integers(0, 2**32, size=len(I))
    reps = pmap(lambda hs: club_invariant_report(tower, hs[0], samples, np.random.default_rng(int(hs[1]))),
                list(zip(I, seeds)), threads)
    s_map = {r.h: r.s for r in reps}
    distinct = None not in s_map.values() and len(set(s_map.values())) == len(I)
    if len(I) == 1:
        verdict = "nothing to separate"
    else:
        verdict = f"at least {len(I)} orbits" if distinct else "invariants collide"
    return {"I": I, "s": s_map, "reports": reps, "distinct": distinct, "verdict": verdict,
            "orbit_lower_bound": len(I) if distinct else None,
            "verified": distinct and all(r.verified for r in reps)}


# -- lines inside the reduced point set ---------------------------------------------

def lines_in_reduced_set(club: Club) -> list[np.ndarray]:
    """All lines of PG(2n-1, q) whose points lie in the union of F(X), X in
    the club, each as its sorted point codes."""
    K = club.K
    codes = club.reduced_codes()
    P = np.array([la.decode(K, int(c), club.ctx.ambient_dim + 1) for c in codes], dtype=np.int64)
    scal = np.arange(K.order)
    found = set()
    out = []
    N = P.shape[0]
    for i in range(N - 1):
        A = P[i]
        B = P[i + 1:]
        # points B + c A for c in GF(q): line through A and each B
        M = K.ADD[B[:, None, :], K.MUL[scal[None, :, None], A[None, None, :]]]
        C = la.encode(K, la.normalize_rows(K, M.reshape(-1, M.shape[-1]))).reshape(B.shape[0], -1)
        inside = np.isin(C, codes).all(axis=1)
        for j in np.flatnonzero(inside):
            key = tuple(sorted(set(C[j].tolist()) | {int(codes[i])}))
            if key not in found:
                found.add(key)
                out.append(np.array(key))
    return out


def check_lines_property(club: Club) -> dict:
    """Every line inside the reduced set lies in F(head) or a member of F1 or F2;
    also counts the lines whose trace B(l) is a q-subline."""
    members = [club.F_head] + club.F1 + club.F2
    member_codes = [set(m.point_codes().tolist()) for m in members]
    lines = lines_in_reduced_set(club)
    bad = 0
    sublines = 0
    K = club.K
    for key in lines:
        s = set(key.tolist())
        if not any(s <= mc for mc in member_codes):
            bad += 1
        rows = np.array([la.decode(K, int(c), club.ctx.ambient_dim + 1) for c in key[:2]])
        tr = club.ctx.spread_trace(Subspace(K, rows, club.ctx.ambient_dim))
        if len(tr) == club.q + 1:
            sublines += 1
    return {"lines": len(lines), "outside_families": bad, "lines_with_subline_trace": sublines,
            "verified": bad == 0}


# -- PG(1, q^2) detection ---------------------------------------------------------------

def detect_pg1q2_club(club: Club, node_budget: int = 100000) -> bool | None:
    """Whether the reduced point set splits into 3-spaces, each meeting F(head)
    and every member of F1 in a line.

    Candidate 3-spaces are spans of the F2 members sharing a line with
    F(head).  Returns None if the exact-cover search exceeds ``node_budget``.
    """
    if club.n % 2:
        return False
    groups: dict[bytes, list[int]] = {}
    for i, ln in enumerate(club.F2_lines):
        groups.setdefault(ln.basis.tobytes(), []).append(i)
    cands = []
    all_codes = club.reduced_codes()
    universe = set(all_codes.tolist())
    for idx in groups.values():
        S = span([club.F2[i] for i in idx])
        if S.dim != 3:
            continue
        pc = set(S.point_codes().tolist())
        if not pc <= universe:
            continue
        if all(meet(S, E).dim == 1 for E in [club.F_head] + club.F1):
            cands.append(frozenset(pc))
    if not cands:
        return False
    # exact cover over points (Algorithm X, smallest column first)
    by_point: dict[int, list[int]] = {}
    for j, c in enumerate(cands):
        for p in c:
            by_point.setdefault(p, []).append(j)
    if set(by_point) != universe:
        return False
    nodes = 0

    def search(uncovered: set, used: set) -> bool | None:
        nonlocal nodes
        if not uncovered:
            return True
        nodes += 1
        if nodes > node_budget:
            return None
        p = min(uncovered, key=lambda x: len(by_point[x]))
        for j in by_point[p]:
            if j in used or not cands[j] <= uncovered:
                continue
            r = search(uncovered - cands[j], used | {j})
            if r is None or r:
                return r
        return False

    return search(set(universe), set())
