import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from reguli import linalg as la
from reguli.fields import tower_for_q
from reguli.projective import Subspace, meet, random_subspace
from reguli.reduction import ReductionContext, Subgeometry
from reguli.segre import SegreVariety, regulus, transversal_trace


def test_reduce_point_convention():
    ctx = ReductionContext(tower_for_q(2, 2), 2)
    assert ctx.reduce_point([1, 0]) == Subspace(ctx.K, [[1, 0, 0, 0], [0, 1, 0, 0]])


def test_spread_trace_examples():
    ctx = ReductionContext(tower_for_q(3, 3), 2)
    Y = (1, 5)
    FY = ctx.reduce_point(Y)
    assert ctx.spread_trace(FY) == {Y: 3}
    line = Subspace(ctx.K, FY.basis[:2], ctx.ambient_dim)
    assert ctx.spread_trace(line) == {Y: 2}
    P = Subspace(ctx.K, FY.basis[:1], ctx.ambient_dim)
    assert ctx.spread_trace(P) == {Y: 1} and ctx.weight_identity_check(P)
    with pytest.raises(ValueError):
        ctx.spread_trace(Subspace.whole(ctx.K, 3))


def _trace_by_enumeration(ctx, S):
    """Weights from raw point counts: q^w - 1 / (q - 1) points per element."""
    q = ctx.K.order
    counts = {}
    for x in S.point_list():
        X = ctx.point_of(x)
        counts[X] = counts.get(X, 0) + 1
    out = {}
    for X, c in counts.items():
        w = 1
        while (q**w - 1) // (q - 1) < c:
            w += 1
        assert (q**w - 1) // (q - 1) == c
        out[X] = w
    return out


@pytest.mark.parametrize("q,n,m", [(2, 3, 2), (2, 2, 3)])
def test_weight_identity_random_planes_of_pg52(q, n, m):
    ctx = ReductionContext(tower_for_q(q, n), m)
    rng = np.random.default_rng(7)
    for _ in range(20):
        S = random_subspace(ctx.K, 5, 2, rng)
        assert S.num_points() == 7
        tr = ctx.spread_trace(S)
        assert tr == _trace_by_enumeration(ctx, S)
        assert ctx.weight_identity_check(S)
        assert sum((q**w - 1) // (q - 1) for w in tr.values()) == 7


@pytest.mark.parametrize("q,n,m", [(2, 2, 2), (2, 3, 2), (3, 2, 2), (2, 2, 3), (4, 2, 2)])
def test_spread_is_a_partition(q, n, m):
    ctx = ReductionContext(tower_for_q(q, n), m)
    spread = ctx.spread()
    assert len(spread) == (q ** (m * n) - 1) // (q**n - 1)
    codes = np.concatenate([S.point_codes() for S in spread.values()])
    total = (q ** (m * n) - 1) // (q - 1)
    assert len(codes) == total and len(np.unique(codes)) == total
    for X, S in spread.items():
        assert S.dim == n - 1
        assert {ctx.point_of(x) for x in S.point_list()} == {X}


towers = st.sampled_from([(2, 2), (2, 3), (3, 2), (4, 2), (3, 3)]).map(lambda qn: tower_for_q(*qn))


@given(towers, st.integers(2, 3), st.integers(0, 2**31))
def test_reduction_is_equivariant(tw, m, seed):
    ctx = ReductionContext(tw, m)
    rng = np.random.default_rng(seed)
    L = tw.top
    while True:
        A = rng.integers(0, L.order, size=(m, m))
        M = ctx.induced_matrix(A)
        if la.rank(ctx.K, M) == M.shape[0]:
            break
    X = rng.integers(0, L.order, size=m)
    if not X.any():
        X[0] = 1
    FX = ctx.reduce_point(X)
    image = Subspace(ctx.K, la.matmul(ctx.K, FX.basis, M.T), ctx.ambient_dim)
    assert image == ctx.reduce_point(ctx.apply_top(A, X))


@given(towers, st.integers(0, 2**31))
def test_flatten_round_trip_and_linearity(tw, seed):
    ctx = ReductionContext(tw, 2)
    rng = np.random.default_rng(seed)
    v = rng.integers(0, tw.top.order, size=2)
    assert np.array_equal(ctx.unflatten(ctx.flatten(v)), v)
    c = int(rng.integers(0, tw.q))
    assert np.array_equal(ctx.flatten(ctx.scale(c, v)), tw.base.MUL[c, ctx.flatten(v)])


@pytest.mark.parametrize("q,n", [(2, 2), (3, 2), (2, 3), (4, 2), (3, 3)])
def test_regulus_of_standard_subline(q, n):
    tw = tower_for_q(q, n)
    ctx = ReductionContext(tw, 2)
    b = Subgeometry.standard(ctx)
    R = b.segre()
    assert len(R.first_family) == q + 1
    assert {S for S in R.first_family} == {ctx.reduce_point(P) for P in b.points()}
    for i, A in enumerate(R.first_family):
        for B in R.first_family[i + 1:]:
            assert meet(A, B).rank == 0
    for T in R.second_family:
        assert T.dim == 1 and all(meet(T, S).rank == 1 for S in R.first_family)
    assert len(R.point_codes) == R.num_points() == (q + 1) * (q**n - 1) // (q - 1)
    # membership by the rank-one test agrees with the union of the first family
    P = R.span.points()
    union = set(np.concatenate([S.point_codes() for S in R.first_family]).tolist())
    assert set(la.encode(ctx.K, P[R.contains_rows(P)]).tolist()) == union


@given(st.sampled_from([2, 3, 4, 5]), st.integers(2, 3), st.integers(0, 2**31))
def test_decompose_round_trip(q, n, seed):
    from reguli.projective import field_for_order

    K = field_for_order(q)
    R = regulus(K, n)
    rng = np.random.default_rng(seed)
    s = R.s_points[int(rng.integers(len(R.s_points)))]
    v = R.v_points[int(rng.integers(len(R.v_points)))]
    assert R.decompose(np.array(R.point(s, v))) == (s, v)
    assert R.transversal_through(np.array(R.point(s, v))) == R.second_element(v)


def test_segre_rejects_bad_transform_and_traces_need_sections():
    from reguli.projective import field_for_order

    K = field_for_order(3)
    with pytest.raises(ValueError):
        SegreVariety(K, 2, 2, np.zeros((4, 4), dtype=np.int64))
    R = regulus(K, 2)
    with pytest.raises(ValueError):
        transversal_trace(R, [R.point(R.s_points[0], (1, 0))] * 4, R.s_points[0])
