import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import gaussian_binomial as gb_oracle
from oracles import projective_points, rank_mod_field
from reguli import linalg as la
from reguli.fields import make_field
from reguli.projective import (DegenerateFrameError, Projectivity, Subspace, extensions_through,
                               format_subspace, frame_projectivity, gaussian_binomial, iter_subspaces, meet,
                               parse_subspace, random_projectivity, random_subspace, span, standard_frame)

F2, F3, F4, F5 = (make_field(2), make_field(3), make_field(2, 2), make_field(5))


def _oracle_rank(K, M):
    return rank_mod_field(np.asarray(M).tolist(), K.add, K.mul, K.inv, K.neg)


def test_span_examples():
    P = Subspace(F2, [[1, 0, 1, 0]])
    assert span([P]) == P and span([P]).dim == 0
    line = span([(1, 0, 0, 0), (0, 1, 1, 0)], field=F2)
    assert line.dim == 1 and line.num_points() == 3 and len(line.point_list()) == 3
    assert span([tuple(int(i == j) for i in range(4)) for j in range(4)], field=F3) == Subspace.whole(F3, 3)
    with pytest.raises(ValueError, match="mixed ambient"):
        span([(1, 0, 0), (1, 0, 0, 0)], field=F2)


def test_meet_examples():
    H1 = Subspace(F3, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]])
    H2 = Subspace(F3, [[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    assert meet(H1, H2).dim == 1
    A = Subspace(F4, np.eye(8, dtype=np.int64)[:4], 7)
    B = Subspace(F4, np.eye(8, dtype=np.int64)[4:], 7)
    assert meet(A, B).rank == 0


def test_extension_counts():
    S = Subspace(F4, np.eye(8, dtype=np.int64)[:4], 7)
    exts = list(extensions_through(S, 4))
    assert len(exts) == 85 and len(set(exts)) == 85
    assert all(H.contains(S) and H.dim == 4 for H in exts)
    for q, K in ((2, F2), (3, F3), (5, F5)):
        P = Subspace(K, [[0, 1, 0]])
        lines = list(extensions_through(P, 1))
        assert len(lines) == q + 1 and all(L.contains(P) for L in lines)
    with pytest.raises(ValueError):
        list(extensions_through(S, 3))


def test_frames():
    fr = standard_frame(F5, 2)
    assert frame_projectivity(F5, fr, fr) == Projectivity.identity(F5, 2)
    swap = frame_projectivity(F3, [(1, 0), (0, 1), (1, 1)], [(0, 1), (1, 0), (1, 1)])
    assert swap.matrix.tolist() == [[0, 1], [1, 0]]
    with pytest.raises(DegenerateFrameError, match="degenerate frame"):
        frame_projectivity(F3, [(1, 0), (1, 0), (1, 1)], [(1, 0), (0, 1), (1, 1)])


@pytest.mark.parametrize("K,d,k", [(F2, 3, 1), (F3, 3, 1), (F2, 4, 2), (F4, 3, 1), (F3, 2, 0)])
def test_iter_subspaces_count_and_distinct(K, d, k):
    mats = list(iter_subspaces(K, d, k))
    assert len(mats) == gb_oracle(d + 1, k + 1, K.order) == gaussian_binomial(d + 1, k + 1, K.order)
    assert len({Subspace(K, M, d) for M in mats}) == len(mats)


def test_points_match_enumeration():
    W = Subspace.whole(F3, 2)
    assert sorted(W.point_list()) == sorted(projective_points(3, 2))


def test_subspace_file_round_trip():
    rng = np.random.default_rng(2)
    S = random_subspace(F4, 7, 3, rng)
    text = format_subspace(S)
    assert text.splitlines()[0] == "pg 7 4"
    T, rows = parse_subspace("# a comment\n" + text)
    assert T == S and rows == 4
    with pytest.raises(ValueError, match="dependent"):
        parse_subspace("pg 2 3\n1 0 0\n2 0 0\n", strict=True)
    U, rows = parse_subspace("pg 2 3\n1 0 0\n2 0 0\n")
    assert U.rank == 1 and rows == 2
    with pytest.raises(ValueError):
        parse_subspace("pg 2 4\n1 0 0\n")  # GF(4) entries must use brackets


fields = st.sampled_from([F2, F3, F4, F5])


@st.composite
def matrices(draw, max_rows=5, max_cols=6):
    K = draw(fields)
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(2, max_cols))
    M = draw(st.lists(st.lists(st.integers(0, K.order - 1), min_size=c, max_size=c), min_size=r, max_size=r))
    return K, np.array(M, dtype=np.int64)


@given(matrices())
def test_rank_matches_oracle(KM):
    K, M = KM
    assert la.rank(K, M) == _oracle_rank(K, M)


@given(matrices(), st.integers(0, 2**31))
def test_rref_is_canonical(KM, seed):
    K, M = KM
    S = Subspace(K, M)
    # any invertible recombination of the rows gives the same canonical form
    rng = np.random.default_rng(seed)
    from reguli.projective import random_invertible

    A = random_invertible(K, M.shape[0], rng)
    assert Subspace(K, la.matmul(K, A, M)) == S
    R, piv = la.rref(K, M)
    assert np.array_equal(S.basis, R[: len(piv)])


@given(fields, st.integers(0, 2**31))
def test_dimension_formula(K, seed):
    rng = np.random.default_rng(seed)
    d = 4
    A = random_subspace(K, d, int(rng.integers(0, d)), rng)
    B = random_subspace(K, d, int(rng.integers(0, d)), rng)
    assert span([A, B]).rank + meet(A, B).rank == A.rank + B.rank
    assert meet(A, B) == meet(B, A)
    M = meet(A, B)
    assert A.contains(M) and B.contains(M)


@given(fields, st.integers(0, 2**31))
def test_projectivities_preserve_incidence(K, seed):
    rng = np.random.default_rng(seed)
    d = 3
    g = random_projectivity(K, d, rng)
    A = random_subspace(K, d, 1, rng)
    B = random_subspace(K, d, 2, rng)
    assert g(meet(A, B)) == meet(g(A), g(B))
    assert g.inverse()(g(A)) == A
    assert (g @ g.inverse()) == Projectivity.identity(K, d)
    assert all(g(A).contains(np.array(g(p))) for p in A.point_list())


@given(fields, st.integers(0, 2**31))
def test_frame_projectivity_maps_frames(K, seed):
    rng = np.random.default_rng(seed)
    g = random_projectivity(K, 2, rng)
    src = standard_frame(K, 2)
    dst = [g(p) for p in src]
    h = frame_projectivity(K, src, dst)
    assert h == g
