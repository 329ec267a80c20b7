import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reguli import linalg as la
from reguli.fields import tower_for_q
from reguli.projective import Subspace, span
from reguli.theorems import (GF4_EXAMPLE_ROWS, PreconditionError, parse_rows, check_containing_extension,
                             closed_form_intersection, degree_well_defined, extendability_profile,
                             extension_orders, external_line_witness, flatten_point, meet_intersection,
                             regulus_section, reproduce_gf4_example, standard_setup, theta_candidates,
                             verify_closed_form, verify_curve_orders, verify_degree_frames,
                             verify_line_plus_element)


@pytest.fixture(scope="module")
def setup44():
    return standard_setup(tower_for_q(4, 4))


def _xi_of_degree(tw, h):
    return tw.subfield_generator(h)


def test_degree_is_frame_independent(setup44):
    tw = setup44.tower
    rng = np.random.default_rng(0)
    for h in (2, 4):
        ok, degs = degree_well_defined(setup44, (1, _xi_of_degree(tw, h)), 10, rng)
        assert ok and degs == [h] * 10
    with pytest.raises(PreconditionError):
        degree_well_defined(setup44, (1, 1), 3, rng)


@pytest.mark.parametrize("q,n,h", [(4, 4, 2), (4, 4, 4), (5, 2, 2), (3, 3, 3), (2, 3, 3)])
def test_extension_orders_are_constant(q, n, h):
    tw = tower_for_q(q, n)
    setup = standard_setup(tw)
    prof = extension_orders(setup, _xi_of_degree(tw, h))
    assert len(prof.records) == (q**n - 1) // (q - 1)
    assert prof.constant == min(q, h)
    assert all(r.one_point_each for r in prof.records)


def test_section_by_enumeration_agrees_with_meets(setup44):
    # independent route: enumerate all points of H and test membership in R
    tw = setup44.tower
    prof = extension_orders(setup44, _xi_of_degree(tw, 2))
    R = setup44.R
    for rec in prof.records[:10]:
        P = R.intersection_points(rec.H)
        assert sorted(map(tuple, P.tolist())) == sorted(rec.points)


def test_closed_form_at_zero():
    tw = tower_for_q(3, 3)
    L = tw.top
    theta, xi = 5, tw.subfield_generator(3)
    x0, x1 = closed_form_intersection(tw, 0, theta, xi)
    assert x0 == 0 and x1 == L.neg(L.mul(theta, xi))
    setup = standard_setup(tw)
    assert flatten_point(setup, (x0, x1)) == meet_intersection(setup, 0, theta, xi)
    with pytest.raises(PreconditionError):
        closed_form_intersection(tw, 0, 0, xi)
    with pytest.raises(PreconditionError):
        closed_form_intersection(tw, 0, theta, 1)


@pytest.mark.parametrize("q,n", [(2, 2), (2, 3), (3, 2), (4, 3)])
def test_closed_form_matches_meets(q, n):
    res = verify_closed_form(tower_for_q(q, n), 8, np.random.default_rng(1))
    assert res.verified and res.counts["comparisons"] == 8 * q


@pytest.mark.parametrize("q,n", [(2, 2), (3, 3)])
def test_containing_extensions_exhaustive(q, n):
    res = verify_line_plus_element(tower_for_q(q, n))
    assert res.verified
    assert res.counts["subspaces"] == (q + 1) * (q**n - 1) // (q - 1)


def test_containing_extension_preconditions():
    setup = standard_setup(tower_for_q(2, 2))
    R = setup.R
    E = R.first_family[0]
    H = span([R.first_family[1], R.first_family[2].basis[0]])
    with pytest.raises(PreconditionError):
        check_containing_extension(R, E, H)
    with pytest.raises(PreconditionError):
        check_containing_extension(R, Subspace(setup.K, E.basis[:1], 3), H)


def test_extendability_profile_preconditions(setup44):
    with pytest.raises(PreconditionError, match="not disjoint"):
        extendability_profile(setup44, setup44.R.first_family[2])
    with pytest.raises(PreconditionError):
        extendability_profile(setup44, Subspace(setup44.K, np.eye(8, dtype=np.int64)[:2], 7))


def test_literal_gf4_example(setup44):
    K = setup44.K
    U = Subspace(K, parse_rows(K, GF4_EXAMPLE_ROWS), 7)
    prof = extendability_profile(setup44, U)
    assert prof.histogram() == {"2": 10, "4": 75}
    conic = next(r for r in prof.records if r.order == 2)
    from reguli.nrc import span_order

    assert span_order(conic.points, K) == 2


def test_gf4_reproduction_paths():
    res = reproduce_gf4_example()
    assert res.verified and res.data["path"] == "literal" and res.data["orders"] == [4, 2]
    assert res.data["literal_disjoint"]
    # another modulus of GF(4^4) over GF(4): the regulus and the coordinates do not depend on it
    alt = reproduce_gf4_example(top_modulus=(2, 0, 1, 1, 1))
    assert alt.data["moduli"]["top"] == "[[0,1],[0,0],[1,0],[1,0],[1,0]]"
    assert alt.verified and alt.data["path"] == "literal"
    found = reproduce_gf4_example(seed=3, force_search=True)
    assert found.verified and found.data["path"] == "search" and len(found.data["orders"]) >= 2


def test_external_lines():
    res = external_line_witness(2)
    assert res.verified and res.counts["external_lines"] == 2
    res3 = external_line_witness(3)
    assert res3.verified and res3.counts["points_on_variety"] == 4
    # frozen from the exhaustive classification: q^2 (q - 1)^2 / 2 lines miss Q+(3, q)
    assert res3.counts["external_lines"] == 18
    assert external_line_witness(4).counts["external_lines"] == 72


@pytest.mark.parametrize("q,n", [(2, 2), (2, 3), (3, 2)])
def test_curve_order_driver_all_theta(q, n):
    tw = tower_for_q(q, n)
    res = verify_curve_orders(tw, all_theta=True, up_to_conjugacy=False)
    assert res.verified
    assert res.counts["thetas"] == tw.top.order - q


def test_theta_candidates():
    tw = tower_for_q(4, 4)
    assert len(theta_candidates(tw, up_to_conjugacy=False)) == 252
    assert len(theta_candidates(tw, up_to_conjugacy=True)) == 66  # 12/2 + 240/4
    assert [tw.degree_over_base(x) for x in theta_candidates(tw, all_theta=False)] == [2, 4]


def test_degree_frame_driver():
    assert verify_degree_frames(tower_for_q(3, 3), 5, np.random.default_rng(2)).verified


def test_profiles_identical_across_thread_counts(setup44):
    xi = _xi_of_degree(setup44.tower, 4)
    a = extension_orders(setup44, xi, threads=1)
    b = extension_orders(setup44, xi, threads=4)
    assert [r.H for r in a.records] == [r.H for r in b.records] and a.orders == b.orders


@settings(max_examples=10)
@given(st.sampled_from([(2, 3), (3, 2), (3, 3), (4, 2)]), st.integers(0, 2**31))
def test_random_disjoint_subspace_profile(qn, seed):
    q, n = qn
    from reguli.projective import meet, random_subspace

    tw = tower_for_q(q, n)
    setup = standard_setup(tw)
    rng = np.random.default_rng(seed)
    while True:
        U = random_subspace(setup.K, 2 * n - 1, n - 1, rng)
        if not any(meet(U, E).rank for E in setup.R.first_family):
            break
    prof = extendability_profile(setup, U)
    assert len(prof.records) == (q**n - 1) // (q - 1)
    # every extension meets each element exactly once (dimension count)
    assert all(r.one_point_each for r in prof.records)
    for r in prof.records:
        again = regulus_section(setup, r.H)
        assert again.order == r.order
        assert la.rank(setup.K, np.array(r.points)) - 1 == r.order
