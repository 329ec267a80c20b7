import numpy as np
import pytest

from reguli.clubs import (Club, ClubError, check_lines_property, club_invariant_report, detect_pg1q2_club,
                          distinguishable_degrees, make_club, orbit_distinguisher, project, random_top_matrix)
from reguli.fields import tower_for_q
from reguli.projective import Subspace, meet


@pytest.fixture(scope="module")
def club43():
    return make_club(tower_for_q(4, 3), 3)


@pytest.mark.parametrize("q,n,h", [(2, 2, 2), (3, 2, 2), (3, 3, 3), (4, 2, 2), (4, 3, 3), (3, 4, 2), (3, 4, 4)])
def test_club_shape(q, n, h):
    club = make_club(tower_for_q(q, n), h)
    assert len(club.points) == q * q + 1
    ws = sorted(club.weights.values())
    assert ws.count(2) == 1 and ws.count(1) == q * q
    assert club.weight_identity()
    assert (q + 1) + q * q == (q**3 - 1) // (q - 1)
    assert club.ctx.spread_trace(club.V) == club.weights


def test_families(club43):
    q = club43.q
    assert len(club43.F1) == q * q and club43.check_F1()
    assert club43.check_F2_planes()
    assert all(meet(P, club43.F_head).dim == 1 for P in club43.F2)
    assert club43.plane_counts() == {q + 1: club43.F_head.num_points()}


def test_lines_property_q4_n3(club43):
    res = check_lines_property(club43)
    assert res["verified"] and res["outside_families"] == 0
    # frozen from the exhaustive scan
    assert res["lines"] == 777 and res["lines_with_subline_trace"] == 420


@pytest.mark.parametrize("q,n,h,s", [(4, 2, 2, 1), (4, 3, 3, 2), (5, 2, 2, 1), (5, 3, 3, 2)])
def test_invariant_below_q(q, n, h, s):
    rep = club_invariant_report(tower_for_q(q, n), h, 10, np.random.default_rng(0), projectivity_trials=5)
    assert rep.verified and set(rep.values) == {s}
    assert len(rep.values) == min(10, (q**n - 1) // (q - 1))  # F(head) may have fewer points


def test_invariant_at_or_above_q():
    rep = club_invariant_report(tower_for_q(3, 4), 4, 10, np.random.default_rng(0))
    assert rep.verified and rep.s in (2, 3)
    assert rep.s == 3  # observed under the standard construction


def test_invariant_ignores_which_plane_is_dropped(club43):
    for X in club43.head_points()[:5]:
        assert club43.invariant_all_exclusions(X) == {2}


def test_invariant_survives_projectivities(club43):
    rng = np.random.default_rng(9)
    X = club43.head_points()[0]
    s = club43.invariant_at(X)
    for _ in range(3):
        img = project(club43, random_top_matrix(club43.ctx.tower, rng))
        assert len(img.points) == 17 and img.invariant_at(img.head_points()[3]) == s


def test_orbit_distinguisher_small():
    d = orbit_distinguisher(tower_for_q(3, 4), 5, np.random.default_rng(1))
    assert d["I"] == [2] and d["verdict"] == "nothing to separate"
    with pytest.raises(ClubError, match="no distinguishable pairs"):
        orbit_distinguisher(tower_for_q(2, 4), 5, np.random.default_rng(1))
    assert distinguishable_degrees(4, 6) == [2, 3] and distinguishable_degrees(5, 12) == [2, 3, 4]


def test_pg1q2_detection():
    assert detect_pg1q2_club(make_club(tower_for_q(3, 3), 3)) is False
    assert detect_pg1q2_club(make_club(tower_for_q(3, 2), 2)) is True
    assert detect_pg1q2_club(make_club(tower_for_q(3, 4), 2)) is True
    assert detect_pg1q2_club(make_club(tower_for_q(2, 4), 4)) is False


def test_club_errors():
    tw = tower_for_q(3, 4)
    with pytest.raises(ValueError):
        make_club(tw, 3)
    with pytest.raises(ValueError):
        make_club(tw, 1)
    club = make_club(tw, 2)
    with pytest.raises(ClubError):
        Club(club.ctx, Subspace(club.K, club.V.basis[:2], club.ctx.ambient_dim))
