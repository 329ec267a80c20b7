import numpy as np
import pytest

from reguli.abb import (AbbContext, AbbError, abb_subline_image, abb_tangent_subplane, delta_prime_ok,
                        format_lines, standard_subline, standard_tangent_subplane, subline_degree)
from reguli.fields import tower_for_q
from reguli.projective import meet


@pytest.fixture(scope="module")
def abb44():
    return AbbContext(tower_for_q(4, 4))


def test_phi_is_a_bijection_onto_affine_part():
    abb = AbbContext(tower_for_q(2, 2))
    imgs = [abb.phi(X) for X in abb.affine_points()]
    assert len(set(imgs)) == len(imgs) == 16
    assert not any(abb.at_infinity(p) for p in imgs)
    assert all(abb.space.contains(np.array(p)) for p in imgs)
    with pytest.raises(AbbError):
        abb.phi((0, 1, 0))


def test_subline_through_infinity_is_an_affine_line(abb44):
    u, w = np.array([1, 0, 0]), np.array([0, 1, 0])  # meets l_inf in (0, 1, 0), a point of b
    img = abb_subline_image(abb44, u, w)
    assert img.kind == "line" and img.delta == 1 and img.verified and len(img.points) == 4


def test_conic_image(abb44):
    img = abb_subline_image(abb44, *standard_subline(abb44.tower, 2))
    assert img.verified and img.delta == 2 and img.report.order == 2
    assert len(img.points) == 5 and img.infinite_points == 0


def test_cubic_image_q5_n3():
    abb = AbbContext(tower_for_q(5, 3))
    img = abb_subline_image(abb, *standard_subline(abb.tower, 3))
    assert img.verified and img.report.order == 3 and img.infinite_points == 0


def test_tangent_subplane_q4_h2(abb44):
    surf = abb_tangent_subplane(abb44, *standard_tangent_subplane(abb44.tower, 2))
    assert surf.verified
    assert (surf.delta, surf.delta_prime) == (2, 1)
    assert len(surf.lines) == 5 and sum(len(a) for a, _ in surf.lines) == 20
    dump = format_lines(abb44, surf).splitlines()
    assert len(dump) == 5 and all(" ; " in ln for ln in dump)


def test_tangent_subplane_q3_n4_h4_records_delta_prime():
    abb = AbbContext(tower_for_q(3, 4))
    surf = abb_tangent_subplane(abb, *standard_tangent_subplane(abb.tower, 4))
    assert surf.verified and surf.delta == 3 and surf.delta_prime in (2, 3)
    # observed value under the standard choices, recorded rather than predicted
    assert surf.delta_prime == 3


@pytest.mark.parametrize("q,n", [(3, 3), (4, 3), (3, 4), (4, 4)])
def test_verdicts_do_not_depend_on_K(q, n):
    tw = tower_for_q(q, n)
    for seed in (None, 1, 2, 3):
        abb = AbbContext(tw, seed)
        for h in [d for d in range(1, n + 1) if n % d == 0]:
            img = abb_subline_image(abb, *standard_subline(tw, h))
            assert img.verified and img.delta == min(q, h)
            if h >= 2:
                surf = abb_tangent_subplane(abb, *standard_tangent_subplane(tw, h))
                assert surf.verified and delta_prime_ok(q, h, surf.delta_prime)


def test_k_seed_changes_K_but_keeps_it_through_F_inf():
    tw = tower_for_q(3, 3)
    a, b = AbbContext(tw), AbbContext(tw, 5)
    assert a.space != b.space
    assert meet(a.space, b.space) == a.F_inf


def test_preconditions():
    tw = tower_for_q(3, 2)
    abb = AbbContext(tw)
    with pytest.raises(AbbError):
        abb_subline_image(abb, np.array([0, 1, 0]), np.array([0, 0, 1]))
    with pytest.raises(AbbError):
        standard_tangent_subplane(tw, 1)
    u, w = standard_subline(tw, 2)
    with pytest.raises(AbbError):  # not tangent: t off l_inf
        abb_tangent_subplane(abb, u, np.array([1, 1, 0]), w)
    assert subline_degree(tw, u, w) == 2
