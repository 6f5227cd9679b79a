from fractions import Fraction

import pytest

from torsiongrowth import surfaces
from torsiongrowth.chambers import CoorientedWall, coorient, wall_of
from torsiongrowth.surfaces import SurfaceComplex, SurfaceError, orientable, sphere, surface_complex, surface_h1

# reflection group of the right-angled pentagon: 1 - 5/2 + 5 * 1/4
PENTAGON_ORBIFOLD_EULER = Fraction(1) - Fraction(5, 2) + Fraction(5, 4)


def span_size(vectors):
    span = {0}
    for v in vectors:
        span |= {x ^ v for x in span}
    return len(span)


def effective_index(cx, f):
    # the stabiliser of the plane acts through the pentagon group; its own
    # reflection acts trivially, so divide out the order-2 subgroup it spans
    star = cx.polytope.closed_star(f)
    return span_size([cx.colors[g] for g in star]) // 2


def test_orbifold_constant():
    assert PENTAGON_ORBIFOLD_EULER == Fraction(-1, 4)


@pytest.mark.parametrize("f, index, counts, euler", [(0, 8, (8, 20, 10), -2), (11, 4, (4, 10, 5), -1)])
def test_s_and_s_prime_counts(complex_, f, index, counts, euler):
    w = wall_of(complex_, 0, f)
    assert effective_index(complex_, f) == index
    assert index * PENTAGON_ORBIFOLD_EULER == euler
    s = surface_complex(complex_, w)
    assert s.counts == counts
    assert s.euler_characteristic() == euler


def test_s_is_genus_two(complex_, s_wall):
    s = surface_complex(complex_, s_wall)
    assert orientable(s)
    h = surface_h1(s)
    assert (h.betti, h.invariant_factors) == (4, ())


def test_s_prime_is_nonorientable_with_two_torsion(complex_, s_prime_wall):
    s = surface_complex(complex_, s_prime_wall)
    assert not orientable(s)
    h = surface_h1(s)
    assert (h.betti, h.invariant_factors) == (2, (2,))


def test_sphere():
    s = sphere()
    assert s.euler_characteristic() == 2
    assert orientable(s)
    h = surface_h1(s)
    assert (h.betti, h.invariant_factors) == (0, ())


def test_projective_plane():
    # a single 2-gon with its edges identified as aa
    rp2 = SurfaceComplex(1, ((0, 0),), (((0, 1), (0, 1)),))
    assert not orientable(rp2)
    h = surface_h1(rp2)
    assert (h.betti, h.invariant_factors) == (0, (2,))


def test_torus():
    # square with aba^-1b^-1
    torus = SurfaceComplex(1, ((0, 0), (0, 0)), (((0, 1), (1, 1), (0, -1), (1, -1)),))
    assert orientable(torus)
    assert surface_h1(torus).betti == 2


def test_edge_used_once_rejected():
    with pytest.raises(SurfaceError):
        SurfaceComplex(2, ((0, 1),), (((0, 1),),))


def test_classification_on_every_wall(complex_):
    for w in complex_.walls():
        s = surface_complex(complex_, w)
        chi = s.euler_characteristic()
        h = surface_h1(s)
        index = effective_index(complex_, min(w.facets))
        # surface covers of the pentagon orbifold
        assert chi == index * PENTAGON_ORBIFOLD_EULER
        if orientable(s):
            assert h.invariant_factors == ()
            assert h.betti == 2 - chi
            assert chi % 2 == 0
        else:
            assert h.invariant_factors == (2,)
            assert h.betti == 1 - chi


def test_odd_euler_forces_nonorientable(complex_):
    odd = [w for w in complex_.walls() if surface_complex(complex_, w).euler_characteristic() % 2]
    assert odd
    assert not any(orientable(surface_complex(complex_, w)) for w in odd)


def test_orientability_matches_two_sidedness(complex_):
    # the manifold is orientable, so a wall is one-sided iff its surface is not orientable
    for w in complex_.walls():
        s = surface_complex(complex_, w)
        assert orientable(s) == isinstance(coorient(w), CoorientedWall)


def test_boundary_squares_to_zero(complex_, s_prime_wall):
    s = surface_complex(complex_, s_prime_wall)
    product = s.boundary_2() @ s.boundary_1()
    assert product.nnz == 0


def test_orientation_classes_witness(complex_, s_wall):
    uf = surfaces.orientation_classes(surface_complex(complex_, s_wall))
    assert uf is not None
    assert len(uf.classes()) == 1
