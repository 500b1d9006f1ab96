"""Polyhedron geometry: feasibility certificates, vertices, rays, pieces."""

import random
from fractions import Fraction

import pytest

from presburger.polyhedra import (
    Cone,
    NonPointedError,
    Polyhedron,
    find_interior_point,
    find_point,
    fm_project,
    has_interior,
    is_feasible,
    nonneg_orthant,
    recession_cone,
    tangent_cone,
    triangulate,
    vertices,
)


def square():
    return Polyhedron.of(2, [((1, 0), 0), ((0, 1), 0),
                             ((-1, 0), -1), ((0, -1), -1)])


def test_feasibility_known():
    assert is_feasible(square())
    empty = Polyhedron.of(1, [((1,), 2), ((-1,), -1)])  # x >= 2 and x <= 1
    assert not is_feasible(empty)
    thin = Polyhedron.of(1, [((5,), 2), ((-5,), -3)])   # 2/5 <= x <= 3/5
    assert is_feasible(thin)
    assert find_point(thin) is not None
    point = Polyhedron.of(2, eqs=[((1, 1), 3), ((1, -1), 1)])
    assert is_feasible(point)
    assert find_point(point) == (2, 1)


def test_interior():
    assert has_interior(square())
    assert not has_interior(Polyhedron.of(2, eqs=[((1, -1), 0)]))
    segment = Polyhedron.of(1, [((1,), 0), ((-1,), 0)])  # the point x = 0
    assert is_feasible(segment) and not has_interior(segment)
    ip = find_interior_point(square())
    assert all(0 < c < 1 for c in ip)


def test_feasibility_random_certified():
    # feasible verdicts must come with a satisfying point; infeasible
    # verdicts are cross-checked on a rational grid
    rng = random.Random(31337)
    grid = [Fraction(n, 2) for n in range(-8, 9)]
    for _ in range(120):
        d = rng.randint(1, 3)
        rows = []
        for _ in range(rng.randint(1, 5)):
            a = tuple(rng.randint(-3, 3) for _ in range(d))
            rows.append((a, rng.randint(-4, 4)))
        p = Polyhedron.of(d, rows)
        pt = find_point(p)
        if is_feasible(p):
            assert pt is not None and p.contains(pt)
        else:
            assert pt is None
            if d <= 2:
                import itertools

                for x in itertools.product(grid, repeat=d):
                    assert not p.contains(x)


def test_vertices_square_and_triangle():
    assert vertices(square()) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    tri = Polyhedron.of(2, [((1, 0), 0), ((0, 1), 0), ((-1, -1), -3)])
    assert vertices(tri) == [(0, 0), (0, 3), (3, 0)]


def test_vertices_with_equality():
    p = Polyhedron.of(2, [((1, 0), 0), ((-1, 0), -2)], eqs=[((1, 1), 2)])
    assert vertices(p) == [(0, 2), (2, 0)]


def test_vertices_unbounded_pointed():
    p = Polyhedron.of(2, [((1, 0), 1), ((0, 1), 0), ((1, -1), 0)])
    # x >= 1, 0 <= y <= x: the bounded edge x = 1 contributes both ends
    assert vertices(p) == [(1, 0), (1, 1)]
    assert recession_cone(p) == [(1, 0), (1, 1)]


def test_vertices_nonpointed_raises():
    with pytest.raises(NonPointedError):
        vertices(Polyhedron.of(2, [((1, 0), 0)]))
    with pytest.raises(ValueError):
        vertices(Polyhedron.of(1, [((1,), 2), ((-1,), -1)]))


def test_recession_cone():
    tri = Polyhedron.of(2, [((1, 0), 0), ((0, 1), 0), ((-1, -1), -3)])
    assert recession_cone(tri) == []
    wedge = Polyhedron.of(2, [((1, 0), 0), ((-1, 1), 0)])  # 0 <= x <= y
    assert recession_cone(wedge) == [(0, 1), (1, 1)]
    assert recession_cone(nonneg_orthant(3)) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]


def test_tangent_cone():
    sq = square()
    c0 = tangent_cone(sq, (0, 0))
    assert c0 == Cone((Fraction(0), Fraction(0)), ((0, 1), (1, 0)))
    c1 = tangent_cone(sq, (1, 1))
    assert set(c1.generators) == {(-1, 0), (0, -1)}
    # at a non-vertex boundary point the cone is not pointed
    with pytest.raises(NonPointedError):
        tangent_cone(sq, (Fraction(1, 2), 0))


def test_triangulate_collinear_fan():
    pieces = triangulate([(1, 0), (1, 1), (1, 2)])
    assert pieces == [((1, 0), (1, 1)), ((1, 1), (1, 2))]


def test_triangulate_simplicial_unchanged():
    assert triangulate([(1, 0), (0, 1)]) == [((0, 1), (1, 0))]
    assert triangulate([(2, 1), (1, 3)]) == [((1, 3), (2, 1))]
    assert triangulate([(1, 0, 0), (0, 1, 0), (0, 0, 1)]) == \
        [((0, 0, 1), (0, 1, 0), (1, 0, 0))]


def test_triangulate_square_cone():
    rays = [(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1)]
    pieces = triangulate(rays)
    assert len(pieces) == 2
    assert all(len(p) == 3 for p in pieces)
    covered = set()
    for p in pieces:
        covered |= set(p)
    assert covered == set(rays)


def test_triangulate_interior_generator_subdivides():
    # (1, 1) lies inside the cone of (1, 0) and (1, 2) yet splits the fan,
    # because it is placed before (1, 2)
    pieces = triangulate([(1, 2), (1, 0), (1, 1)])
    assert pieces == [((1, 0), (1, 1)), ((1, 1), (1, 2))]


def test_fm_project():
    shadow = fm_project(square(), 1)
    assert is_feasible(shadow)
    assert shadow.contains((Fraction(1, 2),))
    assert not shadow.contains((Fraction(3, 2),))
    # projecting a diagonal segment x = y, 0 <= x <= 1
    seg = Polyhedron.of(2, [((1, 0), 0), ((-1, 0), -1)], eqs=[((1, -1), 0)])
    sh = fm_project(seg, 0)
    assert sh.contains((1,)) and sh.contains((0,)) and not sh.contains((2,))


def test_intersect_and_contains():
    p = square().intersect(Polyhedron.of(2, [((1, 1), 1)]))
    assert p.contains((1, 0)) and not p.contains((0, 0))
    assert vertices(p) == [(0, 1), (1, 0), (1, 1)]
