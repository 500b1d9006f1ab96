"""Rational polyhedra: Fourier-Motzkin, vertices, rays, triangulation.

A Polyhedron stores inequality rows (a, b) meaning a.x >= b and equality
rows meaning a.x = b, with integer a and b.  All geometry is exact; points
come back as Fraction tuples.  Vertex and ray enumeration require a pointed
polyhedron and raise NonPointedError otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd

from .lattices import (
    clear_denominators,
    primitive,
    rat_nullspace,
    rat_rank,
    rat_solve,
    vdot,
    vneg,
)


class NonPointedError(ValueError):
    """The polyhedron contains a line, so it has no vertices."""


@dataclass(frozen=True)
class Polyhedron:
    dim: int
    ineqs: tuple  # rows (a, b): a.x >= b
    eqs: tuple    # rows (a, b): a.x = b

    @staticmethod
    def of(dim, ineqs=(), eqs=()):
        def as_int(b):
            bi = int(b)
            assert bi == b, f"non-integer bound {b}"
            return bi

        ineq_rows = []
        for a, b in ineqs:
            a = tuple(int(c) for c in a)
            assert len(a) == dim
            if a == (0,) * dim and b <= 0:
                continue  # trivially true; an unsatisfiable 0 >= b>0 row stays
            ineq_rows.append((a, as_int(b)))
        eq_rows = []
        for a, b in eqs:
            a = tuple(int(c) for c in a)
            assert len(a) == dim
            if a == (0,) * dim and b == 0:
                continue
            eq_rows.append((a, as_int(b)))
        return Polyhedron(dim, tuple(sorted(set(ineq_rows))),
                          tuple(sorted(set(eq_rows))))

    def intersect(self, other):
        assert self.dim == other.dim
        return Polyhedron.of(self.dim, self.ineqs + other.ineqs,
                             self.eqs + other.eqs)

    def contains(self, x):
        return (all(vdot(a, x) >= b for a, b in self.ineqs)
                and all(vdot(a, x) == b for a, b in self.eqs))


def nonneg_orthant(dim):
    rows = [(tuple(1 if j == i else 0 for j in range(dim)), 0)
            for i in range(dim)]
    return Polyhedron.of(dim, rows)


@dataclass(frozen=True)
class Cone:
    """Pointed simplicial-or-not cone: apex + primitive ray generators."""

    apex: tuple        # Fractions
    generators: tuple  # primitive int tuples


# ---------------------------------------------------------------------------
# Fourier-Motzkin


def _reduce_row(a, b, s):
    g = 0
    for c in a:
        g = gcd(g, c)
    if g > 1:
        a = tuple(c // g for c in a)
        b = Fraction(b, g)
    return (a, b, s)


def _eliminate_last(rows, k):
    """Eliminate variable k-1 from rows over k variables."""
    pos, negs, out = [], [], []
    seen = set()
    for a, b, s in rows:
        c = a[k - 1]
        if c > 0:
            pos.append((a, b, s))
        elif c < 0:
            negs.append((a, b, s))
        else:
            r = (a[: k - 1], b, s)
            if r not in seen:
                seen.add(r)
                out.append(r)
    for a1, b1, s1 in pos:
        for a2, b2, s2 in negs:
            al, be = a1[k - 1], -a2[k - 1]
            row = _reduce_row(
                tuple(be * a1[i] + al * a2[i] for i in range(k - 1)),
                be * b1 + al * b2, s1 or s2)
            if row not in seen:
                seen.add(row)
                out.append(row)
    return out


def _const_rows_ok(rows):
    for a, b, s in rows:
        if s:
            if b >= 0:
                return False
        elif b > 0:
            return False
    return True


def _rows_of(p, strict):
    rows = [(a, b, strict) for a, b in p.ineqs]
    for a, b in p.eqs:
        rows.append((a, b, False))
        rows.append((vneg(a), -b, False))
    return rows


def _fm_systems(rows, d):
    systems = [rows]
    for k in range(d, 0, -1):
        rows = _eliminate_last(rows, k)
        systems.append(rows)
    return systems  # systems[i] is over d-i variables


def fm_solve(rows, d):
    """A Fraction point satisfying every row, or None.

    Works by full elimination then back-substitution; strict rows are
    honoured by picking midpoints or stepping one unit off a bound.
    """
    systems = _fm_systems(rows, d)
    if not _const_rows_ok(systems[d]):
        return None
    x = []
    for k in range(1, d + 1):
        lo = hi = None
        lo_strict = hi_strict = False
        for a, b, s in systems[d - k]:
            c = a[k - 1]
            if c == 0:
                continue
            bound = Fraction(b - vdot(a[: k - 1], x), c)
            if c > 0:
                if lo is None or bound > lo:
                    lo, lo_strict = bound, s
                elif bound == lo:
                    lo_strict = lo_strict or s
            else:
                if hi is None or bound < hi:
                    hi, hi_strict = bound, s
                elif bound == hi:
                    hi_strict = hi_strict or s
        if lo is None and hi is None:
            val = Fraction(0)
        elif lo is None:
            val = hi - 1 if hi_strict else hi
        elif hi is None:
            val = lo + 1 if lo_strict else lo
        else:
            assert lo < hi or (lo == hi and not lo_strict and not hi_strict)
            val = lo if lo == hi else (lo + hi) / 2
        x.append(val)
    return tuple(x)


def is_feasible(p):
    rows = _rows_of(p, False)
    systems = _fm_systems(rows, p.dim)
    return _const_rows_ok(systems[p.dim])


def has_interior(p):
    """True when the polyhedron is full-dimensional."""
    if p.eqs:
        return False
    systems = _fm_systems(_rows_of(p, True), p.dim)
    return _const_rows_ok(systems[p.dim])


def find_point(p):
    """Some rational point of p, or None when empty."""
    return fm_solve(_rows_of(p, False), p.dim)


def implicit_equalities(p):
    """Inequality rows that hold with equality everywhere on p."""
    base = _rows_of(p, False)
    out = []
    for a, b in p.ineqs:
        systems = _fm_systems(base + [(a, b, True)], p.dim)
        if not _const_rows_ok(systems[p.dim]):
            out.append((a, b))
    return out


def find_interior_point(p):
    return fm_solve(_rows_of(p, True), p.dim)


def fm_project(p, i):
    """Project out coordinate i; the result lives in dimension dim-1."""
    d = p.dim
    perm = [j for j in range(d) if j != i] + [i]
    rows = [(tuple(a[j] for j in perm), b, s) for a, b, s in _rows_of(p, False)]
    out = _eliminate_last(rows, d)
    ineqs = []
    for a, b, s in out:
        if all(c == 0 for c in a):
            continue
        den = 1
        if isinstance(b, Fraction):
            den = b.denominator
        ineqs.append((tuple(c * den for c in a), b * den))
    return Polyhedron.of(d - 1, ineqs)


# ---------------------------------------------------------------------------
# vertices and rays


def _pointedness_rank(p):
    normals = [a for a, _ in p.ineqs] + [a for a, _ in p.eqs]
    return rat_rank(normals)


def vertices(p):
    """All vertices of a pointed, nonempty polyhedron (sorted)."""
    d = p.dim
    if _pointedness_rank(p) < d:
        raise NonPointedError(f"polyhedron in dim {d} contains a line")
    if not is_feasible(p):
        raise ValueError("empty polyhedron has no vertices")
    eq_rows = list(p.eqs)
    k = d - rat_rank([a for a, _ in eq_rows]) if eq_rows else d
    out = set()
    for sub in combinations(p.ineqs, k):
        M = [a for a, _ in eq_rows] + [a for a, _ in sub]
        rhs = [b for _, b in eq_rows] + [b for _, b in sub]
        x = rat_solve(M, rhs)
        if x is not None and p.contains(x):
            out.add(x)
    return sorted(out)


def _extreme_rays(ge_normals, eq_normals, dim):
    """Extreme rays of {y : G y >= 0, E y = 0}; the cone must be pointed."""
    if rat_rank(list(ge_normals) + list(eq_normals)) < dim:
        raise NonPointedError("cone contains a line")
    base = rat_rank(list(eq_normals)) if eq_normals else 0
    k = dim - 1 - base
    if k < 0:
        return []
    rays = []
    for sub in combinations(ge_normals, k):
        M = list(eq_normals) + list(sub)
        ns = rat_nullspace(M, dim)
        if len(ns) != 1:
            continue
        v = clear_denominators(ns[0])
        for cand in (v, vneg(v)):
            if all(vdot(g, cand) >= 0 for g in ge_normals):
                if cand not in rays:
                    rays.append(cand)
                break
    return sorted(rays)


def recession_cone(p):
    """Extreme rays of the recession cone of a pointed polyhedron."""
    return _extreme_rays([a for a, _ in p.ineqs], [a for a, _ in p.eqs], p.dim)


def tangent_cone(p, v):
    """Cone of feasible directions at a point v of p, as apex + rays."""
    assert p.contains(v)
    tight = [a for a, b in p.ineqs if vdot(a, v) == b]
    rays = _extreme_rays(tight, [a for a, _ in p.eqs], p.dim)
    return Cone(tuple(Fraction(c) for c in v), tuple(rays))


# ---------------------------------------------------------------------------
# triangulation


def triangulate(generators):
    """Split a set of cone generators into simplicial pieces.

    Placing construction: generators are sorted, an initial simplex is the
    first linearly independent subset, and each later generator is joined
    to the boundary facets it can see.  Generators interior to the hull of
    the earlier ones are absorbed; generators interior to the final cone
    but placed early subdivide it.  Pieces are sorted tuples of the given
    generators, each of full rank.
    """
    gens = sorted(set(tuple(g) for g in generators))
    if not gens:
        return []
    basis_idx = []
    basis_rows = []
    for i, g in enumerate(gens):
        if rat_rank(basis_rows + [g]) > len(basis_rows):
            basis_idx.append(i)
            basis_rows.append(g)
    r = len(basis_rows)
    # coordinates of every generator in the basis of the initial simplex
    M = [[basis_rows[j][i] for j in range(r)] for i in range(len(gens[0]))]
    coords = []
    for g in gens:
        al = rat_solve(M, g)
        assert al is not None
        coords.append(al)
    pieces = [tuple(basis_idx)]
    rest = [i for i in range(len(gens)) if i not in basis_idx]
    for idx in rest:
        counts = {}
        owner = {}
        for piece in pieces:
            for j in range(len(piece)):
                facet = piece[:j] + piece[j + 1:]
                counts[facet] = counts.get(facet, 0) + 1
                owner[facet] = piece[j]
        new_pieces = []
        for facet, cnt in sorted(counts.items()):
            if cnt != 1:
                continue
            ns = rat_nullspace([coords[i] for i in facet], r)
            assert len(ns) == 1
            n = ns[0]
            if vdot(n, coords[owner[facet]]) < 0:
                n = vneg(n)
            if vdot(n, coords[idx]) < 0:
                new_pieces.append(tuple(sorted(facet + (idx,))))
        pieces.extend(new_pieces)
    return sorted(tuple(gens[i] for i in piece) for piece in pieces)
