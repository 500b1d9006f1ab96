"""Exact integer and rational linear algebra, Hermite normal form,
full-rank lattices and lattice cosets.

Vectors are tuples of ints (or Fractions where noted), matrices are tuples
of rows.  Nothing in this module ever touches floating point.  Lattice
bases are kept in a canonical column-style Hermite normal form, so lattice
and coset equality is plain structural equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd


# ---------------------------------------------------------------------------
# tuple vectors


def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vneg(u):
    return tuple(-a for a in u)


def vscale(k, u):
    return tuple(k * a for a in u)


def vdot(u, v):
    assert len(u) == len(v)
    return sum(a * b for a, b in zip(u, v))


def zero_vec(d):
    return (0,) * d


def is_zero_vec(u):
    return all(a == 0 for a in u)


def primitive(v):
    """Divide a nonzero integer vector by the gcd of its entries."""
    g = 0
    for a in v:
        g = gcd(g, a)
    assert g > 0, "zero vector has no primitive form"
    return tuple(a // g for a in v)


def lex_positive(v):
    """True if the first nonzero entry of v is positive."""
    for a in v:
        if a != 0:
            return a > 0
    return False


# ---------------------------------------------------------------------------
# tuple matrices (tuples of rows)


def mat_vec(M, v):
    return tuple(vdot(row, v) for row in M)


def mat_mul(A, B):
    bt = tuple(zip(*B))
    return tuple(tuple(vdot(row, col) for col in bt) for row in A)


def transpose(M):
    return tuple(zip(*M))


def identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def columns(M):
    return [list(col) for col in zip(*M)] if M else []


def from_columns(cols, m):
    return tuple(tuple(col[i] for col in cols) for i in range(m))


# ---------------------------------------------------------------------------
# rational Gaussian elimination helpers


def _frac_rows(M):
    return [[Fraction(a) for a in row] for row in M]


def rat_rank(M):
    if not M:
        return 0
    rows = _frac_rows(M)
    n = len(rows[0])
    rank = 0
    for c in range(n):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = 1 / rows[rank][c]
        rows[rank] = [a * inv for a in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][c] != 0:
                f = rows[r][c]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def rat_solve(M, rhs):
    """Solve M x = rhs over exactly (M need not be square).

    Returns one solution as a Fraction tuple when the system is consistent
    and has a unique solution, otherwise None.
    """
    if not M:
        return None
    n = len(M[0])
    rows = [[Fraction(a) for a in row] + [Fraction(b)] for row, b in zip(M, rhs)]
    piv_cols = []
    rank = 0
    for c in range(n):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = 1 / rows[rank][c]
        rows[rank] = [a * inv for a in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][c] != 0:
                f = rows[r][c]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        piv_cols.append(c)
        rank += 1
    for r in range(rank, len(rows)):
        if rows[r][n] != 0:
            return None  # inconsistent
    if rank < n:
        return None  # underdetermined
    x = [Fraction(0)] * n
    for r, c in enumerate(piv_cols):
        x[c] = rows[r][n]
    return tuple(x)


def rat_nullspace(M, n=None):
    """Basis of the rational kernel of M (rows of length n)."""
    if n is None:
        n = len(M[0]) if M else 0
    rows = _frac_rows(M) if M else []
    piv_cols = []
    rank = 0
    for c in range(n):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = 1 / rows[rank][c]
        rows[rank] = [a * inv for a in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][c] != 0:
                f = rows[r][c]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        piv_cols.append(c)
        rank += 1
    free_cols = [c for c in range(n) if c not in piv_cols]
    basis = []
    for fc in free_cols:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for r, pc in enumerate(piv_cols):
            v[pc] = -rows[r][fc]
        basis.append(tuple(v))
    return basis


def rat_inv(M):
    n = len(M)
    rows = [[Fraction(a) for a in row] + [Fraction(1 if i == j else 0) for j in range(n)]
            for i, row in enumerate(M)]
    for c in range(n):
        piv = next((r for r in range(c, n) if rows[r][c] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        rows[c], rows[piv] = rows[piv], rows[c]
        inv = 1 / rows[c][c]
        rows[c] = [a * inv for a in rows[c]]
        for r in range(n):
            if r != c and rows[r][c] != 0:
                f = rows[r][c]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[c])]
    return tuple(tuple(row[n:]) for row in rows)


def rat_det(M):
    n = len(M)
    rows = _frac_rows(M)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if rows[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            det = -det
        det *= rows[c][c]
        inv = 1 / rows[c][c]
        for r in range(c + 1, n):
            if rows[r][c] != 0:
                f = rows[r][c] * inv
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[c])]
    return det


def clear_denominators(v):
    """Scale a Fraction vector to a primitive integer vector (same direction)."""
    den = 1
    for a in v:
        den = den * a.denominator // gcd(den, a.denominator)
    w = tuple(int(a * den) for a in v)
    return primitive(w)


# ---------------------------------------------------------------------------
# Hermite normal form (column style)


def _hnf_core(M):
    m = len(M)
    n = len(M[0]) if m else 0
    cols = columns(M)
    uc = [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    pivots = []
    pc = 0
    for r in range(m):
        if pc >= n:
            break
        while True:
            nz = [j for j in range(pc, n) if cols[j][r] != 0]
            if len(nz) <= 1:
                break
            j0 = min(nz, key=lambda j: abs(cols[j][r]))
            for j in nz:
                if j == j0:
                    continue
                q = cols[j][r] // cols[j0][r]
                if q:
                    cols[j] = [a - q * b for a, b in zip(cols[j], cols[j0])]
                    uc[j] = [a - q * b for a, b in zip(uc[j], uc[j0])]
        if not nz:
            continue
        j = nz[0]
        if j != pc:
            cols[pc], cols[j] = cols[j], cols[pc]
            uc[pc], uc[j] = uc[j], uc[pc]
        if cols[pc][r] < 0:
            cols[pc] = [-a for a in cols[pc]]
            uc[pc] = [-a for a in uc[pc]]
        p = cols[pc][r]
        for j in range(pc):
            q = cols[j][r] // p
            if q:
                cols[j] = [a - q * b for a, b in zip(cols[j], cols[pc])]
                uc[j] = [a - q * b for a, b in zip(uc[j], uc[pc])]
        pivots.append((r, pc))
        pc += 1
    H = from_columns(cols, m) if n else tuple(() for _ in range(m))
    U = from_columns(uc, n) if n else ()
    return H, U, pivots


def hnf(M):
    """Column-style Hermite normal form of an integer matrix.

    Returns (H, U) with H = M * U and U unimodular.  Pivots of H walk down
    and to the right, each pivot is positive, and in a pivot's row every
    entry to its left lies in [0, pivot).  Columns past the last pivot are
    zero.
    """
    H, U, _ = _hnf_core(M)
    return H, U


def hnf_kernel(M):
    """Integer kernel basis of M: columns u of unimodular U with M u = 0."""
    m = len(M)
    n = len(M[0]) if m else 0
    _, U, pivots = _hnf_core(M)
    rank = len(pivots)
    ut = columns(U) if n else []
    return [tuple(ut[j]) for j in range(rank, n)]


def solve_int(M, rhs):
    """One integer solution x of M x = rhs, or None if none exists."""
    m = len(M)
    n = len(M[0]) if m else 0
    H, U, pivots = _hnf_core(M)
    z = [0] * n
    for r, c in pivots:
        s = rhs[r] - sum(H[r][j] * z[j] for j in range(n) if z[j])
        if s % H[r][c] != 0:
            return None
        z[c] = s // H[r][c]
    if mat_vec(H, tuple(z)) != tuple(rhs):
        return None
    return mat_vec(U, tuple(z))


# ---------------------------------------------------------------------------
# lattices and cosets


@dataclass(frozen=True)
class Lattice:
    """Full-rank sublattice of Z^dim with a canonical HNF basis.

    basis[j] is the j-th basis vector; as the columns of a matrix they are
    in column-style Hermite normal form (so basis[j][i] == 0 for i < j and
    0 <= basis[j][i] < basis[i][i] for i > j).
    """

    dim: int
    basis: tuple

    def __post_init__(self):
        assert len(self.basis) == self.dim
        for j, b in enumerate(self.basis):
            assert len(b) == self.dim
            assert b[j] > 0, "basis not in HNF"

    @staticmethod
    def standard(dim):
        return Lattice(dim, tuple(tuple(1 if i == j else 0 for i in range(dim))
                                  for j in range(dim)))

    @staticmethod
    def from_generators(dim, gens):
        """Canonical lattice spanned by the given integer vectors.

        Raises ValueError unless the span has full rank dim.
        """
        gens = [tuple(g) for g in gens]
        if dim == 0:
            return Lattice(0, ())
        M = tuple(tuple(g[i] for g in gens) for i in range(dim))
        H, _U, pivots = _hnf_core(M)
        if len(pivots) != dim:
            raise ValueError("generators do not span a full-rank lattice")
        cols = columns(H)
        return Lattice(dim, tuple(tuple(cols[j]) for j in range(dim)))

    def basis_matrix(self):
        """Basis vectors as matrix columns (dim x dim, lower triangular)."""
        return tuple(tuple(self.basis[j][i] for j in range(self.dim))
                     for i in range(self.dim))

    def index(self):
        """Index [Z^dim : L], the determinant of the basis."""
        out = 1
        for j in range(self.dim):
            out *= self.basis[j][j]
        return out

    def contains(self, v):
        v = list(v)
        for j in range(self.dim):
            if v[j] % self.basis[j][j] != 0:
                return False
            q = v[j] // self.basis[j][j]
            if q:
                for i in range(j, self.dim):
                    v[i] -= q * self.basis[j][i]
        return all(a == 0 for a in v)

    def reduce(self, v):
        """Canonical coset representative of v modulo the lattice.

        Successive division against the HNF diagonal, so every coordinate
        of the result lies in [0, basis[j][j]).
        """
        v = list(v)
        for j in range(self.dim):
            q = v[j] // self.basis[j][j]
            if q:
                for i in range(j, self.dim):
                    v[i] -= q * self.basis[j][i]
        return tuple(v)

    def coset_representatives(self):
        """All canonical representatives of Z^dim modulo the lattice."""
        ranges = [range(self.basis[j][j]) for j in range(self.dim)]
        return [tuple(t) for t in product(*ranges)]


@dataclass(frozen=True)
class LatticeCoset:
    """Coset rep + L of a full-rank lattice; rep is stored reduced."""

    lattice: Lattice
    rep: tuple

    def __post_init__(self):
        object.__setattr__(self, "rep", self.lattice.reduce(self.rep))

    @property
    def dim(self):
        return self.lattice.dim

    def contains(self, v):
        return self.lattice.contains(vsub(tuple(v), self.rep))


def full_coset(dim):
    return LatticeCoset(Lattice.standard(dim), zero_vec(dim))


def lattice_intersect(l1, l2):
    """Intersection of two full-rank lattices in the same dimension."""
    d = l1.dim
    assert l2.dim == d
    if d == 0:
        return l1
    b1 = l1.basis
    b2 = l2.basis
    M = tuple(tuple([b1[j][i] for j in range(d)] + [-b2[j][i] for j in range(d)])
              for i in range(d))
    gens = []
    for u in hnf_kernel(M):
        w = zero_vec(d)
        for j in range(d):
            w = vadd(w, vscale(u[j], b1[j]))
        gens.append(w)
    return Lattice.from_generators(d, gens)


def coset_intersect(c1, c2):
    """Intersection of two cosets: a canonical coset, or None when disjoint."""
    d = c1.dim
    assert c2.dim == d
    if d == 0:
        return c1
    b1 = c1.lattice.basis
    b2 = c2.lattice.basis
    M = tuple(tuple([b1[j][i] for j in range(d)] + [-b2[j][i] for j in range(d)])
              for i in range(d))
    rhs = vsub(c2.rep, c1.rep)
    y = solve_int(M, rhs)
    if y is None:
        return None
    point = c1.rep
    for j in range(d):
        point = vadd(point, vscale(y[j], b1[j]))
    return LatticeCoset(lattice_intersect(c1.lattice, c2.lattice), point)


def congruence_coset(coeffs, residue, modulus, dim):
    """Solution coset of a single congruence  coeffs . x = residue (mod modulus).

    Returns a LatticeCoset, or None when the congruence has no solution.
    """
    assert modulus >= 1
    row = tuple(coeffs) + (modulus,)
    g = 0
    for a in row:
        g = gcd(g, a)
    if residue % g != 0:
        return None
    # Bezout coefficients for g = sum c_i a_i + c_m m, built incrementally.
    cs = _bezout(row)
    x0 = tuple((residue // g) * c for c in cs[:dim])
    gens = [tuple(u[:dim]) for u in hnf_kernel((row,))]
    return LatticeCoset(Lattice.from_generators(dim, gens), x0)


def _bezout(nums):
    """Coefficients c with sum(c_i * nums_i) = gcd(nums)."""
    coeffs = []
    g = 0
    for a in nums:
        if g == 0:
            s = 1 if a >= 0 else -1
            coeffs = [0] * len(coeffs) + [s] if a != 0 else coeffs + [0]
            g = abs(a)
            continue
        x, y, g2 = _xgcd(g, a)
        coeffs = [c * x for c in coeffs] + [y]
        g = g2
    if g == 0:
        return [0] * len(nums)
    return coeffs + [0] * (len(nums) - len(coeffs))


def _xgcd(a, b):
    """(x, y, g) with a*x + b*y = g = gcd(a, b), g >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_s, old_t, old_r


def solve_congruences(atoms, dim):
    """Common solution coset of congruences (coeffs, residue, modulus).

    Returns a LatticeCoset, or None when the system is unsatisfiable.
    """
    acc = full_coset(dim)
    for coeffs, residue, modulus in atoms:
        c = congruence_coset(coeffs, residue, modulus, dim)
        if c is None:
            return None
        acc = coset_intersect(acc, c)
        if acc is None:
            return None
    return acc


def congruences_of_coset(coset):
    """Congruence atoms (coeffs, residue, modulus) describing the coset.

    v lies in the coset iff it satisfies every returned atom.  Moduli of 1
    never occur (those conditions are trivially true and dropped).
    """
    d = coset.dim
    if d == 0:
        return []
    Binv = rat_inv(coset.lattice.basis_matrix())
    out = []
    for row in Binv:
        den = 1
        for a in row:
            den = den * a.denominator // gcd(den, a.denominator)
        if den == 1:
            continue
        coeffs = tuple(int(a * den) for a in row)
        residue = vdot(coeffs, coset.rep) % den
        # reduce the atom by the common gcd
        g = den
        for a in coeffs:
            g = gcd(g, a)
        g = gcd(g, residue)
        if g > 1:
            coeffs = tuple(a // g for a in coeffs)
            residue //= g
            den //= g
        coeffs = tuple(a % den for a in coeffs)
        out.append((coeffs, residue % den, den))
    return out
