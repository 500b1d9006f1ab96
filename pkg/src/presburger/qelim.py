"""Quantifier elimination and the decision procedure.

Cooper's method, adapted to variables ranging over N: an existential is
eliminated by conjoining x >= 0, scaling every atom so x appears with
coefficient +-l (l the lcm of its coefficients), changing variable to
x' = l*x (recorded as x' = 0 mod l), and replacing E x'. phi by the finite
disjunction over lower-bound candidates b and offsets j in [0, D) of
phi[x' := b + j], D the lcm of the congruence moduli on x'.  The "minus
infinity" branch of the classic recipe is kept for completeness but always
collapses here, since x' >= 0 is itself one of the atoms.

Universals go through the negation dual.  Elimination is innermost-first,
so each step only ever sees a quantifier-free body.
"""

from __future__ import annotations

from math import lcm

from .formulas import (
    FALSE,
    TRUE,
    And,
    Cmp,
    Congruence,
    Exists,
    ForAll,
    LinearTerm,
    Not,
    Or,
    atoms_of,
    cmp_eq,
    cmp_ge,
    congruence,
    conj,
    disj,
    eval_ground,
    free_vars,
    is_quantifier_free,
    neg,
    nnf,
    simplify,
    substitute,
)


def _fresh_name(base, taken):
    name = base + "_s"
    while name in taken:
        name += "_"
    return name


def _map_atoms(f, fn):
    """Rebuild a quantifier-free, negation-free formula atom by atom."""
    if isinstance(f, (Cmp, Congruence)):
        return fn(f)
    if isinstance(f, And):
        return conj([_map_atoms(p, fn) for p in f.parts])
    if isinstance(f, Or):
        return disj([_map_atoms(p, fn) for p in f.parts])
    raise TypeError(f"expected nnf quantifier-free formula, got {f!r}")


def _replace_scaled_var(term, var, fresh):
    """Swap the monomial (+-l)*var for (+-1)*fresh; term must contain var."""
    c = term.coeff(var)
    d = dict(term.coeffs)
    del d[var]
    d[fresh] = 1 if c > 0 else -1
    return LinearTerm.of(d, term.constant)


def eliminate_exists(var, body):
    """Quantifier-free formula equivalent over N to E var. body (body QF)."""
    work = nnf(conj([body, cmp_ge(LinearTerm.var(var))]))
    var_atoms = [a for a in atoms_of(work) if a.term.coeff(var) != 0]
    if not var_atoms:
        # var is constrained only by var >= 0, which 0 satisfies
        return simplify(work)

    l = 1
    for a in var_atoms:
        l = lcm(l, abs(a.term.coeff(var)))
    fresh = _fresh_name(var, free_vars(body) | {var})

    def rescale(a):
        c = a.term.coeff(var)
        if c == 0:
            return a
        if isinstance(a, Congruence):
            k = l // c  # congruence coefficients are reduced mod m, so c > 0
            t = _replace_scaled_var(a.term.scale(k), var, fresh)
            return congruence(t, k * a.modulus, k * a.residue)
        k = l // abs(c)
        t = _replace_scaled_var(a.term.scale(k), var, fresh)
        return cmp_ge(t) if a.op == ">=" else cmp_eq(t)

    shifted = conj([_map_atoms(work, rescale),
                    congruence(LinearTerm.var(fresh), l, 0)])
    if shifted == FALSE:
        return FALSE

    modulus = 1
    candidates = []
    for a in atoms_of(shifted):
        c = a.term.coeff(fresh)
        if c == 0:
            continue
        if isinstance(a, Congruence):
            modulus = lcm(modulus, a.modulus)
            continue
        rest = LinearTerm(tuple((n, v) for n, v in a.term.coeffs if n != fresh),
                          a.term.constant)
        if a.op == "=":
            b = rest if c < 0 else -rest
        elif c > 0:
            b = -rest  # fresh >= -rest
        else:
            continue  # upper bound, no candidate
        if b not in candidates:
            candidates.append(b)

    def minus_inf(a, j):
        c = a.term.coeff(fresh)
        if c == 0:
            return a
        if isinstance(a, Congruence):
            return substitute(a, fresh, LinearTerm.const(j))
        if a.op == "=":
            return FALSE
        return FALSE if c > 0 else TRUE

    branches = []
    for j in range(modulus):
        branches.append(_map_atoms(shifted, lambda a: minus_inf(a, j)))
    for b in candidates:
        for j in range(modulus):
            branches.append(substitute(shifted, fresh, b + LinearTerm.const(j)))
    return simplify(disj(branches))


def qelim(f):
    """Eliminate every quantifier; the result is an equivalent QF formula."""
    if is_quantifier_free(f):
        return f
    if isinstance(f, And):
        return conj([qelim(p) for p in f.parts])
    if isinstance(f, Or):
        return disj([qelim(p) for p in f.parts])
    if isinstance(f, Not):
        return neg(qelim(f.inner))
    if isinstance(f, Exists):
        return eliminate_exists(f.var, qelim(f.body))
    if isinstance(f, ForAll):
        body = qelim(f.body)
        return simplify(nnf(neg(eliminate_exists(f.var, nnf(neg(body))))))
    raise TypeError(f"not a formula: {f!r}")


def decide(f):
    """Truth value of a closed formula over N."""
    fv = free_vars(f)
    if fv:
        raise ValueError(f"formula has free variables: {sorted(fv)}")
    g = qelim(f)
    assert is_quantifier_free(g)
    return eval_ground(g, {})
