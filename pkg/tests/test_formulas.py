"""Formula layer: parsing, printing, evaluation, nnf, simplify."""

import itertools
import random

import pytest

from presburger.formulas import (
    FALSE,
    TRUE,
    And,
    Cmp,
    Congruence,
    Exists,
    ForAll,
    FormulaSyntaxError,
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
    eval_partial,
    format_formula,
    free_vars,
    is_quantifier_free,
    neg,
    nnf,
    parse,
    simplify,
    substitute,
)


def box_envs(names, hi):
    for point in itertools.product(range(hi + 1), repeat=len(names)):
        yield dict(zip(names, point))


def t(coeffs, const=0):
    return LinearTerm(tuple(sorted(coeffs.items())), const)


# ---------------------------------------------------------------------------
# parsing


def test_parse_atoms():
    assert parse("x + 2*y >= 5") == Cmp(t({"x": 1, "y": 2}, -5), ">=")
    assert parse("x = y") == Cmp(t({"x": 1, "y": -1}), "=")
    assert parse("p = 2*b + 1") == Cmp(t({"b": 2, "p": -1}, 1), "=")
    assert parse("x % 3 = 1") == Congruence(t({"x": 1}), 3, 1)
    assert parse("0 = 0") == TRUE
    assert parse("0 = 1") == FALSE


def test_parse_strict_ops_tightened():
    assert parse("x < 5") == parse("x <= 4")
    assert parse("x > 3") == parse("x >= 4")
    assert parse("2*x < y") == parse("2*x + 1 <= y")


def test_parse_gcd_tightening():
    # 2x + 4y >= 3 has no even value below 4
    assert parse("2*x + 4*y >= 3") == Cmp(t({"x": 1, "y": 2}, -2), ">=")
    assert parse("2*x = 3") == FALSE
    assert parse("3*x = 6") == Cmp(t({"x": 1}, -2), "=")


def test_parse_congruence_whole_term():
    # % applies to the full additive term on its left
    assert parse("x + y % 2 = 1") == Congruence(t({"x": 1, "y": 1}), 2, 1)
    assert parse("x - y % 2 = 0") == Congruence(t({"x": 1, "y": 1}), 2, 0)
    assert parse("3*x % 6 = 3") == Congruence(t({"x": 1}), 2, 1)
    assert parse("2*x % 4 = 1") == FALSE
    assert parse("x + 5 % 3 = 0") == Congruence(t({"x": 1}), 3, 1)


def test_parse_precedence():
    a, b, c = parse("x >= 1"), parse("y >= 1"), parse("z >= 1")
    assert parse("x >= 1 | y >= 1 & z >= 1") == Or((a, And((b, c))))
    assert parse("(x >= 1 | y >= 1) & z >= 1") == And((Or((a, b)), c))
    assert parse("!x >= 1 & y >= 1") == And((Not(a), b))
    assert parse("!(x >= 1 & y >= 1)") == Not(And((a, b)))


def test_parse_quantifier_body_extends_right():
    f = parse("E x. x >= 1 | y >= 2")
    assert isinstance(f, Exists) and isinstance(f.body, Or)
    g = parse("A u. E v. v >= u & u >= 0")
    assert isinstance(g, ForAll) and isinstance(g.body, Exists)
    assert isinstance(g.body.body, And)


def test_parse_unary_minus():
    assert parse("-x + 3 >= 0") == Cmp(t({"x": -1}, 3), ">=")
    assert parse("x >= -2") == Cmp(t({"x": 1}, 2), ">=")


def test_parse_errors_report_position():
    for text in ["x >=", "x + ", "(x >= 1", "x >= 1)", "x ? 1",
                 "E x x >= 0", "E 3. x >= 0", "x % 0 = 1",
                 "E E. x >= 0", "E x. E x. x >= 0", "x >= 1 &", "% 2 = 1"]:
        with pytest.raises(FormulaSyntaxError) as err:
            parse(text)
        assert isinstance(err.value.pos, int)


def test_roundtrip_fixed():
    for text in [
        "x + 2*y >= 5",
        "2*b + 1 = p",
        "x % 3 = 1",
        "x + 3 >= 2*y & x % 2 = 0",
        "E b. 2*b + 1 = p",
        "A x. E y. 2*y >= x",
        "x >= 1 | y >= 1 & z % 4 = 2",
        "!(x >= 1 | y >= 2)",
        "0 = 0",
        "0 = 1",
    ]:
        f = parse(text)
        assert format_formula(f) == text
        assert parse(format_formula(f)) == f


def _random_term(rng, names):
    coeffs = {n: rng.randint(-3, 3) for n in rng.sample(names, rng.randint(1, len(names)))}
    return LinearTerm.of(coeffs, rng.randint(-6, 6))


def _random_atom(rng, names):
    kind = rng.randrange(3)
    term = _random_term(rng, names)
    if kind == 0:
        return cmp_ge(term)
    if kind == 1:
        return cmp_eq(term)
    m = rng.randint(2, 4)
    return congruence(term, m, rng.randrange(m))


def _random_qf(rng, names, depth):
    if depth == 0 or rng.random() < 0.4:
        return _random_atom(rng, names)
    kind = rng.randrange(3)
    if kind == 0:
        return conj([_random_qf(rng, names, depth - 1) for _ in range(rng.randint(2, 3))])
    if kind == 1:
        return disj([_random_qf(rng, names, depth - 1) for _ in range(rng.randint(2, 3))])
    return neg(_random_qf(rng, names, depth - 1))


def test_roundtrip_random():
    rng = random.Random(20240811)
    names = ["x", "y", "z"]
    for _ in range(200):
        f = _random_qf(rng, names, 3)
        text = format_formula(f)
        assert parse(text) == f, text


def test_roundtrip_random_quantified():
    rng = random.Random(7)
    for _ in range(60):
        body = _random_qf(rng, ["x", "y", "q"], 2)
        f = Exists("q", body) if rng.random() < 0.5 else ForAll("q", body)
        if rng.random() < 0.5:
            f = conj([f, _random_atom(rng, ["x", "y"])])
        assert parse(format_formula(f)) == f


# ---------------------------------------------------------------------------
# structure


def test_free_and_bound():
    f = parse("E b. 2*b + 1 = p")
    assert free_vars(f) == {"p"}
    assert not is_quantifier_free(f)
    assert is_quantifier_free(parse("x >= 1 & y % 2 = 0"))
    assert free_vars(parse("x >= 1 & y % 2 = 0")) == {"x", "y"}


def test_atoms_of():
    f = parse("x >= 1 & (x >= 1 | y % 2 = 1)")
    assert atoms_of(f) == [parse("x >= 1"), parse("y % 2 = 1")]


def test_substitute():
    f = parse("x + y >= 4")
    g = substitute(f, "x", t({"z": 2}, 1))
    assert g == parse("2*z + 1 + y >= 4")
    h = substitute(parse("x % 3 = 1"), "x", t({}, 7))
    assert h == TRUE
    with pytest.raises(ValueError):
        substitute(parse("E x. x >= y"), "x", t({}, 1))
    with pytest.raises(ValueError):
        substitute(parse("E x. x >= y"), "y", t({"x": 1}))


# ---------------------------------------------------------------------------
# evaluation


def test_eval_ground_atoms():
    f = parse("x + 2*y >= 5")
    assert eval_ground(f, {"x": 1, "y": 2})
    assert not eval_ground(f, {"x": 1, "y": 1})
    g = parse("x % 3 = 1")
    assert eval_ground(g, {"x": 7})
    assert not eval_ground(g, {"x": 6})


def test_eval_ground_quantifiers():
    odd = parse("E b. p = 2*b + 1")
    # witness b = (p-1)/2 <= p, so bound p is enough
    for p in range(12):
        assert eval_ground(odd, {"p": p}, bound=p) == (p % 2 == 1)
    # every x in [0,B] has a floor-half witness y = x//2 <= B
    halves = parse("A x. E y. 2*y <= x & x <= 2*y + 1")
    assert eval_ground(halves, {}, bound=6)
    assert not eval_ground(parse("A x. x >= 1"), {}, bound=3)


def test_eval_partial_kleene():
    f = parse("x >= 1 & y >= 1")
    assert eval_partial(f, {"x": 0}) is False
    assert eval_partial(f, {"x": 2}) is None
    assert eval_partial(f, {"x": 2, "y": 3}) is True
    g = parse("x >= 0 | y >= 5")
    assert eval_partial(g, {"x": 1}) is True
    assert eval_partial(neg(f), {"x": 0}) is True
    assert eval_partial(neg(f), {"x": 2}) is None


# ---------------------------------------------------------------------------
# nnf / simplify


def test_nnf_atoms():
    assert nnf(neg(parse("x >= 3"))) == parse("x <= 2")
    assert nnf(neg(parse("x = y"))) == parse("x >= y + 1 | y >= x + 1")
    assert nnf(neg(parse("x % 3 = 1"))) == disj(
        [Congruence(t({"x": 1}), 3, 0), Congruence(t({"x": 1}), 3, 2)])
    f = nnf(parse("!(x >= 1 & E u. u = x)"))
    assert isinstance(f, Or)
    assert "!" not in format_formula(f)


def _no_not(f):
    return "!" not in format_formula(f)


def test_nnf_random_equivalence():
    rng = random.Random(99)
    names = ["x", "y"]
    for _ in range(120):
        f = _random_qf(rng, names, 3)
        g = nnf(f)
        assert _no_not(g)
        for env in box_envs(names, 4):
            assert eval_ground(f, env) == eval_ground(g, env), format_formula(f)


def test_simplify_concrete():
    assert simplify(parse("x + 1 >= 0")) == TRUE
    assert simplify(parse("0 >= x + 1")) == FALSE
    assert simplify(conj([parse("x >= 3"), parse("x >= 5")])) == parse("x >= 5")
    assert simplify(conj([parse("x = 2"), parse("x >= 5")])) == FALSE
    assert simplify(conj([parse("x = 7"), parse("x >= 5")])) == parse("x = 7")
    assert simplify(disj([parse("x >= 3"), parse("x >= 5")])) == parse("x >= 3")
    assert simplify(parse("E u. x >= 1")) == parse("x >= 1")
    assert simplify(parse("x = x")) == TRUE


def test_simplify_random_equivalence():
    rng = random.Random(5150)
    names = ["x", "y"]
    for _ in range(150):
        f = _random_qf(rng, names, 3)
        g = simplify(f)
        for env in box_envs(names, 4):
            assert eval_ground(f, env) == eval_ground(g, env), format_formula(f)


def test_smart_constructor_folding():
    assert conj([TRUE, parse("x >= 1"), TRUE]) == parse("x >= 1")
    assert conj([parse("x >= 1"), FALSE]) == FALSE
    assert disj([FALSE, FALSE]) == FALSE
    assert disj([parse("x >= 1"), TRUE]) == TRUE
    assert conj([]) == TRUE
    assert disj([]) == FALSE
    assert neg(neg(parse("x >= 1"))) == parse("x >= 1")
    assert congruence(t({"x": 4}, 0), 2, 1) == FALSE
    assert congruence(t({"x": 2}, 1), 2, 1) == TRUE
