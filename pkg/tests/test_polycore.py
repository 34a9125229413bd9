import random
from fractions import Fraction

import numpy as np
import pytest

from rigidconvex import (
    Pencil,
    Poly,
    PolyParseError,
    TrigPoly,
    UniPoly,
    UnknownVariableError,
    cosine_mul,
    parse_poly,
    poly_eval,
)
from rigidconvex.polycore import format_scalar, parse_scalar


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

def test_parse_cubic_curve_coefficients():
    p = parse_poly("1-x1-4*x1^2-x2^2+4*x1^3")
    assert p.coeffs == {
        (0, 0): Fraction(1),
        (1, 0): Fraction(-1),
        (2, 0): Fraction(-4),
        (0, 2): Fraction(-1),
        (3, 0): Fraction(4),
    }
    assert p.degree == 3


def test_parse_zero():
    p = parse_poly("0")
    assert p.is_zero()
    assert p.coeffs == {}
    assert p.degree == -1


def test_parse_capricorn_expansion():
    # hand-expanded independently:
    # x1^2(x1^2+x2^2) - 2(x1^2+x2^2-x2)^2
    #   = -x1^4 - 3 x1^2 x2^2 - 2 x2^4 + 4 x1^2 x2 + 4 x2^3 - 2 x2^2
    p = parse_poly("x1^2*(x1^2+x2^2)-2*(x1^2+x2^2-x2)^2")
    assert p.coeffs == {
        (4, 0): Fraction(-1),
        (2, 2): Fraction(-3),
        (0, 4): Fraction(-2),
        (2, 1): Fraction(4),
        (0, 3): Fraction(4),
        (0, 2): Fraction(-2),
    }


def test_parse_decimal_and_rational_literals():
    assert parse_poly("0.5*x1").coeffs == {(1, 0): Fraction(1, 2)}
    assert parse_poly("1/3*x2^2").coeffs == {(0, 2): Fraction(1, 3)}


def test_parse_unary_minus_and_parens():
    p = parse_poly("-x1+(-x2+1)*2")
    assert p.coeffs == {(1, 0): Fraction(-1), (0, 1): Fraction(-2), (0, 0): Fraction(2)}


def test_parse_x3_autodetects_arity():
    p = parse_poly("1-x1^2-x2^2-x3^2+2*x1*x2*x3")
    assert p.nvars == 3
    assert p.coeff((1, 1, 1)) == 2


def test_parse_errors_carry_offset():
    with pytest.raises(PolyParseError) as err:
        parse_poly("1+*x1")
    assert err.value.offset == 2
    with pytest.raises(UnknownVariableError):
        parse_poly("1+y")
    with pytest.raises(UnknownVariableError):
        parse_poly("x4+1")
    with pytest.raises(PolyParseError):
        parse_poly("x1^(2)")
    with pytest.raises(PolyParseError):
        parse_poly("(1+x1")
    with pytest.raises(PolyParseError):
        parse_poly("1+x1)")


def _random_poly(rng, degree=8, nvars=2):
    coeffs = {}
    for _ in range(rng.randint(1, 10)):
        expo = [0] * nvars
        for _ in range(rng.randint(0, degree)):
            expo[rng.randrange(nvars)] += 1
        if sum(expo) > degree:
            continue
        coeffs[tuple(expo)] = Fraction(rng.randint(-20, 20), rng.randint(1, 7))
    return Poly(coeffs, nvars)


def test_parse_print_roundtrip_random():
    rng = random.Random(7)
    for _ in range(200):
        p = _random_poly(rng)
        assert parse_poly(p.to_expr()) == p


def test_parse_print_parse_idempotent():
    text = "1-x1-4*x1^2-x2^2+4*x1^3"
    p = parse_poly(text)
    assert parse_poly(p.to_expr()) == p
    assert parse_poly(parse_poly(p.to_expr()).to_expr()) == p


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

def test_eval_capricorn_exact():
    p = parse_poly("x1^2*(x1^2+x2^2)-2*(x1^2+x2^2-x2)^2")
    assert poly_eval(p, 0, Fraction(1, 2)) == Fraction(-1, 8)


def test_eval_at_origin_is_constant_coeff():
    rng = random.Random(3)
    for _ in range(25):
        p = _random_poly(rng)
        assert poly_eval(p, 0, 0) == p.coeff((0, 0))


def test_eval_on_curve_point():
    p = parse_poly("1-x1^4-x2^4")
    assert poly_eval(p, 1, 0) == 0


def test_eval_matches_unexpanded_expression():
    # independent oracle: evaluate the raw expression tree without expanding
    rng = random.Random(11)
    expr = "x1^2*(x1^2+x2^2)-2*(x1^2+x2^2-x2)^2"
    p = parse_poly(expr)
    for _ in range(50):
        a = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        b = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        direct = a**2 * (a**2 + b**2) - 2 * (a**2 + b**2 - b) ** 2
        assert poly_eval(p, a, b) == direct


# ---------------------------------------------------------------------------
# ring axioms
# ---------------------------------------------------------------------------

def test_poly_ring_axioms_random():
    rng = random.Random(23)
    for _ in range(60):
        a, b, c = (_random_poly(rng, degree=4) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a
        assert a * b == b * a


def _random_trig(rng, d=4):
    c = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(rng.randint(1, d))]
    s = [0] + [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(rng.randint(0, d - 1))]
    return TrigPoly(c, s)


def test_trig_ring_axioms_random():
    rng = random.Random(5)
    for _ in range(60):
        a, b, c = (_random_trig(rng) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a


# ---------------------------------------------------------------------------
# cosine arithmetic
# ---------------------------------------------------------------------------

def test_cosine_square():
    w = TrigPoly([0, 1])  # z + z^-1
    assert cosine_mul(w, w) == TrigPoly([2, 0, 1])


def test_cosine_identity():
    rng = random.Random(1)
    one = TrigPoly([1])
    for _ in range(20):
        a = _random_trig(rng)
        assert cosine_mul(a, one) == a


def test_cosine_cube():
    w = TrigPoly([0, 1])
    assert w**3 == TrigPoly([0, 3, 0, 1])  # 3(z+z^-1) + (z^3+z^-3)


def test_trig_halfdegree_additive():
    rng = random.Random(9)
    for _ in range(30):
        a, b = _random_trig(rng), _random_trig(rng)
        if a.is_zero() or b.is_zero():
            continue
        assert (a * b).half_degree <= a.half_degree + b.half_degree


def test_cosine_mul_matches_pointwise_values():
    rng = random.Random(17)
    thetas = np.random.default_rng(0).uniform(0, 2 * np.pi, 1000)
    for _ in range(3):
        a, b = _random_trig(rng), _random_trig(rng)
        ab = a * b
        for theta in thetas:
            lhs = ab.eval_theta(theta)
            rhs = a.eval_theta(theta) * b.eval_theta(theta)
            assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(rhs))


def test_trig_eval_sine_part():
    # i(z - z^-1) has value -2 sin(theta)
    s = TrigPoly.sin_basis(1)
    for theta in (0.0, 0.5, 1.7, 3.9):
        assert abs(s.eval_theta(theta) + 2 * np.sin(theta)) < 1e-14


# ---------------------------------------------------------------------------
# univariate polynomials
# ---------------------------------------------------------------------------

def test_unipoly_trims_leading_zeros():
    q = UniPoly([1, 2, 0, 0])
    assert q.degree == 1
    assert UniPoly([0, 0]).is_zero()


def test_unipoly_divmod_and_gcd():
    a = UniPoly([-1, 0, 1])     # u^2 - 1
    b = UniPoly([1, 1])         # u + 1
    quo, rem = a.divmod(b)
    assert rem.is_zero() and quo == UniPoly([-1, 1])
    g = a.gcd(UniPoly([-1, 1]))  # gcd(u^2-1, u-1) = u-1
    assert g == UniPoly([-1, 1])


def test_unipoly_squarefree_decomposition():
    # u^3 (u-1/2) (u-1) (u^2-6u+4)^2
    x = UniPoly([0, 1])
    f = x * x * x * (x - Fraction(1, 2)) * (x - 1) * (UniPoly([4, -6, 1]) ** 2)
    parts = f.squarefree_decomposition()
    by_mult = {mult: g for g, mult in parts}
    assert by_mult[3] == UniPoly([0, 1]).monic()
    assert by_mult[2] == UniPoly([4, -6, 1]).monic()
    assert by_mult[1] == ((x - Fraction(1, 2)) * (x - 1)).monic()


def test_unipoly_real_roots():
    q = UniPoly([-4, 0, 1])  # roots +-2
    assert q.real_roots() == pytest.approx([-2.0, 2.0])
    assert UniPoly([1, 0, 1]).real_roots() == []


# ---------------------------------------------------------------------------
# scalar formatting and pencil JSON
# ---------------------------------------------------------------------------

def test_format_scalar_exact_decimal():
    assert format_scalar(Fraction(1, 2)) == "0.5"
    assert format_scalar(Fraction(-3, 8)) == "-0.375"
    assert format_scalar(Fraction(1, 3)) == "1/3"
    assert format_scalar(Fraction(7)) == "7"
    assert parse_scalar("0.5") == Fraction(1, 2)
    assert parse_scalar("1/3") == Fraction(1, 3)
    assert parse_scalar("-7") == Fraction(-7)


def test_pencil_json_roundtrip():
    F = Pencil.from_rows(
        [[1, 0], [0, 2]],
        [[0, 1], [1, 0]],
        [[Fraction(1, 3), 0], [0, -1]],
        c=Fraction(4),
    )
    again = Pencil.loads(F.dumps())
    assert again == F
    assert again.c == 4


def test_pencil_eval():
    F = Pencil.from_rows([[2, 0], [0, 2]], [[2, 0], [0, -2]], [[0, -2], [-2, 0]])
    val = F.eval(0.5, 0.25)
    assert np.allclose(val, [[3.0, -0.5], [-0.5, 1.0]])


def test_pencil_trivariate_json():
    F = Pencil.from_rows(
        [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        [[0, 1, 0], [1, 0, 0], [0, 0, 0]],
        [[0, 0, 1], [0, 0, 0], [1, 0, 0]],
        [[0, 0, 0], [0, 0, 1], [0, 1, 0]],
    )
    assert F.nvars == 3
    assert Pencil.loads(F.dumps()) == F


def test_pencil_json_float_entries_roundtrip_bitexact():
    mu = 4.0 ** (-1.0 / 3.0)
    F = Pencil.from_rows(
        [[mu, 0.0], [0.0, mu]], [[mu, 0.0], [0.0, -mu]],
        [[0.0, -mu], [-mu, 0.0]],
    )
    again = Pencil.loads(F.dumps())
    assert again == F
    assert not again.is_exact()
