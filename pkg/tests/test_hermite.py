import random
from fractions import Fraction

import numpy as np
import pytest

from rigidconvex import OriginOnCurveError, Poly, TrigPoly, parse_poly
from rigidconvex.hermite import hermite_matrix, line_substitute, newton_sums

CUBIC = parse_poly("1-x1-4*x1^2-x2^2+4*x1^3")
TV = parse_poly("1-x1^4-x2^4")
DISC = parse_poly("1-x1^2-x2^2")


def C(*coeffs):
    return TrigPoly(coeffs)


# ---------------------------------------------------------------------------
# line substitution
# ---------------------------------------------------------------------------

def test_line_substitute_cubic_curve():
    line = line_substitute(CUBIC)
    assert line.m == 3
    assert line.q[0] == C(0, 12, 0, 4)          # 12(z+z^-1) + 4(z^3+z^-3)
    assert line.q[1] == C(-10, 0, -3)           # -(10 + 3(z^2+z^-2))
    assert line.q[2] == C(0, -1)                # -(z+z^-1)
    assert line.q[3] == C(1)


def test_line_substitute_tv_screen():
    line = line_substitute(TV)
    assert line.q[0] == C(-12, 0, 0, 0, -2)     # -12 - 2(z^4+z^-4)
    assert line.q[1] == TrigPoly()
    assert line.q[2] == TrigPoly()
    assert line.q[3] == TrigPoly()
    assert line.q[4] == C(1)


def test_line_substitute_disc():
    line = line_substitute(DISC)
    assert line.q[0] == C(-4)
    assert line.q[1] == TrigPoly()
    assert line.q[2] == C(1)


def test_line_substitute_normalises_constant():
    p = parse_poly("2-2*x1^2-2*x2^2")
    line = line_substitute(p)
    assert line.scale == 2
    assert line.q[0] == C(-4)


def test_line_substitute_origin_on_curve():
    with pytest.raises(OriginOnCurveError):
        line_substitute(parse_poly("x1^3-x2^2-x1"))


def test_line_substitute_halfdegree_bound():
    rng = random.Random(2)
    for _ in range(20):
        coeffs = {(a, b): Fraction(rng.randint(-5, 5))
                  for a in range(4) for b in range(4) if a + b <= 4}
        coeffs[(0, 0)] = Fraction(rng.randint(1, 5))
        p = Poly(coeffs)
        if p.degree < 1:
            continue
        line = line_substitute(p)
        for k, qk in enumerate(line.q):
            assert qk.half_degree <= line.m - k or qk.is_zero()


def test_line_substitute_matches_direct_evaluation():
    # q(t)|_{z=e^{i theta}} must equal t^m p((z+1/z)/t, i(1/z-z)/t) / p(0).
    rng = np.random.default_rng(4)
    p = parse_poly("1-x1-4*x1^2-x2^2+4*x1^3+x1*x2")  # includes odd x2 term
    line = line_substitute(p)
    for theta in rng.uniform(0, 2 * np.pi, 40):
        z = np.exp(1j * theta)
        for t in (0.7, -1.3, 2.1):
            x1 = (z + 1 / z).real / t
            x2 = (1j * (1 / z - z)).real / t
            direct = t ** line.m * float(p(x1, x2))
            via_q = sum(line.q[k].eval_theta(theta) * t**k for k in range(line.m + 1))
            assert via_q == pytest.approx(direct, rel=1e-6, abs=1e-9)


# ---------------------------------------------------------------------------
# Newton sums
# ---------------------------------------------------------------------------

def test_newton_sums_t2_minus_4():
    line = line_substitute(DISC)  # q = t^2 - 4
    sums = newton_sums(line, 2)
    assert sums == [C(2), TrigPoly(), C(8)]


def test_newton_sums_cubic_curve():
    line = line_substitute(CUBIC)
    sums = newton_sums(line, 4)
    assert sums[1] == C(0, 1)          # z + z^-1
    assert sums[2] == C(22, 0, 7)      # 22 + 7(z^2+z^-2)


def test_newton_sums_tv_screen():
    line = line_substitute(TV)
    sums = newton_sums(line, 6)
    assert sums[4] == C(48, 0, 0, 0, 8)
    assert sums[5] == TrigPoly()
    assert sums[6] == TrigPoly()


def test_newton_sums_match_companion_traces():
    # oracle: N_k(z) = trace(C^k) for the numeric companion matrix of q at z
    rng = np.random.default_rng(10)
    for p in (CUBIC, TV, DISC, parse_poly("1+x1-x2^2+x1*x2+3*x1^3+x2^4")):
        line = line_substitute(p)
        m = line.m
        sums = newton_sums(line, 2 * m - 2)
        for theta in rng.uniform(0, 2 * np.pi, 200):
            comp = np.zeros((m, m), dtype=complex)
            comp[1:, :-1] = np.eye(m - 1)
            for k in range(m):
                comp[k, m - 1] = -line.q[k].eval_theta(theta)
            power = np.eye(m, dtype=complex)
            for k in range(2 * m - 1):
                expected = np.trace(power)
                got = sums[k].eval_theta(theta)
                scale = max(1.0, abs(expected))
                assert abs(got - expected) <= 1e-9 * scale
                power = power @ comp


# ---------------------------------------------------------------------------
# Hermite matrices (paper fixtures, exact)
# ---------------------------------------------------------------------------

def test_hermite_matrix_cubic_exact():
    H = hermite_matrix(CUBIC)
    assert H.m == 3
    assert H.entry(0, 0) == C(3)
    assert H.entry(0, 1) == C(0, 1)
    assert H.entry(0, 2) == C(22, 0, 7)
    assert H.entry(1, 1) == C(22, 0, 7)
    assert H.entry(1, 2) == C(0, 6, 0, -2)
    assert H.entry(2, 2) == C(250, 0, 124, 0, 15)


def test_hermite_matrix_tv_exact():
    H = hermite_matrix(TV)
    N4 = C(48, 0, 0, 0, 8)
    zero = TrigPoly()
    expected = [
        [C(4), zero, zero, zero],
        [zero, zero, zero, N4],
        [zero, zero, N4, zero],
        [zero, N4, zero, zero],
    ]
    assert H.m == 4
    for i in range(4):
        for j in range(4):
            assert H.entry(i, j) == expected[i][j]


def test_hermite_matrix_disc():
    H = hermite_matrix(DISC)
    assert H.entry(0, 0) == C(2)
    assert H.entry(0, 1) == TrigPoly()
    assert H.entry(1, 1) == C(8)


def test_hermite_hankel_structure():
    for p in (CUBIC, TV, parse_poly("1+x1*x2-x1^2-x2^4")):
        H = hermite_matrix(p)
        for i in range(H.m):
            for j in range(H.m):
                for k in range(H.m):
                    for l in range(H.m):
                        if i + j == k + l:
                            assert H.entry(i, j) == H.entry(k, l)


def test_hermite_halfdegree_bound():
    for p in (CUBIC, TV, parse_poly("1+x1-x2^2+x1*x2+3*x1^3+x2^4")):
        H = hermite_matrix(p)
        for i in range(H.m):
            for j in range(H.m):
                assert H.entry(i, j).half_degree <= i + j or H.entry(i, j).is_zero()


def test_hermite_root_sum_oracle():
    # brute force: sum of s-th powers of the numeric roots of q(t) at z
    rng = np.random.default_rng(21)
    for p in (CUBIC, TV, DISC):
        line = line_substitute(p)
        m = line.m
        H = hermite_matrix(p)
        for theta in rng.uniform(0, 2 * np.pi, 200):
            coeffs = [line.q[k].eval_theta(theta) for k in range(m + 1)]
            roots = np.roots(list(reversed(coeffs)))
            for s in range(2 * m - 1):
                expected = np.sum(roots**s)
                got = H.entry(min(s, m - 1), s - min(s, m - 1)).eval_theta(theta)
                assert abs(got - expected.real) <= 1e-8 * max(1.0, abs(expected))
                assert abs(expected.imag) <= 1e-8 * max(1.0, abs(expected))


def test_psd_verdict_equals_real_root_condition():
    # the decision's defining property, cross-validated by brute force:
    # H(z) PSD on the circle exactly when every line through the origin
    # meets the curve in m real points (q(t) has only real roots)
    from rigidconvex.circlepsd import CircleVerdict, psd_on_circle

    rng = random.Random(42)
    cases = [
        # products of conics whose interiors contain the origin are
        # real-zero; the shifted factors contribute odd x2 powers
        parse_poly("(1-x1^2-x2^2)*(1-0.25*x1^2-0.25*x2^2)"),
        parse_poly("(1-x1^2-(x2-0.3)^2*4/3)*(1-0.25*x1^2-0.25*x2^2)"),
        parse_poly("1-x1^2-(x2-0.5)^2*4/3"),
        parse_poly("(1-x1^2-(x2-0.25)^2)*(1-(x1-0.25)^2-x2^2)"),
    ]
    for _ in range(20):
        deg = rng.randint(2, 4)
        coeffs = {}
        for a in range(deg + 1):
            for b in range(deg + 1 - a):
                if rng.random() < 0.5:
                    coeffs[(a, b)] = Fraction(rng.randint(-3, 3))
        coeffs[(0, 0)] = Fraction(1)
        if not any(sum(k) == deg and v != 0 for k, v in coeffs.items()):
            coeffs[(deg, 0)] = Fraction(1)
        cases.append(Poly(coeffs))

    checked_pd = checked_not = 0
    for p in cases:
        if p.degree < 2:
            continue
        line = line_substitute(p)
        verdict = psd_on_circle(hermite_matrix(p))
        worst = 0.0
        for theta in np.linspace(0, 2 * np.pi, 400):
            qc = [line.q[k].eval_theta(theta) for k in range(line.m + 1)]
            roots = np.roots(qc[::-1])
            for r in roots:
                worst = max(worst, abs(r.imag) / max(1.0, abs(r)))
        if verdict.status == CircleVerdict.PD:
            assert worst < 1e-6
            checked_pd += 1
        elif verdict.status == CircleVerdict.NOT_PSD and abs(verdict.min_eig) > 1e-6:
            assert worst > 1e-4
            checked_not += 1
    assert checked_pd >= 4
    assert checked_not >= 10
