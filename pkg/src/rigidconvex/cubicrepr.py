"""Determinantal representations of smooth plane cubics via Hessian homotopy.

Homogenise the cubic p to P(x0, x1, x2), form the Hessian determinant
h = det H(P), and follow the family s(x, t) = h(x) + t P(x).  The values t*
for which det H(s(x, t*)) is proportional to P(x) (a cubic condition, so up
to three real solutions) each yield a symmetric pencil

    F(x) = mu * H(s(x, t*))|_{x0 = 1},   mu = c^{-1/3},

with det F(x) = p(x) exactly.  Proportionality is found by matching
coefficients pairwise instead of evaluating at a flex, which avoids
computing flexes altogether.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import NoRealSolutionError, SingularCubicError
from .locate import real_roots_with_multiplicity
from .polycore import Pencil, Poly, Scalar, UniPoly, solve_exact


# ---------------------------------------------------------------------------
# homogeneous cubics (variables x0, x1, x2; exponent keys (a0, a1, a2))
# ---------------------------------------------------------------------------

def homogenize(p: Poly) -> Poly:
    """P(x0, x1, x2) = x0^3 p(x1/x0, x2/x0) for a bivariate cubic."""
    if p.nvars != 2 or p.degree > 3:
        raise ValueError("expected a bivariate polynomial of degree <= 3")
    return Poly({(3 - a - b, a, b): v for (a, b), v in p.coeffs.items()}, nvars=3)


def dehomogenize(p3: Poly) -> Poly:
    """Substitute x0 = 1."""
    out: dict[tuple, Scalar] = {}
    for (a0, a1, a2), v in p3.coeffs.items():
        key = (a1, a2)
        out[key] = out.get(key, Fraction(0)) + v
    return Poly(out, nvars=2)


@dataclass(frozen=True)
class Pencil3:
    """Homogeneous symmetric pencil G0 x0 + G1 x1 + G2 x2 of size 3."""

    G0: tuple
    G1: tuple
    G2: tuple

    def dehomogenized(self) -> Pencil:
        return Pencil.from_rows(self.G0, self.G1, self.G2)

    def eval(self, x0, x1, x2) -> np.ndarray:
        out = np.zeros((3, 3))
        for coeff, mat in zip((x0, x1, x2), (self.G0, self.G1, self.G2)):
            out += float(coeff) * np.array([[float(v) for v in row] for row in mat])
        return out


def hessian(p3: Poly) -> Pencil3:
    """Second-partials matrix of a homogeneous cubic, split by variable."""
    if p3.nvars != 3:
        raise ValueError("expected a homogeneous cubic in x0, x1, x2")
    second = [[p3.partial(i).partial(j) for j in range(3)] for i in range(3)]
    mats = []
    for var in range(3):
        key = tuple(1 if k == var else 0 for k in range(3))
        mats.append(tuple(tuple(second[i][j].coeff(key) for j in range(3))
                          for i in range(3)))
    return Pencil3(*mats)


def hessian_matrix_polys(p3: Poly) -> list[list[Poly]]:
    return [[p3.partial(i).partial(j) for j in range(3)] for i in range(3)]


_PERMS = (((0, 1, 2), 1), ((1, 2, 0), 1), ((2, 0, 1), 1),
          ((0, 2, 1), -1), ((1, 0, 2), -1), ((2, 1, 0), -1))


def _det3(mat: list[list[Poly]]) -> Poly:
    out = Poly.zero(3)
    for perm, sign in _PERMS:
        term = mat[0][perm[0]] * mat[1][perm[1]] * mat[2][perm[2]]
        out = out + term * sign
    return out


def hessian_det(p3: Poly) -> Poly:
    """h(x) = det H(P); again a homogeneous cubic."""
    return _det3(hessian_matrix_polys(p3))


# ---------------------------------------------------------------------------
# smoothness
# ---------------------------------------------------------------------------

def _affine_singular_point(p: Poly):
    """Common (complex) zero of {p, dp/dx1, dp/dx2}, or None."""
    g1, g2 = p.partial(0), p.partial(1)
    norm = max(abs(float(v)) for v in p.coeffs.values())
    try:
        raw = _solve_system_complex(g1, g2)
    except ValueError:
        return None
    for x1v, x2v in raw:
        tol = 1e-7 * (1.0 + norm * max(1.0, abs(x1v), abs(x2v)) ** p.degree)
        vals = [abs(complex(_eval_c(q, x1v, x2v))) for q in (p, g1, g2)]
        if all(v <= tol for v in vals):
            return (x1v, x2v)
    return None


def _eval_c(p: Poly, x1: complex, x2: complex) -> complex:
    total = 0j
    for (a, b), v in p.coeffs.items():
        total += complex(v) * x1**a * x2**b
    return total


def _solve_system_complex(f: Poly, g: Poly):
    """All complex solutions of {f = 0, g = 0} (resultant + back-substitution)."""
    from .locate import _eliminate

    elim = _eliminate(f, g)
    if elim.is_zero():
        raise ValueError("degenerate system")
    points = []
    for x2v in elim.roots():
        cands: list[complex] = []
        for q in (f, g):
            top = max((a for (a, _b) in q.coeffs), default=0)
            coeffs = np.zeros(top + 1, dtype=complex)
            for (a, b), v in q.coeffs.items():
                coeffs[a] += complex(v) * x2v**b
            scale = max(1.0, np.abs(coeffs).max())
            trimmed = np.trim_zeros(
                np.where(np.abs(coeffs) > 1e-12 * scale, coeffs, 0.0), "b")
            if len(trimmed) > 1:
                cands.extend(np.roots(trimmed[::-1]))
        points.extend((x1v, x2v) for x1v in cands)
    return points


def _singular_at_infinity(P: Poly) -> bool:
    """Common projective zero of the three partials restricted to x0 = 0.

    Each restricted partial is a binary quadratic form in (x1, x2); the
    direction (1 : 0) is tested separately, the rest through an exact gcd of
    the dehomogenisations at x2 = 1.
    """
    forms = []
    for i in range(3):
        q = P.partial(i)
        binary = {(a1, a2): v for (a0, a1, a2), v in q.coeffs.items() if a0 == 0}
        if binary:
            forms.append(binary)
    if not forms:
        return True
    if all(form.get((2, 0), Fraction(0)) == 0 for form in forms):
        return True  # common zero in direction (1 : 0)
    gcd = None
    for form in forms:
        uni = UniPoly([form.get((k, 2 - k), Fraction(0)) for k in range(3)])
        gcd = uni if gcd is None else gcd.gcd(uni)
        if gcd.degree < 1:
            return False
    return gcd is not None and gcd.degree >= 1


def check_smooth_cubic(p: Poly) -> None:
    """Raise SingularCubicError when the projective cubic is singular."""
    if p.degree != 3:
        raise ValueError("expected a cubic")
    point = _affine_singular_point(p)
    if point is not None:
        display = tuple(round(v.real, 12) if abs(v.imag) < 1e-9 else v for v in point)
        raise SingularCubicError(
            f"cubic is singular near {display}; use the parametrization route "
            "for genus-zero cubics", singular_point=display)
    if _singular_at_infinity(homogenize(p)):
        raise SingularCubicError("cubic is singular at infinity",
                                 singular_point=None)


# ---------------------------------------------------------------------------
# representations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CubicRepresentation:
    t_star: Scalar
    c: Scalar           # det H(s(x, t*)) = c * P(x)
    mu: Scalar          # real cube root, det(mu H) = P
    pencil: Pencil      # dehomogenised, det F(x) = p(x)


def _cube_root_exact(c: Fraction):
    """Rational cube root of c, or None."""
    if c == 0:
        return None
    sign = 1 if c > 0 else -1
    num, den = abs(c.numerator), c.denominator
    rn = round(num ** (1 / 3))
    rd = round(den ** (1 / 3))
    for n in (rn - 1, rn, rn + 1):
        for d in (rd - 1, rd, rd + 1):
            if n > 0 and d > 0 and n**3 == num and d**3 == den:
                return Fraction(sign * n, d)
    return None


def _monomial_t_polys(P: Poly, h: Poly) -> dict[tuple, UniPoly]:
    """Coefficients of det H(h + t P) as exact polynomials in t (degree <= 3),
    recovered by interpolation at four rational t values."""
    tvals = [Fraction(0), Fraction(1), Fraction(-1), Fraction(2)]
    dets = [hessian_det(h + P * t) for t in tvals]
    monos = sorted(set().union(*(set(d.coeffs) for d in dets)) | set(P.coeffs))
    rows = [[t**j for j in range(4)] for t in tvals]
    out = {}
    for mono in monos:
        coeffs = solve_exact(rows, [d.coeff(mono) for d in dets])
        out[mono] = UniPoly(coeffs)
    return out


def cubic_representations(p: Poly) -> list[CubicRepresentation]:
    """All real symmetric pencils from the Hessian homotopy, sorted by t*.

    Raises SingularCubicError for genus-zero input and NoRealSolutionError
    when no real homotopy parameter works.
    """
    if p.nvars != 2 or p.degree != 3:
        raise ValueError("expected a bivariate cubic")
    check_smooth_cubic(p)

    P = homogenize(p)
    h = hessian_det(P)
    gpoly = _monomial_t_polys(P, h)

    # eliminate the proportionality constant: g_a(t) P_b - g_b(t) P_a = 0
    monos = sorted(gpoly)
    constraints = []
    for i, a in enumerate(monos):
        for b in monos[i + 1:]:
            pa, pb = P.coeff(a), P.coeff(b)
            if pa == 0 and pb == 0:
                continue
            r = gpoly[a] * pb - gpoly[b] * pa
            if not r.is_zero():
                constraints.append(r)
    if not constraints:
        raise NoRealSolutionError("proportionality constraints are vacuous")
    gcd = constraints[0]
    for r in constraints[1:]:
        gcd = gcd.gcd(r)
        if gcd.degree == 0:
            break
    if gcd.degree < 1:
        raise NoRealSolutionError("no homotopy parameter matches the cubic")
    assert gcd.degree <= 3

    anchor = max(P.coeffs, key=lambda e: abs(P.coeffs[e]))
    reps = []
    for tval, _mult in real_roots_with_multiplicity(gcd):
        t: Scalar = tval
        snapped = Fraction(tval).limit_denominator(10**9)
        if all(r(snapped) == 0 for r in constraints):
            t = snapped
        s = h + P * t
        c = _det3(hessian_matrix_polys(s)).coeff(anchor) / P.coeff(anchor)
        if c == 0:
            continue
        if isinstance(c, Fraction):
            mu = _cube_root_exact(c)
            if mu is not None:
                mu = 1 / mu
            else:
                mu = float(np.sign(float(c)) * abs(float(c)) ** (-1.0 / 3.0))
        else:
            mu = float(np.sign(c) * abs(c) ** (-1.0 / 3.0))
        G = hessian(s)
        scale = mu

        def mul(mat):
            return tuple(tuple(x * scale for x in row) for row in mat)

        pencil = Pencil.from_rows(mul(G.G0), mul(G.G1), mul(G.G2), c=1)
        reps.append(CubicRepresentation(t, c, mu, pencil))
    if not reps:
        raise NoRealSolutionError("no real homotopy parameter found")
    reps.sort(key=lambda r: float(r.t_star))
    return reps
