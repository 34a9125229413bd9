"""Hermite matrix of a plane polynomial restricted to lines through the origin.

A line through the origin hits the curve p(x) = 0 where the monic polynomial

    q(t) = t^m p(x1, x2),   x1 = (z + z^-1)/t,   x2 = i (z^-1 - z)/t

vanishes, with z on the unit circle and m = deg p.  The sublevel set around
the origin is rigidly convex exactly when q(t) has m real roots for every z,
i.e. when the Hankel matrix of Newton power sums of q is positive
semidefinite along the circle.  Everything here is computed exactly in the
TrigPoly ring.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import OriginOnCurveError
from .polycore import Poly, TrigMatrix, TrigPoly


@dataclass(frozen=True)
class LinePoly:
    """Coefficients q[k] of the monic line restriction q(t) = sum q_k(z) t^k.

    ``scale`` records the normalisation constant p(0,0) that was divided out,
    so q relates to the original polynomial by q(t) = t^m p(x) / scale.
    """

    m: int
    q: tuple[TrigPoly, ...]
    scale: Fraction = Fraction(1)

    def __post_init__(self):
        if len(self.q) != self.m + 1:
            raise ValueError("need m+1 coefficients")
        if self.q[self.m] != TrigPoly([1]):
            raise ValueError("line restriction must be monic")


def line_substitute(p: Poly) -> LinePoly:
    """Restrict p to the line family and clear denominators.

    Raises OriginOnCurveError when p(0,0) = 0, since the construction divides
    by the constant term; the locate module handles that situation.
    """
    if p.nvars != 2:
        raise ValueError("line substitution is defined for bivariate input")
    p0 = p(0, 0)
    if p0 == 0:
        raise OriginOnCurveError("p(0,0) = 0; cannot normalise p(0) = 1")
    m = p.degree
    if m < 1:
        raise ValueError("need total degree >= 1")

    # x1*t = z + z^-1 and x2*t = i(z^-1 - z) = -i(z - z^-1)
    w = TrigPoly.cos_basis(1)
    v = -TrigPoly.sin_basis(1)

    # powers cached up to degree m
    w_pow = [TrigPoly([1])]
    v_pow = [TrigPoly([1])]
    for _ in range(m):
        w_pow.append(w_pow[-1] * w)
        v_pow.append(v_pow[-1] * v)

    q = [TrigPoly() for _ in range(m + 1)]
    for (a, b), coeff in p.coeffs.items():
        q[m - a - b] = q[m - a - b] + (w_pow[a] * v_pow[b]) * (coeff / p0)
    q[m] = TrigPoly([1])
    return LinePoly(m, tuple(q), scale=p0)


def newton_sums(line: LinePoly, count: int) -> list[TrigPoly]:
    """Power sums N_0 ... N_count of the roots of q(t), by Newton's identities.

    N_0 = m; for 1 <= k <= m,
        N_k = -k q_{m-k} - sum_{j=1}^{k-1} q_{m-j} N_{k-j};
    for k > m,
        N_k = -sum_{j=1}^{m} q_{m-j} N_{k-j}.
    """
    m, q = line.m, line.q
    sums = [TrigPoly([m])]
    for k in range(1, count + 1):
        acc = TrigPoly()
        for j in range(1, min(k, m) + 1):
            if j == k:
                continue
            acc = acc + q[m - j] * sums[k - j]
        if k <= m:
            acc = acc + q[m - k] * k
        sums.append(-acc)
    return sums


def hermite_matrix(p: Poly) -> TrigMatrix:
    """m x m Hankel matrix with entry (i, j) = N_{i+j-2} (1-based indices)."""
    line = line_substitute(p)
    sums = newton_sums(line, 2 * line.m - 2)
    return TrigMatrix.from_hankel(sums, line.m)
