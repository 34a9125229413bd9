"""Locate a point certifying F(x) >= 0 when the origin is not interior.

The search is purely algebraic: candidate points come from the critical
equations grad p = 0 and from the boundary systems {p = 0, dp/dx_i = 0},
both reduced to univariate root extraction through resultants.  Candidates
are then certified through the sign pattern of the characteristic
polynomial of F(x), det(tI + F(x)) = p_0(x) + p_1(x) t + ... + t^m, which is
entrywise nonnegative exactly on the LMI set.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

import numpy as np

from .errors import IdenticallyZeroResultantError
from .polycore import Pencil, Poly, UniPoly, det_exact, solve_exact

RESIDUAL_TOL = 1e-7
MERGE_TOL = 1e-8
ROOT_CLUSTER_TOL = 1e-7


@dataclass(frozen=True)
class CandidatePoint:
    x: tuple[float, float]
    source: str  # "critical" | "boundary"
    cert: tuple[float, ...] = ()
    verdict: str | None = None  # "PD" | "PSD" | "rejected"
    min_eig: float | None = None


@dataclass(frozen=True)
class LocateResult:
    point: tuple[float, float] | None
    status: str  # "PD" | "PSD" | "none"
    degenerate: bool
    candidates: tuple[CandidatePoint, ...]
    note: str = ""


# ---------------------------------------------------------------------------
# resultants
# ---------------------------------------------------------------------------

def _x1_coefficients(p: Poly) -> dict[int, UniPoly]:
    """p as a polynomial in x1 with UniPoly-in-x2 coefficients."""
    cols: dict[int, dict[int, Fraction]] = {}
    for (a, b), v in p.coeffs.items():
        cols.setdefault(a, {})[b] = v
    out = {}
    for a, vals in cols.items():
        top = max(vals)
        out[a] = UniPoly([vals.get(k, Fraction(0)) for k in range(top + 1)])
    return out


def _sylvester_at(fc, d1, gc, d2, x2val: Fraction) -> Fraction:
    """Determinant of the Sylvester matrix of f, g in x1, specialised at x2."""
    n = d1 + d2
    frow = [fc.get(i, UniPoly())(x2val) for i in range(d1, -1, -1)]
    grow = [gc.get(i, UniPoly())(x2val) for i in range(d2, -1, -1)]
    rows = []
    for r in range(d2):
        rows.append([Fraction(0)] * r + frow + [Fraction(0)] * (d2 - 1 - r))
    for r in range(d1):
        rows.append([Fraction(0)] * r + grow + [Fraction(0)] * (d1 - 1 - r))
    assert all(len(row) == n for row in rows)
    return det_exact(rows)


def resultant_elim_x1(f: Poly, g: Poly) -> UniPoly:
    """Exact resultant of f and g with respect to x1, as a polynomial in x2.

    Computed by evaluation at rational x2 samples followed by exact
    interpolation; raises IdenticallyZeroResultantError when f and g share a
    factor involving x1.
    """
    fc = _x1_coefficients(f)
    gc = _x1_coefficients(g)
    d1 = max(fc, default=0)
    d2 = max(gc, default=0)
    if d1 == 0 or d2 == 0:
        raise ValueError("both inputs need positive degree in x1")
    deg_bound = d2 * max((q.degree for q in fc.values()), default=0) \
        + d1 * max((q.degree for q in gc.values()), default=0)
    npts = deg_bound + 1
    samples = [Fraction(k) for k in range(npts)]
    values = [_sylvester_at(fc, d1, gc, d2, s) for s in samples]
    if all(v == 0 for v in values):
        raise IdenticallyZeroResultantError(
            "resultant vanishes identically; common factor in x1")
    if npts == 1:
        return UniPoly([values[0]])
    rows = [[s**j for j in range(npts)] for s in samples]
    coeffs = solve_exact(rows, values)
    return UniPoly(coeffs)


def real_roots_with_multiplicity(r: UniPoly) -> list[tuple[float, int]]:
    """Real roots of an exact polynomial with exact multiplicities.

    Square-free decomposition isolates each multiplicity class, so the
    numeric root extraction only ever sees simple roots; clusters closer
    than 1e-7 are then merged with multiplicities added.
    """
    found: list[tuple[float, int]] = []
    for factor, mult in r.squarefree_decomposition():
        for root in factor.real_roots():
            found.append((root, mult))
    found.sort()
    merged: list[list] = []
    for root, mult in found:
        if merged and abs(root - merged[-1][0]) <= ROOT_CLUSTER_TOL * max(1.0, abs(root)):
            merged[-1][1] += mult
        else:
            merged.append([root, mult])
    return [(r0, m0) for r0, m0 in merged]


# ---------------------------------------------------------------------------
# candidate generation
# ---------------------------------------------------------------------------

def _poly_norm(p: Poly) -> float:
    return max((abs(float(v)) for v in p.coeffs.values()), default=0.0)


def _grad_scale(p: Poly, x: tuple[float, float]) -> float:
    r = max(1.0, float(np.hypot(*x)))
    return 1.0 + _poly_norm(p) * r ** max(p.degree - 1, 0)


def _eval_f(p: Poly, x1: float, x2: float) -> float:
    return float(p(x1, x2))


def _univariate_in_x1(p: Poly, x2val: float) -> np.ndarray:
    """Float coefficients (ascending) of x1 -> p(x1, x2val)."""
    top = max((a for (a, _b) in p.coeffs), default=0)
    out = np.zeros(top + 1)
    for (a, b), v in p.coeffs.items():
        out[a] += float(v) * x2val**b
    return out


def _x1_candidates(polys: list[Poly], x2val: float) -> list[float]:
    cands: list[float] = []
    for p in polys:
        coeffs = _univariate_in_x1(p, x2val)
        scale = max(1.0, np.abs(coeffs).max())
        trimmed = np.trim_zeros(np.where(np.abs(coeffs) > 1e-12 * scale, coeffs, 0.0), "b")
        if len(trimmed) <= 1:
            continue
        roots = np.roots(trimmed[::-1])
        cands.extend(float(r.real) for r in roots
                     if abs(r.imag) < 1e-7 * max(1.0, abs(r)))
    return cands


def _eliminate(f: Poly, g: Poly) -> UniPoly:
    """Eliminant in x2 of the system {f = 0, g = 0}, handling the cases where
    one equation does not involve x1."""
    fc = _x1_coefficients(f)
    gc = _x1_coefficients(g)
    d1 = max(fc, default=0)
    d2 = max(gc, default=0)
    if d1 == 0 and d2 == 0:
        # both univariate in x2: common roots come from the gcd
        f2 = fc.get(0, UniPoly())
        g2 = gc.get(0, UniPoly())
        gcd = f2.gcd(g2)
        if gcd.degree < 1:
            return UniPoly([1])  # no common root
        return gcd
    if d1 == 0:
        return fc.get(0, UniPoly())
    if d2 == 0:
        return gc.get(0, UniPoly())
    return resultant_elim_x1(f, g)


def _solve_system(f: Poly, g: Poly) -> list[tuple[float, float]]:
    """Approximate real solutions of {f = 0, g = 0}."""
    elim = _eliminate(f, g)
    if elim.is_zero():
        raise IdenticallyZeroResultantError("system has a continuum of solutions")
    points = []
    for x2val, _mult in real_roots_with_multiplicity(elim):
        x1vals = _x1_candidates([f, g], x2val)
        if x1vals:
            points.extend((x1val, x2val) for x1val in x1vals)
        else:
            # both polynomials are x1-free at this slice
            points.append((0.0, x2val))
    return points


def _dedupe_sorted(points: list[CandidatePoint]) -> list[CandidatePoint]:
    points = sorted(points, key=lambda c: (c.x[1], c.x[0], c.source))
    out: list[CandidatePoint] = []
    for cand in points:
        dup = False
        for kept in out:
            if (abs(cand.x[0] - kept.x[0]) <= MERGE_TOL * (1 + abs(cand.x[0]))
                    and abs(cand.x[1] - kept.x[1]) <= MERGE_TOL * (1 + abs(cand.x[1]))):
                dup = True
                break
        if not dup:
            out.append(cand)
    return out


def critical_points(p: Poly) -> list[CandidatePoint]:
    """Real solutions of grad p = 0, sorted by (x2, x1).

    A gradient system with a common factor (non-reduced input) has a
    continuum of critical points; the isolated-point search then returns
    an empty list rather than failing.
    """
    if p.degree < 2:
        raise ValueError("need total degree >= 2")
    g1, g2 = p.partial(0), p.partial(1)
    try:
        raw = _solve_system(g1, g2)
    except IdenticallyZeroResultantError:
        return []
    out = []
    for x1val, x2val in raw:
        tol = RESIDUAL_TOL * _grad_scale(p, (x1val, x2val))
        if abs(_eval_f(g1, x1val, x2val)) <= tol and abs(_eval_f(g2, x1val, x2val)) <= tol:
            out.append(CandidatePoint((x1val, x2val), "critical"))
    return _dedupe_sorted(out)


def boundary_points(p: Poly) -> list[CandidatePoint]:
    """Real solutions of {p = 0, dp/dx1 = 0} and {p = 0, dp/dx2 = 0}."""
    if p.degree < 2:
        raise ValueError("need total degree >= 2")
    out = []
    for partial in (p.partial(0), p.partial(1)):
        try:
            raw = _solve_system(p, partial)
        except IdenticallyZeroResultantError:
            continue
        for x1val, x2val in raw:
            tol = RESIDUAL_TOL * _grad_scale(p, (x1val, x2val))
            if (abs(_eval_f(p, x1val, x2val)) <= tol
                    and abs(_eval_f(partial, x1val, x2val)) <= tol):
                out.append(CandidatePoint((x1val, x2val), "boundary"))
    return _dedupe_sorted(out)


# ---------------------------------------------------------------------------
# certification
# ---------------------------------------------------------------------------

def certify_psd_point(pencil: Pencil, x, tol: float = 1e-9,
                      source: str = "query") -> CandidatePoint:
    """Sign test on the characteristic polynomial det(tI + F(x)).

    All of p_0 .. p_{m-1} strictly positive certifies F(x) PD; all
    nonnegative (within tol, after eigenvalue normalisation) certifies PSD.
    """
    mat = pencil.eval(*x)
    eigs = np.linalg.eigvalsh(mat)
    scale = max(1.0, float(np.abs(eigs).max()))
    scaled = eigs / scale
    # coefficients of prod (t + lambda_i) for normalised eigenvalues
    coeffs = np.array([1.0])
    for lam in scaled:
        coeffs = np.convolve(coeffs, [1.0, lam])
    normalised = coeffs[1:][::-1]  # p_0 .. p_{m-1} of the scaled matrix
    if np.all(normalised > tol):
        verdict = "PD"
    elif np.all(normalised >= -tol):
        verdict = "PSD"
    else:
        verdict = "rejected"
    # unscaled certificate entries, constant term first
    cert = np.array([1.0])
    for lam in eigs:
        cert = np.convolve(cert, [1.0, lam])
    cert = tuple(float(c) for c in cert[1:][::-1])
    return CandidatePoint((float(x[0]), float(x[1])), source, cert, verdict,
                          float(eigs.min()))


def find_interior_point(pencil: Pencil, p: Poly) -> LocateResult:
    """First PD candidate, else the best PSD candidate flagged degenerate.

    Candidates are the critical and boundary points of p in deterministic
    (x2, x1, source) order; every boundary point is singular for F so only
    critical points can certify PD.
    """
    if p.degree < 2:
        cands = [CandidatePoint((0.0, 0.0), "critical")]
    else:
        cands = _dedupe_sorted(list(critical_points(p)) + list(boundary_points(p)))
    certified = []
    for cand in cands:
        cert = certify_psd_point(pencil, cand.x)
        certified.append(replace(cert, source=cand.source))
    for cand in certified:
        if cand.verdict == "PD":
            return LocateResult(cand.x, "PD", False, tuple(certified))
    psd = [c for c in certified if c.verdict == "PSD"]
    if psd:
        best = max(psd, key=lambda c: c.min_eig)
        return LocateResult(best.x, "PSD", True, tuple(certified),
                            note="no strictly feasible candidate; the LMI set "
                                 "may degenerate to a single point")
    return LocateResult(None, "none", False, tuple(certified))
