"""Exact polynomial data types shared by every other module.

Representations:

* ``Poly``      -- multivariate polynomial, sparse map from exponent tuples to
                   ``Fraction``; two variables (x1, x2) unless stated otherwise.
* ``UniPoly``   -- univariate polynomial, ascending dense coefficient tuple.
* ``TrigPoly``  -- Laurent polynomial that is real-valued on the unit circle,
                   stored as cosine coefficients ``c[k]`` on z^k + z^-k plus
                   (rarely needed) sine coefficients ``s[k]`` on i(z^k - z^-k).
* ``TrigMatrix``-- symmetric matrix of TrigPoly entries.
* ``Pencil``    -- constant symmetric matrices F0, F1, F2 (optionally F3) with
                   F(x) = F0 + x1 F1 + x2 F2 (+ x3 F3).

Coefficients stay exact (``Fraction``) end to end; floats only appear after
explicitly numeric steps such as congruence scaling or cube roots.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

import numpy as np

from .errors import DimensionMismatchError, PolyParseError, UnknownVariableError

Scalar = Union[int, Fraction, float]

_TEN = Fraction(10)


def to_exact(x: Scalar) -> Scalar:
    """Promote ints to Fraction; leave Fraction and float untouched."""
    if isinstance(x, int):
        return Fraction(x)
    return x


def format_scalar(x: Scalar) -> str:
    """Exact text form: finite decimal when possible, else p/q, floats via repr."""
    if isinstance(x, float):
        return repr(x)
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    den = x.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den == 1:
        shift = max(twos, fives)
        scaled = x * _TEN**shift
        digits = str(abs(scaled.numerator)).rjust(shift + 1, "0")
        sign = "-" if x < 0 else ""
        return f"{sign}{digits[:-shift]}.{digits[-shift:]}"
    return f"{x.numerator}/{x.denominator}"


def parse_scalar(text: Union[str, int, float]) -> Scalar:
    """Inverse of format_scalar; accepts ints/floats passed through JSON."""
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, float):
        return text
    text = text.strip()
    if "/" in text:
        num, den = text.split("/")
        return Fraction(int(num), int(den))
    if any(ch in text for ch in ".eE") and not text.lstrip("+-").isdigit():
        return Fraction(text)
    return Fraction(int(text))


# ---------------------------------------------------------------------------
# Multivariate polynomials with exact coefficients
# ---------------------------------------------------------------------------

class Poly:
    """Sparse exact polynomial in ``nvars`` variables.

    ``coeffs`` maps exponent tuples to nonzero Fractions; the zero polynomial
    has an empty map and degree -1.
    """

    __slots__ = ("nvars", "coeffs")

    def __init__(self, coeffs: Mapping[tuple, Scalar] | None = None, nvars: int = 2):
        clean = {}
        for expo, val in (coeffs or {}).items():
            val = to_exact(val)
            if val == 0:
                continue
            expo = tuple(int(e) for e in expo)
            if len(expo) != nvars:
                raise DimensionMismatchError(
                    f"exponent {expo} has arity {len(expo)}, expected {nvars}")
            clean[expo] = val
        self.nvars = nvars
        self.coeffs = clean

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, nvars: int = 2) -> "Poly":
        return cls({}, nvars)

    @classmethod
    def constant(cls, value: Scalar, nvars: int = 2) -> "Poly":
        return cls({(0,) * nvars: value}, nvars)

    @classmethod
    def variable(cls, index: int, nvars: int = 2) -> "Poly":
        expo = tuple(1 if i == index else 0 for i in range(nvars))
        return cls({expo: 1}, nvars)

    # -- basic queries -------------------------------------------------------
    @property
    def degree(self) -> int:
        """Max total degree; -1 for the zero polynomial."""
        if not self.coeffs:
            return -1
        return max(sum(e) for e in self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, expo: tuple) -> Fraction:
        return self.coeffs.get(tuple(expo), Fraction(0))

    def __eq__(self, other) -> bool:
        return (isinstance(other, Poly) and self.nvars == other.nvars
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.nvars, tuple(sorted(self.coeffs.items()))))

    def __bool__(self):
        return bool(self.coeffs)

    # -- arithmetic ----------------------------------------------------------
    def _check(self, other: "Poly"):
        if self.nvars != other.nvars:
            raise DimensionMismatchError(
                f"mixed arities {self.nvars} and {other.nvars}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction, float)):
            other = Poly.constant(other, self.nvars)
        self._check(other)
        out = dict(self.coeffs)
        for expo, val in other.coeffs.items():
            out[expo] = out.get(expo, Fraction(0)) + val
        return Poly(out, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return Poly({e: -v for e, v in self.coeffs.items()}, self.nvars)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, float)):
            other = Poly.constant(other, self.nvars)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, float)):
            return Poly({e: v * other for e, v in self.coeffs.items()}, self.nvars)
        self._check(other)
        out: dict = {}
        for ea, va in self.coeffs.items():
            for eb, vb in other.coeffs.items():
                key = tuple(a + b for a, b in zip(ea, eb))
                out[key] = out.get(key, Fraction(0)) + va * vb
        return Poly(out, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = Poly.constant(1, self.nvars)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shifted(self, *offset: Scalar) -> "Poly":
        """p(x + offset), expanded exactly via binomials."""
        if len(offset) != self.nvars:
            raise DimensionMismatchError(
                f"expected {self.nvars} offsets, got {len(offset)}")
        offset = [to_exact(x) for x in offset]
        vars_shifted = [Poly({tuple(1 if i == k else 0 for k in range(self.nvars)): 1},
                             self.nvars) + off
                        for i, off in enumerate(offset)]
        out = Poly.zero(self.nvars)
        for expo, val in self.coeffs.items():
            term = Poly.constant(val, self.nvars)
            for var, e in zip(vars_shifted, expo):
                if e:
                    term = term * var**e
            out = out + term
        return out

    def partial(self, index: int) -> "Poly":
        """Exact partial derivative with respect to variable ``index``."""
        out = {}
        for expo, val in self.coeffs.items():
            if expo[index] == 0:
                continue
            e = list(expo)
            e[index] -= 1
            out[tuple(e)] = val * expo[index]
        return Poly(out, self.nvars)

    def __call__(self, *point: Scalar):
        """Exact evaluation when all inputs are rational; float otherwise."""
        if len(point) != self.nvars:
            raise DimensionMismatchError(
                f"expected {self.nvars} coordinates, got {len(point)}")
        point = [to_exact(x) for x in point]
        total = Fraction(0)
        for expo, val in self.coeffs.items():
            term = val
            for x, e in zip(point, expo):
                if e:
                    term = term * x**e
            total = total + term
        return total

    # -- printing -------------------------------------------------------------
    def to_expr(self) -> str:
        """Expression string that parse_poly maps back to this polynomial."""
        if not self.coeffs:
            return "0"
        items = sorted(self.coeffs.items(),
                       key=lambda kv: (-sum(kv[0]), tuple(-e for e in kv[0])))
        parts = []
        for expo, val in items:
            factors = []
            for i, e in enumerate(expo):
                if e == 1:
                    factors.append(f"x{i + 1}")
                elif e > 1:
                    factors.append(f"x{i + 1}^{e}")
            mag = format_scalar(abs(val))
            if factors and abs(val) == 1:
                body = "*".join(factors)
            elif factors:
                body = "*".join([mag] + factors)
            else:
                body = mag
            parts.append(("-" if val < 0 else "+") + body)
        text = "".join(parts)
        return text[1:] if text.startswith("+") else text

    def __str__(self):
        return self.to_expr()

    def __repr__(self):
        return f"Poly({self.to_expr()!r})"


# ---------------------------------------------------------------------------
# Expression parser
# ---------------------------------------------------------------------------
# expr   := ["-"] term (("+"|"-") term)*
# term   := factor ("*" factor)*
# factor := base ("^" uint)?
# base   := number | "x1" | "x2" | "x3" | "(" expr ")"
# number := digits ("." digits)? | digits "/" digits

_TOKEN = re.compile(r"(?P<num>\d+(?:\.\d+)?)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*^()/])")


def _tokenize(expr: str):
    pos = 0
    n = len(expr)
    tokens = []
    while pos < n:
        if expr[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(expr, pos)
        if not m:
            raise PolyParseError(f"unexpected character {expr[pos]!r}", pos)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), pos))
        pos = m.end()
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, expr: str, nvars: int):
        self.tokens = _tokenize(expr)
        self.pos = 0
        self.nvars = nvars

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op: str):
        kind, val, off = self.take()
        if kind != "op" or val != op:
            raise PolyParseError(f"expected {op!r}", off)

    def parse_expr(self) -> Poly:
        kind, val, _ = self.peek()
        negate = False
        if kind == "op" and val in "+-":
            self.take()
            negate = val == "-"
        out = self.parse_term()
        if negate:
            out = -out
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                term = self.parse_term()
                out = out - term if val == "-" else out + term
            else:
                return out

    def parse_term(self) -> Poly:
        out = self.parse_factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.take()
                out = out * self.parse_factor()
            else:
                return out

    def parse_factor(self) -> Poly:
        base = self.parse_base()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, val, off = self.take()
            if kind != "num" or "." in val:
                raise PolyParseError("exponent must be a nonnegative integer", off)
            return base ** int(val)
        return base

    def parse_base(self) -> Poly:
        kind, val, off = self.take()
        if kind == "num":
            numer = Fraction(val)
            # rational literal p/q
            kind2, val2, _ = self.peek()
            if kind2 == "op" and val2 == "/":
                self.take()
                kind3, val3, off3 = self.take()
                if kind3 != "num" or "." in val3:
                    raise PolyParseError("denominator must be an integer", off3)
                numer = numer / Fraction(val3)
            return Poly.constant(numer, self.nvars)
        if kind == "name":
            m = re.fullmatch(r"x([123])", val)
            if not m:
                raise UnknownVariableError(f"unknown variable {val!r}", off)
            index = int(m.group(1)) - 1
            if index >= self.nvars:
                raise UnknownVariableError(
                    f"variable {val!r} exceeds arity {self.nvars}", off)
            return Poly.variable(index, self.nvars)
        if kind == "op" and val == "(":
            inner = self.parse_expr()
            self.expect_op(")")
            return inner
        raise PolyParseError(f"unexpected token {val!r}" if val else "unexpected end", off)


def parse_poly(expr: str, nvars: int | None = None) -> Poly:
    """Parse an expression in x1, x2 (and x3) into a fully expanded Poly.

    With ``nvars=None`` the arity is 2 unless x3 occurs in the expression.
    """
    if nvars is None:
        nvars = 3 if re.search(r"\bx3\b", expr) else 2
    parser = _Parser(expr, nvars)
    poly = parser.parse_expr()
    kind, val, off = parser.peek()
    if kind != "end":
        raise PolyParseError(f"trailing input {val!r}", off)
    return poly


def poly_eval(p: Poly, *point: Scalar):
    """Exact evaluation helper; thin alias for ``p(*point)``."""
    return p(*point)


# ---------------------------------------------------------------------------
# Univariate polynomials
# ---------------------------------------------------------------------------

class UniPoly:
    """Dense univariate polynomial, coefficients ascending by degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [to_exact(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __getitem__(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __add__(self, other):
        if isinstance(other, (int, Fraction, float)):
            other = UniPoly([other])
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly([self[k] + other[k] for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, float)):
            other = UniPoly([other])
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, float)):
            return UniPoly([c * other for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = UniPoly([1])
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __call__(self, x: Scalar):
        total = 0
        for c in reversed(self.coeffs):
            total = total * x + c
        return total

    def derivative(self) -> "UniPoly":
        return UniPoly([k * c for k, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        lead = self.coeffs[-1]
        return UniPoly([c / lead for c in self.coeffs])

    def divmod(self, other: "UniPoly"):
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.coeffs)
        quo = [Fraction(0)] * max(0, len(rem) - len(other.coeffs) + 1)
        dlead = other.coeffs[-1]
        while len(rem) >= len(other.coeffs) and rem:
            f = rem[-1] / dlead
            shift = len(rem) - len(other.coeffs)
            quo[shift] = f
            for k, c in enumerate(other.coeffs):
                rem[shift + k] -= f * c
            while rem and rem[-1] == 0:
                rem.pop()
        return UniPoly(quo), UniPoly(rem)

    def gcd(self, other: "UniPoly") -> "UniPoly":
        """Exact monic gcd (Euclid); requires rational coefficients."""
        a, b = self, other
        while not b.is_zero():
            _, r = a.divmod(b)
            a, b = b, r
        return a.monic()

    def squarefree_decomposition(self) -> list[tuple["UniPoly", int]]:
        """Yun's algorithm: list of (squarefree factor, multiplicity)."""
        if self.degree < 1:
            return []
        f = self.monic()
        d = f.derivative()
        a = f.gcd(d)
        b, _ = f.divmod(a)
        c, _ = d.divmod(a)
        out = []
        mult = 1
        while b.degree >= 1:
            diff = c - b.derivative()
            g = b.gcd(diff)
            if g.degree >= 1:
                out.append((g, mult))
            b, _ = b.divmod(g)
            c, _ = diff.divmod(g)
            mult += 1
        return out

    def roots(self) -> np.ndarray:
        """All complex roots via the companion-matrix eigenvalues."""
        if self.degree < 1:
            return np.array([], dtype=complex)
        return np.roots([float(c) for c in reversed(self.coeffs)])

    def real_roots(self, tol: float = 1e-8) -> list[float]:
        rts = self.roots()
        scale = np.maximum(1.0, np.abs(rts))
        return sorted(float(r.real) for r, s in zip(rts, scale)
                      if abs(r.imag) < tol * s)

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self[k]
            if c == 0:
                continue
            mag = format_scalar(abs(c))
            if k == 0:
                body = mag
            else:
                var = "u" if k == 1 else f"u^{k}"
                body = var if abs(c) == 1 else f"{mag}*{var}"
            parts.append(("-" if c < 0 else "+") + body)
        text = "".join(parts)
        return text[1:] if text.startswith("+") else text

    def __repr__(self):
        return f"UniPoly({list(self.coeffs)!r})"


# ---------------------------------------------------------------------------
# Trigonometric (Laurent-on-the-circle) polynomials
# ---------------------------------------------------------------------------

class TrigPoly:
    """Real-on-the-circle Laurent polynomial.

    Value at z = e^{i theta}:

        c[0] + sum_k 2*c[k]*cos(k theta) - sum_k 2*s[k]*sin(k theta)

    where ``c[k]`` multiplies z^k + z^-k and ``s[k]`` multiplies i(z^k - z^-k).
    The sine part is zero for every polynomial even in x2; it only appears for
    line substitutions of polynomials with odd x2-terms.
    """

    __slots__ = ("c", "s")

    def __init__(self, c: Iterable[Scalar] = (), s: Iterable[Scalar] = ()):
        cs = [to_exact(x) for x in c]
        ss = [to_exact(x) for x in s]
        while cs and cs[-1] == 0:
            cs.pop()
        while ss and ss[-1] == 0:
            ss.pop()
        if ss and ss[0] != 0:
            raise ValueError("sine coefficient s[0] must be zero")
        self.c = tuple(cs)
        self.s = tuple(ss)

    # -- constructors ---------------------------------------------------------
    @classmethod
    def constant(cls, value: Scalar) -> "TrigPoly":
        return cls([value])

    @classmethod
    def cosine(cls, coeffs: Iterable[Scalar]) -> "TrigPoly":
        return cls(coeffs)

    @classmethod
    def cos_basis(cls, k: int) -> "TrigPoly":
        """z^k + z^-k (equals the constant 2 when k = 0)."""
        if k == 0:
            return cls([2])
        return cls([0] * k + [1])

    @classmethod
    def sin_basis(cls, k: int) -> "TrigPoly":
        """i(z^k - z^-k), value -2 sin(k theta) on the circle."""
        if k == 0:
            return cls()
        return cls([], [0] * k + [1])

    # -- queries ----------------------------------------------------------------
    @property
    def half_degree(self) -> int:
        return max(len(self.c), len(self.s)) - 1 if (self.c or self.s) else 0

    def is_zero(self) -> bool:
        return not self.c and not self.s

    def is_cosine(self) -> bool:
        return not self.s

    def is_constant(self) -> bool:
        return len(self.c) <= 1 and not self.s

    def constant_value(self):
        return self.c[0] if self.c else Fraction(0)

    def cos_coeff(self, k: int):
        return self.c[k] if 0 <= k < len(self.c) else Fraction(0)

    def sin_coeff(self, k: int):
        return self.s[k] if 0 <= k < len(self.s) else Fraction(0)

    def max_abs_coeff(self) -> float:
        vals = [abs(float(x)) for x in self.c] + [abs(float(x)) for x in self.s]
        return max(vals, default=0.0)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, float)):
            other = TrigPoly([other])
        return isinstance(other, TrigPoly) and self.c == other.c and self.s == other.s

    def __hash__(self):
        return hash((self.c, self.s))

    def __bool__(self):
        return not self.is_zero()

    # -- arithmetic ---------------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, (int, Fraction, float)):
            other = TrigPoly([other])
        n = max(len(self.c), len(other.c))
        m = max(len(self.s), len(other.s))
        return TrigPoly([self.cos_coeff(k) + other.cos_coeff(k) for k in range(n)],
                        [self.sin_coeff(k) + other.sin_coeff(k) for k in range(m)])

    __radd__ = __add__

    def __neg__(self):
        return TrigPoly([-x for x in self.c], [-x for x in self.s])

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, float)):
            other = TrigPoly([other])
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, float)):
            return TrigPoly([x * other for x in self.c], [x * other for x in self.s])
        # Laurent convolution on coefficient pairs l_k = (re, im), l_-k = conj.
        da, db = self.half_degree, other.half_degree
        d = da + db
        re = [Fraction(0)] * (2 * d + 1)
        im = [Fraction(0)] * (2 * d + 1)

        def laurent(p: "TrigPoly", k: int):
            if k >= 0:
                return p.cos_coeff(k), p.sin_coeff(k)
            return p.cos_coeff(-k), -p.sin_coeff(-k)

        for ka in range(-da, da + 1):
            ra, ia = laurent(self, ka)
            if ra == 0 and ia == 0:
                continue
            for kb in range(-db, db + 1):
                rb, ib = laurent(other, kb)
                if rb == 0 and ib == 0:
                    continue
                k = ka + kb + d
                re[k] += ra * rb - ia * ib
                im[k] += ra * ib + ia * rb
        return TrigPoly([re[d + k] for k in range(d + 1)],
                        [im[d + k] for k in range(d + 1)])

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = TrigPoly([1])
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- evaluation ------------------------------------------------------------------
    def eval_theta(self, theta: float) -> float:
        """Value at z = e^{i theta} (always real)."""
        ks = np.arange(1, max(len(self.c), len(self.s)))
        total = float(self.c[0]) if self.c else 0.0
        if len(self.c) > 1:
            cs = np.array([float(x) for x in self.c[1:]])
            total += 2.0 * float(cs @ np.cos(ks[: len(cs)] * theta))
        if len(self.s) > 1:
            ss = np.array([float(x) for x in self.s[1:]])
            total -= 2.0 * float(ss @ np.sin(ks[: len(ss)] * theta))
        return total

    def laurent_coeffs(self) -> np.ndarray:
        """Complex coefficients [l_-d, ..., l_0, ..., l_d]."""
        d = self.half_degree
        out = np.zeros(2 * d + 1, dtype=complex)
        out[d] = float(self.cos_coeff(0))
        for k in range(1, d + 1):
            ck, sk = float(self.cos_coeff(k)), float(self.sin_coeff(k))
            out[d + k] = ck + 1j * sk
            out[d - k] = ck - 1j * sk
        return out

    def scale_exact(self, factor: Scalar) -> "TrigPoly":
        return self * factor

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        if self.c and self.c[0] != 0:
            parts.append(("-" if self.c[0] < 0 else "+") + format_scalar(abs(self.c[0])))
        for k in range(1, len(self.c)):
            ck = self.c[k]
            if ck == 0:
                continue
            mag = format_scalar(abs(ck))
            coef = "" if abs(ck) == 1 else f"{mag}*"
            parts.append(("-" if ck < 0 else "+") + f"{coef}(z^{k}+z^-{k})")
        for k in range(1, len(self.s)):
            sk = self.s[k]
            if sk == 0:
                continue
            mag = format_scalar(abs(sk))
            coef = "" if abs(sk) == 1 else f"{mag}*"
            parts.append(("-" if sk < 0 else "+") + f"{coef}i*(z^{k}-z^-{k})")
        text = "".join(parts)
        return text[1:] if text.startswith("+") else text

    def __repr__(self):
        return f"TrigPoly({list(self.c)!r}, {list(self.s)!r})"


def cosine_mul(a: TrigPoly, b: TrigPoly) -> TrigPoly:
    """Ring product of two circle polynomials."""
    return a * b


# ---------------------------------------------------------------------------
# Exact dense linear algebra (Fractions)
# ---------------------------------------------------------------------------

def det_exact(rows) -> Fraction:
    """Determinant of a square rational matrix by fraction elimination."""
    mat = [list(r) for r in rows]
    n = len(mat)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if mat[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            mat[col], mat[piv] = mat[piv], mat[col]
            det = -det
        det *= mat[col][col]
        inv = 1 / Fraction(mat[col][col])
        for r in range(col + 1, n):
            if mat[r][col] != 0:
                f = mat[r][col] * inv
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[col])]
    return det


def solve_exact(rows, rhs) -> list:
    """Solve A x = b exactly; A must be square nonsingular over the rationals."""
    mat = [list(r) + [b] for r, b in zip(rows, rhs)]
    n = len(mat)
    for col in range(n):
        piv = next((r for r in range(col, n) if mat[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        mat[col], mat[piv] = mat[piv], mat[col]
        inv = 1 / Fraction(mat[col][col])
        mat[col] = [x * inv for x in mat[col]]
        for r in range(n):
            if r != col and mat[r][col] != 0:
                f = mat[r][col]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[col])]
    return [mat[r][n] for r in range(n)]


# ---------------------------------------------------------------------------
# Symmetric matrices of TrigPoly
# ---------------------------------------------------------------------------

class TrigMatrix:
    """Symmetric m x m matrix with TrigPoly entries (real symmetric on |z|=1)."""

    __slots__ = ("m", "entries")

    def __init__(self, entries: Sequence[Sequence[TrigPoly]]):
        m = len(entries)
        rows = []
        for i in range(m):
            if len(entries[i]) != m:
                raise DimensionMismatchError("entries must form a square matrix")
            rows.append(tuple(entries[i]))
        for i in range(m):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise DimensionMismatchError(f"entry ({i},{j}) breaks symmetry")
        self.m = m
        self.entries = tuple(rows)

    @classmethod
    def from_hankel(cls, sums: Sequence[TrigPoly], m: int) -> "TrigMatrix":
        """Hankel matrix with entry (i, j) = sums[i + j]."""
        if len(sums) < 2 * m - 1:
            raise DimensionMismatchError("need 2m-1 Hankel generators")
        return cls([[sums[i + j] for j in range(m)] for i in range(m)])

    @property
    def d(self) -> int:
        """Max half-degree over the entries."""
        return max((e.half_degree for row in self.entries for e in row), default=0)

    def entry(self, i: int, j: int) -> TrigPoly:
        return self.entries[i][j]

    def is_cosine(self) -> bool:
        return all(e.is_cosine() for row in self.entries for e in row)

    def max_abs_coeff(self) -> float:
        return max((e.max_abs_coeff() for row in self.entries for e in row), default=0.0)

    def eval_theta(self, theta: float) -> np.ndarray:
        out = np.empty((self.m, self.m))
        for i in range(self.m):
            for j in range(i, self.m):
                out[i, j] = out[j, i] = self.entries[i][j].eval_theta(theta)
        return out

    def cos_block(self, k: int) -> np.ndarray:
        """Float matrix of cosine coefficients c[k] entrywise."""
        return np.array([[float(e.cos_coeff(k)) for e in row] for row in self.entries])

    def cos_block_exact(self, k: int) -> list:
        return [[e.cos_coeff(k) for e in row] for row in self.entries]

    def congruence(self, w: np.ndarray) -> "TrigMatrix":
        """W H W^T for a constant real matrix W (float coefficients)."""
        m = self.m
        if w.shape != (m, m):
            raise DimensionMismatchError("congruence matrix has wrong shape")
        out = [[TrigPoly() for _ in range(m)] for _ in range(m)]
        for i in range(m):
            for j in range(i, m):
                acc = TrigPoly()
                for a in range(m):
                    wia = float(w[i, a])
                    if wia == 0.0:
                        continue
                    for b in range(m):
                        wjb = float(w[j, b])
                        if wjb == 0.0:
                            continue
                        acc = acc + self.entries[a][b] * (wia * wjb)
                out[i][j] = out[j][i] = acc
        return TrigMatrix(out)

    def det(self) -> TrigPoly:
        """Exact determinant in the TrigPoly ring (column-subset recursion)."""
        m = self.m
        if m == 0:
            return TrigPoly([1])
        minors = {0: TrigPoly([1])}  # mask of used columns -> minor over first rows
        for row in range(m):
            nxt: dict[int, TrigPoly] = {}
            for mask, val in minors.items():
                if val.is_zero():
                    continue
                seen = 0
                for col in range(m):
                    bit = 1 << col
                    if mask & bit:
                        seen += 1
                        continue
                    e = self.entries[row][col]
                    if e.is_zero():
                        continue
                    term = val * e
                    # sign flips once per used column to the right of col
                    if (row - seen) & 1:
                        term = -term
                    key = mask | bit
                    nxt[key] = nxt.get(key, TrigPoly()) + term
            minors = nxt
        return minors.get((1 << m) - 1, TrigPoly())

    def __eq__(self, other):
        return (isinstance(other, TrigMatrix) and self.m == other.m
                and self.entries == other.entries)

    def __str__(self):
        return "\n".join("[" + ", ".join(str(e) for e in row) + "]"
                         for row in self.entries)


# ---------------------------------------------------------------------------
# Symmetric linear pencils
# ---------------------------------------------------------------------------

def _as_matrix(rows, m: int):
    out = []
    for row in rows:
        if len(row) != m:
            raise DimensionMismatchError("pencil matrix is not square")
        out.append(tuple(to_exact(x) for x in row))
    if len(out) != m:
        raise DimensionMismatchError("pencil matrix is not square")
    for i in range(m):
        for j in range(i):
            if not _num_eq(out[i][j], out[j][i]):
                raise DimensionMismatchError(f"pencil matrix not symmetric at ({i},{j})")
    return tuple(out)


def _num_eq(a, b) -> bool:
    if isinstance(a, float) or isinstance(b, float):
        return float(a) == float(b)
    return a == b


@dataclass(frozen=True)
class Pencil:
    """F(x) = F0 + x1 F1 + x2 F2 (+ x3 F3), all matrices symmetric of size m.

    ``c`` optionally records the proportionality det F(x) = c * p(x) once a
    determinant check has been run.
    """

    m: int
    F0: tuple
    F1: tuple
    F2: tuple
    F3: tuple | None = None
    c: Scalar | None = None

    @classmethod
    def from_rows(cls, F0, F1, F2, F3=None, c=None) -> "Pencil":
        m = len(F0)
        return cls(m, _as_matrix(F0, m), _as_matrix(F1, m), _as_matrix(F2, m),
                   _as_matrix(F3, m) if F3 is not None else None, c)

    @property
    def nvars(self) -> int:
        return 3 if self.F3 is not None else 2

    def mats(self) -> list:
        out = [self.F0, self.F1, self.F2]
        if self.F3 is not None:
            out.append(self.F3)
        return out

    def is_exact(self) -> bool:
        return all(not isinstance(x, float) for mat in self.mats() for row in mat for x in row)

    def with_scale(self, c: Scalar) -> "Pencil":
        return Pencil(self.m, self.F0, self.F1, self.F2, self.F3, c)

    def scaled(self, s: Scalar) -> "Pencil":
        def mul(mat):
            return tuple(tuple(x * s for x in row) for row in mat)
        return Pencil(self.m, mul(self.F0), mul(self.F1), mul(self.F2),
                      mul(self.F3) if self.F3 is not None else None, self.c)

    def eval(self, *x: Scalar) -> np.ndarray:
        """Float matrix F(x)."""
        mats = self.mats()
        if len(x) != len(mats) - 1:
            raise DimensionMismatchError(
                f"expected {len(mats) - 1} coordinates, got {len(x)}")
        out = np.array([[float(v) for v in row] for row in self.F0])
        for xi, mat in zip(x, mats[1:]):
            out += float(xi) * np.array([[float(v) for v in row] for row in mat])
        return out

    def eval_exact(self, *x: Scalar) -> list:
        """Exact matrix F(x) as nested lists of Fractions (exact pencils only)."""
        mats = self.mats()
        point = [to_exact(v) for v in x]
        out = [[self.F0[i][j] for j in range(self.m)] for i in range(self.m)]
        for xi, mat in zip(point, mats[1:]):
            for i in range(self.m):
                for j in range(self.m):
                    out[i][j] = out[i][j] + xi * mat[i][j]
        return out

    # -- JSON ------------------------------------------------------------------
    def to_json_dict(self) -> dict:
        # exact entries become strings; floats stay JSON numbers so a reload
        # does not silently promote an approximate pencil to the exact path
        def enc1(x):
            return x if isinstance(x, float) else format_scalar(x)

        def enc(mat):
            return [[enc1(x) for x in row] for row in mat]
        out = {
            "m": self.m,
            "c": None if self.c is None else enc1(self.c),
            "F0": enc(self.F0),
            "F1": enc(self.F1),
            "F2": enc(self.F2),
        }
        if self.F3 is not None:
            out["F3"] = enc(self.F3)
        return out

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "Pencil":
        def dec(rows):
            return [[parse_scalar(x) for x in row] for row in rows]
        c = data.get("c")
        return cls.from_rows(
            dec(data["F0"]), dec(data["F1"]), dec(data["F2"]),
            dec(data["F3"]) if "F3" in data else None,
            parse_scalar(c) if c is not None else None)

    def dumps(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)

    @classmethod
    def loads(cls, text: str) -> "Pencil":
        return cls.from_json_dict(json.loads(text))
