"""Exact linear algebra over Laurent polynomials in A^(1/2).

Small dense Gaussian elimination with rational-function entries, used by the
curve-basis change of basis.  Polynomials are the HalfLaurent dictionaries of
the scalar ring; gcd reduction keeps fractions small (primitive pseudo-remainder
sequence over Z[t] after factoring out powers of t).
"""

from __future__ import annotations

from math import gcd as int_gcd

from .coeff import HalfLaurent


class ExactSolveError(ValueError):
    pass


def _to_poly(h: HalfLaurent) -> tuple[list[int], int]:
    """Coefficient list (ascending) and exponent offset with nonzero ends."""
    if not h.terms:
        return [], 0
    lo, hi = min(h.terms), max(h.terms)
    return [h.terms.get(e, 0) for e in range(lo, hi + 1)], lo


def _from_poly(coeffs: list[int], off: int) -> HalfLaurent:
    return HalfLaurent({off + i: c for i, c in enumerate(coeffs) if c})


def _content(p: list[int]) -> int:
    c = 0
    for x in p:
        c = int_gcd(c, abs(x))
    return c or 1


def _prim(p: list[int]) -> list[int]:
    c = _content(p)
    return [x // c for x in p]


def _trim(p: list[int]) -> list[int]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _pseudo_rem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of a by b (b nonzero), over Z[t]."""
    a = _trim(list(a))
    lb = b[-1]
    while len(a) >= len(b):
        shift = len(a) - len(b)
        la = a[-1]
        a = [x * lb for x in a]
        for i, bc in enumerate(b):
            a[shift + i] -= la * bc
        _trim(a)
    return a


def _poly_gcd(a: list[int], b: list[int]) -> list[int]:
    a, b = _prim(_trim(list(a))), _prim(_trim(list(b)))
    if not a:
        return b or [1]
    if not b:
        return a
    while b:
        r = _prim(_trim(_pseudo_rem(a, b)))
        a, b = b, r
    if a[-1] < 0:
        a = [-x for x in a]
    return a


def hl_gcd(x: HalfLaurent, y: HalfLaurent) -> HalfLaurent:
    px, _ = _to_poly(x)
    py, _ = _to_poly(y)
    g = _poly_gcd(px, py)
    c = int_gcd(_content(px), _content(py)) if px and py else 1
    return _from_poly([c * v for v in g], 0)


def hl_divexact(x: HalfLaurent, y: HalfLaurent) -> HalfLaurent:
    """Exact quotient x / y; raises when the division leaves a remainder."""
    if y.is_zero():
        raise ExactSolveError("division by zero")
    if x.is_zero():
        return HalfLaurent.zero()
    px, ox = _to_poly(x)
    py, oy = _to_poly(y)
    q = [0] * (len(px) - len(py) + 1)
    if len(px) < len(py):
        raise ExactSolveError("not divisible")
    r = list(px)
    for i in range(len(q) - 1, -1, -1):
        num = r[i + len(py) - 1]
        if num % py[-1]:
            raise ExactSolveError("not divisible")
        q[i] = num // py[-1]
        for j, bc in enumerate(py):
            r[i + j] -= q[i] * bc
    if any(r):
        raise ExactSolveError("not divisible")
    return _from_poly(q, ox - oy)


class Frac:
    """Rational function num/den in A^(1/2), gcd-reduced."""

    __slots__ = ("num", "den")

    def __init__(self, num: HalfLaurent, den: HalfLaurent | None = None):
        if den is None:
            den = HalfLaurent.one()
        if den.is_zero():
            raise ExactSolveError("zero denominator")
        if num.is_zero():
            den = HalfLaurent.one()
        else:
            g = hl_gcd(num, den)
            if not g.is_one():
                num, den = hl_divexact(num, g), hl_divexact(den, g)
            # normalize: den has offset 0 and positive top coefficient
            pd, od = _to_poly(den)
            num = num.shift(-od)
            den = _from_poly(pd, 0)
            if pd[-1] < 0:
                num, den = num * -1, den * -1
        self.num, self.den = num, den

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other: "Frac") -> "Frac":
        return Frac(self.num * other.den + other.num * self.den,
                    self.den * other.den)

    def __sub__(self, other: "Frac") -> "Frac":
        return Frac(self.num * other.den - other.num * self.den,
                    self.den * other.den)

    def __mul__(self, other: "Frac") -> "Frac":
        return Frac(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "Frac") -> "Frac":
        if other.is_zero():
            raise ExactSolveError("division by zero")
        return Frac(self.num * other.den, self.den * other.num)

    def as_half_laurent(self) -> HalfLaurent:
        return hl_divexact(self.num, self.den)

    def __repr__(self) -> str:
        return f"({self.num})/({self.den})"


def solve_hl_system(rows: list[list[HalfLaurent]],
                    rhs_cols: list[list[HalfLaurent]],
                    ) -> list[list[HalfLaurent]] | None:
    """Solve rows * x = rhs for several right-hand sides, exactly.

    `rows` is a (possibly overdetermined) matrix with one row per equation;
    every unknown must be pivotal (the caller guarantees column independence).
    Returns one solution vector per right-hand side, or None when any system
    is inconsistent.  Solutions must be polynomial; a fractional solution
    raises, since the surrounding calculus guarantees integrality.
    """
    nrows, ncols = len(rows), len(rows[0]) if rows else 0
    aug = [[Frac(e) for e in row] + [Frac(r[i]) for r in rhs_cols]
           for i, row in enumerate(rows)]
    width = ncols + len(rhs_cols)
    piv_rows: list[int] = []
    r = 0
    for col in range(ncols):
        piv = None
        for i in range(r, nrows):
            if not aug[i][col].is_zero():
                piv = i
                break
        if piv is None:
            raise ExactSolveError("dependent columns in change-of-basis solve")
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = aug[r][col]
        aug[r] = [x / inv for x in aug[r]]
        for i in range(nrows):
            if i != r and not aug[i][col].is_zero():
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        piv_rows.append(r)
        r += 1
    for i in range(r, nrows):
        if any(not aug[i][j].is_zero() for j in range(ncols, width)):
            return None
    sols = []
    for j in range(len(rhs_cols)):
        sols.append([aug[row][ncols + j].as_half_laurent()
                     for row in piv_rows])
    return sols
