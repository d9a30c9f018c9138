"""Product-to-sum calculus for threaded curves and positivity reports.

The discrepancy of a product of two threaded curves is what remains after
subtracting the two torus-style terms.  It vanishes for parallel curves, is a
pure boundary term for determinant +-1 pairs, and has closed forms along three
infinite families (a threaded arc against a determinant-one arc; the (1,0)
curve against (p,2); threaded (1,0) against the diagonal knot).  A five-term
recursion assembles the same values from the base lemmas, and the realization
calculus provides a fully independent oracle; the three routes are compared in
the test suite.

The positivity scan expands every product of canonical curves inside a box and
records, in raw (d0, d1) and in grouped (d0+d1, d0 d1 + (A+A^-1)^2)
coordinates, whether all structure coefficients are nonnegative.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .coeff import CoeffElem, HalfLaurent, quantum_int
from .curves import (
    CurveError, CurveExpansion, CurveIndex, classify, expand_in_curves,
    realize, system, _is_arc,
)
from .freealg import SkeinElem, mul
from .torus import canonical_pair


class DiscrepancyError(ValueError):
    pass


# Discrepancy arguments are written as the 2x2 matrix rows ((n1, n2), (k1, k2));
# its columns are the two curves (n1, k1) and (n2, k2).  Internal helpers work
# on the column pairs directly.
Matrix = tuple[tuple[int, int], tuple[int, int]]
Arg = tuple[tuple[int, int], tuple[int, int]]  # columns (n1,k1), (n2,k2)


def matrix_columns(matrix: Matrix) -> Arg:
    (n1, n2), (k1, k2) = matrix
    return ((n1, k1), (n2, k2))


def _det(arg: Arg) -> int:
    (n1, k1), (n2, k2) = arg
    return n1 * k2 - k1 * n2


def _fg_terms(arg: Arg) -> CurveExpansion:
    """The two torus-style terms A^det (sum)_T + A^-det (difference)_T."""
    (n1, k1), (n2, k2) = arg
    det = _det(arg)
    out = CurveExpansion.curve(n1 + n2, k1 + k2, HalfLaurent.monomial(2 * det))
    return out + CurveExpansion.curve(n1 - n2, k1 - k2,
                                      HalfLaurent.monomial(-2 * det))


def _boundary_sum_expansion(factor: HalfLaurent | int = 1) -> CurveExpansion:
    return (CurveExpansion.from_scalar(factor, (1, 0))
            + CurveExpansion.from_scalar(factor, (0, 1)))


def _boundary_tilde_expansion() -> CurveExpansion:
    """d0 d1 + (A + A^-1)^2."""
    return (CurveExpansion.from_scalar(1, (1, 1))
            + CurveExpansion.from_scalar(HalfLaurent({4: 1, 0: 2, -4: 1})))


# ---------------------------------------------------------------------------
# Discrepancy: oracle, base lemmas, closed families, recursion
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Discrepancy:
    """A 2x2 integer argument (matrix rows) with its computed expansion."""

    matrix: Matrix
    value: CurveExpansion


def discrepancy_oracle(matrix: Matrix) -> CurveExpansion:
    """Discrepancy by definition: realize, multiply, expand, subtract."""
    return _oracle_cols(matrix_columns(matrix))


def _oracle_cols(arg: Arg) -> CurveExpansion:
    (n1, k1), (n2, k2) = arg
    if (n1, k1) == (0, 0) or (n2, k2) == (0, 0):
        raise DiscrepancyError("both columns must be nonzero")
    prod = mul(realize(CurveIndex(n1, k1)), realize(CurveIndex(n2, k2)), system())
    return expand_in_curves(prod) - _fg_terms(arg)


def _easy_discrepancy(arg: Arg) -> CurveExpansion | None:
    """Determinant 0 or +-1: zero, or the boundary sum for two arcs."""
    det = _det(arg)
    if det == 0:
        return CurveExpansion.zero()
    if det in (1, -1):
        (n1, k1), (n2, k2) = arg
        if _is_arc(n1, k1) and _is_arc(n2, k2):
            return _boundary_sum_expansion()
        return CurveExpansion.zero()
    return None


def _mod4_rep(p: int) -> int:
    """Representative of p mod 4 in {-1, 0, 1, 2}."""
    r = p % 4
    return -1 if r == 3 else r


def _arc_family_closed(arg: Arg) -> CurveExpansion | None:
    """Threaded arc against a determinant-one arc, in the closed positive cone.

    D[[q N1, N2], [q K1, K2]] with (N1,K1), (N2,K2) arcs, all entries >= 0 and
    N1 K2 - K1 N2 = 1 equals the boundary sum times
    sum_k [2k+1] T-bar_(q-1-2k)((N1,K1)).
    """
    (n1, k1), (n2, k2) = arg
    if min(n1, k1, n2, k2) < 0:
        return None
    q = gcd(n1, k1)
    if q == 0:
        return None
    N1, K1 = n1 // q, k1 // q
    N2, K2 = n2, k2
    if not (_is_arc(N1, K1) and _is_arc(N2, K2)):
        return None
    if N1 * K2 - K1 * N2 != 1:
        return None
    out = CurveExpansion.zero()
    for k in range((q - 1) // 2 + 1):
        m = q - 1 - 2 * k
        coeff = quantum_int(2 * k + 1)
        if m == 0:
            out = out + _boundary_sum_expansion(coeff)
        else:
            out = out + (CurveExpansion.curve(m * N1, m * K1, coeff, (1, 0))
                         + CurveExpansion.curve(m * N1, m * K1, coeff, (0, 1)))
    return out


def _one_p_zero_two_closed(arg: Arg) -> CurveExpansion | None:
    """D[[1, p], [0, 2]] for p >= 1, by the mod-4 case analysis."""
    (n1, k1), (n2, k2) = arg
    if (n1, k1) != (1, 0) or k2 != 2 or n2 < 1:
        return None
    p = n2
    r = _mod4_rep(p)
    if r == 2:
        return CurveExpansion.zero()
    if r == 0:
        return (CurveExpansion.curve(p // 2, 1, 1, (1, 0))
                + CurveExpansion.curve(p // 2, 1, 1, (0, 1)))
    amon = HalfLaurent.monomial(2 * r)
    out = (CurveExpansion.curve((p + r) // 2, 1, amon, (1, 0))
           + CurveExpansion.curve((p + r) // 2, 1, amon, (0, 1)))
    return out + _boundary_tilde_expansion()


def coefficient_a(p: int, k: int) -> HalfLaurent:
    if k < 1 or k > p or (k - p) % 2:
        return HalfLaurent.zero()
    if 2 * k <= p:
        return HalfLaurent.monomial(2 * k) * quantum_int(k)
    return HalfLaurent.monomial(2 * (p - k + 1)) * quantum_int(p - k + 1)


def coefficient_b(p: int, k: int) -> HalfLaurent:
    if k > p - 3 or (k - (p - 3)) % 2:
        return HalfLaurent.zero()
    r = _mod4_rep(p - k)
    total = HalfLaurent.zero()
    if r == -1:
        total = total + HalfLaurent.from_int((p - k + 1) // 4)
    for h in range(1, (p - k + r - 2) // 4 + 1):
        total = total + (quantum_int(p - k - 4 * h + 2)
                         + quantum_int(p - k - 4 * h)) * h
    return HalfLaurent.monomial(-2 * k) * total


def coefficient_c(p: int, k: int) -> HalfLaurent:
    if k > p - 1 or (k - (p - 1)) % 2:
        return HalfLaurent.zero()
    return HalfLaurent.monomial(-2 * k) * quantum_int((p - k + 1) // 2, qexp2=4)


def _diag_family_closed(arg: Arg) -> CurveExpansion | None:
    """Matrix [[p+1, 0], [1, 1]], i.e. (p+1, 1)_T * (0, 1)_T, for p >= 0."""
    (n1, k1), (n2, k2) = arg
    if k1 != 1 or n1 < 1 or (n2, k2) != (0, 1):
        return None
    p = n1 - 1
    out = CurveExpansion.zero()
    for k in range(1, p + 1):
        a = coefficient_a(p, k)
        if not a.is_zero():
            out = out + (CurveExpansion.curve(k, 1, a, (1, 0))
                         + CurveExpansion.curve(k, 1, a, (0, 1)))
    for k in range(0, p + 1):
        b = coefficient_b(p, k)
        if not b.is_zero():
            layer = _dsum_power_layers(2)
            out = out + _scaled_tbar_k10(k, b, layer)
        c = coefficient_c(p, k)
        if not c.is_zero():
            tilde = {(1, 1): HalfLaurent.one(),
                     (0, 0): HalfLaurent({4: 1, 0: 2, -4: 1})}
            out = out + _scaled_tbar_k10(k, c, tilde)
    return out


def _dsum_power_layers(power: int) -> dict[tuple[int, int], HalfLaurent]:
    """(d0 + d1)^power as boundary-monomial layers."""
    from math import comb
    return {(m, power - m): HalfLaurent.from_int(comb(power, m))
            for m in range(power + 1)}


def _scaled_tbar_k10(k: int, coeff: HalfLaurent,
                     layers: dict[tuple[int, int], HalfLaurent]) -> CurveExpansion:
    """coeff * (boundary layers) * T-bar_k((1,0))."""
    out = CurveExpansion.zero()
    for (i, j), lc in layers.items():
        if k == 0:
            out = out + CurveExpansion.from_scalar(coeff * lc, (i, j))
        else:
            out = out + CurveExpansion.curve(k, 0, coeff * lc, (i, j))
    return out


def _closed_cols(arg: Arg) -> CurveExpansion | None:
    for attempt in (_easy_discrepancy, _arc_family_closed,
                    _one_p_zero_two_closed, _diag_family_closed):
        value = attempt(arg)
        if value is not None:
            return value
    return None


def discrepancy_closed(matrix: Matrix) -> CurveExpansion:
    """Closed-form discrepancy; raises on arguments outside the covered families."""
    value = _closed_cols(matrix_columns(matrix))
    if value is None:
        raise DiscrepancyError(f"no closed form covers {matrix}")
    return value


def has_closed_form(matrix: Matrix) -> bool:
    return _closed_cols(matrix_columns(matrix)) is not None


# -- recursion ------------------------------------------------------------------


def _closed_curve_product(c1: tuple[int, int], c2: tuple[int, int]) -> CurveExpansion:
    """Threaded product for parallel or determinant +-1 pairs (exact)."""
    arg = (canonical_pair(*c1), canonical_pair(*c2))
    easy = _easy_discrepancy(arg)
    if easy is None:
        raise DiscrepancyError(f"product {arg} has no two-term closed form")
    return _fg_terms(arg) + easy


def _product_with_curve(e: CurveExpansion, c: tuple[int, int],
                        on_left: bool) -> CurveExpansion:
    """Multiply an expansion by a single threaded curve, termwise."""
    out = CurveExpansion.zero()
    for (n, k, i, j), coeff in e.terms.items():
        prod = _closed_curve_product(c, (n, k)) if on_left \
            else _closed_curve_product((n, k), c)
        out = out + prod.times_boundary(i, j).scale(coeff)
    for (i, j), coeff in e.scalar.items():
        out = out + CurveExpansion.curve(*c, coeff, (i, j))
    return out


def recursion_step(p: int, q: int, context: dict | None = None) -> CurveExpansion:
    """Matrix [[p+1, 0], [q, 1]], i.e. (p+1, q)_T * (0, 1)_T, by the recursion.

    Supported for q in {0, 1}, which covers the two closed-form columns; the
    base lemmas supply every leaf.  `context` memoizes the family values.
    """
    if q not in (0, 1):
        raise DiscrepancyError("the recursion is instantiated for q in {0, 1}")
    memo = context if context is not None else {}

    def leaf_1p(pp: int, m: int) -> CurveExpansion:
        # matrix [[1, pp], [0, m]], columns (1, 0) and (pp, m): parallel for
        # m = 0, boundary term for |m| = 1, the mod-4 closed form for m = 2.
        if m == 0:
            return CurveExpansion.zero()
        if m in (1, -1):
            arg = ((1, 0), (pp, m))
            val = _easy_discrepancy(arg)
            assert val is not None
            return val
        if m == 2:
            val = _one_p_zero_two_closed(((1, 0), (pp, 2)))
            if val is None:
                raise DiscrepancyError(f"no closed leaf for [[1,{pp}],[0,2]]")
            return val
        raise DiscrepancyError(f"unsupported leaf [[1,{pp}],[0,{m}]]")

    def family(pp: int) -> CurveExpansion:
        # matrix [[pp, 0], [q, 1]], columns (pp, q) and (0, 1)
        if pp <= 0:
            return CurveExpansion.zero()
        if pp == 1:
            val = _easy_discrepancy(((1, q), (0, 1)))
            assert val is not None
            return val
        key = (pp, q)
        if key not in memo:
            memo[key] = _step(pp - 1)
        return memo[key]

    def _step(pp: int) -> CurveExpansion:
        # value for matrix [[pp+1, 0], [q, 1]] from the five-term display
        aq = HalfLaurent.monomial(-2 * q)
        out = _product_with_curve(family(pp), (1, 0), on_left=True).scale(aq)
        out = out - family(pp - 1).scale(HalfLaurent.monomial(-4 * q))
        out = out + leaf_1p(pp, q - 1).scale(HalfLaurent.monomial(-2 * (pp + q)))
        out = out - _product_with_curve(leaf_1p(pp, q), (0, 1),
                                        on_left=False).scale(aq)
        out = out + leaf_1p(pp, q + 1).scale(HalfLaurent.monomial(2 * (pp - q)))
        return out

    return family(p + 1)


# ---------------------------------------------------------------------------
# Full products and the positivity scan
# ---------------------------------------------------------------------------


def product_to_sum(c1: CurveIndex | tuple[int, int],
                   c2: CurveIndex | tuple[int, int],
                   cross_check: bool = True) -> CurveExpansion:
    """Expansion of (c1)_T * (c2)_T over threaded curves and boundary monomials.

    The two torus-style terms always appear; the discrepancy comes from the
    closed form when one covers the argument (optionally cross-checked against
    the oracle) and from the oracle otherwise.
    """
    p1 = c1.pair() if isinstance(c1, CurveIndex) else canonical_pair(*c1)
    p2 = c2.pair() if isinstance(c2, CurveIndex) else canonical_pair(*c2)
    arg = (p1, p2)
    closed = _closed_cols(arg)
    if closed is None:
        disc = _oracle_cols(arg)
    elif cross_check:
        disc = _oracle_cols(arg)
        if disc != closed:
            raise DiscrepancyError(
                f"closed form disagrees with the oracle on {arg}")
    else:
        disc = closed
    return _fg_terms(arg) + disc


# -- positivity --------------------------------------------------------------------


@dataclass
class ProductRecord:
    """Expansion of one product with positivity verdicts in both coordinates."""

    left: tuple[int, int]
    right: tuple[int, int]
    expansion: CurveExpansion
    raw_positive: bool = field(init=False)
    grouped_positive: bool | None = field(init=False)
    raw_negatives: list[str] = field(init=False)
    grouped_negatives: list[str] = field(init=False)

    def __post_init__(self):
        self.raw_negatives = []
        for (n, k, i, j), c in sorted(self.expansion.terms.items()):
            if not c.is_nonneg():
                self.raw_negatives.append(f"C({n},{k})*d0^{i}*d1^{j}: {c}")
        for (i, j), c in sorted(self.expansion.scalar.items()):
            if not c.is_nonneg():
                self.raw_negatives.append(f"d0^{i}*d1^{j}: {c}")
        self.raw_positive = not self.raw_negatives
        self.grouped_negatives = []
        try:
            terms, scalar = self.expansion.grouped()
        except CurveError:
            self.grouped_positive = None
            self.grouped_negatives.append("boundary layers are not symmetric")
            return
        for (n, k, es, et), c in sorted(terms.items()):
            if not c.is_nonneg():
                self.grouped_negatives.append(f"C({n},{k})*s^{es}*t^{et}: {c}")
        for (es, et), c in sorted(scalar.items()):
            if not c.is_nonneg():
                self.grouped_negatives.append(f"s^{es}*t^{et}: {c}")
        self.grouped_positive = not self.grouped_negatives

    def to_json_obj(self) -> dict:
        return {
            "left": list(self.left),
            "right": list(self.right),
            "expansion": self.expansion.to_json_obj(),
            "raw_positive": self.raw_positive,
            "grouped_positive": self.grouped_positive,
            "raw_negatives": self.raw_negatives,
            "grouped_negatives": self.grouped_negatives,
        }


@dataclass
class PositivityReport:
    max_index: int
    records: list[ProductRecord]

    @property
    def all_grouped_positive(self) -> bool:
        return all(r.grouped_positive for r in self.records)

    def verdict_matrix(self) -> tuple[list[tuple[int, int]], list[list[str]]]:
        curves = sorted({r.left for r in self.records})
        idx = {c: i for i, c in enumerate(curves)}
        cells = [["uncomputed"] * len(curves) for _ in curves]
        for r in self.records:
            cells[idx[r.left]][idx[r.right]] = \
                "positive" if r.grouped_positive else "negative"
        return curves, cells


def scan_curves(max_index: int) -> list[tuple[int, int]]:
    out = []
    for n in range(0, max_index + 1):
        for k in range(-max_index, max_index + 1):
            if (n, k) != (0, 0) and canonical_pair(n, k) == (n, k):
                out.append((n, k))
    return sorted(out)


def positivity_report(max_index: int, cross_check: bool = False,
                      progress=None) -> PositivityReport:
    """Expand every ordered product of canonical curves inside the box."""
    curves = scan_curves(max_index)
    records = []
    for left in curves:
        for right in curves:
            e = product_to_sum(left, right, cross_check=cross_check)
            records.append(ProductRecord(left, right, e))
            if progress is not None:
                progress(left, right)
    return PositivityReport(max_index, records)
