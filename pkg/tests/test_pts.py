"""Tests for the discrepancy calculus, closed forms, recursion and positivity."""

import random

import pytest

from skeinalg.coeff import HalfLaurent, quantum_int
from skeinalg.curves import (
    CurveExpansion, CurveIndex, geometric_view, realize, system,
)
from skeinalg.freealg import SkeinElem, elem_chebyshev, mul
from skeinalg.pts import (
    DiscrepancyError, ProductRecord, _boundary_sum_expansion,
    _boundary_tilde_expansion, _fg_terms, coefficient_a, coefficient_b,
    coefficient_c, discrepancy_closed, discrepancy_oracle, positivity_report,
    product_to_sum, recursion_step, scan_curves,
)


def HL(k):
    return HalfLaurent.monomial(2 * k)


def DSUM(c=1):
    return _boundary_sum_expansion(c)


def M(c1, c2):
    """Discrepancy matrix with the two curves as its columns."""
    return ((c1[0], c2[0]), (c1[1], c2[1]))


# -- base lemmas -----------------------------------------------------------------


def test_easy_discrepancy_both_arcs():
    assert discrepancy_oracle(M((1, 0), (0, 1))) == DSUM()
    assert discrepancy_closed(M((1, 0), (0, 1))) == DSUM()


def test_easy_discrepancy_knot_arc():
    assert discrepancy_closed(M((1, 1), (0, 1))).is_zero()
    assert discrepancy_oracle(M((1, 1), (0, 1))).is_zero()


def test_easy_discrepancy_parallel():
    assert discrepancy_closed(M((2, 0), (1, 0))).is_zero()
    assert discrepancy_oracle(M((2, 0), (1, 0))).is_zero()
    assert discrepancy_oracle(M((1, 1), (2, 2))).is_zero()


def test_oracle_rejects_zero_columns():
    with pytest.raises(DiscrepancyError):
        discrepancy_oracle(M((0, 0), (1, 0)))


# -- the threaded-arc family --------------------------------------------------------


def test_arc_family_p1():
    # D[[2,0],[0,1]] = (d0+d1)(1,0)
    expected = (CurveExpansion.curve(1, 0, 1, (1, 0))
                + CurveExpansion.curve(1, 0, 1, (0, 1)))
    assert discrepancy_closed(M((2, 0), (0, 1))) == expected
    assert discrepancy_oracle(M((2, 0), (0, 1))) == expected


def test_arc_family_three_way_small():
    memo = {}
    for p in range(1, 5):
        arg = M((p + 1, 0), (0, 1))
        closed = discrepancy_closed(arg)
        assert discrepancy_oracle(arg) == closed, p
        assert recursion_step(p, 0, memo) == closed, p


def test_arc_family_translated():
    # transported family: q = 2 copies of the arc (1,2) against the arc (0,1)
    arg = M((2, 4), (0, 1))
    closed = discrepancy_closed(arg)
    expected = (CurveExpansion.curve(1, 2, 1, (1, 0))
                + CurveExpansion.curve(1, 2, 1, (0, 1)))
    assert closed == expected
    assert discrepancy_oracle(arg) == closed


# -- the (1,0) against (p,2) family ---------------------------------------------------


def test_one_p_two_family_small():
    for p in range(1, 7):
        arg = M((1, 0), (p, 2))
        closed = discrepancy_closed(arg)
        assert discrepancy_oracle(arg) == closed, p


def test_one_p_two_case_shapes():
    # [p] = 2: vanishes
    assert discrepancy_closed(M((1, 0), (2, 2))).is_zero()
    # [p] = 0: pure boundary-sum term
    got = discrepancy_closed(M((1, 0), (4, 2)))
    assert got == (CurveExpansion.curve(2, 1, 1, (1, 0))
                   + CurveExpansion.curve(2, 1, 1, (0, 1)))
    # [p] = 1: carries the boundary-product scalar
    got = discrepancy_closed(M((1, 0), (1, 2)))
    assert got == (CurveExpansion.curve(1, 1, HL(1), (1, 0))
                   + CurveExpansion.curve(1, 1, HL(1), (0, 1))
                   + _boundary_tilde_expansion())


# -- the diagonal family ------------------------------------------------------------


def test_diag_family_base_cases():
    assert discrepancy_closed(M((1, 1), (0, 1))).is_zero()
    expected = (CurveExpansion.curve(1, 1, HL(1), (1, 0))
                + CurveExpansion.curve(1, 1, HL(1), (0, 1))
                + _boundary_tilde_expansion())
    assert discrepancy_closed(M((2, 1), (0, 1))) == expected
    assert discrepancy_oracle(M((2, 1), (0, 1))) == expected


def test_diag_family_three_way_small():
    memo = {}
    for p in range(0, 4):
        arg = M((p + 1, 1), (0, 1))
        closed = discrepancy_closed(arg)
        assert discrepancy_oracle(arg) == closed, p
        assert recursion_step(p, 1, memo) == closed, p


def test_coefficient_families_structure():
    # nonzero values are an A-power times a nonnegative palindromic combination
    for p in range(0, 11):
        for k in range(0, p + 1):
            for fam in (coefficient_a, coefficient_b, coefficient_c):
                h = fam(p, k)
                if not h.is_zero():
                    assert h.is_nonneg(), (fam.__name__, p, k)
                    assert h.is_palindromic(), (fam.__name__, p, k)


# -- corrected product corollary -------------------------------------------------------


def test_threaded_arc_product_corollary():
    # T_q((1,2z)) * (0,1) = A^q (q, 2qz+1)_T + A^-q (q, 2qz-1)_T
    #   + (d0+d1) sum_k [2k+1] Tbar_(q-1-2k)((1,2z))
    sysm = system()
    for q, z in ((1, 1), (2, 1), (3, 0), (2, 2)):
        lhs = product_to_sum((q, 2 * q * z), (0, 1))
        rhs = (CurveExpansion.curve(q, 2 * q * z + 1, HL(q))
               + CurveExpansion.curve(q, 2 * q * z - 1, HL(-q)))
        for k in range((q - 1) // 2 + 1):
            m = q - 1 - 2 * k
            c = quantum_int(2 * k + 1)
            if m == 0:
                rhs = rhs + DSUM(c)
            else:
                rhs = rhs + (CurveExpansion.curve(m, 2 * m * z, c, (1, 0))
                             + CurveExpansion.curve(m, 2 * m * z, c, (0, 1)))
        assert lhs == rhs, (q, z)


def test_chebyshev_identity_in_algebra():
    # (1,0) * T_k((1,0)) = T_(k+1)((1,0)) + T_(k-1)((1,0))
    sysm = system()
    b = realize((1, 0))
    for k in range(1, 6):
        lhs = mul(b, elem_chebyshev(k, b, sysm), sysm)
        rhs = elem_chebyshev(k + 1, b, sysm) + elem_chebyshev(k - 1, b, sysm)
        assert lhs == rhs, k


# -- products and positivity ------------------------------------------------------------


def test_product_to_sum_det_one():
    got = product_to_sum((1, 0), (0, 1))
    assert got == _fg_terms(((1, 0), (0, 1))) + DSUM()


def test_product_cross_check_runs():
    got = product_to_sum((2, 0), (1, 1), cross_check=True)
    assert not got.is_zero()


def test_knot_self_product():
    got = product_to_sum((1, 1), (1, 1))
    assert got == CurveExpansion.curve(2, 2) + CurveExpansion.from_scalar(2)


def test_lemma_6_11_signed_constant_in_geometric_view():
    # For p = -1 mod 4 the geometric-basis view of (1,0)*(p,2) carries the
    # signed constant d0 d1 + A^2 - A^-2 + 2.
    for p in (3, 7):
        e = product_to_sum((1, 0), (p, 2))
        terms, scalar = geometric_view(e)
        assert scalar[(1, 1)] == HalfLaurent.one()
        assert scalar[(0, 0)] == HalfLaurent({4: 1, -4: -1, 0: 2})
        # raw threaded coordinates, by contrast, are nonnegative here
        rec = ProductRecord((1, 0), (p, 2), e)
        assert rec.raw_positive and rec.grouped_positive


def test_positivity_small_scan():
    report = positivity_report(2)
    assert report.all_grouped_positive
    curves, cells = report.verdict_matrix()
    assert len(curves) == len(scan_curves(2))
    assert all(all(v == "positive" for v in row) for row in cells)


def test_lambda_equivariance_of_arc_family():
    # transported instances agree with the oracle
    rng = random.Random(53)
    cases = 0
    while cases < 6:
        n1 = rng.randrange(0, 3)
        k1 = rng.randrange(0, 4)
        if (n1 + k1) % 2 == 0 or (n1, k1) == (0, 0):
            continue
        # pick (N2, K2) nonnegative arc with det 1
        found = None
        for n2 in range(0, 4):
            for k2 in range(0, 4):
                if (n2 + k2) % 2 and n1 * k2 - k1 * n2 == 1:
                    found = (n2, k2)
                    break
            if found:
                break
        if not found:
            continue
        q = rng.randrange(1, 4)
        arg = M((q * n1, q * k1), found)
        assert discrepancy_oracle(arg) == discrepancy_closed(arg), arg
        cases += 1
