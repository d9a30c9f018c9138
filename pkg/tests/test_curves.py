"""Tests for curve classification, the index action, realization and expansion."""

import random

import pytest

from skeinalg.coeff import A, CoeffElem, HalfLaurent
from skeinalg.curves import (
    CurveError, CurveExpansion, CurveIndex, LambdaMatrix, classify,
    det1_product, expand_in_curves, intersection_number, lambda_act, realize,
    system, _mirror,
)
from skeinalg.freealg import SkeinElem, elem_of, mul, reduce, word_of
from skeinalg.torus import TorusExpansion, canonical_pair, phi, torus_expand


def HL(k):
    return HalfLaurent.monomial(2 * k)


def canonical_range(bound):
    out = []
    for n in range(0, bound + 1):
        for k in range(-bound, bound + 1):
            if (n, k) != (0, 0) and canonical_pair(n, k) == (n, k):
                out.append((n, k))
    return out


# -- classification -------------------------------------------------------------


def test_classify_kinds():
    assert classify(1, 0).kind == "arc"
    assert classify(1, 1).kind == "knot"
    c = classify(-2, -4)
    assert (c.n, c.k) == (2, 4) and c.kind == "knot"
    with pytest.raises(CurveError):
        classify(0, 0)


def test_parity_rule_matches_gcd_structure():
    for n, k in canonical_range(5):
        c = classify(n, k)
        assert (c.kind == "knot") == ((n - k) % 2 == 0)


# -- the index action ------------------------------------------------------------


def test_lambda_membership():
    LambdaMatrix(1, 1, 0, 1)
    with pytest.raises(CurveError):
        LambdaMatrix(2, 1, 1, 1)  # a even
    with pytest.raises(CurveError):
        LambdaMatrix(1, 0, 1, 1)  # c odd
    with pytest.raises(CurveError):
        LambdaMatrix(1, 1, 0, 2)  # determinant 2


def test_lambda_identity_and_literal_formula():
    ident = LambdaMatrix(1, 0, 0, 1)
    for nk in ((1, 0), (0, 1), (3, -2)):
        assert lambda_act(ident, classify(*nk)).pair() == classify(*nk).pair()
    # literal evaluation of the displayed action for [[1,1],[0,1]] on (0,1)
    M = LambdaMatrix(1, 1, 0, 1)
    c = lambda_act(M, classify(0, 1))
    n, k = 0, 1
    expected = (M.c * (n + k) // 2 + M.d * n,
                n * (2 * M.a - M.c + 4 * M.b - 2 * M.d) // 2
                + k * (2 * M.a - M.c) // 2)
    assert c.pair() == canonical_pair(*expected) == (0, 1)


def _random_lambda(rng):
    # products of the standard generators [[1,1],[0,1]] and [[1,0],[2,1]]
    M = LambdaMatrix(1, 0, 0, 1)
    for _ in range(rng.randrange(1, 5)):
        if rng.random() < 0.5:
            M = M @ LambdaMatrix(1, rng.randrange(-2, 3), 0, 1)
        else:
            M = M @ LambdaMatrix(1, 0, 2 * rng.randrange(-2, 3), 1)
    return M


def test_lambda_group_action_and_kind():
    rng = random.Random(41)
    for _ in range(200):
        M1, M2 = _random_lambda(rng), _random_lambda(rng)
        c = classify(rng.randrange(-4, 5), rng.randrange(-4, 5) or 1) \
            if (rng.randrange(-4, 5), 1) != (0, 0) else classify(1, 0)
        assert lambda_act(M1 @ M2, c) == lambda_act(M1, lambda_act(M2, c))
        assert lambda_act(M1, c).kind == c.kind


def test_lambda_preserves_intersection_numbers():
    rng = random.Random(43)
    done = 0
    while done < 100:
        c1 = classify(rng.randrange(-5, 6) or 1, rng.randrange(-5, 6))
        c2 = classify(rng.randrange(-5, 6) or 1, rng.randrange(-5, 6))
        if c1.depth != 1 or c2.depth != 1:
            continue
        M = _random_lambda(rng)
        assert intersection_number(lambda_act(M, c1), lambda_act(M, c2)) \
            == intersection_number(c1, c2)
        done += 1


def test_intersection_numbers():
    assert intersection_number(classify(1, 0), classify(0, 1)) == 1
    assert intersection_number(classify(1, 2), classify(1, 2)) == 0
    assert intersection_number(classify(1, 2), classify(2, 1)) == 3
    with pytest.raises(CurveError):
        intersection_number(classify(2, 4), classify(1, 0))


# -- realization ------------------------------------------------------------------


def test_realize_base_cases():
    sysm = system()
    assert realize((0, 1)) == elem_of(sysm, "a")
    assert realize((1, 0)) == elem_of(sysm, "b")
    assert realize((1, 1)) == elem_of(sysm, "g")
    anti = realize((1, -1))
    expected = (SkeinElem.from_word(word_of(sysm, "b", "a"), A())
                - SkeinElem.from_word(word_of(sysm, "g"), A(2))
                - SkeinElem.from_scalar(
                    (CoeffElem.monomial(d0=1) + CoeffElem.monomial(d1=1)) * A()))
    assert anti == expected


def test_threaded_square_of_arc():
    # (2,0)_T = b^2 - 2, the annular neighborhood of the doubled arc.
    sysm = system()
    b = elem_of(sysm, "b")
    assert realize((2, 0)) == mul(b, b, sysm) - SkeinElem.from_scalar(2)
    assert realize(CurveIndex(2, 0, "geometric")) == realize((2, 0))
    assert realize(CurveIndex(2, 0, "power")) == mul(b, b, sysm)


def test_mirror_involution():
    for nk in ((2, 1), (1, 2), (3, 2)):
        x = realize(nk)
        assert _mirror(_mirror(x)) == x


def test_realize_2_1_via_phi_oracle():
    # The push-forward of the curve onto the torus algebra must expand to the
    # same-index torus curve.
    sysm = system()
    img = phi(realize((2, 1)), sysm)
    assert torus_expand(img) == TorusExpansion.from_curve(2, 1)


def test_phi_compatibility_small():
    sysm = system()
    for nk in canonical_range(3):
        img = phi(realize(nk), sysm)
        assert torus_expand(img) == TorusExpansion.from_curve(*nk), nk


# -- determinant-one product-to-sum ------------------------------------------------


def test_det1_product_spec_cases():
    # both arcs, det +1
    e = det1_product((1, 0), (0, 1))
    assert e == CurveExpansion({(1, 1, 0, 0): HL(1), (1, -1, 0, 0): HL(-1)},
                               {(1, 0): HalfLaurent.one(), (0, 1): HalfLaurent.one()})
    # knot times arc: no boundary term
    e = det1_product((1, 1), (0, 1))
    assert e == CurveExpansion({(1, 2, 0, 0): HL(1), (1, 0, 0, 0): HL(-1)})
    # reversed order flips the determinant
    e = det1_product((0, 1), (1, 0))
    assert e == CurveExpansion({(1, 1, 0, 0): HL(-1), (1, -1, 0, 0): HL(1)},
                               {(1, 0): HalfLaurent.one(), (0, 1): HalfLaurent.one()})
    with pytest.raises(CurveError):
        det1_product((1, 0), (1, 2))


def test_det1_product_matches_algebra():
    sysm = system()
    rng = random.Random(47)
    pairs = []
    rg = canonical_range(4)
    for c1 in rg:
        for c2 in rg:
            det = c1[0] * c2[1] - c2[0] * c1[1]
            if det in (1, -1):
                pairs.append((c1, c2))
    rng.shuffle(pairs)
    for c1, c2 in pairs[:25]:
        direct = mul(realize(c1), realize(c2), sysm)
        assert det1_product(c1, c2).to_skein() == direct, (c1, c2)


# -- expansion ---------------------------------------------------------------------


def test_expand_base_round_trip():
    assert expand_in_curves(realize((0, 1))) == CurveExpansion.curve(0, 1)
    got = expand_in_curves(SkeinElem.from_scalar(2))
    assert got == CurveExpansion.from_scalar(2)


def test_expand_alpha_beta_product():
    sysm = system()
    prod = mul(realize((0, 1)), realize((1, 0)), sysm)
    assert expand_in_curves(prod) == det1_product((0, 1), (1, 0))


def test_expand_threaded_square():
    sysm = system()
    b = elem_of(sysm, "b")
    x = mul(b, b, sysm) - SkeinElem.from_scalar(2)
    assert expand_in_curves(x) == CurveExpansion.curve(2, 0)


def test_expand_realize_round_trip():
    for nk in canonical_range(3):
        got = expand_in_curves(realize(nk))
        assert got == CurveExpansion.curve(*nk), nk


def test_expand_with_boundary_layers():
    x = realize((2, 1)).scale(CoeffElem.monomial(d0=1, d1=2))
    got = expand_in_curves(x)
    assert got == CurveExpansion({(2, 1, 1, 2): HalfLaurent.one()})


def test_grouped_coordinates():
    # d0*d1 + (A + A^-1)^2 is exactly the grouped generator t.
    e = CurveExpansion.from_scalar(1, (1, 1)) \
        + CurveExpansion.from_scalar(HalfLaurent({4: 1, 0: 2, -4: 1}))
    terms, scalar = e.grouped()
    assert terms == {}
    assert scalar == {(0, 1): HalfLaurent.one()}
    # d0 + d1 is the grouped s
    e2 = CurveExpansion.from_scalar(1, (1, 0)) + CurveExpansion.from_scalar(1, (0, 1))
    _, scalar2 = e2.grouped()
    assert scalar2 == {(1, 0): HalfLaurent.one()}
    # asymmetric layers cannot be grouped
    with pytest.raises(CurveError):
        CurveExpansion.from_scalar(1, (1, 0)).grouped()


def test_expansion_json_schema():
    e = det1_product((1, 0), (0, 1))
    obj = e.to_json_obj()
    assert obj["terms"][0]["threaded"] is True
    assert {"curve", "dpow", "coeff"} <= set(obj["terms"][0])
