"""The Kauffman bracket skein algebra of the closed torus.

Curves are integer pairs (p, q) up to total sign; the Chebyshev-threaded
family (p q)_T = T_gcd of the primitive class multiplies by the two-term
product-to-sum rule, with the empty class counted as the scalar 2.  This
module converts both ways between that curve picture and normal forms of the
three-generator presentation: `torus_realize` builds the algebra element of a
curve recursively from determinant-one products, and `torus_expand` pushes a
normal-form element into the curve basis by multiplying out its words with the
product-to-sum rule (the expansion map is the algebra isomorphism applied
letter by letter, so no linear solve is involved).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .coeff import A, Ah, CoeffElem, HalfLaurent
from .freealg import (
    RewriteSystem, SkeinElem, TORUS_BP, apply_morphism, elem_chebyshev,
    elem_of, make_presentation, mul, reduce, word_of,
)


class TorusError(ValueError):
    pass


def canonical_pair(p: int, q: int) -> tuple[int, int]:
    """Representative of (p, q) ~ (-p, -q) with p > 0, or p = 0 and q > 0."""
    if p < 0 or (p == 0 and q < 0):
        return (-p, -q)
    return (p, q)


@dataclass(frozen=True)
class TorusCurve:
    """An unoriented (p, q) curve class on the torus, canonicalized."""

    p: int
    q: int

    def __post_init__(self):
        if (self.p, self.q) == (0, 0):
            raise TorusError("the empty class is represented by the scalar 2")
        cp, cq = canonical_pair(self.p, self.q)
        object.__setattr__(self, "p", cp)
        object.__setattr__(self, "q", cq)

    @property
    def depth(self) -> int:
        """Thread depth: gcd of the components."""
        return gcd(abs(self.p), abs(self.q))

    def primitive(self) -> tuple[int, int]:
        d = self.depth
        return (self.p // d, self.q // d)


class TorusExpansion:
    """Linear combination of threaded curves plus a scalar, over Z[A^(+-1/2)]."""

    __slots__ = ("curves", "scalar")

    def __init__(self, curves: dict[tuple[int, int], HalfLaurent] | None = None,
                 scalar: HalfLaurent | None = None):
        self.curves: dict[tuple[int, int], HalfLaurent] = {}
        for pq, c in (curves or {}).items():
            if not c.is_zero():
                self.curves[canonical_pair(*pq)] = c
        self.scalar = scalar if scalar is not None else HalfLaurent.zero()

    @staticmethod
    def zero() -> "TorusExpansion":
        return TorusExpansion()

    @staticmethod
    def from_curve(p: int, q: int, c: HalfLaurent | int = 1) -> "TorusExpansion":
        c = c if isinstance(c, HalfLaurent) else HalfLaurent.from_int(c)
        if (p, q) == (0, 0):
            return TorusExpansion(scalar=c * 2)
        return TorusExpansion({canonical_pair(p, q): c})

    @staticmethod
    def from_scalar(c: HalfLaurent | int) -> "TorusExpansion":
        c = c if isinstance(c, HalfLaurent) else HalfLaurent.from_int(c)
        return TorusExpansion(scalar=c)

    def __add__(self, other: "TorusExpansion") -> "TorusExpansion":
        out = dict(self.curves)
        for pq, c in other.curves.items():
            n = out.get(pq)
            n = c if n is None else n + c
            if n.is_zero():
                out.pop(pq, None)
            else:
                out[pq] = n
        return TorusExpansion(out, self.scalar + other.scalar)

    def __sub__(self, other: "TorusExpansion") -> "TorusExpansion":
        return self + other.scale(HalfLaurent.from_int(-1))

    def scale(self, c: HalfLaurent) -> "TorusExpansion":
        if c.is_zero():
            return TorusExpansion.zero()
        return TorusExpansion({pq: t * c for pq, t in self.curves.items()},
                              self.scalar * c)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, TorusExpansion)
                and self.curves == other.curves and self.scalar == other.scalar)

    def is_zero(self) -> bool:
        return not self.curves and self.scalar.is_zero()

    def to_json_obj(self) -> dict:
        return {
            "terms": [{"curve": [p, q],
                       "coeff": {str(e): str(c) for e, c in coeff.sorted_terms()}}
                      for (p, q), coeff in sorted(self.curves.items())],
            "scalar": {str(e): str(c) for e, c in self.scalar.sorted_terms()},
        }

    def __repr__(self) -> str:
        bits = [f"({c})*C({p},{q})" for (p, q), c in sorted(self.curves.items())]
        if not self.scalar.is_zero():
            bits.append(f"({self.scalar})")
        return " + ".join(bits) if bits else "0"


# ---------------------------------------------------------------------------
# Product-to-sum on the threaded basis
# ---------------------------------------------------------------------------


def fg_product(u: TorusCurve | tuple[int, int], w: TorusCurve | tuple[int, int],
               ) -> TorusExpansion:
    """(p,q)_T * (r,s)_T = A^(ps-qr) (p+r, q+s)_T + A^(qr-ps) (p-r, q-s)_T.

    Inputs are canonicalized first, which makes the result independent of the
    sign representative chosen for either curve class.  Reversing the factors
    negates the determinant, so the product is symmetric only up to A <-> A^-1
    in the two exponents (the algebra is noncommutative).
    """
    p, q = canonical_pair(*((u.p, u.q) if isinstance(u, TorusCurve) else u))
    r, s = canonical_pair(*((w.p, w.q) if isinstance(w, TorusCurve) else w))
    det = p * s - q * r
    out = TorusExpansion.from_curve(p + r, q + s, HalfLaurent.monomial(2 * det))
    return out + TorusExpansion.from_curve(p - r, q - s, HalfLaurent.monomial(-2 * det))


def fg_mul(x: TorusExpansion, y: TorusExpansion) -> TorusExpansion:
    """Bilinear extension of the product-to-sum rule."""
    out = TorusExpansion.from_scalar(x.scalar * y.scalar)
    for pq, c in x.curves.items():
        out = out + TorusExpansion.from_curve(*pq, c * y.scalar)
    for rs, c in y.curves.items():
        out = out + TorusExpansion.from_curve(*rs, c * x.scalar)
    for pq, c1 in x.curves.items():
        for rs, c2 in y.curves.items():
            out = out + fg_product(pq, rs).scale(c1 * c2)
    return out


# ---------------------------------------------------------------------------
# Realization in the three-generator presentation
# ---------------------------------------------------------------------------


@lru_cache(maxsize=1)
def system() -> RewriteSystem:
    return make_presentation(TORUS_BP)


def _mirror(x: SkeinElem) -> SkeinElem:
    """The (p, q) -> (p, -q) symmetry: A -> A^(-1) semilinear automorphism.

    It fixes the two coordinate curves and sends the diagonal one to the
    antidiagonal realization A x1 x2 - A^2 x3.
    """
    sysm = system()
    images = {
        "x1": elem_of(sysm, "x1"),
        "x2": elem_of(sysm, "x2"),
        "x3": (SkeinElem.from_word(word_of(sysm, "x1", "x2"), A())
               - SkeinElem.from_word(word_of(sysm, "x3"), A(2))),
    }
    return apply_morphism(x, sysm, sysm, images, scalar_images={"Ah": Ah(-1)})


def _split_pair(n: int, k: int) -> tuple[tuple[int, int], tuple[int, int]]:
    """Split coprime (n, k), n >= 2, k >= 1 as (u,v) + (w,z) with u z - v w = 1.

    Both parts and the difference are strictly shorter coprime pairs in the
    closed positive cone.
    """
    w = pow(-k, -1, n) % n  # k*w = -1 mod n, 1 <= w <= n-1
    z = (1 + k * w) // n
    u, v = n - w, k - z
    assert u * z - v * w == 1
    return (u, v), (w, z)


@lru_cache(maxsize=None)
def _realize_primitive(p: int, q: int) -> SkeinElem:
    """Normal-form element of the primitive (p, q) curve, canonical indices."""
    sysm = system()
    if (p, q) == (1, 0):
        return elem_of(sysm, "x1")
    if (p, q) == (0, 1):
        return elem_of(sysm, "x2")
    if (p, q) == (1, 1):
        return elem_of(sysm, "x3")
    if (p, q) == (1, -1):
        return (SkeinElem.from_word(word_of(sysm, "x1", "x2"), A())
                - SkeinElem.from_word(word_of(sysm, "x3"), A(2)))
    if q < 0:
        return _mirror(_realize_primitive(p, -q))
    if p == 1:
        # (1, q) = A^-1 [ (1, q-1) * (0, 1) - A^-1 (1, q-2) ]
        prev = _realize_primitive(1, q - 1)
        prev2 = _realize_primitive(*canonical_pair(1, q - 2))
        prod = mul(prev, elem_of(sysm, "x2"), sysm)
        return (prod - prev2.scale(A(-1))).scale(A(-1))
    (u, v), (w, z) = _split_pair(p, q)
    prod = mul(_realize_primitive(*canonical_pair(u, v)),
               _realize_primitive(*canonical_pair(w, z)), sysm)
    diff = _realize_primitive(*canonical_pair(u - w, v - z))
    return (prod - diff.scale(A(-1))).scale(A(-1))


def torus_realize(c: TorusCurve | tuple[int, int]) -> SkeinElem:
    """Normal-form element of the threaded curve (p, q)_T."""
    curve = c if isinstance(c, TorusCurve) else TorusCurve(*c)
    prim = _realize_primitive(*curve.primitive())
    if curve.depth == 1:
        return prim
    return elem_chebyshev(curve.depth, prim, system())


# ---------------------------------------------------------------------------
# Expansion of normal forms into the curve basis
# ---------------------------------------------------------------------------


_LETTER_CURVES = {"x1": (1, 0), "x2": (0, 1), "x3": (1, 1)}


@lru_cache(maxsize=None)
def _word_expansion(word: tuple[int, ...]) -> TorusExpansion:
    sysm = system()
    if not word:
        return TorusExpansion.from_scalar(1)
    head = _word_expansion(word[:-1])
    tail = TorusExpansion.from_curve(*_LETTER_CURVES[sysm.letters[word[-1]]])
    return fg_mul(head, tail)


def torus_expand(x: SkeinElem) -> TorusExpansion:
    """Exact expansion of an element into threaded curves plus a scalar.

    Applies the (multiplicative) change of basis word by word; coefficients
    must be pure Laurent polynomials in A^(1/2).
    """
    out = TorusExpansion.zero()
    for word, c in x.terms.items():
        out = out + _word_expansion(word).scale(c.pure_half_laurent())
    return out


# ---------------------------------------------------------------------------
# The surjection from the twice-punctured-annulus algebra
# ---------------------------------------------------------------------------


def phi_images(source: RewriteSystem) -> tuple[dict, dict]:
    """Generator and scalar images for the surjection onto the torus algebra."""
    sysm = system()
    scalar_images = {"v1": 1, "v2": 1, "d0": A() + A(-1), "d1": -A() - A(-1)}
    x1, x2, x3 = (elem_of(sysm, n) for n in ("x1", "x2", "x3"))
    if set(source.letters) == {"b", "a", "g"}:
        letter_images = {"b": x1, "a": x2, "g": x3}
    elif set(source.letters) == {"a", "b", "g1", "g2"}:
        g2_img = (SkeinElem.from_word(word_of(sysm, "x2", "x1"), A(-1))
                  - x3.scale(A(-2)))
        letter_images = {"b": x1, "a": x2, "g1": x3, "g2": g2_img}
    else:
        raise TorusError("phi is defined on the RY022 presentations")
    return letter_images, scalar_images


def phi(x: SkeinElem, source: RewriteSystem) -> SkeinElem:
    """Push an element of either RY022 presentation onto the torus algebra."""
    letter_images, scalar_images = phi_images(source)
    return apply_morphism(x, source, system(), letter_images, scalar_images)
