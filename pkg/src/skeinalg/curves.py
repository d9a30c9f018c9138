"""Curve combinatorics on the twice-punctured annulus.

Curves are indexed by integer pairs (n, k) up to total sign; a class is an arc
precisely when n and k have opposite parity.  Everything here runs in the
puncture-weight-one specialization of the three-generator presentation:
`realize` builds the normal-form element of a curve (geometric, power or
Chebyshev-threaded variant), `det1_product` is the two-term product-to-sum for
determinant +-1 pairs, and `expand_in_curves` inverts `realize`, writing an
element over the basis of threaded curves times boundary monomials by peeling
top-degree layers with an exact linear solve.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from ._exact import solve_hl_system
from .coeff import A, CoeffElem, HalfLaurent
from .freealg import (
    RY022_3GEN, RewriteSystem, SkeinElem, apply_morphism, elem_chebyshev,
    elem_of, make_presentation, mul, reduce, word_of,
)
from .torus import canonical_pair


class CurveError(ValueError):
    pass


class NotInSpanError(CurveError):
    """The element does not lie in the curve-basis span at the given bound."""


VARIANTS = ("geometric", "power", "threaded")


@dataclass(frozen=True)
class CurveIndex:
    """Canonical curve class (n, k) with its arc/knot kind and basis variant."""

    n: int
    k: int
    variant: str = "threaded"

    def __post_init__(self):
        if (self.n, self.k) == (0, 0):
            raise CurveError("(0, 0) does not index a curve")
        if self.variant not in VARIANTS:
            raise CurveError(f"unknown variant {self.variant!r}")
        n, k = canonical_pair(self.n, self.k)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "k", k)

    @property
    def kind(self) -> str:
        """Arcs join the two punctures; knots are loops.  Parity decides."""
        return "knot" if (self.n - self.k) % 2 == 0 else "arc"

    @property
    def depth(self) -> int:
        return gcd(abs(self.n), abs(self.k))

    def primitive(self) -> tuple[int, int]:
        d = self.depth
        return (self.n // d, self.k // d)

    def pair(self) -> tuple[int, int]:
        return (self.n, self.k)


def classify(n: int, k: int, variant: str = "threaded") -> CurveIndex:
    """Canonical CurveIndex for (n, k); rejects (0, 0)."""
    return CurveIndex(n, k, variant)


def _as_pair(c) -> tuple[int, int]:
    if isinstance(c, CurveIndex):
        return c.pair()
    return canonical_pair(*c)


# ---------------------------------------------------------------------------
# The congruence-type action on curve indices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LambdaMatrix:
    """2x2 integer matrix with determinant one, a odd and c even."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise CurveError("determinant must be 1")
        if self.a % 2 == 0 or self.c % 2 != 0:
            raise CurveError("membership requires a odd and c even")

    def __matmul__(self, other: "LambdaMatrix") -> "LambdaMatrix":
        return LambdaMatrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d)


def lambda_act(M: LambdaMatrix, c: CurveIndex) -> CurveIndex:
    """Action on curve indices; preserves the arc/knot kind."""
    n, k = c.n, c.k
    n2 = M.c * (n + k) // 2 + M.d * n
    k2 = (n * (2 * M.a - M.c + 4 * M.b - 2 * M.d)) // 2 + (k * (2 * M.a - M.c)) // 2
    return CurveIndex(n2, k2, c.variant)


def intersection_number(c1: CurveIndex, c2: CurveIndex) -> int:
    """Geometric intersection number of two primitive classes: |n1 k2 - n2 k1|."""
    if c1.depth != 1 or c2.depth != 1:
        raise CurveError("intersection numbers are defined for primitive classes")
    return abs(c1.n * c2.k - c2.n * c1.k)


# ---------------------------------------------------------------------------
# Expansions over threaded curves and boundary monomials
# ---------------------------------------------------------------------------


BKey = tuple[int, int]              # (i, j): d0^i d1^j
TKey = tuple[int, int, int, int]    # (n, k, i, j)


class CurveExpansion:
    """Sum of threaded curves times boundary monomials, plus a scalar part.

    Coefficients are Laurent polynomials in A^(1/2); the scalar part keeps its
    own boundary-monomial layers.
    """

    __slots__ = ("terms", "scalar")

    def __init__(self, terms: dict[TKey, HalfLaurent] | None = None,
                 scalar: dict[BKey, HalfLaurent] | None = None):
        self.terms: dict[TKey, HalfLaurent] = {}
        for (n, k, i, j), c in (terms or {}).items():
            if not c.is_zero():
                cn, ck = canonical_pair(n, k)
                self.terms[(cn, ck, i, j)] = c
        self.scalar: dict[BKey, HalfLaurent] = {
            ij: c for ij, c in (scalar or {}).items() if not c.is_zero()}

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zero() -> "CurveExpansion":
        return CurveExpansion()

    @staticmethod
    def curve(n: int, k: int, coeff: HalfLaurent | int = 1,
              dpow: BKey = (0, 0)) -> "CurveExpansion":
        coeff = coeff if isinstance(coeff, HalfLaurent) else HalfLaurent.from_int(coeff)
        if (n, k) == (0, 0):
            # threaded empty class is the scalar 2
            return CurveExpansion(scalar={dpow: coeff * 2})
        return CurveExpansion({(n, k, dpow[0], dpow[1]): coeff})

    @staticmethod
    def from_scalar(coeff: HalfLaurent | int, dpow: BKey = (0, 0)) -> "CurveExpansion":
        coeff = coeff if isinstance(coeff, HalfLaurent) else HalfLaurent.from_int(coeff)
        return CurveExpansion(scalar={dpow: coeff})

    @staticmethod
    def from_boundary_poly(c: CoeffElem) -> "CurveExpansion":
        return CurveExpansion(scalar=c.boundary_profile())

    # -- arithmetic ---------------------------------------------------------------

    def __add__(self, other: "CurveExpansion") -> "CurveExpansion":
        terms = dict(self.terms)
        for key, c in other.terms.items():
            n = terms.get(key)
            n = c if n is None else n + c
            if n.is_zero():
                terms.pop(key, None)
            else:
                terms[key] = n
        scalar = dict(self.scalar)
        for key, c in other.scalar.items():
            n = scalar.get(key)
            n = c if n is None else n + c
            if n.is_zero():
                scalar.pop(key, None)
            else:
                scalar[key] = n
        out = CurveExpansion()
        out.terms, out.scalar = terms, scalar
        return out

    def __sub__(self, other: "CurveExpansion") -> "CurveExpansion":
        return self + other.scale(-1)

    def scale(self, c: HalfLaurent | int) -> "CurveExpansion":
        c = c if isinstance(c, HalfLaurent) else HalfLaurent.from_int(c)
        if c.is_zero():
            return CurveExpansion.zero()
        out = CurveExpansion()
        out.terms = {k: t * c for k, t in self.terms.items()}
        out.scalar = {k: t * c for k, t in self.scalar.items()}
        return out

    def times_boundary(self, i: int, j: int) -> "CurveExpansion":
        """Multiply by d0^i d1^j."""
        out = CurveExpansion()
        out.terms = {(n, k, a + i, b + j): c
                     for (n, k, a, b), c in self.terms.items()}
        out.scalar = {(a + i, b + j): c for (a, b), c in self.scalar.items()}
        return out

    def times_coeff(self, c: CoeffElem) -> "CurveExpansion":
        """Multiply by a scalar-ring element (no puncture weights)."""
        out = CurveExpansion.zero()
        for (i, j), hl in c.boundary_profile().items():
            out = out + self.times_boundary(i, j).scale(hl)
        return out

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, CurveExpansion)
                and self.terms == other.terms and self.scalar == other.scalar)

    def is_zero(self) -> bool:
        return not self.terms and not self.scalar

    # -- views ------------------------------------------------------------------

    def scalar_coeff_elem(self) -> CoeffElem:
        out = CoeffElem.zero()
        for (i, j), hl in self.scalar.items():
            out = out + CoeffElem.from_half(hl) * CoeffElem.monomial(d0=i, d1=j)
        return out

    def grouped(self) -> tuple[dict[tuple[int, int, int, int], HalfLaurent],
                               dict[tuple[int, int], HalfLaurent]]:
        """Rewrite boundary dependence over s = d0 + d1 and t = d0 d1 + (A+A^-1)^2.

        Only symmetric boundary layers can be grouped; asymmetry raises.
        Returns ({(n, k, es, et): coeff}, {(es, et): coeff}).
        """
        curve_layers: dict[tuple[int, int], dict[BKey, HalfLaurent]] = {}
        for (n, k, i, j), c in self.terms.items():
            curve_layers.setdefault((n, k), {})[(i, j)] = c
        terms = {}
        for (n, k), layers in curve_layers.items():
            for (es, et), c in _group_boundary(layers).items():
                terms[(n, k, es, et)] = c
        return terms, _group_boundary(self.scalar)

    def to_skein(self) -> SkeinElem:
        """Realize the expansion as a normal-form element (oracle view)."""
        out = SkeinElem.zero()
        for (n, k, i, j), c in self.terms.items():
            coeff = CoeffElem.from_half(c) * CoeffElem.monomial(d0=i, d1=j)
            out = out + realize(CurveIndex(n, k)).scale(coeff)
        out = out + SkeinElem.from_scalar(self.scalar_coeff_elem())
        return reduce(out, system())

    def to_json_obj(self) -> dict:
        return {
            "terms": [{"curve": [n, k], "threaded": True, "dpow": [i, j],
                       "coeff": {str(e): str(c) for e, c in coeff.sorted_terms()}}
                      for (n, k, i, j), coeff in sorted(self.terms.items())],
            "scalar": self.scalar_coeff_elem().to_json_obj(),
        }

    def __repr__(self) -> str:
        bits = []
        for (n, k, i, j), c in sorted(self.terms.items()):
            d = f"*d0^{i}" * (i > 0) + f"*d1^{j}" * (j > 0)
            bits.append(f"({c})*C({n},{k}){d}")
        for (i, j), c in sorted(self.scalar.items()):
            d = "*".join(filter(None, [f"d0^{i}" if i else "", f"d1^{j}" if j else ""]))
            bits.append(f"({c})*{d}" if d else f"({c})")
        return " + ".join(bits) if bits else "0"


@lru_cache(maxsize=None)
def _cheb_poly(d: int) -> tuple[tuple[int, int], ...]:
    """T_d as a plain polynomial: ((power, coefficient), ...)."""
    prev, cur = {0: 2}, {1: 1}
    if d == 0:
        return tuple(prev.items())
    for _ in range(d - 1):
        nxt = {m + 1: c for m, c in cur.items()}
        for m, c in prev.items():
            nxt[m] = nxt.get(m, 0) - c
        prev, cur = cur, {m: c for m, c in nxt.items() if c}
    return tuple(sorted(cur.items()))


def geometric_view(e: "CurveExpansion") -> tuple[dict[TKey, HalfLaurent],
                                                 dict[BKey, HalfLaurent]]:
    """Rewrite a threaded expansion over geometric-basis curves.

    Knot multiples unfold through the Chebyshev polynomial into powers (which
    are the geometric classes); depth-2 arc multiples already coincide with
    their geometric class.  Deeper arc multiples are outside this calculus.
    Returns (curve terms, scalar layers).
    """
    terms: dict[TKey, HalfLaurent] = {}
    scalar: dict[BKey, HalfLaurent] = {k: v for k, v in e.scalar.items()}

    def add_term(key, c):
        cur = terms.get(key, HalfLaurent.zero()) + c
        if cur.is_zero():
            terms.pop(key, None)
        else:
            terms[key] = cur

    def add_scalar(key, c):
        cur = scalar.get(key, HalfLaurent.zero()) + c
        if cur.is_zero():
            scalar.pop(key, None)
        else:
            scalar[key] = cur

    for (n, k, i, j), c in e.terms.items():
        idx = CurveIndex(n, k)
        d = idx.depth
        if d == 1:
            add_term((n, k, i, j), c)
        elif _is_arc(*idx.primitive()):
            if d != 2:
                raise CurveError("geometric view of depth >= 3 arc multiples "
                                 "is outside this calculus")
            add_term((n, k, i, j), c)
        else:
            N, K = idx.primitive()
            for m, coeff in _cheb_poly(d):
                if m == 0:
                    add_scalar((i, j), c * coeff)
                else:
                    cn, ck = canonical_pair(m * N, m * K)
                    add_term((cn, ck, i, j), c * coeff)
    return terms, scalar


def _group_boundary(layers: dict[BKey, HalfLaurent]
                    ) -> dict[tuple[int, int], HalfLaurent]:
    """Express a symmetric polynomial in d0, d1 over s = d0+d1, t = d0 d1 + (A+A^-1)^2."""
    work = {k: v for k, v in layers.items() if not v.is_zero()}
    # first pass: elementary symmetric coordinates (s, p) with p = d0 d1
    sp: dict[tuple[int, int], HalfLaurent] = {}
    while work:
        i, j = max(work, key=lambda ij: (ij[0] + ij[1], ij[0]))
        c = work[(i, j)]
        if i < j or (i != j and work.get((j, i)) != c):
            raise CurveError("boundary layers are not symmetric; cannot group")
        es, ep = i - j, j
        sp[(es, ep)] = sp.get((es, ep), HalfLaurent.zero()) + c
        # subtract c * p^ep * s^es expanded into d0^a d1^b monomials
        for (a, b), n in _expand_sp(es, ep).items():
            key = (a, b)
            cur = work.get(key, HalfLaurent.zero()) - c * n
            if cur.is_zero():
                work.pop(key, None)
            else:
                work[key] = cur
    # second pass: p = t - (A + A^-1)^2
    shift = HalfLaurent({4: 1, 0: 2, -4: 1})  # (A + A^-1)^2
    out: dict[tuple[int, int], HalfLaurent] = {}
    for (es, ep), c in sp.items():
        for m in range(ep + 1):
            binom = _binomial(ep, m)
            contrib = c * ((-1) ** (ep - m) * binom) * shift ** (ep - m)
            key = (es, m)
            cur = out.get(key, HalfLaurent.zero()) + contrib
            if cur.is_zero():
                out.pop(key, None)
            else:
                out[key] = cur
    return out


@lru_cache(maxsize=None)
def _expand_sp(es: int, ep: int) -> dict[BKey, int]:
    """Monomial expansion of (d0 + d1)^es * (d0 d1)^ep."""
    out: dict[BKey, int] = {}
    for m in range(es + 1):
        out[(ep + m, ep + es - m)] = _binomial(es, m)
    return out


def _binomial(n: int, m: int) -> int:
    from math import comb
    return comb(n, m)


# ---------------------------------------------------------------------------
# Realization
# ---------------------------------------------------------------------------


@lru_cache(maxsize=1)
def system() -> RewriteSystem:
    """The three-generator presentation at puncture weights one."""
    return make_presentation(RY022_3GEN, v_one=True)


def _boundary_sum_elem() -> SkeinElem:
    return SkeinElem.from_scalar(CoeffElem.monomial(d0=1) + CoeffElem.monomial(d1=1))


def _mirror(x: SkeinElem) -> SkeinElem:
    """The (n, k) -> (n, -k) symmetry: A -> A^(-1), gamma -> the (1,-1) arc-pair."""
    sysm = system()
    from .coeff import Ah
    images = {
        "b": elem_of(sysm, "b"),
        "a": elem_of(sysm, "a"),
        "g": _antidiagonal(),
    }
    return apply_morphism(x, sysm, sysm, images, scalar_images={"Ah": Ah(-1)})


@lru_cache(maxsize=1)
def _antidiagonal() -> SkeinElem:
    """Normal form of the (1, -1) class: A b a - A^2 g - A (d0 + d1)."""
    sysm = system()
    return (SkeinElem.from_word(word_of(sysm, "b", "a"), A())
            - SkeinElem.from_word(word_of(sysm, "g"), A(2))
            - _boundary_sum_elem().scale(A()))


def _split_pair(n: int, k: int) -> tuple[tuple[int, int], tuple[int, int]]:
    """Split coprime (n, k), n >= 2, k >= 1 into (u,v) + (w,z) with u z - v w = 1."""
    w = pow(-k, -1, n) % n
    z = (1 + k * w) // n
    return (n - w, k - z), (w, z)


def _is_arc(n: int, k: int) -> bool:
    return (n - k) % 2 != 0


@lru_cache(maxsize=None)
def _realize_primitive(n: int, k: int) -> SkeinElem:
    """Normal form of a primitive curve class, canonical indices.

    Base classes are the three generators and the antidiagonal arc pair; all
    others invert the determinant-one product-to-sum along an extended-gcd
    splitting, with the mirror symmetry covering the negative cone.
    """
    sysm = system()
    if (n, k) == (0, 1):
        return elem_of(sysm, "a")
    if (n, k) == (1, 0):
        return elem_of(sysm, "b")
    if (n, k) == (1, 1):
        return elem_of(sysm, "g")
    if (n, k) == (1, -1):
        return _antidiagonal()
    if k < 0:
        return _mirror(_realize_primitive(n, -k))
    if n == 1:
        (u, v), (w, z) = (1, k - 1), (0, 1)
    else:
        (u, v), (w, z) = _split_pair(n, k)
    delta = _is_arc(u, v) and _is_arc(w, z)
    prod = mul(_realize_primitive(*canonical_pair(u, v)),
               _realize_primitive(*canonical_pair(w, z)), sysm)
    diff = _realize_primitive(*canonical_pair(u - w, v - z))
    out = prod - diff.scale(A(-1))
    if delta:
        out = out - _boundary_sum_elem()
    return out.scale(A(-1))


def realize(c: CurveIndex | tuple[int, int], variant: str | None = None) -> SkeinElem:
    """Normal-form element of a curve class in the weight-one specialization.

    Variants: threaded (T_d of the primitive), power (d-th power), geometric
    (the simple diagram: equals the power for knots and depth <= 1; for arcs of
    depth 2 it is the annular neighborhood boundary, i.e. the threaded class).
    """
    if isinstance(c, CurveIndex):
        variant = variant or c.variant
        idx = c if variant == c.variant else CurveIndex(c.n, c.k, variant)
    else:
        idx = CurveIndex(*c, variant or "threaded")
    return _realize_cached(idx.n, idx.k, idx.variant)


@lru_cache(maxsize=None)
def _realize_cached(n: int, k: int, variant: str) -> SkeinElem:
    idx = CurveIndex(n, k, variant)
    d = idx.depth
    prim = _realize_primitive(*idx.primitive())
    if d == 1:
        return prim
    if variant == "threaded":
        return elem_chebyshev(d, prim, system())
    if variant == "power":
        out = prim
        for _ in range(d - 1):
            out = mul(out, prim, system())
        return out
    # geometric
    if _is_arc(*idx.primitive()):
        if d == 2:
            return elem_chebyshev(2, prim, system())
        raise CurveError("geometric variant of depth >= 3 arc multiples "
                         "is outside this calculus")
    return _realize_cached(n, k, "power")


# ---------------------------------------------------------------------------
# Determinant-one product-to-sum
# ---------------------------------------------------------------------------


def det1_product(c1: CurveIndex | tuple[int, int],
                 c2: CurveIndex | tuple[int, int]) -> CurveExpansion:
    """(n1,k1) * (n2,k2) for determinant +-1 pairs.

    v^(arcs) c1 * c2 = A^(det) (sum) + A^(-det) (difference) + arcs * (d0 + d1),
    evaluated at puncture weights one.  Sum and difference are automatically
    primitive, so the geometric output is already threaded.
    """
    (n1, k1), (n2, k2) = _as_pair(c1), _as_pair(c2)
    det = n1 * k2 - n2 * k1
    if det not in (1, -1):
        raise CurveError(f"determinant is {det}, not +-1")
    out = CurveExpansion.curve(n1 + n2, k1 + k2, HalfLaurent.monomial(2 * det))
    out = out + CurveExpansion.curve(n1 - n2, k1 - k2, HalfLaurent.monomial(-2 * det))
    if _is_arc(n1, k1) and _is_arc(n2, k2):
        out = out + CurveExpansion.from_scalar(1, (1, 0)) \
            + CurveExpansion.from_scalar(1, (0, 1))
    return out


# ---------------------------------------------------------------------------
# Expansion into the threaded-curve basis
# ---------------------------------------------------------------------------


def _wdeg(word: tuple[int, ...], sysm: RewriteSystem) -> int:
    """Curve degree of a word: letters weigh 1, the diagonal generator 2."""
    return len(word) + sum(1 for x in word if x in sysm.gamma)


@lru_cache(maxsize=None)
def _top_part(n: int, k: int) -> dict[tuple[int, ...], HalfLaurent]:
    """Top-degree word layer of realize((n,k)_T): boundary-free by construction."""
    sysm = system()
    elem = realize(CurveIndex(n, k))
    deg = abs(n) + abs(k)
    out = {}
    for word, c in elem.terms.items():
        if _wdeg(word, sysm) == deg:
            out[word] = c.pure_half_laurent()
    if not out:
        raise CurveError(f"degenerate top layer for curve ({n}, {k})")
    return out


def _layer_candidates(deg: int, bound: int) -> list[tuple[int, int]]:
    out = []
    for n in range(0, min(deg, bound) + 1):
        k = deg - n
        if k <= bound:
            if n == 0:
                if k > 0:
                    out.append((0, k))
            else:
                out.append((n, k))
                if k > 0:
                    out.append((n, -k))
    return sorted(out)


def expand_in_curves(x: SkeinElem, bound: int = 16) -> CurveExpansion:
    """Write an element over threaded curves times boundary monomials, exactly.

    Peels words from the highest curve degree down: the top layer of the input
    must be a combination of the top layers of same-degree curve realizations
    (an exact overdetermined solve per boundary monomial); the matched multiples
    are subtracted and the remainder recursed.  Retries once with a doubled
    bound before giving up.
    """
    sysm = system()
    x = reduce(x, sysm)
    attempt_bound = bound
    while True:
        try:
            return _expand(x, attempt_bound, sysm)
        except NotInSpanError:
            if attempt_bound >= 4 * bound:
                raise
            attempt_bound *= 2


def _expand(x: SkeinElem, bound: int, sysm: RewriteSystem) -> CurveExpansion:
    result = CurveExpansion.zero()
    work = x
    while not work.is_zero():
        deg = max(_wdeg(w, sysm) for w in work.terms)
        if deg == 0:
            c = work.terms[()]
            result = result + CurveExpansion.from_boundary_poly(c)
            break
        layer_words = sorted(w for w in work.terms if _wdeg(w, sysm) == deg)
        cands = _layer_candidates(deg, bound)
        if not cands:
            raise NotInSpanError(f"no curves of degree {deg} within bound {bound}")
        tops = [_top_part(n, k) for (n, k) in cands]
        words = sorted(set(layer_words).union(*[t.keys() for t in tops]))
        rows = [[t.get(w, HalfLaurent.zero()) for t in tops] for w in words]
        # right-hand sides: one per boundary monomial appearing at this degree
        layers: dict[BKey, dict[tuple[int, ...], HalfLaurent]] = {}
        for w in layer_words:
            for ij, hl in work.terms[w].boundary_profile().items():
                layers.setdefault(ij, {})[w] = hl
        keys = sorted(layers)
        rhs_cols = [[layers[ij].get(w, HalfLaurent.zero()) for w in words]
                    for ij in keys]
        sols = solve_hl_system(rows, rhs_cols)
        if sols is None:
            raise NotInSpanError(f"layer of degree {deg} is outside the curve span")
        correction = SkeinElem.zero()
        for ij, sol in zip(keys, sols):
            for (n, k), coeff in zip(cands, sol):
                if coeff.is_zero():
                    continue
                result = result + CurveExpansion(
                    {(n, k, ij[0], ij[1]): coeff})
                scal = CoeffElem.from_half(coeff) \
                    * CoeffElem.monomial(d0=ij[0], d1=ij[1])
                correction = correction + realize(CurveIndex(n, k)).scale(scal)
        work = work - correction
        if any(_wdeg(w, sysm) >= deg for w in work.terms):
            raise NotInSpanError(f"degree-{deg} layer did not cancel")
    return result
