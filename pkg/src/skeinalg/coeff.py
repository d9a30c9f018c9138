"""Exact arithmetic in the commutative scalar ring Z[A^(1/2), A^(-1/2), v1^(+-1), v2^(+-1), d0, d1].

Every symbolic computation in this package runs over this ring.  Elements are
stored sparsely as integer-coefficient dictionaries keyed by exponent vectors;
the exponent of A is stored doubled so that the distinguished square root
A^(1/2) needs no rational exponents.  The two puncture weights v1, v2 are
invertible, the two boundary weights d0, d1 are polynomial generators (never
inverted).

Also provides the Chebyshev polynomials of the first kind (plain and
normalized) over any carrier with a multiplication, and balanced quantum
integers [n].
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Union

# Exponent vector (a2, ev1, ev2, ed0, ed1): a2 is the doubled exponent of A,
# i.e. the key k stands for A^(k/2).  ed0, ed1 are always >= 0.
ExpVec = tuple[int, int, int, int, int]

_ZERO_EXP: ExpVec = (0, 0, 0, 0, 0)


class CoeffError(ValueError):
    """Raised on invalid ring operations (bad exponents, non-unit division...)."""


# ---------------------------------------------------------------------------
# Laurent polynomials in A^(1/2) alone
# ---------------------------------------------------------------------------


class HalfLaurent:
    """Laurent polynomial in A^(1/2) with integer coefficients.

    Keys of the internal dict are doubled exponents of A (so key 1 is A^(1/2),
    key 2 is A, key -4 is A^(-2)).  Zero coefficients are never stored, which
    makes the representation canonical.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict[int, int] | None = None):
        self.terms: dict[int, int] = {}
        if terms:
            for e, c in terms.items():
                if c:
                    self.terms[e] = c

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero() -> "HalfLaurent":
        return HalfLaurent()

    @staticmethod
    def one() -> "HalfLaurent":
        return HalfLaurent({0: 1})

    @staticmethod
    def monomial(a2: int, c: int = 1) -> "HalfLaurent":
        """c * A^(a2/2)."""
        return HalfLaurent({a2: c})

    @staticmethod
    def from_int(n: int) -> "HalfLaurent":
        return HalfLaurent({0: n})

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {0: 1}

    def is_unit_monomial(self) -> bool:
        """True for +-A^(k/2), the invertible monomials."""
        return len(self.terms) == 1 and next(iter(self.terms.values())) in (1, -1)

    def is_nonneg(self) -> bool:
        """True when all integer coefficients are >= 0 (lies in Z>=0[A^(+-1/2)])."""
        return all(c >= 0 for c in self.terms.values())

    def is_palindromic(self) -> bool:
        """True when invariant under A <-> A^(-1) up to the central shift."""
        lo = min(self.terms) if self.terms else 0
        hi = max(self.terms) if self.terms else 0
        return all(self.terms.get(lo + hi - e) == c for e, c in self.terms.items())

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "HalfLaurent") -> "HalfLaurent":
        out = dict(self.terms)
        for e, c in other.terms.items():
            n = out.get(e, 0) + c
            if n:
                out[e] = n
            else:
                out.pop(e, None)
        res = HalfLaurent()
        res.terms = out
        return res

    def __neg__(self) -> "HalfLaurent":
        res = HalfLaurent()
        res.terms = {e: -c for e, c in self.terms.items()}
        return res

    def __sub__(self, other: "HalfLaurent") -> "HalfLaurent":
        return self + (-other)

    def __mul__(self, other: Union["HalfLaurent", int]) -> "HalfLaurent":
        if isinstance(other, int):
            res = HalfLaurent()
            if other:
                res.terms = {e: c * other for e, c in self.terms.items()}
            return res
        out: dict[int, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                n = out.get(e, 0) + c1 * c2
                if n:
                    out[e] = n
                else:
                    out.pop(e, None)
        res = HalfLaurent()
        res.terms = out
        return res

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "HalfLaurent":
        if k < 0:
            return self.inv_unit() ** (-k)
        res = HalfLaurent.one()
        base = self
        while k:
            if k & 1:
                res = res * base
            base = base * base
            k >>= 1
        return res

    def inv_unit(self) -> "HalfLaurent":
        if not self.is_unit_monomial():
            raise CoeffError(f"not an invertible monomial: {self}")
        (e, c), = self.terms.items()
        return HalfLaurent({-e: c})

    def shift(self, a2: int) -> "HalfLaurent":
        """Multiply by A^(a2/2)."""
        res = HalfLaurent()
        res.terms = {e + a2: c for e, c in self.terms.items()}
        return res

    def __eq__(self, other: object) -> bool:
        return isinstance(other, HalfLaurent) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    # -- substitution / evaluation -------------------------------------------

    def subs_ahalf(self, image: "HalfLaurent") -> "HalfLaurent":
        """Ring map sending A^(1/2) to `image` (must be an invertible monomial)."""
        if not image.is_unit_monomial():
            raise CoeffError("image of A^(1/2) must be an invertible monomial")
        out = HalfLaurent.zero()
        for e, c in self.terms.items():
            out = out + (image ** e) * c
        return out

    def evaluate(self, a_half: complex) -> complex:
        if a_half == 0:
            raise CoeffError("A^(1/2) is a unit; zero value not allowed")
        return sum(c * a_half ** e for e, c in self.terms.items())

    # -- presentation ----------------------------------------------------------

    def sorted_terms(self) -> list[tuple[int, int]]:
        return sorted(self.terms.items())

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for e, c in self.sorted_terms():
            if e == 0:
                bits.append(f"{c}")
            else:
                if e % 2 == 0:
                    s = "A" if e == 2 else f"A^{e // 2}"
                else:
                    s = "Ah" if e == 1 else f"Ah^{e}"
                if c == 1:
                    bits.append(s)
                elif c == -1:
                    bits.append(f"-{s}")
                else:
                    bits.append(f"{c}*{s}")
        out = bits[0]
        for b in bits[1:]:
            out += " - " + b[1:] if b.startswith("-") else " + " + b
        return out


# ---------------------------------------------------------------------------
# Full coefficient ring
# ---------------------------------------------------------------------------


class CoeffElem:
    """Element of Z[A^(+-1/2), v1^(+-1), v2^(+-1), d0, d1], stored sparsely.

    The dictionary maps exponent vectors (a2, ev1, ev2, ed0, ed1) to nonzero
    integers; `a2` is the doubled A-exponent, the boundary exponents ed0, ed1
    must be >= 0.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict[ExpVec, int] | None = None):
        self.terms: dict[ExpVec, int] = {}
        if terms:
            for exp, c in terms.items():
                if c:
                    if exp[3] < 0 or exp[4] < 0:
                        raise CoeffError("boundary weights d0, d1 are never inverted")
                    self.terms[exp] = c

    # -- constructors ----------------------------------------------------------

    @staticmethod
    def zero() -> "CoeffElem":
        return CoeffElem()

    @staticmethod
    def one() -> "CoeffElem":
        return CoeffElem({_ZERO_EXP: 1})

    @staticmethod
    def from_int(n: int) -> "CoeffElem":
        return CoeffElem({_ZERO_EXP: n})

    @staticmethod
    def monomial(a2: int = 0, v1: int = 0, v2: int = 0, d0: int = 0, d1: int = 0,
                 c: int = 1) -> "CoeffElem":
        return CoeffElem({(a2, v1, v2, d0, d1): c})

    @staticmethod
    def from_half(h: HalfLaurent) -> "CoeffElem":
        return CoeffElem({(e, 0, 0, 0, 0): c for e, c in h.terms.items()})

    @staticmethod
    def coerce(x: Union["CoeffElem", HalfLaurent, int]) -> "CoeffElem":
        if isinstance(x, CoeffElem):
            return x
        if isinstance(x, HalfLaurent):
            return CoeffElem.from_half(x)
        if isinstance(x, int):
            return CoeffElem.from_int(x)
        raise CoeffError(f"cannot coerce {type(x).__name__} into the scalar ring")

    # -- predicates -------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {_ZERO_EXP: 1}

    def is_unit_monomial(self) -> bool:
        """True for +-(monomial in A^(1/2), v1, v2) with no boundary weights."""
        if len(self.terms) != 1:
            return False
        (exp, c), = self.terms.items()
        return c in (1, -1) and exp[3] == 0 and exp[4] == 0

    def pure_half_laurent(self) -> HalfLaurent:
        """Convert back to a Laurent polynomial in A^(1/2); error if v, d appear."""
        out: dict[int, int] = {}
        for exp, c in self.terms.items():
            if exp[1] or exp[2] or exp[3] or exp[4]:
                raise CoeffError(f"not a pure A-polynomial: {self}")
            out[exp[0]] = c
        return HalfLaurent(out)

    def boundary_profile(self) -> dict[tuple[int, int], HalfLaurent]:
        """Split into d0^i d1^j layers; error if puncture weights appear."""
        out: dict[tuple[int, int], dict[int, int]] = {}
        for (a2, e1, e2, i, j), c in self.terms.items():
            if e1 or e2:
                raise CoeffError(f"puncture weights present: {self}")
            out.setdefault((i, j), {})[a2] = c
        return {k: HalfLaurent(v) for k, v in out.items()}

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other: Union["CoeffElem", int]) -> "CoeffElem":
        other = CoeffElem.coerce(other)
        out = dict(self.terms)
        for exp, c in other.terms.items():
            n = out.get(exp, 0) + c
            if n:
                out[exp] = n
            else:
                out.pop(exp, None)
        res = CoeffElem()
        res.terms = out
        return res

    __radd__ = __add__

    def __neg__(self) -> "CoeffElem":
        res = CoeffElem()
        res.terms = {exp: -c for exp, c in self.terms.items()}
        return res

    def __sub__(self, other: Union["CoeffElem", int]) -> "CoeffElem":
        return self + (-CoeffElem.coerce(other))

    def __rsub__(self, other: Union["CoeffElem", int]) -> "CoeffElem":
        return CoeffElem.coerce(other) + (-self)

    def __mul__(self, other: Union["CoeffElem", HalfLaurent, int]) -> "CoeffElem":
        if isinstance(other, int):
            res = CoeffElem()
            if other:
                res.terms = {exp: c * other for exp, c in self.terms.items()}
            return res
        other = CoeffElem.coerce(other)
        out: dict[ExpVec, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2],
                       e1[3] + e2[3], e1[4] + e2[4])
                n = out.get(exp, 0) + c1 * c2
                if n:
                    out[exp] = n
                else:
                    out.pop(exp, None)
        res = CoeffElem()
        res.terms = out
        return res

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "CoeffElem":
        if k < 0:
            return self.inv_unit() ** (-k)
        res = CoeffElem.one()
        base = self
        while k:
            if k & 1:
                res = res * base
            base = base * base
            k >>= 1
        return res

    def inv_unit(self) -> "CoeffElem":
        if not self.is_unit_monomial():
            raise CoeffError(f"not an invertible monomial: {self}")
        (exp, c), = self.terms.items()
        return CoeffElem({(-exp[0], -exp[1], -exp[2], 0, 0): c})

    def divexact_unit(self, unit: "CoeffElem") -> "CoeffElem":
        """Exact division by an invertible monomial in A^(1/2), v1, v2."""
        return self * unit.inv_unit()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self.terms == ({} if other == 0 else {_ZERO_EXP: other})
        return isinstance(other, CoeffElem) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    # -- substitution homomorphisms --------------------------------------------

    def subs(self,
             a_half: Union["CoeffElem", HalfLaurent, int, None] = None,
             v1: Union["CoeffElem", int, None] = None,
             v2: Union["CoeffElem", int, None] = None,
             d0: Union["CoeffElem", int, None] = None,
             d1: Union["CoeffElem", int, None] = None) -> "CoeffElem":
        """Apply the ring homomorphism determined by the given images.

        Unassigned variables map to themselves.  Images of the units A^(1/2),
        v1, v2 must be invertible monomials (their exponents can be negative);
        d0, d1 may map to arbitrary ring elements.
        """
        img_ah = CoeffElem.monomial(a2=1) if a_half is None else CoeffElem.coerce(a_half)
        img_v1 = CoeffElem.monomial(v1=1) if v1 is None else CoeffElem.coerce(v1)
        img_v2 = CoeffElem.monomial(v2=1) if v2 is None else CoeffElem.coerce(v2)
        img_d0 = CoeffElem.monomial(d0=1) if d0 is None else CoeffElem.coerce(d0)
        img_d1 = CoeffElem.monomial(d1=1) if d1 is None else CoeffElem.coerce(d1)
        for name, img in (("A^(1/2)", img_ah), ("v1", img_v1), ("v2", img_v2)):
            if not img.is_unit_monomial():
                raise CoeffError(f"image of unit {name} must be an invertible monomial")
        out = CoeffElem.zero()
        for (a2, e1, e2, i, j), c in self.terms.items():
            term = (img_ah ** a2) * (img_v1 ** e1) * (img_v2 ** e2) \
                * (img_d0 ** i) * (img_d1 ** j) * c
            out = out + term
        return out

    def evaluate(self, a_half: complex, v1: complex = 1, v2: complex = 1,
                 d0: complex = 0, d1: complex = 0) -> complex:
        if a_half == 0 or v1 == 0 or v2 == 0:
            raise CoeffError("unit variables must be nonzero")
        total = 0j
        for (a2, e1, e2, i, j), c in self.terms.items():
            total += c * a_half ** a2 * v1 ** e1 * v2 ** e2 * d0 ** i * d1 ** j
        return total

    # -- serialization -----------------------------------------------------------

    def to_json_obj(self) -> list[dict]:
        return [{"exp": list(exp), "c": str(c)}
                for exp, c in sorted(self.terms.items())]

    @staticmethod
    def from_json_obj(obj: Iterable[dict]) -> "CoeffElem":
        terms: dict[ExpVec, int] = {}
        for item in obj:
            exp = tuple(int(e) for e in item["exp"])
            if len(exp) != 5:
                raise CoeffError("exponent vector must have 5 entries")
            terms[exp] = int(item["c"])  # type: ignore[index]
        return CoeffElem(terms)

    # -- presentation ---------------------------------------------------------

    def sorted_terms(self) -> list[tuple[ExpVec, int]]:
        return sorted(self.terms.items())

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        names = ("", "v1", "v2", "d0", "d1")
        bits = []
        for exp, c in self.sorted_terms():
            factors = []
            a2 = exp[0]
            if a2:
                factors.append("A" if a2 == 2 else (f"A^{a2 // 2}" if a2 % 2 == 0
                                                    else ("Ah" if a2 == 1 else f"Ah^{a2}")))
            for idx in range(1, 5):
                e = exp[idx]
                if e == 1:
                    factors.append(names[idx])
                elif e:
                    factors.append(f"{names[idx]}^{e}")
            body = "*".join(factors)
            if not body:
                bits.append(f"{c}")
            elif c == 1:
                bits.append(body)
            elif c == -1:
                bits.append(f"-{body}")
            else:
                bits.append(f"{c}*{body}")
        out = bits[0]
        for b in bits[1:]:
            out += " - " + b[1:] if b.startswith("-") else " + " + b
        return out


# Convenient generators.
def A(k: int = 1) -> CoeffElem:
    """A^k as a ring element."""
    return CoeffElem.monomial(a2=2 * k)


def Ah(k: int = 1) -> CoeffElem:
    """A^(k/2) as a ring element."""
    return CoeffElem.monomial(a2=k)


def V1(k: int = 1) -> CoeffElem:
    return CoeffElem.monomial(v1=k)


def V2(k: int = 1) -> CoeffElem:
    return CoeffElem.monomial(v2=k)


def D0() -> CoeffElem:
    return CoeffElem.monomial(d0=1)


def D1() -> CoeffElem:
    return CoeffElem.monomial(d1=1)


def boundary_sum() -> CoeffElem:
    """d0 + d1, the combined boundary weight."""
    return D0() + D1()


# ---------------------------------------------------------------------------
# ring_arith: the uniform entry point required by the public surface
# ---------------------------------------------------------------------------


def ring_arith(lhs: CoeffElem, op: str, rhs: CoeffElem) -> CoeffElem:
    """Exact +, -, * on ring elements, always returning canonical form."""
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    raise CoeffError(f"unknown ring operation {op!r}")


# ---------------------------------------------------------------------------
# Chebyshev polynomials and quantum integers
# ---------------------------------------------------------------------------


def chebyshev(k: int, x, normalized: bool = False, *,
              mul: Callable | None = None, one=None):
    """First-kind Chebyshev polynomial T_k evaluated on x.

    T_0(x) = 2, T_1(x) = x, T_{k+1}(x) = x T_k(x) - T_{k-1}(x).  The normalized
    variant returns 1 for k = 0 and T_k otherwise.

    Works over any carrier supporting +, - and multiplication; pass `mul` to
    supply a product (e.g. a rewriting-system multiplication) and `one` for the
    carrier's multiplicative identity (needed only for k = 0).
    """
    if k < 0:
        raise CoeffError("Chebyshev index must be >= 0")
    if mul is None:
        mul = lambda a, b: a * b
    if k == 0:
        if one is None:
            one = 1
        return one if normalized else one + one
    if k == 1:
        return x
    two = (one + one) if one is not None else 2
    prev, cur = two, x
    for _ in range(k - 1):
        prev, cur = cur, mul(x, cur) - prev
    return cur


def quantum_int(n: int, qexp2: int = 2) -> HalfLaurent:
    """Balanced quantum integer [n] = q^(1-n) + q^(3-n) + ... + q^(n-1).

    By default q = A; pass qexp2 = 4 for q = A^2.  Rejects n <= 0.
    """
    if n <= 0:
        raise CoeffError("quantum integer requires n >= 1")
    return HalfLaurent({qexp2 * (1 - n + 2 * j): 1 for j in range(n)})


# ---------------------------------------------------------------------------
# Specializations
# ---------------------------------------------------------------------------


Exactish = Union[CoeffElem, HalfLaurent, int, None]


@dataclass(frozen=True)
class Specialization:
    """A (possibly partial) assignment of the five ring variables.

    Exact values (ints or ring elements) give a symbolic substitution; when all
    five variables carry numeric values the result of `specialize` is a complex
    number.  `v_one` is the curve-calculus specialization v1 = v2 = 1.
    """

    a_half: complex | None = None
    v1: Exactish | complex = None
    v2: Exactish | complex = None
    d0: Exactish | complex = None
    d1: Exactish | complex = None
    v_one: bool = False

    def _value(self, name: str):
        val = getattr(self, name)
        if self.v_one and name in ("v1", "v2"):
            return 1
        return val

    def is_numeric(self) -> bool:
        if not isinstance(self.a_half, (int, float, complex)) or self.a_half is None:
            return False
        return all(isinstance(self._value(n), (int, float, complex))
                   and self._value(n) is not None
                   for n in ("v1", "v2", "d0", "d1"))

    def validate(self) -> None:
        if self.a_half == 0:
            raise CoeffError("A^(1/2) is a unit; zero not allowed")
        for name in ("v1", "v2"):
            v = self._value(name)
            if v == 0:
                raise CoeffError(f"{name} is a unit; zero not allowed")


def specialize(x: CoeffElem, s: Specialization) -> CoeffElem | complex:
    """Apply a specialization; numeric when total, symbolic otherwise."""
    s.validate()
    if s.is_numeric():
        return x.evaluate(complex(s.a_half),
                          complex(s._value("v1")), complex(s._value("v2")),
                          complex(s._value("d0")), complex(s._value("d1")))

    def exact(val) -> CoeffElem | None:
        if val is None:
            return None
        if isinstance(val, (CoeffElem, HalfLaurent, int)):
            return CoeffElem.coerce(val)
        raise CoeffError("partial specializations must use exact values")

    if s.a_half is not None:
        if not isinstance(s.a_half, int):
            raise CoeffError("partial specializations must use exact values")
        img_ah: CoeffElem | None = CoeffElem.from_int(s.a_half)
    else:
        img_ah = None
    return x.subs(a_half=img_ah,
                  v1=exact(s._value("v1")), v2=exact(s._value("v2")),
                  d0=exact(s._value("d0")), d1=exact(s._value("d1")))
