"""Free-algebra words, rewriting systems and the presentation registry.

A presentation is an alphabet together with oriented relations (rules) and a
well-founded term order.  Reduction rewrites any element to a canonical normal
form; the local-confluence checker enumerates the overlap ambiguities of the
declared rules and verifies that both branches meet.

The three-generator presentations carry one cubic rule whose declared normal
forms are the sorted words missing at least one letter.  Finitely many subword
rules cannot see every sorted word with all three letters present (the first
stuck word is b a a g), so reduction completes the system lazily: the derived
rule for b a^m g is computed once from the relations themselves and cached.
Confluence of the completed system makes normal forms strategy independent.

Also here: the commutative-polynomial oracle (the quotient onto Z[x,y,z]) and
a generic homomorphism verifier used for the maps between the registered
presentations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Union

from .coeff import A, Ah, CoeffElem, CoeffError, V1, V2, boundary_sum

Word = tuple[int, ...]

# Registered presentation identifiers.
RY022_4GEN = "RY022_4GEN"
RY022_3GEN = "RY022_3GEN"
TORUS_BP = "TORUS_BP"
RY013 = "RY013"
S110 = "S110"

PRESENTATIONS = (RY022_4GEN, RY022_3GEN, TORUS_BP, RY013, S110)

_ALIASES = {p.lower().replace("_", "-"): p for p in PRESENTATIONS}
_ALIASES.update({p: p for p in PRESENTATIONS})


class FreeAlgError(ValueError):
    """Raised on malformed words, alphabet mismatches or broken systems."""


class ReductionBudgetError(RuntimeError):
    """Step budget exceeded: signals a broken term order, never a registry system."""


def normalize_presentation_id(name: str) -> str:
    try:
        return _ALIASES[name.strip().lower().replace("_", "-")]
    except KeyError:
        raise FreeAlgError(f"unknown presentation {name!r}; "
                           f"choose one of {', '.join(PRESENTATIONS)}") from None


# ---------------------------------------------------------------------------
# Elements
# ---------------------------------------------------------------------------


class SkeinElem:
    """Finite linear combination of words with scalar-ring coefficients.

    Words are tuples of letter indices into the owning system's alphabet; the
    element itself does not know the system, so operations that need the term
    order or the rules take the system explicitly.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Word, CoeffElem] | None = None):
        self.terms: dict[Word, CoeffElem] = {}
        if terms:
            for w, c in terms.items():
                if not c.is_zero():
                    self.terms[w] = c

    @staticmethod
    def zero() -> "SkeinElem":
        return SkeinElem()

    @staticmethod
    def one() -> "SkeinElem":
        return SkeinElem({(): CoeffElem.one()})

    @staticmethod
    def from_word(word: Word, c: CoeffElem | int = 1) -> "SkeinElem":
        return SkeinElem({tuple(word): CoeffElem.coerce(c)})

    @staticmethod
    def from_scalar(c: CoeffElem | int) -> "SkeinElem":
        return SkeinElem({(): CoeffElem.coerce(c)})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "SkeinElem") -> "SkeinElem":
        out = dict(self.terms)
        for w, c in other.terms.items():
            n = out.get(w)
            n = c if n is None else n + c
            if n.is_zero():
                out.pop(w, None)
            else:
                out[w] = n
        res = SkeinElem()
        res.terms = out
        return res

    def __neg__(self) -> "SkeinElem":
        res = SkeinElem()
        res.terms = {w: -c for w, c in self.terms.items()}
        return res

    def __sub__(self, other: "SkeinElem") -> "SkeinElem":
        return self + (-other)

    def scale(self, c: CoeffElem | int) -> "SkeinElem":
        c = CoeffElem.coerce(c)
        if c.is_zero():
            return SkeinElem.zero()
        res = SkeinElem()
        res.terms = {w: t * c for w, t in self.terms.items()}
        return res

    def concat(self, other: "SkeinElem") -> "SkeinElem":
        """Free (unreduced) product: concatenate all word pairs."""
        out: dict[Word, CoeffElem] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                n = out.get(w)
                p = c1 * c2
                n = p if n is None else n + p
                if n.is_zero():
                    out.pop(w, None)
                else:
                    out[w] = n
        res = SkeinElem()
        res.terms = out
        return res

    def map_coeffs(self, f) -> "SkeinElem":
        res = SkeinElem()
        for w, c in self.terms.items():
            n = f(c)
            if not n.is_zero():
                res.terms[w] = n
        return res

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SkeinElem) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset((w, c) for w, c in self.terms.items()))

    def max_word_len(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def render(self, letters: tuple[str, ...]) -> str:
        if not self.terms:
            return "0"
        bits = []
        for w in sorted(self.terms, key=lambda w: (len(w), w)):
            c = self.terms[w]
            body = "*".join(letters[i] for i in w) if w else "1"
            bits.append(f"({c})*{body}")
        return " + ".join(bits)


# ---------------------------------------------------------------------------
# Rewriting systems
# ---------------------------------------------------------------------------


@dataclass
class RewriteSystem:
    """Oriented relation set with a total well-founded term order.

    `letters` is ordered by the letter order used for the reduced degree;
    `gamma` lists the letter indices counted by the third order component.
    `corner`, when set, names the (g0, g1, g2) triple of the cubic rule so that
    reduction can derive the longer corner rules g0 g1^m g2 on demand.
    """

    pres_id: str
    letters: tuple[str, ...]
    rules: dict[Word, SkeinElem]
    gamma: frozenset[int] = frozenset()
    corner: tuple[int, int, int] | None = None
    step_budget: int = 10 ** 6

    def __post_init__(self):
        self._derived: dict[int, SkeinElem] = {}
        self._deriving: set[int] = set()
        self._word_mul_cache: dict[tuple[Word, Word], SkeinElem] = {}
        self._max_decl_len = max((len(l) for l in self.rules), default=0)
        self.check_rule_compatibility()

    # -- term order -----------------------------------------------------------

    def order_key(self, word: Word):
        """(length, reduced degree, gamma count, lex) -- total and well founded."""
        n = len(word)
        reduced = 0
        for i in range(n - 1):
            if word[i] > word[i + 1]:
                reduced = n
                break
        gc = sum(1 for x in word if x in self.gamma)
        return (n, reduced, gc, word)

    def check_rule_compatibility(self) -> None:
        """Every rule must strictly decrease the term order; fails loudly."""
        for lhs, rhs in self.rules.items():
            kl = self.order_key(lhs)
            for w in rhs.terms:
                if not self.order_key(w) < kl:
                    raise FreeAlgError(
                        f"{self.pres_id}: rule for {self._w(lhs)} is not "
                        f"order-compatible (offending word {self._w(w)})")

    def _w(self, word: Word) -> str:
        return "".join(self.letters[i] for i in word) or "1"

    # -- normal-form predicate ---------------------------------------------------

    def is_basis_word(self, word: Word) -> bool:
        """True when the word contains no rule subword, declared or derived."""
        if any(word[i:i + n] in self.rules
               for n in range(2, self._max_decl_len + 1)
               for i in range(len(word) - n + 1)):
            return False
        return self._find_corner(word) is None

    def is_normal(self, elem: SkeinElem) -> bool:
        return all(self.is_basis_word(w) for w in elem.terms)

    # -- corner completion --------------------------------------------------------

    def corner_rule(self, m: int) -> SkeinElem:
        """Reduction image of g0 g1^m g2, derived from the relations and cached.

        The case m = 1 is the declared cubic rule.  For m >= 2 the rule follows
        from reducing (g0 g1^(m-1) g2) * g1 two ways: through the rule for
        m - 1, and through the g2 g1 exchange, which exposes g0 g1^m g2 with
        an invertible coefficient.
        """
        g0, g1, g2 = self.corner
        if m == 1:
            return self.rules[(g0, g1, g2)]
        cached = self._derived.get(m)
        if cached is not None:
            return cached
        if m in self._deriving:
            raise FreeAlgError(f"{self.pres_id}: circular corner derivation at m={m}")
        self._deriving.add(m)
        try:
            exch = self.rules[(g2, g1)]
            c_sort = exch.terms.get((g1, g2))
            if c_sort is None or not c_sort.is_unit_monomial():
                raise FreeAlgError(
                    f"{self.pres_id}: the {self._w((g2, g1))} rule has no "
                    f"invertible {self._w((g1, g2))} term")
            rest = exch - SkeinElem.from_word((g1, g2), c_sort)
            prev = self.corner_rule(m - 1)
            via_prev = reduce(prev.concat(SkeinElem.from_word((g1,))), self)
            prefix = SkeinElem.from_word((g0,) + (g1,) * (m - 1))
            spill = reduce(prefix.concat(rest), self)
            rhs = (via_prev - spill).scale(c_sort.inv_unit())
        finally:
            self._deriving.discard(m)
        lhs_key = self.order_key((g0,) + (g1,) * m + (g2,))
        for w in rhs.terms:
            if not self.order_key(w) < lhs_key:
                raise FreeAlgError(f"{self.pres_id}: derived corner rule m={m} "
                                   f"is not order-compatible")
        self._derived[m] = rhs
        return rhs

    def _find_corner(self, word: Word) -> tuple[int, int] | None:
        """Leftmost g0 g1^m g2 block (m >= 1): position and run length, or None."""
        if self.corner is None:
            return None
        g0, g1, g2 = self.corner
        n = len(word)
        for i in range(n - 2):
            if word[i] != g0:
                continue
            j = i + 1
            while j < n and word[j] == g1:
                j += 1
            if j > i + 1 and j < n and word[j] == g2:
                return i, j - i - 1
        return None

    # -- redex search ----------------------------------------------------------------

    def find_redex(self, word: Word, strategy: str = "leftmost"):
        """First declared-rule occurrence; (pos, lhs) or None."""
        n = len(word)
        positions = range(n) if strategy == "leftmost" else range(n - 1, -1, -1)
        for i in positions:
            for ln in range(2, self._max_decl_len + 1):
                if i + ln <= n and word[i:i + ln] in self.rules:
                    return i, word[i:i + ln]
        return None

    # -- multiplication cache ----------------------------------------------------------

    def word_product(self, w1: Word, w2: Word) -> SkeinElem:
        key = (w1, w2)
        cached = self._word_mul_cache.get(key)
        if cached is None:
            cached = reduce(SkeinElem.from_word(w1 + w2), self)
            self._word_mul_cache[key] = cached
        return cached


# ---------------------------------------------------------------------------
# Reduction
# ---------------------------------------------------------------------------


def reduce(x: SkeinElem, sys: RewriteSystem, strategy: str = "leftmost") -> SkeinElem:
    """Rewrite x to its normal form.  Canonical, idempotent, strategy independent.

    Words are processed largest-first in the term order with coefficient
    merging, so each intermediate word is rewritten at most once per wave.  A
    generous step budget turns a latent non-termination bug into an error.
    """
    out: dict[Word, CoeffElem] = {}
    pending: dict[Word, CoeffElem] = dict(x.terms)
    steps = 0
    while pending:
        word = max(pending, key=sys.order_key)
        c = pending.pop(word)
        if c.is_zero():
            continue
        hit = sys.find_redex(word, strategy)
        if hit is None:
            if sys.is_basis_word(word):
                n = out.get(word)
                n = c if n is None else n + c
                if n.is_zero():
                    out.pop(word, None)
                else:
                    out[word] = n
                continue
            block = sys._find_corner(word)
            if block is None:
                raise FreeAlgError(f"{sys.pres_id}: stuck word {sys._w(word)} "
                                   f"is not in the declared normal form")
            pos, m = block
            lhs_len = m + 2
            rhs = sys.corner_rule(m)
        else:
            pos, lhs = hit
            lhs_len = len(lhs)
            rhs = sys.rules[lhs]
        steps += 1
        if steps > sys.step_budget:
            raise ReductionBudgetError(
                f"{sys.pres_id}: step budget {sys.step_budget} exceeded")
        prefix, suffix = word[:pos], word[pos + lhs_len:]
        for w2, c2 in rhs.terms.items():
            nw = prefix + w2 + suffix
            n = pending.get(nw)
            p = c * c2
            n = p if n is None else n + p
            if n.is_zero():
                pending.pop(nw, None)
            else:
                pending[nw] = n
    res = SkeinElem()
    res.terms = out
    return res


def mul(x: SkeinElem, y: SkeinElem, sys: RewriteSystem) -> SkeinElem:
    """Product in the presented algebra: concatenate, then reduce."""
    out = SkeinElem.zero()
    for w1, c1 in x.terms.items():
        for w2, c2 in y.terms.items():
            out = out + sys.word_product(w1, w2).scale(c1 * c2)
    return out


def elem_chebyshev(k: int, x: SkeinElem, sys: RewriteSystem,
                   normalized: bool = False) -> SkeinElem:
    from .coeff import chebyshev
    return chebyshev(k, x, normalized,
                     mul=lambda a, b: mul(a, b, sys), one=SkeinElem.one())


# ---------------------------------------------------------------------------
# Presentation registry
# ---------------------------------------------------------------------------


def _elem(pairs) -> SkeinElem:
    out = SkeinElem.zero()
    for word, c in pairs:
        out = out + SkeinElem.from_word(tuple(word), CoeffElem.coerce(c))
    return out


def make_presentation(pres_id: str, *, v_one: bool = False) -> RewriteSystem:
    """Build a registered presentation.

    `v_one` specializes the puncture weights to 1 in every rule coefficient
    (the curve-calculus setting); it is accepted for any presentation and a
    no-op for those whose rules never mention them.
    """
    pres_id = normalize_presentation_id(pres_id)
    one = CoeffElem.one()
    a2m2 = A(2) - A(-2)          # A^2 - A^-2
    if pres_id == RY022_4GEN:
        letters = ("a", "b", "g1", "g2")
        a, b, g1, g2 = range(4)
        vinv = V1(-1) * V2(-1)
        vv = V1() * V2()
        # Loop scalar shared by the two opposite gamma products.  The boundary
        # weights enter through their product: only that choice is consistent
        # with the compact cubic relation (machine-checked by the confluence
        # suite and the commutative oracle).
        gg_scalar = D0_D1() + 2 - A(2) - A(-2)
        rules = {
            (b, a): _elem([((a, b), one), ((g2,), -vinv * (A() - A(-1))),
                           ((g1,), vinv * (A() - A(-1)))]),
            (g1, a): _elem([((a, g1), A(2)), ((b,), -A() * a2m2)]),
            (g2, a): _elem([((a, g2), A(-2)), ((b,), A(-1) * a2m2)]),
            (g1, b): _elem([((b, g1), A(-2)), ((a,), A(-1) * a2m2)]),
            (g2, b): _elem([((b, g2), A(2)), ((a,), -A() * a2m2)]),
            (g1, g2): _elem([((b, b), A(-2) * vv), ((a, a), A(2) * vv),
                             ((), gg_scalar)]),
            (g2, g1): _elem([((b, b), A(2) * vv), ((a, a), A(-2) * vv),
                             ((), gg_scalar)]),
        }
        sysm = RewriteSystem(pres_id, letters, rules, gamma=frozenset({g1, g2}))
    elif pres_id == RY022_3GEN:
        letters = ("b", "a", "g")
        b, a, g = range(3)
        vinv = V1(-1) * V2(-1)
        vv = V1() * V2()
        rules = {
            (a, b): _elem([((b, a), A(2)), ((g,), -vinv * A() * a2m2),
                           ((), -vinv * A() * (A() - A(-1)) * boundary_sum())]),
            (g, a): _elem([((a, g), A(2)), ((b,), -A() * a2m2)]),
            (g, b): _elem([((b, g), A(-2)), ((a,), A(-1) * a2m2)]),
            (b, a, g): _elem([((b, b), A()), ((a, a), A(-3)),
                              ((g, g), vinv * A()),
                              ((g,), vinv * boundary_sum()),
                              ((), vinv * A(-1)
                               * (D0_D1() - (A() - A(-1)) ** 2))]),
        }
        sysm = RewriteSystem(pres_id, letters, rules, gamma=frozenset({g}),
                             corner=(b, a, g))
    elif pres_id == TORUS_BP:
        letters = ("x1", "x2", "x3")
        x1, x2, x3 = range(3)
        rules = {
            (x2, x1): _elem([((x1, x2), A(2)), ((x3,), -A() * a2m2)]),
            (x3, x1): _elem([((x1, x3), A(-2)), ((x2,), A(-1) * a2m2)]),
            (x3, x2): _elem([((x2, x3), A(2)), ((x1,), -A() * a2m2)]),
            (x1, x2, x3): _elem([((x1, x1), A()), ((x2, x2), A(-3)),
                                 ((x3, x3), A()),
                                 ((), CoeffElem.from_int(-2) * (A() + A(-3)))]),
        }
        sysm = RewriteSystem(pres_id, letters, rules, gamma=frozenset({x3}),
                             corner=(x1, x2, x3))
    elif pres_id == RY013:
        # Third puncture weight fixed to 1: the scalar ring carries only two.
        letters = ("x1", "x2", "x3")
        x1, x2, x3 = range(3)
        am = A() - A(-1)
        rules = {
            (x2, x1): _elem([((x1, x2), A()), ((x3,), -V1(-1) * Ah() * am)]),
            (x3, x2): _elem([((x2, x3), A()), ((x1,), -V2(-1) * Ah() * am)]),
            (x3, x1): _elem([((x1, x3), A(-1)), ((x2,), Ah(-1) * am)]),
        }
        sysm = RewriteSystem(pres_id, letters, rules, gamma=frozenset({x3}))
    elif pres_id == S110:
        letters = ("x1", "x2", "x3")
        x1, x2, x3 = range(3)
        rules = {
            (x2, x1): _elem([((x1, x2), A(2)), ((x3,), -A() * a2m2)]),
            (x3, x2): _elem([((x2, x3), A(2)), ((x1,), -A() * a2m2)]),
            (x3, x1): _elem([((x1, x3), A(-2)), ((x2,), A(-1) * a2m2)]),
        }
        sysm = RewriteSystem(pres_id, letters, rules, gamma=frozenset({x3}))
    else:  # pragma: no cover
        raise FreeAlgError(pres_id)
    if v_one:
        sysm = specialize_v_one(sysm)
    return sysm


def D0_D1() -> CoeffElem:
    """d0*d1, the product of the boundary weights."""
    return CoeffElem.monomial(d0=1, d1=1)


def specialize_v_one(sysm: RewriteSystem) -> RewriteSystem:
    """Copy of a system with all rule coefficients specialized at v1 = v2 = 1."""
    rules = {lhs: rhs.map_coeffs(lambda c: c.subs(v1=1, v2=1))
             for lhs, rhs in sysm.rules.items()}
    return RewriteSystem(sysm.pres_id + "@v=1", sysm.letters, rules,
                         gamma=sysm.gamma, corner=sysm.corner,
                         step_budget=sysm.step_budget)


def perturb_rule(sysm: RewriteSystem, lhs_names: Iterable[str],
                 delta: CoeffElem | int = 1) -> RewriteSystem:
    """Copy of a system with one rule's RHS shifted by a scalar (mutation test)."""
    letters = sysm.letters
    lhs = tuple(letters.index(n) for n in lhs_names)
    if lhs not in sysm.rules:
        raise FreeAlgError(f"no rule with left side {''.join(lhs_names)}")
    rules = dict(sysm.rules)
    rules[lhs] = rules[lhs] + SkeinElem.from_scalar(delta)
    return RewriteSystem(sysm.pres_id + "+mut", letters, rules,
                         gamma=sysm.gamma, corner=sysm.corner,
                         step_budget=sysm.step_budget)


def word_of(sysm: RewriteSystem, *names: str) -> Word:
    return tuple(sysm.letters.index(n) for n in names)


def elem_of(sysm: RewriteSystem, *names: str) -> SkeinElem:
    return SkeinElem.from_word(word_of(sysm, *names))


# ---------------------------------------------------------------------------
# Local confluence
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Ambiguity:
    word: Word
    left_lhs: Word
    right_lhs: Word
    resolvable: bool
    left_nf: SkeinElem
    right_nf: SkeinElem


@dataclass
class ConfluenceReport:
    pres_id: str
    ambiguities: list[Ambiguity]

    @property
    def resolvable(self) -> bool:
        return all(a.resolvable for a in self.ambiguities)

    def failures(self) -> list[Ambiguity]:
        return [a for a in self.ambiguities if not a.resolvable]

    def to_json_obj(self, letters: tuple[str, ...]) -> dict:
        def wname(w):
            return "".join(letters[i] for i in w) or "1"
        return {
            "presentation": self.pres_id,
            "resolvable": self.resolvable,
            "ambiguities": [
                {"word": wname(a.word), "left_rule": wname(a.left_lhs),
                 "right_rule": wname(a.right_lhs), "resolvable": a.resolvable}
                for a in self.ambiguities
            ],
        }


def check_local_confluence(sysm: RewriteSystem) -> ConfluenceReport:
    """Enumerate every overlap ambiguity of the declared rules and test it.

    For rules l1 -> r1 and l2 -> r2 with a proper overlap l1 = p.s, l2 = s.q
    the ambiguity word is p.s.q; both one-step rewrites are reduced to normal
    form and compared.  Inclusion ambiguities (one left side inside another)
    are enumerated too; the registered systems have none.
    """
    ambiguities = []
    rule_list = sorted(sysm.rules)
    for l1 in rule_list:
        r1 = sysm.rules[l1]
        for l2 in rule_list:
            r2 = sysm.rules[l2]
            # overlaps: nonempty proper suffix of l1 equals prefix of l2
            for o in range(1, min(len(l1), len(l2))):
                if l1[len(l1) - o:] != l2[:o]:
                    continue
                word = l1 + l2[o:]
                left = r1.concat(SkeinElem.from_word(l2[o:]))
                right = SkeinElem.from_word(l1[:len(l1) - o]).concat(r2)
                lnf = reduce(left, sysm)
                rnf = reduce(right, sysm)
                ambiguities.append(Ambiguity(word, l1, l2, lnf == rnf, lnf, rnf))
            # inclusions: l2 strictly inside l1
            if len(l2) < len(l1):
                for i in range(len(l1) - len(l2) + 1):
                    if l1[i:i + len(l2)] != l2:
                        continue
                    inner = SkeinElem.from_word(l1[:i]).concat(r2).concat(
                        SkeinElem.from_word(l1[i + len(l2):]))
                    lnf = reduce(r1, sysm)
                    rnf = reduce(inner, sysm)
                    ambiguities.append(Ambiguity(l1, l1, l2, lnf == rnf, lnf, rnf))
    ambiguities.sort(key=lambda a: (a.word, a.left_lhs, a.right_lhs))
    return ConfluenceReport(sysm.pres_id, ambiguities)


# ---------------------------------------------------------------------------
# Commutative three-variable polynomials (the independence oracle's codomain)
# ---------------------------------------------------------------------------


class PolyXYZ:
    """Sparse integer polynomial in commuting x, y, z."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[tuple[int, int, int], int] | None = None):
        self.terms = {e: c for e, c in (terms or {}).items() if c}

    @staticmethod
    def zero() -> "PolyXYZ":
        return PolyXYZ()

    @staticmethod
    def const(n: int) -> "PolyXYZ":
        return PolyXYZ({(0, 0, 0): n})

    @staticmethod
    def var(i: int) -> "PolyXYZ":
        e = [0, 0, 0]
        e[i] = 1
        return PolyXYZ({tuple(e): 1})

    def __add__(self, other: "PolyXYZ") -> "PolyXYZ":
        out = dict(self.terms)
        for e, c in other.terms.items():
            n = out.get(e, 0) + c
            if n:
                out[e] = n
            else:
                out.pop(e, None)
        res = PolyXYZ()
        res.terms = out
        return res

    def __neg__(self) -> "PolyXYZ":
        res = PolyXYZ()
        res.terms = {e: -c for e, c in self.terms.items()}
        return res

    def __sub__(self, other: "PolyXYZ") -> "PolyXYZ":
        return self + (-other)

    def __mul__(self, other: Union["PolyXYZ", int]) -> "PolyXYZ":
        if isinstance(other, int):
            res = PolyXYZ()
            res.terms = {e: c * other for e, c in self.terms.items()} if other else {}
            return res
        out: dict[tuple[int, int, int], int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                n = out.get(e, 0) + c1 * c2
                if n:
                    out[e] = n
                else:
                    out.pop(e, None)
        res = PolyXYZ()
        res.terms = out
        return res

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "PolyXYZ":
        res = PolyXYZ.const(1)
        base = self
        while k:
            if k & 1:
                res = res * base
            base = base * base
            k >>= 1
        return res

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PolyXYZ) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def divexact_mono(self, e: tuple[int, int, int]) -> "PolyXYZ":
        """Exact division by a monomial; raises if any term is not divisible."""
        out = {}
        for (ex, ey, ez), c in self.terms.items():
            if ex < e[0] or ey < e[1] or ez < e[2]:
                raise FreeAlgError("polynomial division leaves a remainder")
            out[(ex - e[0], ey - e[1], ez - e[2])] = c
        return PolyXYZ(out)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for e in sorted(self.terms):
            c = self.terms[e]
            body = "*".join(f"{v}^{p}" if p > 1 else v
                            for v, p in zip("xyz", e) if p)
            bits.append(f"{c}" if not body else (f"{c}*{body}" if c not in (1, -1)
                                                 else ("-" + body if c == -1 else body)))
        return " + ".join(bits)


_PX, _PY, _PZ = (PolyXYZ.var(i) for i in range(3))

# Images of the generators in the commutative quotient.
_PI_IMAGES_4GEN = {
    "a": _PX,
    "b": _PY * _PZ - _PX,
    "g1": _PY * _PY - PolyXYZ.const(2),
    "g2": _PZ * _PZ - PolyXYZ.const(2),
}
_PI_IMAGES_3GEN = {"b": _PI_IMAGES_4GEN["b"], "a": _PX, "g": _PI_IMAGES_4GEN["g1"]}

# Image of d1, forced by the cubic relation in the quotient (see derive_pi_d1).
PI_D1_IMAGE = (_PX * _PY * _PZ - _PX ** 2 - _PY ** 2 - _PZ ** 2
               + PolyXYZ.const(2))


def _pi_coeff(c: CoeffElem) -> PolyXYZ:
    """Quotient map on scalars: A^(1/2) -> 1, v_i -> 1, d0 -> 2, d1 -> its image."""
    out = PolyXYZ.zero()
    for (a2, e1, e2, i, j), n in c.terms.items():
        out = out + PI_D1_IMAGE ** j * (n * 2 ** i)
    return out


def pi_commutative(x: SkeinElem, sysm: RewriteSystem) -> PolyXYZ:
    """The multiplicative quotient onto Z[x,y,z]; total on both RY022 alphabets."""
    if set(sysm.letters) == {"a", "b", "g1", "g2"}:
        images = _PI_IMAGES_4GEN
    elif set(sysm.letters) == {"b", "a", "g"}:
        images = _PI_IMAGES_3GEN
    else:
        raise FreeAlgError("the commutative oracle is defined on the RY022 alphabets")
    letter_img = [images[n] for n in sysm.letters]
    out = PolyXYZ.zero()
    for word, c in x.terms.items():
        p = _pi_coeff(c)
        for i in word:
            p = p * letter_img[i]
        out = out + p
    return out


def derive_pi_d1() -> PolyXYZ:
    """Recompute the image of d1 from the cubic relation of the 3-generator system.

    Substituting the generator images into that relation (at A^(1/2)=1, v=1,
    d0=2) leaves d1 * y^2 equal to a polynomial that must be divisible by y^2;
    the exact quotient is the image.
    """
    pb, pa, pg = (_PI_IMAGES_3GEN[n] for n in ("b", "a", "g"))
    two = PolyXYZ.const(2)
    # The cubic relation reads b*a*g = b^2 + a^2 + g^2 + (d0 + d1)*g + d0*d1
    # at the quotient values; with d0 = 2 the unknown collects into
    # d1*(g + 2) = d1*y^2, so the image is an exact quotient by y^2.
    residue = pb * pa * pg - pb ** 2 - pa ** 2 - pg ** 2 - pg * two
    return residue.divexact_mono((0, 2, 0))


# ---------------------------------------------------------------------------
# Homomorphism verification and generic push-forward
# ---------------------------------------------------------------------------


@dataclass
class HomReport:
    source: str
    target: str
    residues: list[tuple[str, SkeinElem]]

    @property
    def all_zero(self) -> bool:
        return all(r.is_zero() for _, r in self.residues)

    def to_json_obj(self) -> dict:
        return {
            "source": self.source,
            "target": self.target,
            "all_zero": self.all_zero,
            "residues": [{"relation": name, "zero": r.is_zero()}
                         for name, r in self.residues],
        }


def apply_morphism(x: SkeinElem, source: RewriteSystem, target: RewriteSystem,
                   letter_images: dict[str, SkeinElem],
                   scalar_images: dict[str, CoeffElem | int] | None = None,
                   ) -> SkeinElem:
    """Push an element through a generator/scalar substitution, then reduce.

    `letter_images` maps source letter names to target elements.  Optional
    `scalar_images` entries for "Ah", "v1", "v2", "d0", "d1" transport the
    coefficient ring (unassigned symbols map identically; images of units must
    be invertible monomials).
    """
    scalar_images = scalar_images or {}

    def conv(c: CoeffElem) -> CoeffElem:
        return c.subs(a_half=scalar_images.get("Ah"),
                      v1=scalar_images.get("v1"), v2=scalar_images.get("v2"),
                      d0=scalar_images.get("d0"), d1=scalar_images.get("d1"))

    imgs = []
    for name in source.letters:
        if name not in letter_images:
            raise FreeAlgError(f"missing image for generator {name!r}")
        imgs.append(letter_images[name])
    out = SkeinElem.zero()
    for word, c in x.terms.items():
        acc = SkeinElem.from_scalar(conv(c))
        for i in word:
            acc = mul(acc, imgs[i], target)
        out = out + acc
    return reduce(out, target)


def verify_homomorphism(source: RewriteSystem, target: RewriteSystem,
                        letter_images: dict[str, SkeinElem],
                        scalar_images: dict[str, CoeffElem | int] | None = None,
                        ) -> HomReport:
    """Substitute the images into every source relation; report the residues."""
    residues = []
    for lhs in sorted(source.rules):
        rel = SkeinElem.from_word(lhs) - source.rules[lhs]
        res = apply_morphism(rel, source, target, letter_images, scalar_images)
        residues.append((source._w(lhs), res))
    return HomReport(source.pres_id, target.pres_id, residues)


def identity_images(sysm: RewriteSystem) -> dict[str, SkeinElem]:
    return {name: elem_of(sysm, name) for name in sysm.letters}
