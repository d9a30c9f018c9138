"""Numeric construction and verification of irreducible representations.

At a primitive N-th root of -1 (N odd) an irreducible finite-dimensional
representation is pinned down by five complex scalars: the values of the
threaded generators and of the two boundary weights.  From admissible data the
three generator matrices are assembled explicitly on the eigenbasis of the
diagonal generator; the verifier then measures the relation residuals, the
central characters, and the commutant dimension, all numerically with stated
tolerances.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass, field

import numpy as np

from .coeff import chebyshev


class RepsError(ValueError):
    pass


def primitive_root_minus_one(n: int) -> complex:
    """exp(i pi / N): a primitive N-th root of -1 for odd N."""
    return cmath.exp(1j * cmath.pi / n)


# ---------------------------------------------------------------------------
# Shadow data
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ShadowData:
    """Admissible 5-tuple with its root-of-unity parameters.

    `x` satisfies x^N + x^-N = t3 and `sqrt_v1v2` fixes the branch used by the
    corner entries of the generator matrices.
    """

    n: int
    t1: complex
    t2: complex
    t3: complex
    d0: complex
    d1: complex
    v1: complex = 1.0 + 0j
    v2: complex = 1.0 + 0j
    x: complex = 0j
    sqrt_v1v2: complex = 1.0 + 0j

    @property
    def a(self) -> complex:
        return primitive_root_minus_one(self.n)

    def lambdas(self) -> list[complex]:
        a, x = self.a, self.x
        return [x * a ** (2 * k) + a ** (-2 * k) / x for k in range(1, self.n + 1)]

    def p_value(self, k: int) -> complex:
        a, x = self.a, self.x
        lam = x * a ** (2 * k) + a ** (-2 * k) / x
        return (2 + self.d0 * self.d1
                + (self.d0 + self.d1) * (lam - (a + 1 / a) * a ** (-2 * k) / x))

    def e_value(self, k: int) -> complex:
        a, x = self.a, self.x
        return -(self.p_value(k) + x ** 2 * a ** (4 * k + 2)
                 + x ** (-2) * a ** (-4 * k - 2)) / (self.v1 * self.v2)

    def e_product(self) -> complex:
        out = 1 + 0j
        for k in range(1, self.n + 1):
            out *= self.e_value(k)
        return out

    def u_value(self) -> complex:
        return -(self.t1 + self.x ** self.n * self.t2) / self.sqrt_v1v2 ** self.n


@dataclass
class LadderData:
    """Eigenvalues and ladder scalars derived from shadow data."""

    lambdas: list[complex]
    p: list[complex]
    e: list[complex]
    u: complex

    @staticmethod
    def from_shadow(s: ShadowData) -> "LadderData":
        return LadderData(
            lambdas=s.lambdas(),
            p=[s.p_value(k) for k in range(1, s.n + 1)],
            e=[s.e_value(k) for k in range(1, s.n + 1)],
            u=s.u_value(),
        )


@dataclass
class AdmissibilityReport:
    conditions: dict[str, tuple[complex | float, bool]]
    e_value: complex

    @property
    def admissible(self) -> bool:
        return all(ok for _, ok in self.conditions.values())


def check_admissibility(s: ShadowData, tol: float = 1e-10) -> AdmissibilityReport:
    """Evaluate the admissibility conditions with a numeric tolerance."""
    conds: dict[str, tuple[complex | float, bool]] = {}
    gap = min(abs(s.t3 - 2), abs(s.t3 + 2))
    conds["t3_not_pm2"] = (gap, gap > tol)
    quad = s.t1 ** 2 + s.t2 ** 2 + s.t1 * s.t2 * s.t3
    conds["t_quadratic_nonzero"] = (quad, abs(quad) > tol)
    lhs = chebyshev(s.n, 2 - s.d0 ** 2)
    rhs = 2 - s.t1 ** 2 - s.t2 ** 2 - s.t3 ** 2 - s.t1 * s.t2 * s.t3
    conds["chebyshev_boundary"] = (abs(lhs - rhs), abs(lhs - rhs) < tol)
    conds["boundary_sum_zero"] = (abs(s.d0 + s.d1), abs(s.d0 + s.d1) < tol)
    xcond = abs(s.x ** s.n + s.x ** (-s.n) - s.t3)
    conds["x_solves_t3"] = (xcond, xcond < tol)
    emin = min(abs(s.e_value(k)) for k in range(1, s.n + 1))
    conds["ladder_scalars_nonzero"] = (emin, emin > tol)
    return AdmissibilityReport(conds, s.e_product())


def sample_shadow(n: int, seed: int, budget: int = 100) -> ShadowData:
    """Deterministic admissible sample for odd n >= 3.

    Draws the boundary value and x away from the degenerate loci, sets
    t3 = x^n + x^-n, draws t1 and solves the quadratic for t2; resamples while
    any ladder scalar or the t-quadratic is within 1e-8 of zero.
    """
    if n < 3 or n % 2 == 0:
        raise RepsError("n must be odd and >= 3")
    rng = random.Random(n * 1_000_003 + seed)
    for _ in range(budget):
        d0 = complex(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5))
        r = rng.uniform(1.15, 1.6)
        theta = rng.uniform(0, 2 * math.pi)
        x = r * cmath.exp(1j * theta)
        t3 = x ** n + x ** (-n)
        t1 = complex(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5))
        # t2^2 + t1 t3 t2 + (t1^2 + t3^2 - 2 + T_n(2 - d0^2)) = 0
        cheb = chebyshev(n, 2 - d0 ** 2)
        disc = (t1 * t3) ** 2 - 4 * (t1 ** 2 + t3 ** 2 - 2 + cheb)
        t2 = (-t1 * t3 + cmath.sqrt(disc)) / 2
        v1 = complex(rng.uniform(0.8, 1.25), rng.uniform(-0.2, 0.2))
        v2 = complex(rng.uniform(0.8, 1.25), rng.uniform(-0.2, 0.2))
        s = ShadowData(n=n, t1=t1, t2=t2, t3=t3, d0=d0, d1=-d0,
                       v1=v1, v2=v2, x=x, sqrt_v1v2=cmath.sqrt(v1 * v2))
        quad = t1 ** 2 + t2 ** 2 + t1 * t2 * t3
        if abs(quad) < 1e-8:
            continue
        if min(abs(s.e_value(k)) for k in range(1, n + 1)) < 1e-8:
            continue
        if min(abs(t3 - 2), abs(t3 + 2)) < 1e-6:
            continue
        return s
    raise RepsError(f"resample budget exhausted for n={n}, seed={seed}")


# ---------------------------------------------------------------------------
# Matrix construction
# ---------------------------------------------------------------------------


@dataclass
class RepMatrices:
    """The three generator matrices on the diagonal-generator eigenbasis."""

    alpha: np.ndarray
    beta: np.ndarray
    gamma: np.ndarray

    @property
    def dim(self) -> int:
        return self.alpha.shape[0]


def build_rep(s: ShadowData) -> RepMatrices:
    """Assemble the representation matrices from admissible shadow data.

    The k-th basis vector spans the eigenspace of the diagonal generator with
    eigenvalue x A^(2k) + x^-1 A^(-2k); the other two generators act through
    the up/down ladder with the stated coefficients, the corners carrying u
    and E_n / u.
    """
    n, a, x = s.n, s.a, s.x
    lad = LadderData.from_shadow(s)
    beta = np.zeros((n, n), dtype=complex)
    alpha = np.zeros((n, n), dtype=complex)
    gamma = np.diag(np.array(lad.lambdas, dtype=complex))
    for k in range(1, n + 1):
        denom = x * a ** (2 * k) - a ** (-2 * k) / x
        if abs(denom) < 1e-14:
            raise RepsError("coincident eigenvalues; data inadmissible")
        up_b = -(a ** (-2 * k - 1) / x) / denom
        down_b = (x * a ** (2 * k - 1)) / denom
        up_a = -1 / denom
        down_a = 1 / denom
        col = k - 1
        if k <= n - 1:
            beta[k, col] += up_b
            alpha[k, col] += up_a
        else:
            beta[0, col] += up_b * lad.u
            alpha[0, col] += up_a * lad.u
        if k >= 2:
            beta[k - 2, col] += down_b * lad.e[k - 2]
            alpha[k - 2, col] += down_a * lad.e[k - 2]
        else:
            beta[n - 1, col] += down_b * lad.e[n - 1] / lad.u
            alpha[n - 1, col] += down_a * lad.e[n - 1] / lad.u
    return RepMatrices(alpha=alpha, beta=beta, gamma=gamma)


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------


def _opnorm(m: np.ndarray) -> float:
    return float(np.linalg.norm(m, 2))


def relation_residuals(m: RepMatrices, s: ShadowData) -> dict[str, float]:
    """Operator norms of the four defining relations under the data."""
    a = s.a
    al, be, ga = m.alpha, m.beta, m.gamma
    eye = np.eye(m.dim)
    vv = s.v1 * s.v2
    dsum = s.d0 + s.d1
    comm = a * be @ al - (1 / a) * al @ be
    tor1 = vv * comm - (a ** 2 - a ** -2) * ga - (a - 1 / a) * dsum * eye
    tor2 = a * al @ ga - (1 / a) * ga @ al - (a ** 2 - a ** -2) * be
    tor3 = a * ga @ be - (1 / a) * be @ ga - (a ** 2 - a ** -2) * al
    tor4 = (vv * a * be @ al @ ga
            - vv * a ** 2 * be @ be - vv * a ** -2 * al @ al
            - a ** 2 * ga @ ga - a * dsum * ga
            - (s.d0 * s.d1 - (a - 1 / a) ** 2) * eye)
    return {"tor1": _opnorm(tor1), "tor2": _opnorm(tor2),
            "tor3": _opnorm(tor3), "tor4": _opnorm(tor4)}


def central_residuals(m: RepMatrices, s: ShadowData) -> dict[str, float]:
    """Distance of the three threaded central elements from their scalars."""
    eye = np.eye(m.dim)
    sq = s.sqrt_v1v2
    tb = chebyshev(s.n, sq * m.beta, mul=np.matmul, one=eye)
    ta = chebyshev(s.n, sq * m.alpha, mul=np.matmul, one=eye)
    tg = chebyshev(s.n, m.gamma, mul=np.matmul, one=eye)
    return {"t1": _opnorm(tb - s.t1 * eye),
            "t2": _opnorm(ta - s.t2 * eye),
            "t3": _opnorm(tg - s.t3 * eye)}


def commutant_dimension(m: RepMatrices, tol: float = 1e-8) -> int:
    """Dimension of {M : [rho(g), M] = 0 for all generators} via SVD."""
    n = m.dim
    eye = np.eye(n)
    blocks = [np.kron(eye, g) - np.kron(g.T, eye)
              for g in (m.alpha, m.beta, m.gamma)]
    svals = np.linalg.svd(np.vstack(blocks), compute_uv=False)
    scale = max(float(svals[0]), 1.0)
    return int(np.sum(svals / scale < tol)) + (n * n - len(svals)
                                               if len(svals) < n * n else 0)


@dataclass
class VerifyReport:
    relations: dict[str, float]
    central: dict[str, float]
    commutant_dim: int
    shadow_recovered: dict[str, complex]
    tol: float = 1e-8

    @property
    def relations_ok(self) -> bool:
        return all(v < self.tol for v in self.relations.values())

    @property
    def central_ok(self) -> bool:
        return all(v < self.tol for v in self.central.values())

    @property
    def irreducible(self) -> bool:
        return self.commutant_dim == 1

    @property
    def ok(self) -> bool:
        return self.relations_ok and self.central_ok and self.irreducible

    def to_json_obj(self) -> dict:
        return {
            "relations": {k: f"{v:.6e}" for k, v in sorted(self.relations.items())},
            "central": {k: f"{v:.6e}" for k, v in sorted(self.central.items())},
            "commutant_dim": self.commutant_dim,
            "irreducible": self.irreducible,
            "ok": self.ok,
        }


def verify_rep(m: RepMatrices, s: ShadowData, tol: float = 1e-8) -> VerifyReport:
    """Relation and central-character residuals, commutant dimension, verdict."""
    if not (m.alpha.shape == m.beta.shape == m.gamma.shape
            and m.alpha.shape[0] == m.alpha.shape[1]):
        raise RepsError("matrices must be square and of equal size")
    eye = np.eye(m.dim)
    recovered = {
        "t1": complex(np.trace(chebyshev(s.n, s.sqrt_v1v2 * m.beta,
                                         mul=np.matmul, one=eye))) / m.dim,
        "t2": complex(np.trace(chebyshev(s.n, s.sqrt_v1v2 * m.alpha,
                                         mul=np.matmul, one=eye))) / m.dim,
        "t3": complex(np.trace(chebyshev(s.n, m.gamma,
                                         mul=np.matmul, one=eye))) / m.dim,
        "d0": s.d0,
        "d1": s.d1,
    }
    return VerifyReport(
        relations=relation_residuals(m, s),
        central=central_residuals(m, s),
        commutant_dim=commutant_dimension(m),
        shadow_recovered=recovered,
        tol=tol,
    )


# ---------------------------------------------------------------------------
# Equivalence
# ---------------------------------------------------------------------------


def _word_traces(m: RepMatrices, words: list[tuple[int, ...]]) -> np.ndarray:
    gens = (m.alpha, m.beta, m.gamma)
    out = np.empty(len(words), dtype=complex)
    cache: dict[tuple[int, ...], np.ndarray] = {(): np.eye(m.dim, dtype=complex)}
    for i, w in enumerate(words):
        mat = cache.get(w)
        if mat is None:
            prefix = cache.get(w[:-1])
            if prefix is None:
                prefix = np.eye(m.dim, dtype=complex)
                for g in w[:-1]:
                    prefix = prefix @ gens[g]
            mat = prefix @ gens[w[-1]]
            if len(w) <= 8:
                cache[w] = mat
        out[i] = np.trace(mat)
    return out


def _equivalence_words(n: int, seed: int = 0) -> list[tuple[int, ...]]:
    """All 3-letter words up to length min(2n, 8), plus a seeded sample beyond."""
    full_len = min(2 * n, 8)
    words: list[tuple[int, ...]] = []
    frontier: list[tuple[int, ...]] = [()]
    for _ in range(full_len):
        frontier = [w + (g,) for w in frontier for g in range(3)]
        words.extend(frontier)
    rng = random.Random(seed ^ 0xE9)
    for ln in range(full_len + 1, 2 * n + 1):
        for _ in range(200):
            words.append(tuple(rng.randrange(3) for _ in range(ln)))
    return words


def equivalence_check(m1: RepMatrices, m2: RepMatrices,
                      tol: float = 1e-7) -> bool:
    """Trace comparison over words in the generators.

    All words up to length min(2N, 8) are enumerated; beyond that a fixed
    seeded sample of longer words (up to length 2N) keeps the check tractable
    for N = 7 while remaining deterministic.
    """
    if m1.dim != m2.dim:
        raise RepsError("dimension mismatch")
    words = _equivalence_words(m1.dim)
    tr1 = _word_traces(m1, words)
    tr2 = _word_traces(m2, words)
    return bool(np.max(np.abs(tr1 - tr2)) < tol)
