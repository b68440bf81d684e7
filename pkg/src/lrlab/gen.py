"""Seeded random generation of LR pairs, condition-I decompositions and LR triples.

Randomness comes from numpy's ``Generator`` over the PCG64 bit generator.
Each stage draws from its own stream, derived from the configured seed with
``SeedSequence(seed, spawn_key=(stage,))``, so a fixed config always gives
the same output.

Finding a condition-I decomposition is the delicate step. Every such
decomposition arises from the (A,B)-basis by an upper-triangular Toeplitz
rebase with parameters ``alpha`` (``alpha[0] = 1``), and the matrix of B in
the rebased basis is ``T S T^-1``. Fixing ``alpha[1] = s`` and treating
``alpha[2] = t`` as unknown, each entry (0, j) for 2 <= j < d of that matrix
is linear in ``alpha[j+1]`` with coefficient ``phi[j+1]``; setting those
entries to zero expresses every remaining parameter as a polynomial in t.
The other entries above the superdiagonal then become polynomial equations
in t whose common roots are found exactly over GF(p).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_add, gf_eval, gf_factor, gf_gcd, gf_mul, gf_mul_ground, gf_strip

from .decomp import Decomposition
from .errors import AttemptsExhausted, InternalContradiction, OddD
from .field import FieldSpec
from .linalg import Matrix, inverse, is_invertible, kernel
from .lrpair import LRPairData, find_lr_decomposition, standard_basis
from .lrtriple import I, TripleCertificate, condition_check, extend_pair, verify_triple
from .toeplitz import ToeplitzParams, shift_matrix, subdiagonal_matrix, toeplitz_inverse_params

log = logging.getLogger(__name__)

PRNG_NAME = "numpy.random.PCG64"
NONBIPARTITE, BIPARTITE = "nonbipartite", "bipartite"


@dataclass(frozen=True)
class GenConfig:
    d: int
    field: FieldSpec
    seed: int
    max_attempts: int = 10000

    def __post_init__(self):
        if not 0 <= self.d <= 32:
            raise ValueError("d must lie in 0..32")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.max_attempts < 1:
            raise ValueError("max_attempts must be positive")

    def rng(self, stage: int) -> np.random.Generator:
        return np.random.Generator(np.random.PCG64(np.random.SeedSequence(self.seed, spawn_key=(stage,))))


@dataclass
class GenStats:
    """Attempt counters filled in by the generators."""

    attempts: dict[str, int] = dc_field(default_factory=dict)
    accepted: dict[str, int] = dc_field(default_factory=dict)
    notes: dict[str, str] = dc_field(default_factory=dict)

    def record(self, stage: str, attempts: int, accepted: bool) -> None:
        self.attempts[stage] = self.attempts.get(stage, 0) + attempts
        self.accepted[stage] = self.accepted.get(stage, 0) + int(accepted)

    @property
    def total_attempts(self) -> int:
        return sum(self.attempts.values())

    def acceptance_rate(self, stage: str | None = None) -> float:
        if stage is None:
            a, n = sum(self.accepted.values()), self.total_attempts
        else:
            a, n = self.accepted.get(stage, 0), self.attempts.get(stage, 0)
        return a / n if n else 0.0

    def meta(self, cfg: GenConfig) -> dict:
        return {
            "prng": PRNG_NAME,
            "numpy": np.__version__,
            "seed": cfg.seed,
            "d": cfg.d,
            "p": cfg.field.p,
            "attempts": self.total_attempts,
            "acceptance_rate": round(self.acceptance_rate(), 6),
            "stages": {k: {"attempts": self.attempts[k], "accepted": self.accepted.get(k, 0)}
                       for k in sorted(self.attempts)},
            **self.notes,
        }


# small helpers ---------------------------------------------------------------------

def _element(rng: np.random.Generator, p: int) -> int:
    return int(rng.integers(0, p))


def _nonzero(rng: np.random.Generator, p: int) -> int:
    return int(rng.integers(1, p))


def _random_invertible(rng: np.random.Generator, field: FieldSpec, n: int,
                       max_attempts: int) -> tuple[Matrix, int]:
    for attempt in range(1, max_attempts + 1):
        G = Matrix(field, tuple(tuple(_element(rng, field.p) for _ in range(n)) for _ in range(n)))
        if is_invertible(G):
            return G, attempt
    raise AttemptsExhausted(max_attempts, "no invertible change of basis found")


def toeplitz_rebase(field: FieldSpec, basis: Sequence[Sequence[int]],
                    alpha: Sequence[int]) -> list[tuple[int, ...]]:
    """The basis u with transition matrix from u to ``basis`` equal to the
    upper-triangular Toeplitz matrix with parameters ``alpha``."""
    p = field.p
    beta = toeplitz_inverse_params(ToeplitzParams.of(field, alpha)).values()
    n = len(basis)
    out = []
    for j in range(n):
        v = [0] * n
        for i in range(j + 1):
            if beta[j - i]:
                v = [(x + beta[j - i] * y) % p for x, y in zip(v, basis[i])]
        out.append(tuple(v))
    return out


# pairs -----------------------------------------------------------------------------

def gen_lr_pair(cfg: GenConfig, phi: Sequence[int] | None = None,
                stats: GenStats | None = None) -> LRPairData:
    """Conjugate of the model pair (shift, subdiagonal(phi)) by a random G.

    ``phi`` defaults to d values drawn uniformly from the nonzero residues.
    """
    field, d = cfg.field, cfg.d
    rng = cfg.rng(1)
    if phi is None:
        phi = [_nonzero(rng, field.p) for _ in range(d)]
    phi = [x % field.p for x in phi]
    if len(phi) != d or not all(phi):
        raise ValueError("phi must hold d nonzero values")
    A0, B0 = shift_matrix(field, d + 1), subdiagonal_matrix(field, phi)
    G, attempts = _random_invertible(rng, field, d + 1, cfg.max_attempts)
    if stats is not None:
        stats.record("pair", attempts, True)
    G_inv = inverse(G)
    pair = find_lr_decomposition(G @ A0 @ G_inv, G @ B0 @ G_inv)
    if pair.decomposition != Decomposition.from_vectors(field, G.columns()) or pair.phi_values() != phi:
        raise InternalContradiction("generated pair does not have the model decomposition")
    return pair


# condition I -------------------------------------------------------------------------

def _tridiagonal_constraints(d: int, p: int, phi: Sequence[int], s: int):
    """Return (alpha polys in t, constraint polys in t); polys are dense, high degree first."""
    alpha: list[list[int]] = [[1], gf_strip([s % p]), [1, 0]]
    beta: list[list[int]] = [[1]]

    def next_beta(k):
        acc: list[int] = []
        for j in range(1, k + 1):
            acc = gf_add(acc, gf_mul(alpha[j], beta[k - j], p, ZZ), p, ZZ)
        beta.append(gf_mul_ground(acc, p - 1, p, ZZ))

    def entry(i, j):
        acc: list[int] = []
        for l in range(max(i - 1, 0), min(j, d - 1) + 1):
            if l + 1 - i < len(alpha):
                term = gf_mul(alpha[l + 1 - i], beta[j - l], p, ZZ)
                acc = gf_add(acc, gf_mul_ground(term, phi[l], p, ZZ), p, ZZ)
        return acc

    next_beta(1)
    next_beta(2)
    for j in range(2, d):
        # entry (0, j) = phi_{j+1} alpha_{j+1} + (terms in lower parameters)
        alpha.append([])
        rest = entry(0, j)
        alpha[j + 1] = gf_mul_ground(rest, (-pow(phi[j], p - 2, p)) % p, p, ZZ)
        next_beta(j + 1)
    alpha = alpha[: d + 1]
    constraints = [entry(i, j) for i in range(d + 1) for j in range(i + 2, d + 1)
                   if not (i == 0 and j < d)]
    return alpha, constraints


def _roots(poly: list[int], p: int) -> list[int]:
    _, factors = gf_factor(poly, p, ZZ)
    return sorted((-int(f[1])) % p for f, _ in factors if len(f) == 2)


def condition_I_candidates(phi: Sequence[int], p: int, s: int) -> tuple[list[list[int]], bool]:
    """Toeplitz parameter vectors with alpha[1] = s that make B tridiagonal.

    Returns (candidates, t_free). When every constraint vanishes identically,
    ``t_free`` is true and the caller picks t; candidates is then empty.
    """
    d = len(phi)
    if d <= 1:
        return [[1, s % p][: d + 1]], False
    alpha, constraints = _tridiagonal_constraints(d, p, phi, s)
    g: list[int] = []
    for c in constraints:
        g = gf_gcd(g, c, p, ZZ)
    if not g:
        return [], True
    return [[int(gf_eval(a, t, p, ZZ)) for a in alpha] for t in _roots(g, p)], False


def alpha_for_t(phi: Sequence[int], p: int, s: int, t: int) -> list[int]:
    d = len(phi)
    alpha, _ = _tridiagonal_constraints(d, p, phi, s)
    return [int(gf_eval(a, t, p, ZZ)) for a in alpha]


def gen_condition_I_decomposition(pair: LRPairData, cfg: GenConfig, parity: str | None = None,
                                  strategy: str = "solve",
                                  stats: GenStats | None = None) -> Decomposition:
    """A decomposition satisfying condition I for ``pair``, by Toeplitz rebase of its (A,B)-basis.

    ``strategy="uniform"`` draws alpha[1..d] uniformly and keeps the first hit.
    ``strategy="solve"`` draws alpha[1] (nonzero for nonbipartite, zero for
    bipartite, uniform when ``parity`` is None) and solves for the rest exactly.
    """
    field, d, p = cfg.field, pair.d, cfg.field.p
    if d == 0:
        if stats is not None:
            stats.record("condition_I", 1, True)
        return pair.decomposition
    rng = cfg.rng(2)
    basis = standard_basis(pair.A, pair.decomposition)
    phi = pair.phi_values()

    def accept(alpha) -> Decomposition | None:
        V = Decomposition.from_vectors(field, toeplitz_rebase(field, basis, alpha))
        return V if condition_check(pair.A, pair.B, V, I) else None

    for attempt in range(1, cfg.max_attempts + 1):
        if strategy == "uniform":
            alpha = [1] + [_element(rng, p) for _ in range(d)]
            candidates = [alpha]
        elif strategy == "solve":
            if parity == BIPARTITE:
                s = 0
            elif parity == NONBIPARTITE:
                s = _nonzero(rng, p)
            else:
                s = _element(rng, p)
            candidates, free = condition_I_candidates(phi, p, s)
            if free:
                candidates = [alpha_for_t(phi, p, s, _element(rng, p))]
            elif candidates:
                candidates = [candidates[i] for i in rng.permutation(len(candidates))]
            elif parity == BIPARTITE:
                # s is forced and t is determined, so retrying cannot help
                break
        else:
            raise ValueError(f"unknown strategy {strategy!r}")
        for alpha in candidates:
            V = accept(alpha)
            if V is not None:
                if stats is not None:
                    stats.record("condition_I", attempt, True)
                return V
    else:
        attempt = cfg.max_attempts
    if stats is not None:
        stats.record("condition_I", attempt, False)
    raise AttemptsExhausted(attempt, f"no condition-I decomposition found after {attempt} attempts")


# extendable parameter sequences ----------------------------------------------------------

def _inv(x: int, p: int) -> int:
    return pow(x, p - 2, p)


def _weyl_alpha(d: int, p: int, a: int) -> list[int] | None:
    if p <= d:
        return None
    out, fact = [1], 1
    for i in range(1, d + 1):
        fact = fact * i % p
        out.append(pow(a, i, p) * _inv(fact, p) % p)
    return out


def _q_alpha(d: int, p: int, a: int, q: int) -> list[int] | None:
    # needs q^k != 1 for 1 <= k <= d so every q-integer [k]_q is nonzero
    if any(pow(q, k, p) == 1 for k in range(1, d + 1)):
        return None
    out, qfact = [1], 1
    for i in range(1, d + 1):
        qfact = qfact * (pow(q, i, p) - 1) * _inv(q - 1, p) % p
        out.append(pow(a, i, p) * pow(q, i * (i - 1) // 2, p) * _inv(qfact, p) % p)
    return out


def _spread_even(half: list[int] | None, d: int) -> list[int] | None:
    if half is None:
        return None
    out = [0] * (d + 1)
    for k, x in enumerate(half):
        out[2 * k] = x
    return out


def _phi_system(alpha: Sequence[int], p: int) -> list[list[int]]:
    """Rows of the linear system in phi making T S T^-1 vanish above the superdiagonal."""
    d = len(alpha) - 1
    F = FieldSpec(p)
    beta = toeplitz_inverse_params(ToeplitzParams.of(F, alpha)).values()
    rows = []
    for i in range(d + 1):
        for j in range(i + 2, d + 1):
            r = [0] * d
            for l in range(max(i - 1, 0), min(j, d - 1) + 1):
                r[l] = (r[l] + alpha[l + 1 - i] * beta[j - l]) % p
            rows.append(r)
    return rows


def _small_phi(rng, d: int, p: int, parity: str) -> list[int] | None:
    # for d=2 the (0,2) entry of T S T^-1 is s (s^2 phi_1 - t (phi_1 + phi_2)),
    # so s != 0 needs phi_1 + phi_2 != 0; for d <= 1 every phi extends
    phi = [_nonzero(rng, p) for _ in range(d)]
    if d < 2 or parity == BIPARTITE or (phi[0] + phi[1]) % p:
        return phi
    return None


def _family_phi(rng, field: FieldSpec, d: int, parity: str) -> list[int] | None:
    p = field.p
    a = _nonzero(rng, p)
    q = int(rng.integers(2, p))
    if parity == BIPARTITE:
        options = [_spread_even(_weyl_alpha(d // 2, p, a), d),
                   _spread_even(_q_alpha(d // 2, p, a, q), d)]
    else:
        options = [_weyl_alpha(d, p, a), _q_alpha(d, p, a, q)]
    options = [o for o in options if o is not None]
    if not options:
        return None
    alpha = options[int(rng.integers(0, len(options)))]
    rows = _phi_system(alpha, p)
    null = kernel(Matrix(field, tuple(tuple(r) for r in rows))).basis
    if not null:
        return None
    coeffs = [_nonzero(rng, p) for _ in null]
    phi = [sum(c * v[k] for c, v in zip(coeffs, null)) % p for k in range(d)]
    return phi if all(phi) else None


def sample_extendable_phi(cfg: GenConfig, parity: str, stats: GenStats | None = None) -> list[int]:
    """A parameter sequence for which a condition-I decomposition of the given parity exists.

    For d <= 2 phi is uniform, apart from one excluded hyperplane at d = 2.
    For larger d a Toeplitz parameter vector is drawn from a family known to
    admit solutions (exponential or q-exponential, on even indices only in
    the bipartite case), and phi is a random point of the nullspace of the
    resulting linear system, kept when all entries are nonzero.
    """
    field, d, p = cfg.field, cfg.d, cfg.field.p
    rng = cfg.rng(3)
    small = d <= 2
    for attempt in range(1, cfg.max_attempts + 1):
        phi = _small_phi(rng, d, p, parity) if small else _family_phi(rng, field, d, parity)
        if phi is not None:
            if stats is not None:
                stats.record("phi", attempt, True)
                stats.notes["phi_source"] = "uniform" if small else "toeplitz_family"
            return phi
    if stats is not None:
        stats.record("phi", cfg.max_attempts, False)
    raise AttemptsExhausted(cfg.max_attempts, f"no extendable phi found for d={d}, p={p}")


# triples ------------------------------------------------------------------------------------

def gen_triple(cfg: GenConfig, parity: str | None = None,
               stats: GenStats | None = None) -> TripleCertificate:
    """Random LR triple built by extending a random LR pair.

    ``parity`` forces a nonbipartite or bipartite triple; by default odd d
    gives nonbipartite and even d >= 2 picks either with equal probability.
    phi comes from :func:`sample_extendable_phi`: uniform for d <= 2 (up to
    one linear exclusion), from Toeplitz families for larger d, since a
    uniform phi almost never extends there.
    """
    stats = stats if stats is not None else GenStats()
    d, p = cfg.d, cfg.field.p
    if parity is None:
        if d == 0:
            parity = BIPARTITE
        elif d % 2:
            parity = NONBIPARTITE
        else:
            parity = (NONBIPARTITE, BIPARTITE)[int(cfg.rng(4).integers(0, 2))]
    if parity == BIPARTITE and d % 2:
        raise OddD(f"bipartite LR triples need even d, got {d}")

    phi = sample_extendable_phi(cfg, parity, stats)
    pair = gen_lr_pair(cfg, phi, stats)
    Vp = gen_condition_I_decomposition(pair, cfg, parity, stats=stats)
    C = extend_pair(pair.A, pair.B, Vp)
    cert = verify_triple(pair.A, pair.B, C)
    if d >= 1 and cert.bipartite != (parity == BIPARTITE):
        raise InternalContradiction("generated triple has the wrong parity")
    stats.notes["parity"] = parity
    log.info("gen_triple d=%d p=%d parity=%s attempts=%d acceptance=%.3f",
             d, p, parity, stats.total_attempts, stats.acceptance_rate())
    return cert


def gen_bipartite_triple(cfg: GenConfig, stats: GenStats | None = None) -> TripleCertificate:
    if cfg.d % 2:
        raise OddD(f"bipartite LR triples need even d, got {cfg.d}")
    cert = gen_triple(cfg, BIPARTITE, stats)
    if not cert.bipartite:
        raise InternalContradiction("bipartite generation produced a nonbipartite triple")
    return cert
