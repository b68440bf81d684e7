"""Shared builders for the test suite."""

from __future__ import annotations

import random
from functools import lru_cache

from lrlab.decomp import Decomposition
from lrlab.field import FieldSpec
from lrlab.gen import (
    BIPARTITE,
    NONBIPARTITE,
    GenConfig,
    gen_condition_I_decomposition,
    gen_lr_pair,
    gen_triple,
    sample_extendable_phi,
)
from lrlab.linalg import Matrix, is_invertible
from lrlab.toeplitz import shift_matrix, subdiagonal_matrix

F7 = FieldSpec(7)
CAMPAIGN_PRIMES = (7, 101, 10007)
SMALL_PRIMES = (3, 5, 7, 11, 13, 101, 10007, 2147483647)


def mat(field: FieldSpec, rows) -> Matrix:
    return Matrix.from_rows(field, rows)


def random_matrix(rng: random.Random, field: FieldSpec, n: int, m: int | None = None) -> Matrix:
    m = n if m is None else m
    return Matrix(field, tuple(tuple(rng.randrange(field.p) for _ in range(m)) for _ in range(n)))


def random_invertible(rng: random.Random, field: FieldSpec, n: int) -> Matrix:
    while True:
        G = random_matrix(rng, field, n)
        if is_invertible(G):
            return G


def worked():
    """The d=2 instance over GF(7) and its known extension C."""
    A = shift_matrix(F7, 3)
    B = subdiagonal_matrix(F7, [1, 2])
    Vp = Decomposition.from_vectors(F7, [[1, 0, 0], [0, 1, 0], [6, 0, 1]])
    C = mat(F7, [[0, 6, 0], [2, 0, 2], [0, 1, 0]])
    return A, B, Vp, C


def campaign_case(d: int, p: int, seed: int, parity: str | None = None):
    """A random LR pair with a condition-I decomposition, before extension."""
    cfg = GenConfig(d, FieldSpec(p), seed)
    if parity is None:
        parity = NONBIPARTITE if d % 2 else (BIPARTITE if d == 0 or seed % 2 else NONBIPARTITE)
    phi = sample_extendable_phi(cfg, parity)
    pair = gen_lr_pair(cfg, phi)
    Vp = gen_condition_I_decomposition(pair, cfg, parity)
    return pair, Vp, parity


@lru_cache(maxsize=None)
def main_campaign(n: int = 210):
    """n instances cycling d over 0..6 and p over the campaign primes."""
    return [campaign_case(k % 7, CAMPAIGN_PRIMES[(k // 7) % 3], 1000 + k) for k in range(n)]


def certificates(parity: str, ds, primes, per_cell: int, seed0: int = 0):
    out = []
    k = seed0
    for d in ds:
        for p in primes:
            for _ in range(per_cell):
                out.append(gen_triple(GenConfig(d, FieldSpec(p), k), parity))
                k += 1
    return out


def random_pair(rng: random.Random, d: int | None = None, p: int | None = None):
    d = rng.randrange(7) if d is None else d
    p = rng.choice(CAMPAIGN_PRIMES) if p is None else p
    return gen_lr_pair(GenConfig(d, FieldSpec(p), rng.randrange(2**64)))
