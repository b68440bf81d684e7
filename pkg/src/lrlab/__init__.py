"""Exact computations with lowering-raising (LR) pairs and triples over GF(p)."""

from .decomp import (
    Decomposition,
    Flag,
    idempotent_sequence,
    induced_flag,
    opposite_intersection_decomposition,
    tridiagonal_check,
    zero_diagonal_check,
)
from .errors import LRLabError
from .field import FieldElement, FieldSpec
from .gen import GenConfig, GenStats, gen_bipartite_triple, gen_lr_pair, gen_triple
from .linalg import Line, Matrix, Subspace, kernel, transition_matrix
from .lrpair import LRPairData, find_lr_decomposition, pair_basis_action, standard_basis
from .lrtriple import (
    TripleCertificate,
    bipartite_scale,
    extend_pair,
    extend_pair_II,
    joint_extension,
    pair_from_flags,
    recover_gamma_nonbipartite,
    recover_gammas_bipartite,
    scale_triple,
    verify_triple,
)
from .toeplitz import ToeplitzParams, toeplitz_matrix, toeplitz_params

__version__ = "0.1.0"

__all__ = [
    "Decomposition", "Flag", "idempotent_sequence", "induced_flag",
    "opposite_intersection_decomposition", "tridiagonal_check", "zero_diagonal_check",
    "LRLabError", "FieldElement", "FieldSpec",
    "GenConfig", "GenStats", "gen_bipartite_triple", "gen_lr_pair", "gen_triple",
    "Line", "Matrix", "Subspace", "kernel", "transition_matrix",
    "LRPairData", "find_lr_decomposition", "pair_basis_action", "standard_basis",
    "TripleCertificate", "bipartite_scale", "extend_pair", "extend_pair_II", "joint_extension",
    "pair_from_flags", "recover_gamma_nonbipartite", "recover_gammas_bipartite",
    "scale_triple", "verify_triple",
    "ToeplitzParams", "toeplitz_matrix", "toeplitz_params",
]
