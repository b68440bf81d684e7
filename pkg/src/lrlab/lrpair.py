"""Lowering-raising pairs: detection, parameter sequences and adapted bases."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .decomp import LOWERS, Decomposition, action_check
from .errors import (
    AnchorMismatch,
    FieldMismatch,
    FormulaViolated,
    NotLowering,
    NotLRPair,
    ShapeMismatch,
    Singular,
)
from .field import FieldElement, FieldSpec
from .linalg import Line, Matrix, Vector, basis_matrix, inverse, kernel, mat_apply, vec_scale


@dataclass(frozen=True)
class LRPairData:
    A: Matrix
    B: Matrix
    decomposition: Decomposition
    phi: tuple[FieldElement, ...]  # phi[i-1] holds phi_i

    @property
    def field(self) -> FieldSpec:
        return self.A.field

    @property
    def d(self) -> int:
        return self.decomposition.d

    def phi_values(self) -> list[int]:
        return [f.value for f in self.phi]

    def to_json(self) -> dict:
        return {
            "A": self.A.to_list(),
            "B": self.B.to_list(),
            "decomposition": self.decomposition.to_json(),
            "phi": self.phi_values(),
        }


def _check_pair_shapes(A: Matrix, B: Matrix) -> None:
    if A.field != B.field:
        raise FieldMismatch("A and B live over different fields")
    if not A.is_square or A.shape != B.shape:
        raise ShapeMismatch("A and B must be square of equal size")


def find_lr_decomposition(A: Matrix, B: Matrix) -> LRPairData:
    """Detect whether (A, B) is an LR pair and return its data.

    The top line is Ker B; the others are its images under powers of A.
    """
    _check_pair_shapes(A, B)
    field = A.field
    d = A.n_rows - 1
    K = kernel(B)
    if K.dim != 1:
        raise NotLRPair("KernelDimension", f"Ker B has dimension {K.dim}, expected 1")

    p = field.p
    # chain[i] spans V_i; A chain[i] = chain[i-1] by construction
    chain = [K.basis[0]]
    for i in range(d):
        w = mat_apply(A, chain[-1])
        if not any(w):
            raise NotLRPair("ImageCollapse", f"A^{i + 1} kills Ker B")
        chain.append(w)
    chain.reverse()

    lines = tuple(Line.spanned_by(field, w) for w in chain)
    try:
        Q = inverse(basis_matrix(field, [L.span for L in lines]))
    except Singular as exc:
        raise NotLRPair("NotDirectSum", "the lines A^i Ker B do not sum directly to V") from exc
    D = Decomposition._with_projector(field, lines, Q)
    if any(mat_apply(A, chain[0])):
        raise NotLRPair("LoweringFails", "A does not annihilate V_0")

    # B chain[i-1] must be a nonzero multiple phi_i of chain[i]; B kills chain[d]
    # by choice of the top line. This is both the raising test and phi_i as the
    # eigenvalue of BA on V_i.
    phi = []
    for i in range(1, d + 1):
        w, v = mat_apply(B, chain[i - 1]), chain[i]
        k = next(j for j, x in enumerate(v) if x)
        lam = w[k] * pow(v[k], p - 2, p) % p
        if lam == 0 or any((x - lam * y) % p for x, y in zip(w, v)):
            raise NotLRPair("RaisingFails", f"B does not map V_{i - 1} onto V_{i}")
        phi.append(FieldElement(lam, field))
    phi = tuple(phi)
    return LRPairData(A, B, D, phi)


def standard_basis(X: Matrix, D: Decomposition) -> list[Vector]:
    """Basis v_0..v_d with v_i in V_i and X v_i = v_{i-1}, seeded at the top line."""
    if not action_check(X, D, LOWERS):
        raise NotLowering("X does not lower the decomposition")
    return lowered_basis(X, D)


def lowered_basis(X: Matrix, D: Decomposition) -> list[Vector]:
    """:func:`standard_basis` without the lowering check, for callers that
    already know X lowers D."""
    basis = [D.lines[D.d].span]
    for _ in range(D.d):
        basis.append(mat_apply(X, basis[-1]))
    basis.reverse()
    return basis


def rebase_to_anchor(field: FieldSpec, basis: Sequence[Sequence[int]],
                     anchor: Sequence[int]) -> list[Vector]:
    """Rescale the basis so its first vector equals ``anchor``."""
    p = field.p
    b0 = basis[0]
    if len(anchor) != len(b0):
        raise ShapeMismatch("anchor has the wrong length")
    k = next((i for i, x in enumerate(b0) if x % p), None)
    if k is None:
        raise AnchorMismatch("first basis vector is zero")
    lam = anchor[k] * field.inv(b0[k]) % p
    scaled = vec_scale(b0, lam, p)
    if lam == 0 or scaled != tuple(a % p for a in anchor):
        raise AnchorMismatch("anchor does not span the line of basis[0]")
    return [vec_scale(v, lam, p) for v in basis]


class PairBasisReport(NamedTuple):
    kind: str
    indices_checked: int


def pair_basis_action(pairdata: LRPairData, basis: Sequence[Sequence[int]],
                      kind: str = "AB") -> PairBasisReport:
    """Check the action of A and B on an (A,B)-basis or a (B,A)-basis.

    On an (A,B)-basis, A v_i = v_{i-1} and B v_i = phi_{i+1} v_{i+1}.
    On a (B,A)-basis, B v_i = v_{i-1} and A v_i = phi_{d-i} v_{i+1}.
    Vectors outside 0..d are zero, so phi_0 and phi_{d+1} are never read.
    """
    if kind not in ("AB", "BA"):
        raise ValueError("kind must be 'AB' or 'BA'")
    A, B, d, p = pairdata.A, pairdata.B, pairdata.d, pairdata.field.p
    phi = pairdata.phi_values()
    n = d + 1
    if len(basis) != n:
        raise ShapeMismatch("basis has the wrong length")
    zero = (0,) * n
    basis = [tuple(x % p for x in v) for v in basis]
    lower, raise_ = (A, B) if kind == "AB" else (B, A)

    for i in range(n):
        below = basis[i - 1] if i > 0 else zero
        if mat_apply(lower, basis[i]) != below:
            raise FormulaViolated(i)
        if i < d:
            coeff = phi[i] if kind == "AB" else phi[d - i - 1]
            above = vec_scale(basis[i + 1], coeff, p)
        else:
            above = zero
        if mat_apply(raise_, basis[i]) != above:
            raise FormulaViolated(i)
    return PairBasisReport(kind, n)
