"""Decompositions into lines, their idempotents, and flags of subspaces.

Boundary parts (index -1 or d+1 of a decomposition, index -1 of a flag) are
the zero subspace. They are never stored: :meth:`Decomposition.part` returns
``None`` for them and every predicate handles that case explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Sequence

from .errors import InternalContradiction, NotDirectSum, NotOpposite, ShapeMismatch
from .field import FieldSpec
from .linalg import (
    Line,
    Matrix,
    Subspace,
    Vector,
    basis_matrix,
    inverse,
    line_image,
    mat_apply,
    rref,
    subspace_intersect,
)

LOWERS = "lowers"
RAISES = "raises"


@dataclass(frozen=True)
class Decomposition:
    field: FieldSpec
    lines: tuple[Line, ...]

    def __post_init__(self):
        n = len(self.lines)
        if n == 0:
            raise NotDirectSum("a decomposition has at least one part")
        if any(L.dim_ambient != n or L.field != self.field for L in self.lines):
            raise ShapeMismatch("need d+1 lines in a space of dimension d+1")
        # row rank of the spanning vectors equals the rank of the matrix they form
        if len(rref(self.vectors, self.field.p)[1]) != n:
            raise NotDirectSum("lines do not sum directly to V")

    @classmethod
    def from_vectors(cls, field: FieldSpec, vectors: Sequence[Sequence[int]]) -> "Decomposition":
        return cls(field, tuple(Line.spanned_by(field, v) for v in vectors))

    @classmethod
    def standard(cls, field: FieldSpec, d: int) -> "Decomposition":
        return cls.from_vectors(field, [[int(i == j) for j in range(d + 1)] for i in range(d + 1)])

    @property
    def d(self) -> int:
        return len(self.lines) - 1

    @property
    def vectors(self) -> list[Vector]:
        return [L.span for L in self.lines]

    def part(self, i: int) -> Line | None:
        if 0 <= i <= self.d:
            return self.lines[i]
        return None

    @classmethod
    def _trusted(cls, field: FieldSpec, lines: tuple[Line, ...]) -> "Decomposition":
        # skips the direct-sum check; only for lines already known to be a decomposition
        obj = object.__new__(cls)
        object.__setattr__(obj, "field", field)
        object.__setattr__(obj, "lines", lines)
        return obj

    @classmethod
    def _with_projector(cls, field: FieldSpec, lines: tuple[Line, ...], Q: Matrix) -> "Decomposition":
        # Q is the inverse of the matrix of spanning vectors, which already
        # certifies the direct sum
        out = cls._trusted(field, lines)
        out.__dict__["_projector_rows"] = Q
        return out

    def reversed(self) -> "Decomposition":
        out = Decomposition._trusted(self.field, self.lines[::-1])
        if "_projector_rows" in self.__dict__:
            # reversing the columns of P reverses the rows of P^-1
            Q = self.__dict__["_projector_rows"]
            out.__dict__["_projector_rows"] = Matrix(self.field, Q.rows[::-1])
        return out

    @cached_property
    def _projector_rows(self) -> Matrix:
        return inverse(basis_matrix(self.field, self.vectors))

    def to_json(self) -> list[list[int]]:
        return [list(v) for v in self.vectors]


def make_decomposition(lines: Sequence[Line]) -> Decomposition:
    if not lines:
        raise NotDirectSum("empty sequence of lines")
    return Decomposition(lines[0].field, tuple(lines))


def action_check(X: Matrix, D: Decomposition, mode: str) -> bool:
    """Whether X lowers (X V_i = V_{i-1}) or raises (X V_i = V_{i+1}) D."""
    if mode not in (LOWERS, RAISES):
        raise ValueError(f"mode must be {LOWERS!r} or {RAISES!r}")
    if X.n_rows != D.d + 1:
        raise ShapeMismatch("operator and decomposition dimensions differ")
    step = -1 if mode == LOWERS else 1
    return all(line_image(X, D.lines[i]) == D.part(i + step) for i in range(D.d + 1))


@dataclass(frozen=True)
class IdempotentSequence:
    matrices: tuple[Matrix, ...]

    def __getitem__(self, i: int) -> Matrix:
        return self.matrices[i]

    def __len__(self) -> int:
        return len(self.matrices)

    def __iter__(self):
        return iter(self.matrices)


def idempotent_sequence(D: Decomposition) -> IdempotentSequence:
    """E_i = (column i of P)(row i of P^-1) where P holds the spanning vectors."""
    p = D.field.p
    Q = D._projector_rows
    mats = []
    for i, v in enumerate(D.vectors):
        q = Q.rows[i]
        mats.append(Matrix(D.field, tuple(tuple(a * b % p for b in q) for a in v)))
    return IdempotentSequence(tuple(mats))


def block_coefficients(X: Matrix, D: Decomposition) -> list[list[int]]:
    """c[j][i] such that E_j X E_i = c[j][i] * (v_j q_i^T).

    Since E_j = v_j q_j^T, the product E_j X E_i factors through the scalar
    q_j^T X v_i, so E_j X E_i vanishes exactly when c[j][i] does.
    """
    if X.n_rows != D.d + 1:
        raise ShapeMismatch("operator and decomposition dimensions differ")
    p = D.field.p
    Q = D._projector_rows.rows
    images = [mat_apply(X, v) for v in D.vectors]
    return [[sum(a * b for a, b in zip(Q[j], w)) % p for w in images] for j in range(D.d + 1)]


class TridiagonalReport(NamedTuple):
    tridiagonal: bool
    irreducible: bool


def tridiagonal_check(X: Matrix, D: Decomposition) -> TridiagonalReport:
    c = block_coefficients(X, D)
    n = D.d + 1
    trid = all(c[j][i] == 0 for i in range(n) for j in range(n) if abs(i - j) > 1)
    irred = (trid
             and all(c[i - 1][i] for i in range(1, n))
             and all(c[i + 1][i] for i in range(n - 1)))
    return TridiagonalReport(trid, irred)


def zero_diagonal_check(X: Matrix, D: Decomposition) -> bool:
    c = block_coefficients(X, D)
    return all(c[i][i] == 0 for i in range(D.d + 1))


# flags -------------------------------------------------------------------------

@dataclass(frozen=True)
class Flag:
    subspaces: tuple[Subspace, ...]

    def __post_init__(self):
        for i, U in enumerate(self.subspaces):
            if U.dim != i + 1:
                raise ValueError(f"flag member {i} has dimension {U.dim}, expected {i + 1}")
            if i and not self.subspaces[i - 1] <= U:
                raise ValueError(f"flag member {i - 1} is not contained in member {i}")

    @property
    def d(self) -> int:
        return len(self.subspaces) - 1

    @property
    def field(self) -> FieldSpec:
        return self.subspaces[0].field

    def member(self, i: int) -> Subspace:
        if i < 0:
            return Subspace.zero(self.field, self.d + 1)
        return self.subspaces[i]

    def to_json(self) -> list[list[list[int]]]:
        return [[list(b) for b in U.basis] for U in self.subspaces]


def induced_flag(D: Decomposition) -> Flag:
    """U_i = V_0 + ... + V_i."""
    n = D.d + 1
    return Flag(tuple(Subspace.span(D.field, n, D.vectors[: i + 1]) for i in range(n)))


def flag_action_check(X: Matrix, F: Flag, mode: str) -> bool:
    """Lowering means X U_i = U_{i-1} for all i; raising means X U_i lies in
    U_{i+1} but not in U_i, for i < d."""
    if X.n_rows != F.d + 1:
        raise ShapeMismatch("operator and flag dimensions differ")
    if mode == LOWERS:
        return all(F.member(i).image(X) == F.member(i - 1) for i in range(F.d + 1))
    if mode == RAISES:
        for i in range(F.d):
            img = F.member(i).image(X)
            if not img <= F.member(i + 1) or img <= F.member(i):
                return False
        return True
    raise ValueError(f"mode must be {LOWERS!r} or {RAISES!r}")


def flags_opposite(F: Flag, F2: Flag, exhaustive: bool = True) -> bool:
    """U_i ∩ U'_j = 0 whenever i + j < d.

    By monotonicity the pairs with i + j = d - 1 suffice; ``exhaustive``
    checks every pair instead.
    """
    if F.d != F2.d:
        raise ShapeMismatch("flags of different lengths")
    d = F.d
    pairs = ((i, j) for i in range(d) for j in range(d - i)) if exhaustive \
        else ((i, d - 1 - i) for i in range(d))
    return all(subspace_intersect(F.member(i), F2.member(j)).dim == 0 for i, j in pairs)


def opposite_intersection_decomposition(F: Flag, F2: Flag) -> Decomposition:
    """Z_i = U_i ∩ U'_{d-i} for opposite flags."""
    if not flags_opposite(F, F2):
        raise NotOpposite("flags are not opposite")
    d = F.d
    lines = []
    for i in range(d + 1):
        Z = subspace_intersect(F.member(i), F2.member(d - i))
        if Z.dim != 1:
            raise InternalContradiction(f"Z_{i} has dimension {Z.dim}")
        lines.append(Z.as_line())
    try:
        return make_decomposition(lines)
    except NotDirectSum as exc:
        raise InternalContradiction("intersections of opposite flags are not direct") from exc
