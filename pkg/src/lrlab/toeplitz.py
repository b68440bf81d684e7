"""Upper-triangular Toeplitz matrices and related fixed matrices.

An upper-triangular Toeplitz matrix with parameters ``alpha`` has entry
``alpha[j - i]`` at (i, j) for i <= j and zero below the diagonal.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import InternalContradiction, NotToeplitz, ShapeMismatch
from .field import FieldElement, FieldSpec
from .linalg import Matrix


@dataclass(frozen=True)
class ToeplitzParams:
    field: FieldSpec
    alpha: tuple[FieldElement, ...]

    @classmethod
    def of(cls, field: FieldSpec, values: Sequence[int | FieldElement]) -> "ToeplitzParams":
        return cls(field, tuple(field(v) for v in values))

    @property
    def d(self) -> int:
        return len(self.alpha) - 1

    def __getitem__(self, i: int) -> FieldElement:
        # indices past d read as zero
        if 0 <= i < len(self.alpha):
            return self.alpha[i]
        if i > self.d:
            return self.field.zero
        raise IndexError(i)

    @property
    def invertible(self) -> bool:
        return bool(self.alpha[0])

    def values(self) -> list[int]:
        return [a.value for a in self.alpha]

    def to_json(self) -> list[int]:
        return self.values()


def toeplitz_matrix(params: ToeplitzParams) -> Matrix:
    a = params.values()
    n = len(a)
    return Matrix(params.field, tuple(tuple(a[j - i] if j >= i else 0 for j in range(n))
                                      for i in range(n)))


def toeplitz_params(M: Matrix) -> ToeplitzParams:
    if not M.is_square:
        raise ShapeMismatch("Toeplitz matrices are square")
    n = M.n_rows
    first = M.rows[0]
    for i in range(n):
        for j in range(n):
            expected = first[j - i] if j >= i else 0
            if M.rows[i][j] != expected:
                raise NotToeplitz((i, j))
    return ToeplitzParams.of(M.field, first)


def toeplitz_inverse_params(params: ToeplitzParams) -> ToeplitzParams:
    """Parameters of the inverse, by the power-series recurrence."""
    field = params.field
    p = field.p
    a = params.values()
    b = [field.inv(a[0])]
    for k in range(1, len(a)):
        s = sum(a[j] * b[k - j] for j in range(1, k + 1))
        b.append(-s * b[0] % p)
    return ToeplitzParams.of(field, b)


def reversal_matrix(field: FieldSpec, n: int) -> Matrix:
    """Z with (i, j)-entry 1 when i + j = n - 1."""
    return Matrix(field, tuple(tuple(int(i + j == n - 1) for j in range(n)) for i in range(n)))


def anti_diagonal_transpose(M: Matrix) -> Matrix:
    """Reflection across the anti-diagonal: entry (i, j) is M[d-j][d-i]."""
    if not M.is_square:
        raise ShapeMismatch("anti-diagonal transpose needs a square matrix")
    d = M.n_rows - 1
    rows = M.rows
    out = Matrix(M.field, tuple(tuple(rows[d - j][d - i] for j in range(d + 1))
                                for i in range(d + 1)))
    if __debug__:
        Z = reversal_matrix(M.field, d + 1)
        if Z @ M.transpose() @ Z != out:
            raise InternalContradiction("index formula disagrees with Z M^T Z")
    return out


def subdiagonal_matrix(field: FieldSpec, phi: Sequence[int | FieldElement]) -> Matrix:
    """The matrix with (i+1, i)-entry phi[i] and zeros elsewhere."""
    vals = [field(x).value for x in phi]
    n = len(vals) + 1
    return Matrix(field, tuple(tuple(vals[j] if i == j + 1 else 0 for j in range(n))
                               for i in range(n)))


def shift_matrix(field: FieldSpec, n: int) -> Matrix:
    """Ones on the superdiagonal, so e_i maps to e_{i-1}."""
    return Matrix(field, tuple(tuple(int(j == i + 1) for j in range(n)) for i in range(n)))
