"""Dense exact matrices, lines and subspaces over GF(p).

Entries and vector coordinates are held as reduced ``int`` residues; the
owning :class:`~lrlab.field.FieldSpec` travels with every object so mixing
fields is caught early. Rows and columns are indexed from 0.

Subspaces are stored in reduced row echelon form and lines are scaled so
their first nonzero coordinate is 1, which makes equality of subspaces a
plain structural comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from operator import mul
from typing import Iterable, Sequence

from .errors import FieldMismatch, NotABasis, NotInvariant, ShapeMismatch, Singular
from .field import FieldElement, FieldSpec

Vector = tuple[int, ...]


def _check_same_field(*specs: FieldSpec) -> None:
    first = specs[0]
    for s in specs[1:]:
        if s != first:
            raise FieldMismatch(f"GF({first.p}) vs GF({s.p})")


def rref(rows: Sequence[Sequence[int]], p: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form over GF(p); returns (nonzero rows, pivot columns).

    Pivoting takes the first nonzero entry in each column.
    """
    m = [[x % p for x in r] for r in rows]
    if not m:
        return [], []
    n_rows, n_cols = len(m), len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        for i in range(r, n_rows):
            if m[i][c]:
                break
        else:
            continue
        row = m[i]
        m[i] = m[r]
        inv = pow(row[c], p - 2, p)
        row = [x * inv % p for x in row]
        m[r] = row
        for i in range(n_rows):
            f = m[i][c]
            if f and i != r:
                m[i] = [(x - f * y) % p for x, y in zip(m[i], row)]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return m[:r], pivots


@dataclass(frozen=True)
class Matrix:
    field: FieldSpec
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.rows or not self.rows[0]:
            raise ShapeMismatch("matrices must have at least one row and one column")
        if len(set(map(len, self.rows))) != 1:
            raise ShapeMismatch("ragged rows")

    # construction -----------------------------------------------------------
    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Iterable[Iterable[int | FieldElement]]) -> "Matrix":
        p = field.p
        out = []
        for r in rows:
            row = []
            for x in r:
                if isinstance(x, FieldElement):
                    if x.spec != field:
                        raise FieldMismatch("entry from another field")
                    x = x.value
                row.append(int(x) % p)
            out.append(tuple(row))
        return cls(field, tuple(out))

    @classmethod
    def from_columns(cls, field: FieldSpec, columns: Sequence[Sequence[int]]) -> "Matrix":
        p = field.p
        return cls(field, tuple(tuple(int(x) % p for x in r) for r in zip(*columns)))

    @classmethod
    def zeros(cls, field: FieldSpec, n_rows: int, n_cols: int | None = None) -> "Matrix":
        n_cols = n_rows if n_cols is None else n_cols
        return cls(field, tuple((0,) * n_cols for _ in range(n_rows)))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Matrix":
        return cls(field, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    # shape and access -------------------------------------------------------
    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @property
    def n_cols(self) -> int:
        return len(self.rows[0])

    @property
    def shape(self) -> tuple[int, int]:
        return self.n_rows, self.n_cols

    @property
    def is_square(self) -> bool:
        return self.n_rows == self.n_cols

    def entry(self, i: int, j: int) -> FieldElement:
        return FieldElement(self.rows[i][j], self.field)

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[Vector]:
        return [tuple(c) for c in zip(*self.rows)]

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def to_list(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def __repr__(self) -> str:
        return f"Matrix(GF({self.field.p}), {self.to_list()})"

    # arithmetic -------------------------------------------------------------
    def _same(self, other: "Matrix") -> None:
        _check_same_field(self.field, other.field)
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same(other)
        p = self.field.p
        return Matrix(self.field, tuple(tuple((x + y) % p for x, y in zip(a, b))
                                        for a, b in zip(self.rows, other.rows)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same(other)
        p = self.field.p
        return Matrix(self.field, tuple(tuple((x - y) % p for x, y in zip(a, b))
                                        for a, b in zip(self.rows, other.rows)))

    def __neg__(self) -> "Matrix":
        return self.scale(-1)

    def scale(self, k: int | FieldElement) -> "Matrix":
        if isinstance(k, FieldElement):
            _check_same_field(self.field, k.spec)
            k = k.value
        p = self.field.p
        return Matrix(self.field, tuple(tuple(x * k % p for x in r) for r in self.rows))

    def __rmul__(self, k: int | FieldElement) -> "Matrix":
        return self.scale(k)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            return mat_mul(self, other)
        return mat_apply(self, other)

    def transpose(self) -> "Matrix":
        return Matrix(self.field, tuple(zip(*self.rows)))

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def __pow__(self, k: int) -> "Matrix":
        if not self.is_square:
            raise ShapeMismatch("power of a non-square matrix")
        if k < 0:
            return inverse(self) ** (-k)
        result = Matrix.identity(self.field, self.n_rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result


def mat_mul(M: Matrix, N: Matrix) -> Matrix:
    _check_same_field(M.field, N.field)
    if M.n_cols != N.n_rows:
        raise ShapeMismatch(f"cannot multiply {M.shape} by {N.shape}")
    p = M.field.p
    cols = list(zip(*N.rows))
    return Matrix(M.field, tuple(tuple(sum(map(mul, r, c)) % p for c in cols) for r in M.rows))


def mat_apply(M: Matrix, v: Sequence[int]) -> Vector:
    if len(v) != M.n_cols:
        raise ShapeMismatch(f"vector of length {len(v)} for matrix {M.shape}")
    p = M.field.p
    return tuple(sum(map(mul, r, v)) % p for r in M.rows)


def rank(M: Matrix) -> int:
    return len(rref(M.rows, M.field.p)[1])


def inverse(M: Matrix) -> Matrix:
    if not M.is_square:
        raise ShapeMismatch("inverse of a non-square matrix")
    n = M.n_rows
    p = M.field.p
    aug = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(M.rows)]
    red, pivots = rref(aug, p)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise Singular("matrix is not invertible")
    return Matrix(M.field, tuple(tuple(r[n:]) for r in red))


def is_invertible(M: Matrix) -> bool:
    return M.is_square and rank(M) == M.n_rows


# vectors ---------------------------------------------------------------------

def normalize_vector(v: Sequence[int], p: int) -> Vector:
    """Scale ``v`` so its first nonzero coordinate is 1."""
    v = tuple(x % p for x in v)
    lead = next((x for x in v if x), 0)
    if not lead:
        raise ValueError("cannot normalize the zero vector")
    inv = pow(lead, p - 2, p)
    return tuple(x * inv % p for x in v)


def unit_vector(n: int, i: int) -> Vector:
    return tuple(int(j == i) for j in range(n))


def vec_scale(v: Sequence[int], k: int, p: int) -> Vector:
    return tuple(x * k % p for x in v)


def vec_add(u: Sequence[int], v: Sequence[int], p: int) -> Vector:
    return tuple((x + y) % p for x, y in zip(u, v))


@dataclass(frozen=True)
class Line:
    """A one-dimensional subspace, held by its normalized spanning vector."""

    field: FieldSpec
    span: Vector

    @classmethod
    def spanned_by(cls, field: FieldSpec, v: Sequence[int]) -> "Line":
        return cls(field, normalize_vector(v, field.p))

    @property
    def dim_ambient(self) -> int:
        return len(self.span)

    def contains(self, v: Sequence[int]) -> bool:
        if not any(x % self.field.p for x in v):
            return True
        return normalize_vector(v, self.field.p) == self.span

    def as_subspace(self) -> "Subspace":
        return Subspace(self.field, len(self.span), (self.span,))


@dataclass(frozen=True)
class Subspace:
    field: FieldSpec
    dim_ambient: int
    basis: tuple[Vector, ...]

    @classmethod
    def span(cls, field: FieldSpec, n: int, vectors: Iterable[Sequence[int]]) -> "Subspace":
        vectors = [tuple(v) for v in vectors]
        if any(len(v) != n for v in vectors):
            raise ShapeMismatch("vector length does not match ambient dimension")
        red, _ = rref(vectors, field.p)
        return cls(field, n, tuple(tuple(r) for r in red))

    @classmethod
    def zero(cls, field: FieldSpec, n: int) -> "Subspace":
        return cls(field, n, ())

    @classmethod
    def whole(cls, field: FieldSpec, n: int) -> "Subspace":
        return cls(field, n, tuple(unit_vector(n, i) for i in range(n)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence[int]) -> bool:
        return Subspace.span(self.field, self.dim_ambient, self.basis + (tuple(v),)).dim == self.dim

    def __le__(self, other: "Subspace") -> bool:
        _check_same_field(self.field, other.field)
        return all(other.contains(b) for b in self.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        _check_same_field(self.field, other.field)
        return Subspace.span(self.field, self.dim_ambient, self.basis + other.basis)

    def image(self, X: Matrix) -> "Subspace":
        return Subspace.span(self.field, X.n_rows, (mat_apply(X, b) for b in self.basis))

    def as_line(self) -> Line:
        if self.dim != 1:
            raise ValueError(f"subspace has dimension {self.dim}, not 1")
        return Line(self.field, self.basis[0])


def kernel(M: Matrix) -> Subspace:
    """Null space {v : Mv = 0} by exact Gaussian elimination."""
    p = M.field.p
    n = M.n_cols
    red, pivots = rref(M.rows, p)
    free = [c for c in range(n) if c not in pivots]
    vectors = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for row, pc in zip(red, pivots):
            v[pc] = -row[f] % p
        vectors.append(v)
    if len(vectors) == 1:
        # a single normalized vector is already in echelon form
        return Subspace(M.field, n, (normalize_vector(vectors[0], p),))
    return Subspace.span(M.field, n, vectors)


def line_image(X: Matrix, L: Line) -> Line | None:
    """The line X·L, or ``None`` (the zero subspace) when X annihilates L."""
    if X.n_cols != L.dim_ambient:
        raise ShapeMismatch("ambient dimensions differ")
    w = mat_apply(X, L.span)
    if not any(w):
        return None
    return Line.spanned_by(X.field, w)


def eigenvalue_on_line(X: Matrix, L: Line) -> FieldElement:
    """The scalar λ with Xv = λv for v spanning L."""
    w = mat_apply(X, L.span)
    p = X.field.p
    pivot = next(i for i, x in enumerate(L.span) if x)
    lam = w[pivot] * pow(L.span[pivot], p - 2, p) % p
    if any((wi - lam * vi) % p for wi, vi in zip(w, L.span)):
        raise NotInvariant("X does not map the line into itself")
    return FieldElement(lam, X.field)


def subspace_intersect(S: Subspace, S2: Subspace) -> Subspace:
    """S ∩ S2 from the kernel of the stacked coordinate system [S | -S2]."""
    _check_same_field(S.field, S2.field)
    if S.dim_ambient != S2.dim_ambient:
        raise ShapeMismatch("ambient dimensions differ")
    field, n = S.field, S.dim_ambient
    if S.dim == 0 or S2.dim == 0:
        return Subspace.zero(field, n)
    p = field.p
    cols = list(S.basis) + [vec_scale(b, -1, p) for b in S2.basis]
    K = kernel(Matrix.from_columns(field, cols))
    k = S.dim
    vectors = []
    for coeffs in K.basis:
        v = [0] * n
        for c, b in zip(coeffs[:k], S.basis):
            if c:
                v = [(x + c * y) % p for x, y in zip(v, b)]
        vectors.append(v)
    return Subspace.span(field, n, vectors)


def basis_matrix(field: FieldSpec, basis: Sequence[Sequence[int]]) -> Matrix:
    """The matrix whose j-th column is ``basis[j]``."""
    return Matrix.from_columns(field, basis)


def transition_matrix(field: FieldSpec, from_basis: Sequence[Sequence[int]],
                      to_basis: Sequence[Sequence[int]]) -> Matrix:
    """T with to_basis[j] = sum_i T[i][j] * from_basis[i].

    Under this convention the representing matrices satisfy
    ``[X]_from @ T == T @ [X]_to``.
    """
    n = len(from_basis)
    if len(to_basis) != n or any(len(v) != n for v in list(from_basis) + list(to_basis)):
        raise NotABasis("both bases need n vectors of length n")
    U = basis_matrix(field, from_basis)
    W = basis_matrix(field, to_basis)
    try:
        U_inv = inverse(U)
    except Singular as exc:
        raise NotABasis("from_basis is not a basis") from exc
    if not is_invertible(W):
        raise NotABasis("to_basis is not a basis")
    return U_inv @ W


def representing_matrix(X: Matrix, basis: Sequence[Sequence[int]]) -> Matrix:
    """Matrix of X with respect to ``basis``: X b_j = sum_i M[i][j] b_i."""
    P = basis_matrix(X.field, basis)
    try:
        return inverse(P) @ X @ P
    except Singular as exc:
        raise NotABasis("vectors do not form a basis") from exc
