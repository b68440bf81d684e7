"""Exact arithmetic over a prime field GF(p).

Elements are stored by their least nonnegative residue, so two elements of
the same field compare equal exactly when their ``value`` attributes do.
Heavy lifting elsewhere in the package works on plain ``int`` residues for
speed; :class:`FieldElement` is the public scalar type.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .errors import DivisionByZero, FieldMismatch, ParseError

_MR_BASES = (2, 3, 5, 7)  # deterministic for n < 3_215_031_751


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for every n < 2**31."""
    if n < 2:
        return False
    for small in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % small == 0:
            return n == small
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The prime field GF(p) with 2 < p < 2**31."""

    p: int
    kind: str = "prime"

    def __post_init__(self):
        if self.kind != "prime":
            raise ValueError(f"unsupported field kind {self.kind!r}")
        if not isinstance(self.p, int) or isinstance(self.p, bool):
            raise TypeError("p must be an int")
        if not 2 < self.p < 2**31:
            raise ValueError(f"p must satisfy 2 < p < 2**31, got {self.p}")
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    def __call__(self, value: Union[int, "FieldElement"]) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.spec != self:
                raise FieldMismatch(f"element of GF({value.spec.p}) used in GF({self.p})")
            return value
        return FieldElement(int(value) % self.p, self)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(0, self)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(1, self)

    def inv(self, value: int) -> int:
        """Inverse of a residue, as a residue."""
        value %= self.p
        if value == 0:
            raise DivisionByZero(f"0 has no inverse in GF({self.p})")
        return pow(value, self.p - 2, self.p)

    def parse(self, text: str) -> "FieldElement":
        return field_parse(text, self)

    def to_json(self) -> dict:
        return {"kind": self.kind, "p": self.p}

    @classmethod
    def from_json(cls, obj: dict) -> "FieldSpec":
        try:
            kind = obj.get("kind", "prime")
            p = obj["p"]
        except (AttributeError, KeyError) as exc:
            raise ParseError(f"bad field description {obj!r}") from exc
        if not isinstance(p, int) or isinstance(p, bool):
            raise ParseError(f"field p must be an integer, got {p!r}")
        try:
            return cls(p, kind)
        except (TypeError, ValueError) as exc:
            raise ParseError(str(exc)) from exc


Scalar = Union[int, "FieldElement"]


@dataclass(frozen=True, slots=True)
class FieldElement:
    value: int
    spec: FieldSpec

    def _coerce(self, other: Scalar) -> int:
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise FieldMismatch(f"cannot mix GF({self.spec.p}) and GF({other.spec.p})")
            return other.value
        if isinstance(other, int):
            return other % self.spec.p
        return NotImplemented

    def _make(self, value: int) -> "FieldElement":
        return FieldElement(value % self.spec.p, self.spec)

    def __add__(self, other: Scalar) -> "FieldElement":
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._make(self.value + o)

    __radd__ = __add__

    def __sub__(self, other: Scalar) -> "FieldElement":
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._make(self.value - o)

    def __rsub__(self, other: Scalar) -> "FieldElement":
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._make(o - self.value)

    def __mul__(self, other: Scalar) -> "FieldElement":
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._make(self.value * o)

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> "FieldElement":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._make(self.value * self.spec.inv(o))

    def __rtruediv__(self, other: Scalar) -> "FieldElement":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._make(o * self.spec.inv(self.value))

    def __neg__(self) -> "FieldElement":
        return self._make(-self.value)

    def __pow__(self, exponent: int) -> "FieldElement":
        if exponent < 0:
            return self._make(pow(self.spec.inv(self.value), -exponent, self.spec.p))
        return self._make(pow(self.value, exponent, self.spec.p))

    def inv(self) -> "FieldElement":
        return self._make(self.spec.inv(self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __index__(self) -> int:
        return self.value

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FieldElement):
            return self.spec == other.spec and self.value == other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.value == other % self.spec.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.value, self.spec.p))

    def __repr__(self) -> str:
        return f"GF{self.spec.p}({self.value})"

    def __str__(self) -> str:
        return str(self.value)


def field_arith(a: FieldElement, b: FieldElement | None, op: str) -> FieldElement:
    """Dispatch one of add, sub, mul, div, neg, inv; ``b`` is ignored for unary ops."""
    if op == "neg":
        return -a
    if op == "inv":
        return a.inv()
    if b is None:
        raise ValueError(f"binary op {op!r} needs two operands")
    if not isinstance(b, FieldElement) or a.spec != b.spec:
        raise FieldMismatch("operands belong to different fields")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def field_parse(text: str, spec: FieldSpec) -> FieldElement:
    """Parse a decimal integer literal (optionally signed) into GF(p)."""
    if not isinstance(text, str):
        raise ParseError(f"expected a string, got {type(text).__name__}")
    # accept the unicode minus sign as well as ASCII '-'
    cleaned = text.strip().replace("−", "-")
    body = cleaned[1:] if cleaned[:1] in "+-" else cleaned
    if not body or not body.isascii() or not body.isdigit():
        raise ParseError(f"not an integer literal: {text!r}")
    return spec(int(cleaned))


def field_format(a: FieldElement) -> str:
    return str(a.value)
