"""
Exact arithmetic in Z/pZ for a prime p.

Every residue used by the rest of the project is a FieldElement bound to a
PrimeField. Binary operations refuse operands from different fields; plain
Python ints are accepted on either side and reduced into the field first.

Supported moduli: 2 <= p < 2**61. Primality is decided by sympy.isprime,
which is deterministic below 2**64.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Union

from sympy import isprime

from config import MAX_MODULUS
from errors import CompositeModulus, ModulusMismatch, ModulusOutOfRange, ZeroInverse

Operand = Union["FieldElement", int]


@dataclass(frozen=True)
class PrimeField:
    """The field Z/pZ. Construction fails unless p is a supported prime."""

    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or isinstance(self.p, bool):
            raise TypeError(f"modulus must be an int, got {type(self.p).__name__}")
        if self.p >= MAX_MODULUS:
            raise ModulusOutOfRange(self.p, MAX_MODULUS)
        if self.p < 2 or not isprime(self.p):
            raise CompositeModulus(self.p)

    def __call__(self, value: int) -> "FieldElement":
        return self.element(value)

    def element(self, value: Operand) -> "FieldElement":
        if isinstance(value, FieldElement):
            _check_same(self, value.field)
            return value
        return FieldElement(int(value) % self.p, self)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(0, self)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(1, self)

    def elements(self) -> Iterator["FieldElement"]:
        for v in range(self.p):
            yield FieldElement(v, self)

    def __repr__(self):
        return f"GF({self.p})"


@dataclass(frozen=True)
class FieldElement:
    value: int
    field: PrimeField

    def __post_init__(self):
        if not 0 <= self.value < self.field.p:
            raise ValueError(f"{self.value} is not a reduced residue mod {self.field.p}")

    def _coerce(self, other: Operand) -> "FieldElement":
        if isinstance(other, FieldElement):
            _check_same(self.field, other.field)
            return other
        if isinstance(other, int):
            return FieldElement(other % self.field.p, self.field)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return sub(self, other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return sub(other, self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return mul(self, inverse(other))

    def __neg__(self):
        return neg(self)

    def __pow__(self, exponent: int):
        return power(self, exponent)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field.p == other.field.p and self.value == other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.value == other
        return NotImplemented

    def __hash__(self):
        # agrees with int hashing; elements of different fields may collide
        return hash(self.value)

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.field.p})"

    def __str__(self):
        return str(self.value)


def _check_same(f: PrimeField, g: PrimeField):
    if f.p != g.p:
        raise ModulusMismatch(f.p, g.p)


@lru_cache(maxsize=256)
def make_field(p: int) -> PrimeField:
    """Return the field Z/pZ; raises CompositeModulus if p is not prime."""
    return PrimeField(p)


def add(x: FieldElement, y: FieldElement) -> FieldElement:
    _check_same(x.field, y.field)
    return FieldElement((x.value + y.value) % x.field.p, x.field)


def sub(x: FieldElement, y: FieldElement) -> FieldElement:
    _check_same(x.field, y.field)
    return FieldElement((x.value - y.value) % x.field.p, x.field)


def mul(x: FieldElement, y: FieldElement) -> FieldElement:
    _check_same(x.field, y.field)
    return FieldElement((x.value * y.value) % x.field.p, x.field)


def neg(x: FieldElement) -> FieldElement:
    return FieldElement((-x.value) % x.field.p, x.field)


def inverse(x: FieldElement) -> FieldElement:
    if x.value == 0:
        raise ZeroInverse(x.field.p)
    return FieldElement(pow(x.value, -1, x.field.p), x.field)


def power(x: FieldElement, e: int) -> FieldElement:
    """x**e by square-and-multiply; 0**0 is 1."""
    if e < 0:
        return power(inverse(x), -e)
    return FieldElement(pow(x.value, e, x.field.p), x.field)


def _binomial_small(n: int, k: int, p: int) -> int:
    # n < p: every factor of k! is invertible
    if k < 0 or k > n:
        return 0
    k = min(k, n - k)
    num = 1
    den = 1
    for i in range(k):
        num = num * (n - i) % p
        den = den * (i + 1) % p
    return num * pow(den, -1, p) % p


def binomial_mod_p(n: int, k: int, field: PrimeField) -> FieldElement:
    """
    C(n, k) mod p.

    Uses the multiplicative formula when n < p and Lucas's theorem otherwise:
    C(n, k) = prod C(n_i, k_i) over the base-p digits of n and k.
    """
    if n < 0 or k < 0:
        raise ValueError("binomial arguments must be nonnegative")
    p = field.p
    if k > n:
        return field.zero
    if n < p:
        return FieldElement(_binomial_small(n, k, p), field)

    result = 1
    while n or k:
        n_digit, k_digit = n % p, k % p
        if k_digit > n_digit:
            return field.zero
        result = result * _binomial_small(n_digit, k_digit, p) % p
        n //= p
        k //= p
    return FieldElement(result, field)
