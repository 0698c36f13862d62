"""
Subsets of Z/pZ and the two sumset constructions.

    A + B  = {a + b : a in A, b in B}
    A +. B = {a + b : a in A, b in B, a != b}     (restricted sumset)

Sets are stored sorted ascending, so set equality is tuple equality and
serialization is canonical. The restricted sumset may be empty (A = B = {a});
that is a valid value, not an error.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, List, Tuple

from errors import EmptyInput, ModulusMismatch, SetLiteralError
from prime_field import FieldElement, PrimeField

# Presence bitmaps above this modulus fall back to a Python set.
BITMAP_LIMIT = 1 << 20


@dataclass(frozen=True)
class FpSet:
    field: PrimeField
    elements: Tuple[int, ...]

    def __post_init__(self):
        p = self.field.p
        prev = -1
        for x in self.elements:
            if not isinstance(x, int) or not 0 <= x < p:
                raise SetLiteralError(f"{x!r} is not a residue in [0, {p})")
            if x <= prev:
                raise SetLiteralError(f"elements must be strictly increasing: {list(self.elements)}")
            prev = x

    @classmethod
    def of(cls, field: PrimeField, values: Iterable[int], allow_empty: bool = False) -> "FpSet":
        """Strict constructor: rejects duplicates and out-of-range residues."""
        values = [int(v) for v in values]
        seen = set()
        for v in values:
            if not 0 <= v < field.p:
                raise SetLiteralError(f"{v} is out of range for p = {field.p}")
            if v in seen:
                raise SetLiteralError(f"duplicate element {v}")
            seen.add(v)
        if not values and not allow_empty:
            raise EmptyInput("set must be nonempty")
        return cls(field, tuple(sorted(values)))

    @classmethod
    def canonical(cls, field: PrimeField, values: Iterable[int]) -> "FpSet":
        """Reduce, deduplicate and sort; used for computed sets."""
        p = field.p
        return cls(field, tuple(sorted({int(v) % p for v in values})))

    @classmethod
    def from_mask(cls, field: PrimeField, mask: int) -> "FpSet":
        return cls(field, tuple(i for i in range(field.p) if mask >> i & 1))

    @property
    def mask(self) -> int:
        m = 0
        for x in self.elements:
            m |= 1 << x
        return m

    def __len__(self):
        return len(self.elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __contains__(self, x) -> bool:
        if isinstance(x, FieldElement):
            x = x.value
        return x in self.elements

    def __bool__(self):
        return bool(self.elements)

    def field_elements(self) -> List[FieldElement]:
        return [FieldElement(x, self.field) for x in self.elements]

    def without(self, *values: int) -> "FpSet":
        drop = set(values)
        return FpSet(self.field, tuple(x for x in self.elements if x not in drop))

    def issubset(self, other: "FpSet") -> bool:
        return set(self.elements) <= set(other.elements)

    def to_list(self) -> List[int]:
        return list(self.elements)

    def __str__(self):
        return "{" + ",".join(map(str, self.elements)) + "}"


def _require_pair(A: FpSet, B: FpSet):
    if A.field.p != B.field.p:
        raise ModulusMismatch(A.field.p, B.field.p)
    if not A or not B:
        raise EmptyInput("sumsets need nonempty A and B")


def _collect(field: PrimeField, sums: Iterable[int]) -> FpSet:
    p = field.p
    if p <= BITMAP_LIMIT:
        present = bytearray(p)
        for s in sums:
            present[s] = 1
        return FpSet(field, tuple(i for i in range(p) if present[i]))
    return FpSet(field, tuple(sorted(set(sums))))


def sumset(A: FpSet, B: FpSet) -> FpSet:
    _require_pair(A, B)
    p = A.field.p
    return _collect(A.field, ((a + b) % p for a in A for b in B))


def restricted_sumset(A: FpSet, B: FpSet) -> FpSet:
    _require_pair(A, B)
    p = A.field.p
    return _collect(A.field, ((a + b) % p for a in A for b in B if a != b))


def anr_bound(p: int, m: int, k: int) -> int:
    """min{p, m + k - 2}, clamped at 0."""
    return max(0, min(p, m + k - 2))


def eh_bound(p: int, m: int) -> int:
    """min{p, 2m - 3}, clamped at 0."""
    return max(0, min(p, 2 * m - 3))


def cd_bound(p: int, m: int, k: int) -> int:
    """Cauchy-Davenport: min{p, m + k - 1}."""
    return max(0, min(p, m + k - 1))


BOUNDS = {
    'anr': lambda p, m, k: anr_bound(p, m, k),
    'eh': lambda p, m, k: eh_bound(p, m),
    'cd': lambda p, m, k: cd_bound(p, m, k),
}


def interval(field: PrimeField, start: int, length: int, step: int = 1) -> FpSet:
    """The arithmetic progression {start, start + step, ..., start + (length-1)step}."""
    if length < 1:
        raise EmptyInput("progression length must be positive")
    if step % field.p == 0 and length > 1:
        raise SetLiteralError("step must be nonzero mod p")
    return FpSet.of(field, ((start + i * step) % field.p for i in range(length)))


def parse_set_literal(text: str, field: PrimeField) -> FpSet:
    """
    Parse "r1,r2,..." into an FpSet. Duplicates and out-of-range residues are
    rejected rather than repaired.
    """
    text = (text or "").strip().strip("{}")
    if not text:
        raise EmptyInput("empty set literal")
    values = []
    for token in text.split(","):
        token = token.strip()
        try:
            values.append(int(token, 10))
        except ValueError:
            raise SetLiteralError(f"not a base-10 integer: {token!r}") from None
    return FpSet.of(field, values)


def format_set(S: FpSet) -> str:
    return ",".join(map(str, S.elements))
