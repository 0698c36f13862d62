"""
Dense linear algebra over Z/pZ.

Vandermonde matrices follow the 1-based convention M = (a_j^(i-1)): row i
holds the (i-1)-th powers of the nodes, so row 1 is all ones. Internally
everything is 0-based and elimination runs on plain int rows reduced mod p.

Pivoting picks the first nonzero entry at or below the current row (there is
no notion of magnitude in GF(p)), so results are fully deterministic.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

from errors import AlignmentError, EmptyInput, ModulusMismatch, SingularMatrix
from prime_field import FieldElement, PrimeField

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FpVector:
    entries: Tuple[FieldElement, ...]

    def __post_init__(self):
        if not self.entries:
            raise EmptyInput("vector must be nonempty")
        p = self.entries[0].field.p
        for x in self.entries:
            if x.field.p != p:
                raise ModulusMismatch(p, x.field.p)

    @classmethod
    def of(cls, field: PrimeField, values: Iterable[int]) -> "FpVector":
        return cls(tuple(field.element(v) for v in values))

    @property
    def field(self) -> PrimeField:
        return self.entries[0].field

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def values(self) -> List[int]:
        return [x.value for x in self.entries]


@dataclass(frozen=True)
class FpMatrix:
    """Row-major matrix; every entry belongs to the same field."""

    rows: int
    cols: int
    entries: Tuple[Tuple[FieldElement, ...], ...]

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise EmptyInput("matrix dimensions must be positive")
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise AlignmentError(f"entries do not form a {self.rows}x{self.cols} grid")
        p = self.entries[0][0].field.p
        for row in self.entries:
            for x in row:
                if x.field.p != p:
                    raise ModulusMismatch(p, x.field.p)

    @classmethod
    def of(cls, field: PrimeField, grid: Sequence[Sequence[int]]) -> "FpMatrix":
        entries = tuple(tuple(field.element(v) for v in row) for row in grid)
        return cls(len(entries), len(entries[0]) if entries else 0, entries)

    @classmethod
    def identity(cls, field: PrimeField, n: int) -> "FpMatrix":
        return cls.of(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def field(self) -> PrimeField:
        return self.entries[0][0].field

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def values(self) -> List[List[int]]:
        return [[x.value for x in row] for row in self.entries]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]


def vandermonde(nodes: FpVector) -> FpMatrix:
    """Square matrix with entry (i, j) = nodes[j]^(i-1), 1-based."""
    field = nodes.field
    p = field.p
    m = len(nodes)
    grid = [[pow(a.value, i, p) for a in nodes] for i in range(m)]
    return FpMatrix.of(field, grid)


def vandermonde_det(nodes: FpVector) -> FieldElement:
    """Product of (a_j - a_i) over i < j; nonzero iff the nodes are distinct."""
    field = nodes.field
    p = field.p
    vals = nodes.values()
    det = 1
    for j in range(len(vals)):
        for i in range(j):
            det = det * (vals[j] - vals[i]) % p
    return field.element(det)


def _row_reduce(grid: List[List[int]], p: int, ncols: int) -> Tuple[List[List[int]], List[int], int]:
    """
    Forward elimination in place on the first ncols columns.
    Returns (grid, pivot columns, sign) where sign tracks row swaps.
    """
    rows = len(grid)
    pivots = []
    sign = 1
    r = 0
    for c in range(ncols):
        if r == rows:
            break
        pivot = next((i for i in range(r, rows) if grid[i][c] % p), None)
        if pivot is None:
            continue
        if pivot != r:
            grid[r], grid[pivot] = grid[pivot], grid[r]
            sign = -sign
        inv = pow(grid[r][c], -1, p)
        for i in range(r + 1, rows):
            factor = grid[i][c] * inv % p
            if factor:
                grid[i] = [(x - factor * y) % p for x, y in zip(grid[i], grid[r])]
        pivots.append(c)
        r += 1
    return grid, pivots, sign


def det_by_elimination(M: FpMatrix) -> FieldElement:
    if not M.is_square:
        raise AlignmentError(f"determinant of a non-square {M.rows}x{M.cols} matrix")
    p = M.field.p
    grid, pivots, sign = _row_reduce(M.values(), p, M.cols)
    if len(pivots) < M.rows:
        return M.field.zero
    det = sign % p
    for i in range(M.rows):
        det = det * grid[i][i] % p
    return M.field.element(det)


def rank(M: FpMatrix) -> int:
    _, pivots, _ = _row_reduce(M.values(), M.field.p, M.cols)
    return len(pivots)


def homogeneous_solutions_trivial(M: FpMatrix) -> bool:
    """True iff Mx = 0 has only the zero solution."""
    return rank(M) == M.cols


def mat_vec(M: FpMatrix, x: FpVector) -> FpVector:
    if M.cols != len(x):
        raise AlignmentError(f"cannot multiply {M.rows}x{M.cols} matrix by length-{len(x)} vector")
    if M.field.p != x.field.p:
        raise ModulusMismatch(M.field.p, x.field.p)
    p = M.field.p
    xs = x.values()
    return FpVector.of(M.field, [sum(a * b for a, b in zip(row, xs)) % p for row in M.values()])


def solve(M: FpMatrix, b: FpVector) -> FpVector:
    """
    The unique x with Mx = b.

    Raises SingularMatrix when elimination runs out of pivots (repeated
    Vandermonde nodes, or a caller error).
    """
    if not M.is_square:
        raise AlignmentError(f"solve needs a square matrix, got {M.rows}x{M.cols}")
    if len(b) != M.rows:
        raise AlignmentError(f"right side has length {len(b)}, expected {M.rows}")
    if M.field.p != b.field.p:
        raise ModulusMismatch(M.field.p, b.field.p)

    p = M.field.p
    n = M.rows
    augmented = [row + [rhs] for row, rhs in zip(M.values(), b.values())]
    grid, pivots, _ = _row_reduce(augmented, p, n)
    if len(pivots) < n:
        logger.debug("elimination found %d pivots for a %dx%d system", len(pivots), n, n)
        raise SingularMatrix(f"matrix is singular mod {p} (rank {len(pivots)} < {n})")

    x = [0] * n
    for i in reversed(range(n)):
        acc = grid[i][n] - sum(grid[i][j] * x[j] for j in range(i + 1, n))
        x[i] = acc * pow(grid[i][i], -1, p) % p
    return FpVector.of(M.field, x)
