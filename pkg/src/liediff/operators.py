"""Linear operators on (graded) coordinate spaces and subspaces of them."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .linalg import DimensionError, RationalMatrix, Subspace

MIXED = "mixed"


def matrix_parity(m: RationalMatrix, degrees: Sequence[int]) -> int | str:
    """Parity of ``m`` with respect to the grading ``degrees`` of its (square) coordinate space.

    Even operators only have entries between same-degree coordinates, odd ones
    only between opposite degrees.  The zero matrix counts as even.
    """
    even = odd = False
    for i in range(m.rows):
        row = m.row(i)
        for j in range(m.cols):
            if row[j]:
                if degrees[i] == degrees[j]:
                    even = True
                else:
                    odd = True
    if even and odd:
        return MIXED
    return 1 if odd else 0


def parity_mask(degrees: Sequence[int], parity: int) -> list[tuple[int, int]]:
    """Matrix positions (row, col) allowed for an operator of the given parity."""
    n = len(degrees)
    return [(i, j) for i in range(n) for j in range(n) if (degrees[i] + degrees[j]) % 2 == parity]


@dataclass(frozen=True)
class LinearOperator:
    matrix: RationalMatrix
    parity: int | str = 0

    @classmethod
    def graded(cls, matrix: RationalMatrix, degrees: Sequence[int]) -> "LinearOperator":
        return cls(matrix, matrix_parity(matrix, degrees))

    def __matmul__(self, other: "LinearOperator") -> "LinearOperator":
        return LinearOperator(self.matrix @ other.matrix, _add_parity(self.parity, other.parity))

    def __add__(self, other: "LinearOperator") -> "LinearOperator":
        p = self.parity if self.parity == other.parity else MIXED
        return LinearOperator(self.matrix + other.matrix, p)

    def __call__(self, v: Sequence) -> tuple:
        return self.matrix @ v


def _add_parity(p, q):
    if p == MIXED or q == MIXED:
        return MIXED
    return (p + q) % 2


def flatten(m: RationalMatrix) -> tuple:
    return m.flatten()


@dataclass(frozen=True)
class OperatorSpace:
    """A linear space of ``rows x cols`` operators, canonicalized through flattening."""

    rows: int
    cols: int
    subspace: Subspace
    label: str = ""

    @classmethod
    def span(cls, rows: int, cols: int, mats: Iterable[RationalMatrix], label: str = "") -> "OperatorSpace":
        vecs = []
        for m in mats:
            if isinstance(m, LinearOperator):
                m = m.matrix
            if m.shape != (rows, cols):
                raise DimensionError(f"operator of shape {m.shape} in a {rows}x{cols} operator space")
            vecs.append(m.flatten())
        return cls(rows, cols, Subspace.span(rows * cols, vecs), label)

    @classmethod
    def from_subspace(cls, rows: int, cols: int, sub: Subspace, label: str = "") -> "OperatorSpace":
        return cls(rows, cols, sub, label)

    @classmethod
    def full(cls, n: int, label: str = "") -> "OperatorSpace":
        return cls(n, n, Subspace.full(n * n), label)

    @property
    def dim(self) -> int:
        return self.subspace.dim

    @property
    def basis(self) -> list[RationalMatrix]:
        return [RationalMatrix.from_flat(v, self.rows, self.cols) for v in self.subspace.basis]

    def relabel(self, label: str) -> "OperatorSpace":
        return OperatorSpace(self.rows, self.cols, self.subspace, label)

    def contains(self, m) -> bool:
        if isinstance(m, LinearOperator):
            m = m.matrix
        return self.subspace.contains(m.flatten())

    def coordinates(self, m):
        if isinstance(m, LinearOperator):
            m = m.matrix
        return self.subspace.coordinates(m.flatten())

    def contains_space(self, other: "OperatorSpace") -> bool:
        return self.subspace.contains_subspace(other.subspace)

    def __add__(self, other: "OperatorSpace") -> "OperatorSpace":
        return OperatorSpace(self.rows, self.cols, self.subspace + other.subspace, self.label)

    def intersect(self, other: "OperatorSpace") -> "OperatorSpace":
        return OperatorSpace(self.rows, self.cols, self.subspace.intersect(other.subspace), self.label)

    def __eq__(self, other) -> bool:
        return isinstance(other, OperatorSpace) and self.subspace == other.subspace

    def __hash__(self) -> int:
        return hash(self.subspace)
