"""Exact linear algebra over the rationals.

Scalars are :class:`fractions.Fraction`.  Matrices are stored densely, but the
elimination and product loops skip zero entries, which keeps the (typically
very sparse) constraint systems of this package cheap to handle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction
ZERO = Fraction(0)
ONE = Fraction(1)


class DimensionError(ValueError):
    """Raised when ambient dimensions or shapes do not agree."""


def to_rational(x) -> Fraction:
    """Coerce ``x`` to a Fraction, refusing floats that are not exact."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        return Fraction(int(x))
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, float):
        if not x.is_integer():
            raise ValueError(f"refusing inexact float {x!r}; pass a Fraction or 'p/q' string")
        return Fraction(int(x))
    # numpy ints and similar
    return Fraction(x)


def parse_rational(s: str) -> Fraction:
    s = s.strip()
    if not s:
        raise ValueError("empty rational")
    try:
        if "/" in s:
            p, q = s.split("/")
            if int(q) == 0:
                raise ZeroDivisionError
            return Fraction(int(p), int(q))
        return Fraction(int(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational: {s!r}") from exc


def format_rational(x: Fraction) -> str:
    """Serialize as ``"p/q"``, or ``"p"`` when the denominator is 1."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


Vector = tuple  # tuple of Fraction


def vec(xs: Iterable) -> tuple:
    return tuple(to_rational(x) for x in xs)


def is_zero(v: Sequence) -> bool:
    return not any(v)


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((a * b for a, b in zip(u, v) if a and b), ZERO)


def _rref_rows(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """In-place reduced row echelon form; pivots chosen as the first nonzero in column order."""
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        prow = rows[r]
        inv = 1 / prow[c]
        if inv != 1:
            for j in range(c, ncols):
                if prow[j]:
                    prow[j] *= inv
        nz = [j for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    row = rows[i]
                    for j in nz:
                        row[j] -= f * prow[j]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


class RationalMatrix:
    """Immutable dense rational matrix."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data: Iterable[Iterable], cols: int | None = None):
        d = tuple(tuple(to_rational(x) for x in row) for row in data)
        if cols is None:
            if not d:
                raise DimensionError("cannot infer column count of an empty matrix")
            cols = len(d[0])
        if any(len(row) != cols for row in d):
            raise DimensionError("ragged matrix rows")
        self.rows = len(d)
        self.cols = cols
        self._data = d

    @classmethod
    def _raw(cls, data: tuple, rows: int, cols: int) -> "RationalMatrix":
        m = object.__new__(cls)
        m.rows, m.cols, m._data = rows, cols, data
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls._raw(tuple((ZERO,) * cols for _ in range(rows)), rows, cols)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls._raw(tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)), n, n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "RationalMatrix":
        data = [[ZERO] * len(columns) for _ in range(rows)]
        for j, col in enumerate(columns):
            for i, x in enumerate(col):
                if x:
                    data[i][j] = x
        return cls._raw(tuple(map(tuple, data)), rows, len(columns))

    @classmethod
    def from_flat(cls, flat: Sequence, rows: int, cols: int) -> "RationalMatrix":
        if len(flat) != rows * cols:
            raise DimensionError("flat length does not match shape")
        flat = [to_rational(x) for x in flat]
        return cls._raw(tuple(tuple(flat[i * cols:(i + 1) * cols]) for i in range(rows)), rows, cols)

    # -- access ---------------------------------------------------------
    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> tuple:
        return self._data[i]

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self._data)

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._data]

    def flatten(self) -> tuple:
        return tuple(x for row in self._data for x in row)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self._data)

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalMatrix) and self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        return hash((self.shape, self._data))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_rational(x) for x in r) for r in self._data)
        return f"RationalMatrix({self.rows}x{self.cols}: [{body}])"

    # -- arithmetic -----------------------------------------------------
    def _check_same(self, other: "RationalMatrix") -> None:
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        self._check_same(other)
        return RationalMatrix._raw(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)), self.rows, self.cols)

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        self._check_same(other)
        return RationalMatrix._raw(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)), self.rows, self.cols)

    def __neg__(self) -> "RationalMatrix":
        return self.scale(-1)

    def scale(self, s) -> "RationalMatrix":
        s = to_rational(s)
        return RationalMatrix._raw(tuple(tuple(s * a for a in r) for r in self._data), self.rows, self.cols)

    def __rmul__(self, s) -> "RationalMatrix":
        return self.scale(s)

    def __matmul__(self, other):
        if isinstance(other, RationalMatrix):
            if self.cols != other.rows:
                raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
            nz_rows = [[(j, x) for j, x in enumerate(r) if x] for r in other._data]
            out = []
            for r in self._data:
                acc = [ZERO] * other.cols
                for k, a in enumerate(r):
                    if a:
                        for j, b in nz_rows[k]:
                            acc[j] += a * b
                out.append(tuple(acc))
            return RationalMatrix._raw(tuple(out), self.rows, other.cols)
        v = tuple(other)
        if len(v) != self.cols:
            raise DimensionError("vector length does not match matrix columns")
        return tuple(dot(r, v) for r in self._data)

    def transpose(self) -> "RationalMatrix":
        if not self.rows:
            return RationalMatrix.zeros(self.cols, 0)
        return RationalMatrix._raw(tuple(zip(*self._data)), self.cols, self.rows)

    T = property(transpose)

    def commutator(self, other: "RationalMatrix", sign: int = 1) -> "RationalMatrix":
        """``self∘other - sign * other∘self``; ``sign=-1`` gives the anticommutator."""
        return self @ other - (other @ self).scale(sign)

    # -- elimination ----------------------------------------------------
    def rref(self) -> tuple["RationalMatrix", list[int]]:
        rows, piv = _rref_rows([list(r) for r in self._data], self.cols)
        return RationalMatrix._raw(tuple(map(tuple, rows)), len(rows), self.cols), piv


def stack(mats: Sequence[RationalMatrix]) -> RationalMatrix:
    if not mats:
        raise DimensionError("nothing to stack")
    cols = mats[0].cols
    if any(m.cols != cols for m in mats):
        raise DimensionError("column mismatch in stack")
    return RationalMatrix._raw(tuple(r for m in mats for r in m._data), sum(m.rows for m in mats), cols)


def rank(m: RationalMatrix) -> int:
    """Row rank by exact Gaussian elimination."""
    return len(m.rref()[1])


def nullspace(m: RationalMatrix) -> "Subspace":
    """Canonical basis of ``{v : m v = 0}``."""
    red, piv = m.rref()
    n = m.cols
    pivset = set(piv)
    basis = []
    for f in range(n):
        if f in pivset:
            continue
        v = [ZERO] * n
        v[f] = ONE
        for r, c in enumerate(piv):
            x = red[r, f]
            if x:
                v[c] = -x
        basis.append(v)
    return Subspace.span(n, basis)


def solve(m: RationalMatrix, b: Sequence) -> tuple | None:
    """One exact solution of ``m x = b`` (free variables zero), or None when inconsistent."""
    b = vec(b)
    if len(b) != m.rows:
        raise DimensionError("rhs length does not match matrix rows")
    aug = [list(r) + [bi] for r, bi in zip(m._data, b)]
    rows, piv = _rref_rows(aug, m.cols + 1)
    if piv and piv[-1] == m.cols:
        return None
    x = [ZERO] * m.cols
    for r, c in enumerate(piv):
        x[c] = rows[r][m.cols]
    return tuple(x)


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^n stored by its reduced row echelon basis.

    Equal subspaces have identical ``basis`` tuples, so ``==`` is subspace
    equality.
    """

    ambient_dim: int
    basis: tuple

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable[Sequence]) -> "Subspace":
        rows = []
        for v in vectors:
            v = [to_rational(x) for x in v]
            if len(v) != ambient_dim:
                raise DimensionError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
            rows.append(v)
        red, _ = _rref_rows(rows, ambient_dim)
        return cls(ambient_dim, tuple(map(tuple, red)))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, tuple(tuple(ONE if i == j else ZERO for j in range(ambient_dim))
                                      for i in range(ambient_dim)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return len(self.basis)

    def canonical(self) -> "Subspace":
        return Subspace.span(self.ambient_dim, self.basis)

    def _check(self, other: "Subspace") -> None:
        if self.ambient_dim != other.ambient_dim:
            raise DimensionError(f"ambient dimensions differ: {self.ambient_dim} vs {other.ambient_dim}")

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(self.ambient_dim, self.basis + other.basis)

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        n = self.ambient_dim
        if not self.basis or not other.basis:
            return Subspace.zero(n)
        # x = sum a_i u_i = sum b_j v_j  <=>  [U^T | -V^T] (a, b) = 0
        cols = list(self.basis) + [tuple(-x for x in v) for v in other.basis]
        ker = nullspace(RationalMatrix.from_columns(cols, n))
        k = len(self.basis)
        out = []
        for coeffs in ker.basis:
            x = [ZERO] * n
            for a, u in zip(coeffs[:k], self.basis):
                if a:
                    for i, ui in enumerate(u):
                        if ui:
                            x[i] += a * ui
            out.append(x)
        return Subspace.span(n, out)

    def contains(self, v: Sequence) -> bool:
        v = vec(v)
        if len(v) != self.ambient_dim:
            raise DimensionError("vector length does not match ambient dimension")
        return self.coordinates(v) is not None

    def contains_subspace(self, other: "Subspace") -> bool:
        self._check(other)
        return all(self.contains(v) for v in other.basis)

    def coordinates(self, v: Sequence) -> tuple | None:
        """Coordinates of ``v`` in the stored basis, or None if ``v`` is outside."""
        v = vec(v)
        if not self.basis:
            return () if not any(v) else None
        # basis is in RREF: coordinates are read off at the pivot columns
        coeffs = []
        residual = list(v)
        for b in self.basis:
            p = next(i for i, x in enumerate(b) if x)
            a = residual[p]
            coeffs.append(a)
            if a:
                for i, x in enumerate(b):
                    if x:
                        residual[i] -= a * x
        if any(residual):
            return None
        return tuple(coeffs)
