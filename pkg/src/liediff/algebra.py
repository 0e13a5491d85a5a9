"""Finite-dimensional (graded) Lie algebras given by structure constants.

A table of dimension N stores the full tensor ``c[i][j][k]``, the k-th
coordinate of ``a_i . a_j``, together with a parity in {0, 1} for every basis
element.  Ungraded algebras are the all-even case.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .linalg import (ONE, ZERO, DimensionError, RationalMatrix, Subspace, format_rational,
                     nullspace, parse_rational, rank, solve, to_rational, vec)
from .operators import LinearOperator, matrix_parity


class TableError(ValueError):
    pass


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def sign(e: int) -> int:
    return -1 if e % 2 else 1


@dataclass(frozen=True)
class StructureTable:
    dim: int
    degrees: tuple
    constants: tuple  # constants[i][j] is the coordinate vector of a_i . a_j
    names: tuple = ()

    def __post_init__(self):
        n = self.dim
        if len(self.degrees) != n or any(d not in (0, 1) for d in self.degrees):
            raise TableError("degrees must be a 0/1 sequence of length dim")
        if len(self.constants) != n or any(len(r) != n or any(len(v) != n for v in r) for r in self.constants):
            raise TableError("constants must have shape dim x dim x dim")
        if self.names and len(self.names) != n:
            raise TableError("names must have length dim")

    @classmethod
    def from_entries(cls, dim: int, entries: Mapping, degrees: Sequence[int] | None = None,
                     names: Sequence[str] = ()) -> "StructureTable":
        """Build a table from ``{(i, j, k): value}`` with 0-based indices.

        Every listed (i, j) is stored as given; the mirrored (j, i) is filled by
        graded antisymmetry only when it is not listed itself.
        """
        degrees = tuple(degrees) if degrees is not None else (0,) * dim
        c = [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)]
        given = set()
        for (i, j, k), v in entries.items():
            for x in (i, j, k):
                if not 0 <= x < dim:
                    raise TableError(f"index {x} out of range for dim {dim}")
            c[i][j][k] += to_rational(v)
            given.add((i, j))
        for (i, j) in given:
            if i != j and (j, i) not in given:
                s = -sign(degrees[i] * degrees[j])
                c[j][i] = [s * x for x in c[i][j]]
        return cls(dim, degrees, tuple(tuple(tuple(v) for v in r) for r in c), tuple(names))

    @property
    def graded(self) -> bool:
        return any(self.degrees)

    def product(self, i: int, j: int) -> tuple:
        return self.constants[i][j]

    def name(self, i: int) -> str:
        return self.names[i] if self.names else f"a{i + 1}"

    def basis_vector(self, i: int) -> tuple:
        return tuple(ONE if k == i else ZERO for k in range(self.dim))

    def upper_entries(self) -> dict:
        """Nonzero constants with i < j, plus i == j where a_i is odd (storage convention)."""
        out = {}
        for i in range(self.dim):
            for j in range(i, self.dim):
                if i == j and not self.degrees[i]:
                    continue
                for k, v in enumerate(self.constants[i][j]):
                    if v:
                        out[i, j, k] = v
        return out


@dataclass(frozen=True)
class Violation:
    kind: str  # "antisymmetry" | "parity" | "jacobi"
    indices: tuple
    residual: tuple

    def describe(self, one_based: bool = True) -> str:
        idx = tuple(i + 1 for i in self.indices) if one_based else self.indices
        res = ", ".join(format_rational(x) for x in self.residual)
        return f"{self.kind} violation at {idx}: residual ({res})"


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return bool(self.violations)

    def __len__(self) -> int:
        return len(self.violations)

    def kinds(self) -> set:
        return {v.kind for v in self.violations}


def multiply(t: StructureTable, x: Sequence, y: Sequence) -> tuple:
    """Bilinear extension of the table: (x.y)_k = sum_ij x_i y_j c^k_ij."""
    if len(x) != t.dim or len(y) != t.dim:
        raise DimensionError(f"elements must have length {t.dim}")
    out = [ZERO] * t.dim
    for i, xi in enumerate(x):
        if not xi:
            continue
        row = t.constants[i]
        for j, yj in enumerate(y):
            if not yj:
                continue
            s = xi * yj
            for k, c in enumerate(row[j]):
                if c:
                    out[k] += s * c
    return tuple(out)


def jacobi_residual(t: StructureTable, a: int, b: int, c: int) -> tuple:
    """(-1)^{|a||c|} a.(b.c) + (-1)^{|b||a|} b.(c.a) + (-1)^{|c||b|} c.(a.b)."""
    d = t.degrees
    e = t.basis_vector
    r1 = multiply(t, e(a), t.product(b, c))
    r2 = multiply(t, e(b), t.product(c, a))
    r3 = multiply(t, e(c), t.product(a, b))
    return tuple(sign(d[a] * d[c]) * x + sign(d[b] * d[a]) * y + sign(d[c] * d[b]) * z
                 for x, y, z in zip(r1, r2, r3))


def validate(t: StructureTable) -> ValidationReport:
    """Every violated antisymmetry, parity or Jacobi constraint, with exact residuals."""
    n, d = t.dim, t.degrees
    report = ValidationReport()
    for i in range(n):
        for j in range(i, n):
            s = sign(d[i] * d[j])
            res = tuple(x + s * y for x, y in zip(t.constants[i][j], t.constants[j][i]))
            if any(res):
                report.violations.append(Violation("antisymmetry", (i, j), res))
    for i in range(n):
        for j in range(n):
            p = (d[i] + d[j]) % 2
            res = tuple(x if d[k] != p else ZERO for k, x in enumerate(t.constants[i][j]))
            if any(res):
                report.violations.append(Violation("parity", (i, j), res))
    for a in range(n):
        for b in range(n):
            for c in range(n):
                res = jacobi_residual(t, a, b, c)
                if any(res):
                    report.violations.append(Violation("jacobi", (a, b, c), res))
    return report


def ad_matrix(t: StructureTable, a: Sequence) -> RationalMatrix:
    """Matrix of c -> a.c; column j is a.a_j."""
    a = vec(a)
    cols = [multiply(t, a, t.basis_vector(j)) for j in range(t.dim)]
    return RationalMatrix.from_columns(cols, t.dim)


def ad(t: StructureTable, a: Sequence) -> LinearOperator:
    m = ad_matrix(t, a)
    return LinearOperator(m, matrix_parity(m, t.degrees))


def ad_basis(t: StructureTable) -> list[RationalMatrix]:
    return [ad_matrix(t, t.basis_vector(i)) for i in range(t.dim)]


def center(t: StructureTable) -> Subspace:
    """{a : a.b = 0 for all b}, the kernel of the stacked right-multiplication constraints."""
    n = t.dim
    # row (j, k): sum_i a_i c^k_{ij}
    rows = [[t.constants[i][j][k] for i in range(n)] for j in range(n) for k in range(n)]
    return nullspace(RationalMatrix(rows, cols=n))


# -- builtins -------------------------------------------------------------

def _unit(k: int, i: int, j: int) -> RationalMatrix:
    return RationalMatrix([[ONE if (r, c) == (i, j) else ZERO for c in range(k)] for r in range(k)])


def from_matrix_basis(mats: Sequence[RationalMatrix], names: Sequence[str] = ()) -> StructureTable:
    """Structure constants of the commutator bracket on the span of ``mats``."""
    n = len(mats)
    sub = Subspace.span(mats[0].rows * mats[0].cols, [m.flatten() for m in mats])
    if sub.dim != n:
        raise TableError("matrix basis is linearly dependent")
    coords_matrix = RationalMatrix.from_columns([m.flatten() for m in mats], mats[0].rows * mats[0].cols)
    entries = {}
    for i in range(n):
        for j in range(i + 1, n):
            br = mats[i] @ mats[j] - mats[j] @ mats[i]
            x = solve(coords_matrix, br.flatten())
            if x is None:
                raise TableError("matrix span is not closed under the commutator")
            for k, v in enumerate(x):
                if v:
                    entries[i, j, k] = v
    return StructureTable.from_entries(n, entries, names=names)


def sl2() -> StructureTable:
    """sl(2) in the basis (h, e, f): h.e = 2e, h.f = -2f, e.f = h."""
    return StructureTable.from_entries(3, {(0, 1, 1): 2, (0, 2, 2): -2, (1, 2, 0): 1}, names=("h", "e", "f"))


def gl(k: int) -> StructureTable:
    if k < 1:
        raise TableError("gl(k) needs k >= 1")
    mats, names = [], []
    for i in range(k):
        for j in range(k):
            mats.append(_unit(k, i, j))
            names.append(f"E{i + 1}{j + 1}")
    return from_matrix_basis(mats, names)


def sl(k: int) -> StructureTable:
    if k < 2:
        raise TableError("sl(k) needs k >= 2")
    if k == 2:
        return sl2()
    mats, names = [], []
    for i in range(k):
        for j in range(k):
            if i != j:
                mats.append(_unit(k, i, j))
                names.append(f"E{i + 1}{j + 1}")
    for i in range(k - 1):
        mats.append(_unit(k, i, i) - _unit(k, i + 1, i + 1))
        names.append(f"H{i + 1}")
    return from_matrix_basis(mats, names)


def o(k: int) -> StructureTable:
    """o(k) in the basis E_ij - E_ji, i < j."""
    if k < 2:
        raise TableError("o(k) needs k >= 2")
    mats, names = [], []
    for i in range(k):
        for j in range(i + 1, k):
            mats.append(_unit(k, i, j) - _unit(k, j, i))
            names.append(f"L{i + 1}{j + 1}")
    return from_matrix_basis(mats, names)


def abelian(n: int) -> StructureTable:
    if n < 1:
        raise TableError("abelian(n) needs n >= 1")
    return StructureTable.from_entries(n, {}, names=tuple(f"x{i + 1}" for i in range(n)))


def _form(m: int, form) -> list[list[Fraction]]:
    if form is None:
        return [[ONE if i == j else ZERO for j in range(m)] for i in range(m)]
    g = [[to_rational(x) for x in row] for row in form]
    if len(g) != m or any(len(r) != m for r in g):
        raise TableError(f"scalar product must be {m}x{m}")
    if any(g[i][j] != g[j][i] for i in range(m) for j in range(m)):
        raise TableError("scalar product must be symmetric")
    if rank(RationalMatrix(g)) != m:
        raise TableError("scalar product must be nondegenerate")
    return g


def ccr(m: int, form=None) -> StructureTable:
    """Canonical commutation relations: basis (pi_1..pi_m, phi_1..phi_m, 1), pi_i.phi_j = <e_i, e_j> 1."""
    if m < 1:
        raise TableError("ccr(m) needs m >= 1")
    g = _form(m, form)
    unit = 2 * m
    entries = {(i, m + j, unit): g[i][j] for i in range(m) for j in range(m) if g[i][j]}
    names = tuple(f"pi{i + 1}" for i in range(m)) + tuple(f"phi{i + 1}" for i in range(m)) + ("1",)
    if m == 1:
        names = ("pi", "phi", "1")
    return StructureTable.from_entries(2 * m + 1, entries, names=names)


def car(m: int, form=None) -> StructureTable:
    """Canonical anticommutation relations: pi, phi odd, pi_i.phi_j = phi_j.pi_i = <e_i, e_j> 1."""
    if m < 1:
        raise TableError("car(m) needs m >= 1")
    g = _form(m, form)
    unit = 2 * m
    degrees = (1,) * (2 * m) + (0,)
    entries = {(i, m + j, unit): g[i][j] for i in range(m) for j in range(m) if g[i][j]}
    names = tuple(f"pi{i + 1}" for i in range(m)) + tuple(f"phi{i + 1}" for i in range(m)) + ("1",)
    if m == 1:
        names = ("pi", "phi", "1")
    return StructureTable.from_entries(2 * m + 1, entries, degrees=degrees, names=names)


def osp12() -> StructureTable:
    """The simple Lie superalgebra osp(1|2): even h, e, f and odd x, y with [x, x] = -2e, [y, y] = 2f, [x, y] = h."""
    entries = {(0, 1, 1): 2, (0, 2, 2): -2, (1, 2, 0): 1, (0, 3, 3): 1, (0, 4, 4): -1, (1, 4, 3): 1,
               (2, 3, 4): 1, (3, 3, 1): -2, (4, 4, 2): 2, (3, 4, 0): 1}
    return StructureTable.from_entries(5, entries, degrees=(0, 0, 0, 1, 1), names=("h", "e", "f", "x", "y"))


_BUILTIN_RE = re.compile(r"^(sl|gl|o|abelian|ccr|car):?(\d+)$")


def builtin(name: str) -> StructureTable:
    """Look up ``sl2``, ``sl3``, ``gl2``, ``o3``, ``abelian:N``, ``ccr:M``, ``car:M``, ``osp1|2`` (also ``sl:K`` etc.)."""
    key = name.strip().lower().replace("(", ":").replace(")", "")
    if key in ("osp1|2", "osp:1|2"):
        return osp12()
    mt = _BUILTIN_RE.match(key)
    if not mt:
        raise TableError(f"unknown builtin algebra {name!r}")
    kind, size = mt.group(1), int(mt.group(2))
    return {"sl": sl, "gl": gl, "o": o, "abelian": abelian, "ccr": ccr, "car": car}[kind](size)


BUILTIN_NAMES = ("sl2", "sl3", "gl2", "o3", "abelian:3", "ccr:1", "ccr:2", "car:1", "car:2", "osp1|2")


# -- text format ----------------------------------------------------------

def parse_table(text: str) -> StructureTable:
    """Parse the line-oriented algebra format (1-based indices, ``#`` comments)."""
    dim = None
    degrees = None
    names: tuple = ()
    entries: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        head = parts[0]
        if head == "dim":
            if dim is not None or len(parts) != 2:
                raise ParseError("expected a single 'dim N' line", lineno)
            try:
                dim = int(parts[1])
            except ValueError:
                raise ParseError(f"bad dimension {parts[1]!r}", lineno) from None
            if dim < 1:
                raise ParseError("dimension must be positive", lineno)
            continue
        if dim is None:
            raise ParseError("'dim N' must come first", lineno)
        if head == "degrees":
            if len(parts) != dim + 1 or any(p not in ("0", "1") for p in parts[1:]):
                raise ParseError(f"expected {dim} degrees in {{0,1}}", lineno)
            degrees = tuple(int(p) for p in parts[1:])
        elif head == "basis":
            if len(parts) != dim + 1:
                raise ParseError(f"expected {dim} basis names", lineno)
            names = tuple(parts[1:])
        elif head == "c":
            if len(parts) != 5:
                raise ParseError("expected 'c i j k p/q'", lineno)
            try:
                i, j, k = (int(p) - 1 for p in parts[1:4])
                v = parse_rational(parts[4])
            except ValueError as exc:
                raise ParseError(str(exc), lineno) from None
            if not all(0 <= x < dim for x in (i, j, k)):
                raise ParseError(f"index out of range 1..{dim}", lineno)
            if (i, j, k) in entries:
                raise ParseError(f"duplicate constant ({i + 1},{j + 1},{k + 1})", lineno)
            entries[i, j, k] = v
        else:
            raise ParseError(f"unrecognized line {line!r}", lineno)
    if dim is None:
        raise ParseError("missing 'dim N' line")
    return StructureTable.from_entries(dim, entries, degrees=degrees, names=names)


def emit_table(t: StructureTable) -> str:
    lines = [f"dim {t.dim}"]
    if t.graded:
        lines.append("degrees " + " ".join(map(str, t.degrees)))
    if t.names:
        lines.append("basis " + " ".join(t.names))
    for (i, j, k), v in sorted(t.upper_entries().items()):
        lines.append(f"c {i + 1} {j + 1} {k + 1} {format_rational(v)}")
    return "\n".join(lines) + "\n"


def table_to_json(t: StructureTable) -> dict:
    return {
        "dim": t.dim,
        "degrees": list(t.degrees),
        "basis": list(t.names) if t.names else [t.name(i) for i in range(t.dim)],
        "constants": [[i + 1, j + 1, k + 1, format_rational(v)] for (i, j, k), v in sorted(t.upper_entries().items())],
    }
