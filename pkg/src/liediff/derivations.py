"""Derivation algebras of (graded) Lie algebras.

A derivation of parity p satisfies the graded Leibniz rule

    D(a_i . a_j) = D(a_i) . a_j + (-1)^{p |a_i|} a_i . D(a_j)

and the derivation algebra is the direct sum of its even and odd parts.  For
ungraded tables the odd part is empty.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .algebra import StructureTable, ad_basis, center, multiply, sign
from . import algebra
from .linalg import ONE, ZERO, RationalMatrix, Subspace, format_rational, nullspace, solve
from .operators import MIXED, LinearOperator, OperatorSpace, matrix_parity, parity_mask


class DerivationError(ValueError):
    pass


def _pairs(t: StructureTable, all_pairs: bool):
    n = t.dim
    if all_pairs:
        return [(i, j) for i in range(n) for j in range(n)]
    # the (j, i) equation is the (i, j) one times a sign; odd squares are not
    return [(i, j) for i in range(n) for j in range(i, n) if i < j or t.degrees[i]]


def leibniz_system(t: StructureTable, parity: int, all_pairs: bool = False):
    """Constraint matrix for parity-``parity`` derivations and the list of unknown positions."""
    n, c = t.dim, t.constants
    positions = parity_mask(t.degrees, parity)
    col = {pos: idx for idx, pos in enumerate(positions)}
    rows = []
    for i, j in _pairs(t, all_pairs):
        s = sign(parity * t.degrees[i])
        prod = c[i][j]
        for k in range(n):
            row = {}

            def put(pos, x):
                if x and pos in col:
                    v = row.get(col[pos], ZERO) + x
                    row[col[pos]] = v

            # D(a_i a_j)_k = sum_l c^l_ij D[k][l]
            for l, x in enumerate(prod):
                put((k, l), x)
            # - (D a_i . a_j)_k = - sum_r D[r][i] c^k_rj
            for r in range(n):
                put((r, i), -c[r][j][k])
            # - s (a_i . D a_j)_k = - s sum_r D[r][j] c^k_ir
            for r in range(n):
                put((r, j), -s * c[i][r][k])
            if any(row.values()):
                rows.append([row.get(q, ZERO) for q in range(len(positions))])
    return rows, positions


def _solve_block(t: StructureTable, parity: int, all_pairs: bool = False) -> OperatorSpace:
    n = t.dim
    rows, positions = leibniz_system(t, parity, all_pairs)
    if not positions:
        return OperatorSpace(n, n, Subspace.zero(n * n), f"derivations-{'odd' if parity else 'even'}")
    if rows:
        ker = nullspace(RationalMatrix(rows, cols=len(positions)))
        sols = ker.basis
    else:
        sols = [tuple(ONE if a == b else ZERO for b in range(len(positions))) for a in range(len(positions))]
    flat = []
    for s in sols:
        v = [ZERO] * (n * n)
        for x, (r, cc) in zip(s, positions):
            v[r * n + cc] = x
        flat.append(v)
    return OperatorSpace(n, n, Subspace.span(n * n, flat), f"derivations-{'odd' if parity else 'even'}")


@dataclass(frozen=True)
class DerivationAlgebra:
    table: StructureTable
    even: OperatorSpace
    odd: OperatorSpace

    @cached_property
    def full(self) -> OperatorSpace:
        return (self.even + self.odd).relabel("derivations-full")

    @property
    def dim(self) -> int:
        return self.even.dim + self.odd.dim

    def operators(self) -> list[LinearOperator]:
        """Homogeneous basis: even basis operators first, then odd ones."""
        return ([LinearOperator(m, 0) for m in self.even.basis]
                + [LinearOperator(m, 1) for m in self.odd.basis])

    def contains(self, m) -> bool:
        return self.full.contains(m)


def derivation_algebra(t: StructureTable, all_pairs: bool = False) -> DerivationAlgebra:
    even = _solve_block(t, 0, all_pairs)
    odd = _solve_block(t, 1, all_pairs) if t.graded else OperatorSpace(
        t.dim, t.dim, Subspace.zero(t.dim * t.dim), "derivations-odd")
    return DerivationAlgebra(t, even, odd)


def leibniz_residual(t: StructureTable, d: RationalMatrix, parity: int) -> dict:
    """Nonzero residuals ``D(a_i a_j) - D(a_i) a_j - (-1)^{p|a_i|} a_i D(a_j)`` over all basis pairs."""
    out = {}
    cols = [d.column(j) for j in range(t.dim)]
    for i in range(t.dim):
        for j in range(t.dim):
            lhs = d @ t.product(i, j)
            r1 = multiply(t, cols[i], t.basis_vector(j))
            r2 = multiply(t, t.basis_vector(i), cols[j])
            s = sign(parity * t.degrees[i])
            res = tuple(a - b - s * c for a, b, c in zip(lhs, r1, r2))
            if any(res):
                out[i, j] = res
    return out


def is_derivation(t: StructureTable, op: LinearOperator) -> bool:
    if op.parity == MIXED:
        raise DerivationError("graded Leibniz check needs a homogeneous operator")
    return not leibniz_residual(t, op.matrix, op.parity)


def inner_derivations(t: StructureTable) -> OperatorSpace:
    return OperatorSpace.span(t.dim, t.dim, ad_basis(t), "inner")


def outer_report(t: StructureTable) -> dict:
    full = derivation_algebra(t)
    inner = inner_derivations(t)
    assert full.dim <= t.dim ** 2
    return {"dim_full": full.dim, "dim_inner": inner.dim, "dim_outer": full.dim - inner.dim}


def bracket(d1: LinearOperator, d2: LinearOperator) -> LinearOperator:
    """Graded commutator d1 d2 - (-1)^{|d1||d2|} d2 d1."""
    if d1.parity == MIXED or d2.parity == MIXED:
        raise DerivationError("graded bracket needs homogeneous operators")
    s = sign(d1.parity * d2.parity)
    return LinearOperator(d1.matrix.commutator(d2.matrix, s), (d1.parity + d2.parity) % 2)


def closure_failures(da: DerivationAlgebra) -> list[tuple[int, int]]:
    """Basis pairs whose graded bracket leaves the derivation space (empty when closed)."""
    ops = da.operators()
    bad = []
    for a, x in enumerate(ops):
        for b, y in enumerate(ops):
            if not da.full.contains(bracket(x, y)):
                bad.append((a, b))
    return bad


def report_json(t: StructureTable) -> dict:
    da = derivation_algebra(t)
    inner = inner_derivations(t)
    return {
        "dim_full": da.dim,
        "dim_even": da.even.dim,
        "dim_odd": da.odd.dim,
        "dim_inner": inner.dim,
        "dim_outer": da.dim - inner.dim,
        "basis": [[format_rational(x) for x in m.flatten()] for m in da.full.basis],
    }


# -- closed-form families for CCR / CAR -----------------------------------

def _scalar_product(t: StructureTable) -> tuple[int, list]:
    """Recover m and the form <e_i, e_j> from a ccr(m)/car(m) table."""
    if t.dim % 2 != 1 or t.dim < 3:
        raise DerivationError("family needs a ccr(m) or car(m) table")
    m = (t.dim - 1) // 2
    unit = 2 * m
    g = [[t.constants[i][m + j][unit] for j in range(m)] for i in range(m)]
    return m, g


def _inverse(g: list) -> RationalMatrix:
    m = len(g)
    gm = RationalMatrix(g)
    cols = []
    for j in range(m):
        x = solve(gm, [ONE if i == j else ZERO for i in range(m)])
        if x is None:
            raise DerivationError("degenerate scalar product")
        cols.append(x)
    return RationalMatrix.from_columns(cols, m)


def family_generators(t: StructureTable, family: str) -> list[tuple[str, LinearOperator]]:
    """Generators of the closed-form derivation families, one per free parameter.

    The family acts as (pi, phi, 1) -> (M1 pi + O1 phi, O2 pi + M2 phi, C1 pi + C2 phi)
    with <M1 v, v'> + <v, M2 v'> = 0 and O1, O2 self-adjoint (ccr) or
    skew-adjoint (car) for the scalar product.
    """
    m, g = _scalar_product(t)
    if family == "ccr-generic":
        if t.graded:
            raise DerivationError("ccr-generic family needs an ungraded ccr(m) table")
        o_sign = 1
    elif family == "car-generic":
        if t.degrees != (1,) * (2 * m) + (0,):
            raise DerivationError("car-generic family needs a car(m) table")
        o_sign = -1
    else:
        raise DerivationError(f"unknown family {family!r}")
    # check the table really is the (anti)commutation algebra of g
    kind = "car" if o_sign < 0 else "ccr"
    try:
        expected = getattr(algebra, kind)(m, g)
    except algebra.TableError:
        raise DerivationError(f"table is not a {kind}({m}) algebra") from None
    if expected.constants != t.constants:
        raise DerivationError(f"table is not a {kind}({m}) algebra")
    ginv = _inverse(g)
    gm = RationalMatrix(g)
    n = t.dim

    def unit(i, j, size=m):
        return RationalMatrix([[ONE if (r, c) == (i, j) else ZERO for c in range(size)] for r in range(size)])

    def assemble(m1=None, m2=None, o1=None, o2=None, c1=None, c2=None):
        z = [[ZERO] * n for _ in range(n)]
        blocks = [(m1, 0, 0), (o1, 0, m), (o2, m, 0), (m2, m, m)]
        for blk, r0, c0 in blocks:
            if blk is not None:
                for r in range(m):
                    for c in range(m):
                        z[r0 + r][c0 + c] = blk[r, c]
        for vecc, c0 in ((c1, 0), (c2, m)):
            if vecc is not None:
                for c in range(m):
                    z[2 * m][c0 + c] = vecc[c]
        return RationalMatrix(z)

    gens = []
    for a in range(m):
        for b in range(m):
            m1 = unit(a, b)
            # <M1 v, v'> + <v, M2 v'> = 0  =>  M2 = -g^{-1} M1^T g
            m2 = (ginv @ m1.T @ gm).scale(-1)
            gens.append((f"M[{a + 1},{b + 1}]", assemble(m1=m1, m2=m2)))
    for which in ("O1", "O2"):
        for a in range(m):
            for b in range(a if o_sign > 0 else a + 1, m):
                s = unit(a, b) + unit(b, a).scale(o_sign) if a != b else unit(a, a)
                op = ginv @ s  # g O symmetric / antisymmetric
                kw = {"o1": op} if which == "O1" else {"o2": op}
                gens.append((f"{which}[{a + 1},{b + 1}]", assemble(**kw)))
    for which in ("C1", "C2"):
        for a in range(m):
            v = [ONE if c == a else ZERO for c in range(m)]
            kw = {"c1": v} if which == "C1" else {"c2": v}
            gens.append((f"{which}[{a + 1}]", assemble(**kw)))
    return [(name, LinearOperator.graded(mat, t.degrees)) for name, mat in gens]


def family_containment(t: StructureTable, family: str) -> dict:
    """Check the closed-form family against the solver's derivation space.

    Family generators are split into homogeneous parts before the graded
    Leibniz check.  Equality of dimensions is reported, never asserted.
    """
    gens = family_generators(t, family)
    da = derivation_algebra(t)
    checks = []
    for name, op in gens:
        parts = _homogeneous_parts(op.matrix, t.degrees)
        leib = all(not leibniz_residual(t, mat, p) for p, mat in parts)
        checks.append({"name": name, "parity": matrix_parity(op.matrix, t.degrees),
                       "leibniz": leib, "contained": da.contains(op)})
    fam_space = OperatorSpace.span(t.dim, t.dim, [op.matrix for _, op in gens], family)
    contained = da.full.contains_space(fam_space)
    return {
        "family": family,
        "family_dim": fam_space.dim,
        "solver_dim": da.dim,
        "solver_dim_even": da.even.dim,
        "solver_dim_odd": da.odd.dim,
        "generators": checks,
        "all_leibniz": all(c["leibniz"] for c in checks),
        "contained": contained,
        "equal": contained and fam_space.dim == da.dim,
    }


def _homogeneous_parts(m: RationalMatrix, degrees) -> list[tuple[int, RationalMatrix]]:
    n = m.rows
    parts = []
    for p in (0, 1):
        part = RationalMatrix([[m[i, j] if (degrees[i] + degrees[j]) % 2 == p else ZERO for j in range(n)]
                               for i in range(n)])
        if not part.is_zero() or p == 0:
            parts.append((p, part))
    return parts


def center_dim(t: StructureTable) -> int:
    return center(t).dim
