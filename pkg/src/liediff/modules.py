"""Finite-dimensional modules over (graded) Lie algebras and differential operators on them."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .algebra import ParseError, StructureTable, ad_basis, builtin, parse_table, sign
from .derivations import derivation_algebra
from .diffops import FilteredOperatorSpace, compose_span
from .linalg import ONE, ZERO, DimensionError, RationalMatrix, Subspace, nullspace, parse_rational
from .operators import OperatorSpace, matrix_parity, parity_mask


@dataclass(frozen=True)
class Representation:
    algebra: StructureTable
    module_dim: int
    action: tuple  # action[i] is the matrix of basis element a_i
    module_degrees: tuple = ()

    def __post_init__(self):
        if len(self.action) != self.algebra.dim:
            raise DimensionError(f"need {self.algebra.dim} action matrices, got {len(self.action)}")
        for m in self.action:
            if m.shape != (self.module_dim, self.module_dim):
                raise DimensionError(f"action matrices must be {self.module_dim}x{self.module_dim}")
        if self.module_degrees and len(self.module_degrees) != self.module_dim:
            raise DimensionError("module_degrees must have length module_dim")

    @property
    def degrees(self) -> tuple:
        return self.module_degrees or (0,) * self.module_dim

    @property
    def graded(self) -> bool:
        return bool(self.module_degrees) and (any(self.module_degrees) or self.algebra.graded)

    def rho(self, a: Sequence) -> RationalMatrix:
        """Action matrix of an arbitrary element (coordinates over the algebra basis)."""
        out = RationalMatrix.zeros(self.module_dim, self.module_dim)
        for x, m in zip(a, self.action):
            if x:
                out = out + m.scale(x)
        return out

    @classmethod
    def adjoint(cls, t: StructureTable) -> "Representation":
        return cls(t, t.dim, tuple(ad_basis(t)), t.degrees if t.graded else ())

    @classmethod
    def trivial(cls, t: StructureTable, m: int) -> "Representation":
        return cls(t, m, tuple(RationalMatrix.zeros(m, m) for _ in range(t.dim)))


def gl_defining(k: int) -> Representation:
    """gl(k) acting on Q^k by matrix multiplication (basis E_ij in row-major order)."""
    t = builtin(f"gl{k}")
    mats = []
    for i in range(k):
        for j in range(k):
            mats.append(RationalMatrix([[ONE if (r, c) == (i, j) else ZERO for c in range(k)] for r in range(k)]))
    return Representation(t, k, tuple(mats))


def check_representation(r: Representation) -> dict:
    """Nonzero residuals of rho(a_i . a_j) - [rho_i, rho_j} per basis pair (graded commutator)."""
    t = r.algebra
    out = {}
    for i in range(t.dim):
        for j in range(t.dim):
            s = sign(t.degrees[i] * t.degrees[j])
            res = r.rho(t.product(i, j)) - r.action[i].commutator(r.action[j], s)
            if not res.is_zero():
                out[i, j] = res
    if r.module_degrees:
        for i, m in enumerate(r.action):
            p = matrix_parity(m, r.module_degrees)
            if not m.is_zero() and p != t.degrees[i]:
                out[i, "parity"] = m
    return out


def _block_positions(r: Representation, parity: int):
    if r.graded:
        return parity_mask(r.degrees, parity)
    if parity:
        return []
    return parity_mask(r.degrees, 0)


def _commutant_block(r: Representation, parity: int) -> list:
    """Flattened Phi of the given parity with Phi rho_i = (-1)^{p|a_i|} rho_i Phi."""
    M, t = r.module_dim, r.algebra
    positions = _block_positions(r, parity)
    if not positions:
        return []
    col = {pos: idx for idx, pos in enumerate(positions)}
    rows = []
    for i, rho in enumerate(r.action):
        s = sign(parity * t.degrees[i])
        for a in range(M):
            for b in range(M):
                row = {}
                # (Phi rho)[a][b] = sum_c Phi[a][c] rho[c][b]
                for c in range(M):
                    x = rho[c, b]
                    if x and (a, c) in col:
                        row[col[a, c]] = row.get(col[a, c], ZERO) + x
                    y = rho[a, c]
                    if y and (c, b) in col:
                        row[col[c, b]] = row.get(col[c, b], ZERO) - s * y
                if any(row.values()):
                    rows.append([row.get(q, ZERO) for q in range(len(positions))])
    if rows:
        sols = nullspace(RationalMatrix(rows, cols=len(positions))).basis
    else:
        sols = [tuple(ONE if u == v else ZERO for v in range(len(positions))) for u in range(len(positions))]
    out = []
    for s_ in sols:
        v = [ZERO] * (M * M)
        for x, (a, b) in zip(s_, positions):
            v[a * M + b] = x
        out.append(v)
    return out


def zero_order_module_ops(r: Representation) -> OperatorSpace:
    """Module endomorphisms: the (graded) commutant of the action."""
    M = r.module_dim
    vecs = _commutant_block(r, 0) + (_commutant_block(r, 1) if r.graded else [])
    return OperatorSpace(M, M, Subspace.span(M * M, vecs), "commutant")


def first_order_module_ops(r: Representation) -> OperatorSpace:
    """Endomorphisms Delta with Delta(a p) = (D a) Phi(p) + (-1)^{|Delta||a|} a Delta(p).

    D runs over derivations of the algebra of the same parity as Delta and Phi
    over the even commutant.  The product D ⊗ Phi enters linearly through its
    tensor coefficients, and the Delta-components of the joint solution are
    returned.
    """
    M, t = r.module_dim, r.algebra
    da = derivation_algebra(t)
    comm = zero_order_module_ops(r)
    comm_even = [phi for phi in comm.basis
                 if not r.graded or matrix_parity(phi, r.degrees) == 0]
    vecs = []
    for parity in ((0, 1) if r.graded else (0,)):
        positions = _block_positions(r, parity)
        if not positions:
            continue
        ders = (da.even if parity == 0 else da.odd).basis
        # columns: Delta entries, then one coefficient per (derivation, Phi) pair
        extra = []
        for d in ders:
            for phi in comm_even:
                extra.append([r.rho(d.column(i)) @ phi for i in range(t.dim)])
        ncols = len(positions) + len(extra)
        col = {pos: idx for idx, pos in enumerate(positions)}
        rows = []
        for i, rho in enumerate(r.action):
            s = sign(parity * t.degrees[i])
            for a in range(M):
                for b in range(M):
                    row = {}
                    for c in range(M):
                        x = rho[c, b]
                        if x and (a, c) in col:
                            row[col[a, c]] = row.get(col[a, c], ZERO) + x
                        y = rho[a, c]
                        if y and (c, b) in col:
                            row[col[c, b]] = row.get(col[c, b], ZERO) - s * y
                    for e, mats in enumerate(extra):
                        z = mats[i][a, b]
                        if z:
                            row[len(positions) + e] = -z
                    if any(row.values()):
                        rows.append([row.get(q, ZERO) for q in range(ncols)])
        if rows:
            sols = nullspace(RationalMatrix(rows, cols=ncols)).basis
        else:
            sols = [tuple(ONE if u == v else ZERO for v in range(ncols)) for u in range(ncols)]
        for s_ in sols:
            v = [ZERO] * (M * M)
            for x, (a, b) in zip(s_[:len(positions)], positions):
                v[a * M + b] = x
            vecs.append(v)
    return OperatorSpace(M, M, Subspace.span(M * M, vecs), "first-order")


def module_multiplications(r: Representation) -> list[RationalMatrix]:
    return list(r.action)


@dataclass
class ModuleFiltration:
    rep: Representation

    def __post_init__(self):
        self.levels = [FilteredOperatorSpace(0, zero_order_module_ops(self.rep), False),
                       FilteredOperatorSpace(1, first_order_module_ops(self.rep), False)]

    def level(self, k: int) -> FilteredOperatorSpace:
        cap = max(self.rep.module_dim ** 2, 1)
        while len(self.levels) <= k:
            last = self.levels[-1]
            if last.stabilized or len(self.levels) > cap:
                nxt = FilteredOperatorSpace(last.order + 1, last.space, True)
            else:
                space = compose_span(self.levels[1].space, last.space)
                nxt = FilteredOperatorSpace(last.order + 1, space, space.dim == last.space.dim)
            self.levels.append(nxt)
        return self.levels[k]

    def space(self, k: int) -> OperatorSpace:
        return self.level(k).space


def module_diff_ops(r: Representation, k: int) -> FilteredOperatorSpace:
    if k < 0:
        raise ValueError("order must be nonnegative")
    return ModuleFiltration(r).level(k)


def module_filtration_report(r: Representation, max_order: int) -> dict:
    f = ModuleFiltration(r)
    return {"orders": [{"k": k, "dim": f.level(k).dim, "stabilized": f.level(k).stabilized}
                       for k in range(max_order + 1)]}


def _load_algebra(ref: str, base: Path | None) -> StructureTable:
    if ref.startswith("builtin:"):
        return builtin(ref[len("builtin:"):])
    p = Path(ref)
    if base is not None and not p.is_absolute():
        p = base / p
    return parse_table(p.read_text(encoding="utf-8"))


def parse_representation(text: str, base: Path | None = None) -> Representation:
    """``algebra REF``, ``module_dim M``, optional ``module_degrees``, then ``rho i r c p/q`` lines (1-based)."""
    t = None
    M = None
    degrees: tuple = ()
    entries = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        head = parts[0]
        try:
            if head == "algebra" and len(parts) == 2:
                t = _load_algebra(parts[1], base)
            elif head == "module_dim" and len(parts) == 2:
                M = int(parts[1])
                if M < 1:
                    raise ValueError("module_dim must be positive")
            elif head == "module_degrees":
                degrees = tuple(int(p) for p in parts[1:])
                if M is None or len(degrees) != M or any(d not in (0, 1) for d in degrees):
                    raise ValueError("module_degrees needs module_dim values in {0,1}")
            elif head == "rho" and len(parts) == 5:
                if t is None or M is None:
                    raise ValueError("'algebra' and 'module_dim' must precede rho entries")
                i, a, b = (int(p) - 1 for p in parts[1:4])
                if not (0 <= i < t.dim and 0 <= a < M and 0 <= b < M):
                    raise ValueError("rho index out of range")
                entries[i, a, b] = parse_rational(parts[4])
            else:
                raise ValueError(f"unrecognized line {line!r}")
        except (ValueError, OSError) as exc:
            raise ParseError(str(exc), lineno) from None
    if t is None or M is None:
        raise ParseError("representation needs 'algebra' and 'module_dim' lines")
    mats = []
    for i in range(t.dim):
        mats.append(RationalMatrix([[entries.get((i, a, b), ZERO) for b in range(M)] for a in range(M)]))
    return Representation(t, M, tuple(mats), degrees)
