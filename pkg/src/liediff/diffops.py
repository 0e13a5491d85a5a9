"""The order filtration of differential operators on a Lie algebra.

Zero-order operators are bimodule endomorphisms, first-order operators are
derivations plus zero-order operators, and ``Diff_k`` is the linear span of
k-fold compositions of first-order operators.  Only operators reachable by
composition are produced; second-order operators such as a metric Laplacian
on vector fields are outside this construction by design.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import StructureTable, multiply, sign
from .derivations import derivation_algebra, leibniz_residual
from .linalg import ONE, ZERO, RationalMatrix, Subspace, nullspace
from .operators import OperatorSpace, parity_mask


def _zero_order_block(t: StructureTable, parity: int) -> list:
    n, c = t.dim, t.constants
    positions = parity_mask(t.degrees, parity)
    if not positions:
        return []
    col = {pos: idx for idx, pos in enumerate(positions)}
    rows = []
    for i in range(n):
        for j in range(n):
            s = sign(parity * t.degrees[i])
            for k in range(n):
                left = {}   # Phi(a_i a_j) - Phi(a_i) a_j
                right = {}  # Phi(a_i a_j) - s a_i Phi(a_j)
                for l, x in enumerate(c[i][j]):
                    if x and (k, l) in col:
                        left[col[k, l]] = left.get(col[k, l], ZERO) + x
                        right[col[k, l]] = right.get(col[k, l], ZERO) + x
                for r in range(n):
                    x = c[r][j][k]
                    if x and (r, i) in col:
                        left[col[r, i]] = left.get(col[r, i], ZERO) - x
                    x = c[i][r][k]
                    if x and (r, j) in col:
                        right[col[r, j]] = right.get(col[r, j], ZERO) - s * x
                for row in (left, right):
                    if any(row.values()):
                        rows.append([row.get(q, ZERO) for q in range(len(positions))])
    if rows:
        sols = nullspace(RationalMatrix(rows, cols=len(positions))).basis
    else:
        sols = [tuple(ONE if a == b else ZERO for b in range(len(positions))) for a in range(len(positions))]
    out = []
    for s_ in sols:
        v = [ZERO] * (n * n)
        for x, (r, cc) in zip(s_, positions):
            v[r * n + cc] = x
        out.append(v)
    return out


def zero_order_ops(t: StructureTable) -> OperatorSpace:
    """Endomorphisms with Phi(a.b) = Phi(a).b = (-1)^{|Phi||a|} a.Phi(b)."""
    n = t.dim
    vecs = _zero_order_block(t, 0)
    if t.graded:
        vecs += _zero_order_block(t, 1)
    return OperatorSpace(n, n, Subspace.span(n * n, vecs), "diff-0")


@dataclass(frozen=True)
class FilteredOperatorSpace:
    order: int
    space: OperatorSpace
    stabilized: bool = False

    @property
    def dim(self) -> int:
        return self.space.dim


def first_order_ops(t: StructureTable) -> FilteredOperatorSpace:
    space = (derivation_algebra(t).full + zero_order_ops(t)).relabel("diff-1")
    return FilteredOperatorSpace(1, space, False)


def compose_span(first: OperatorSpace, prev: OperatorSpace) -> OperatorSpace:
    """span(prev U {D E : D in basis(first), E in basis(prev)})."""
    mats = prev.basis
    products = [d @ e for d in first.basis for e in mats]
    return OperatorSpace.span(prev.rows, prev.cols, mats + products, prev.label)


@dataclass
class Filtration:
    """Diff_0 ⊆ Diff_1 ⊆ ... computed lazily, with stabilization detection."""

    table: StructureTable
    levels: list = field(default_factory=list)

    def __post_init__(self):
        if not self.levels:
            self.levels = [FilteredOperatorSpace(0, zero_order_ops(self.table), False),
                           first_order_ops(self.table)]

    def level(self, k: int) -> FilteredOperatorSpace:
        cap = max(self.table.dim ** 2, 1)
        while len(self.levels) <= k:
            last = self.levels[-1]
            if last.stabilized or len(self.levels) > cap:
                nxt = FilteredOperatorSpace(last.order + 1, last.space, True)
            else:
                space = compose_span(self.levels[1].space, last.space).relabel(f"diff-{last.order + 1}")
                nxt = FilteredOperatorSpace(last.order + 1, space, space.dim == last.space.dim)
            self.levels.append(nxt)
        return self.levels[k]

    def space(self, k: int) -> OperatorSpace:
        return self.level(k).space

    def first_stable_order(self, limit: int | None = None) -> int:
        """Smallest k >= 1 with Diff_{k+1} = Diff_k."""
        limit = limit if limit is not None else self.table.dim ** 2
        for k in range(1, limit + 1):
            if self.level(k + 1).dim == self.level(k).dim:
                return k
        raise RuntimeError("filtration did not stabilize within the limit")


def diff_ops(t: StructureTable, k: int) -> FilteredOperatorSpace:
    if k < 0:
        raise ValueError("order must be nonnegative")
    return Filtration(t).level(k)


def filtration_report(t: StructureTable, max_order: int) -> dict:
    f = Filtration(t)
    return {"orders": [{"k": k, "dim": f.level(k).dim, "stabilized": f.level(k).stabilized}
                       for k in range(max_order + 1)]}


def composition_closure(t: StructureTable, generators: list[RationalMatrix]) -> OperatorSpace:
    """Unital associative algebra generated by ``generators`` (span of all words)."""
    n = t.dim
    space = OperatorSpace.span(n, n, [RationalMatrix.identity(n)], "closure")
    gens = OperatorSpace.span(n, n, generators)
    while True:
        nxt = compose_span(gens, space)
        if nxt.dim == space.dim:
            return space
        space = nxt


def is_zero_order(t: StructureTable, phi: RationalMatrix) -> bool:
    return zero_order_ops(t).contains(phi)


def check_zero_order_with_derivation(t: StructureTable, phi: RationalMatrix, d: RationalMatrix,
                                     zero: OperatorSpace | None = None) -> dict:
    """For a zero-order Phi and an even derivation D: Phi∘D is a derivation and [Phi, D] is zero-order."""
    zero = zero if zero is not None else zero_order_ops(t)
    if not zero.contains(phi):
        raise ValueError("phi is not a zero-order operator")
    if leibniz_residual(t, d, 0):
        raise ValueError("d is not an even derivation")
    comp = phi @ d
    br = phi @ d - d @ phi
    return {
        "composition_is_derivation": not leibniz_residual(t, comp, 0),
        "bracket_is_zero_order": zero.contains(br),
        "bracket_is_zero": br.is_zero(),
    }


def composition_order_report(t: StructureTable, k: int, m: int, filtration: Filtration | None = None) -> dict:
    """Exhaustive basis check of Diff_k∘Diff_m ⊆ Diff_{k+m} and, when m <= k, [Diff_k, Diff_m] ⊆ Diff_m."""
    f = filtration if filtration is not None else Filtration(t)
    dk, dm, dkm = f.space(k), f.space(m), f.space(k + m)
    comp_fail, br_fail = [], []
    check_bracket = 1 <= k and m <= k
    for a, x in enumerate(dk.basis):
        for b, y in enumerate(dm.basis):
            if not dkm.contains(x @ y):
                comp_fail.append((a, b))
            if check_bracket and not dm.contains(x @ y - y @ x):
                br_fail.append((a, b))
    return {
        "k": k, "m": m,
        "pairs": dk.dim * dm.dim,
        "composition_failures": comp_fail,
        "bracket_checked": check_bracket,
        "bracket_failures": br_fail,
        "composition_ok": not comp_fail,
        "bracket_ok": not br_fail,
    }


def commutes_with_multiplication(t: StructureTable, phi: RationalMatrix) -> bool:
    """Phi(a_i . a_j) = Phi(a_i) . a_j = a_i . Phi(a_j) for all basis pairs (even Phi)."""
    cols = [phi.column(j) for j in range(t.dim)]
    for i in range(t.dim):
        for j in range(t.dim):
            lhs = phi @ t.product(i, j)
            if lhs != multiply(t, cols[i], t.basis_vector(j)) or lhs != multiply(t, t.basis_vector(i), cols[j]):
                return False
    return True
