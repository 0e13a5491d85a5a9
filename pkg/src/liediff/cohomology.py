"""Chevalley–Eilenberg complex of A-valued cochains on the derivation algebra.

A k-cochain is stored by its values on strictly increasing tuples of basis
derivations; the coordinate of ``(S, r)`` is ``index(S) * N + r`` with the
k-subsets S in lexicographic order.  Permutation signs are produced when
cochains are evaluated.

When the algebra has trivial center and only inner derivations, the
derivation basis can be identified with the algebra basis through ``ad``,
which is how the explicit coboundary formulas in structure constants are
recovered.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Sequence

from .algebra import StructureTable, ad_basis, ad_matrix, center, sign
from .derivations import derivation_algebra, inner_derivations
from .linalg import ZERO, RationalMatrix, Subspace, nullspace, rank
from .operators import OperatorSpace

HALF = Fraction(1, 2)


class UnsupportedConfiguration(ValueError):
    pass


class ContextError(RuntimeError):
    pass


@dataclass(frozen=True)
class DerivationContext:
    table: StructureTable
    ops: tuple            # G matrices (N x N), the chosen basis of the derivation algebra
    brackets: tuple       # brackets[a][b] = coordinates of [eps_a, eps_b] in ``ops``
    inner_identified: bool
    center_dim: int
    flags: tuple = ()

    @property
    def G(self) -> int:
        return len(self.ops)

    @property
    def N(self) -> int:
        return self.table.dim

    def cochain_dim(self, k: int) -> int:
        if k < 0 or k > self.G:
            return 0
        return comb(self.G, k) * self.N

    def act(self, a: int, v: Sequence) -> tuple:
        """eps_a(v)."""
        return self.ops[a] @ v


def build_context(t: StructureTable, identify_inner: bool = True) -> DerivationContext:
    """Basis of the derivation algebra, its bracket constants, and its action on the algebra."""
    if t.graded:
        raise UnsupportedConfiguration("the general complex is built for ungraded tables; "
                                       "use graded_delta0/graded_delta1 for graded ones")
    zdim = center(t).dim
    da = derivation_algebra(t)
    flags = []
    inner = inner_derivations(t)
    if identify_inner and zdim == 0 and inner.dim == da.dim:
        ops = tuple(ad_basis(t))
        brackets = tuple(tuple(tuple(t.constants[a][b]) for b in range(t.dim)) for a in range(t.dim))
        return DerivationContext(t, ops, brackets, True, 0, ())
    if zdim:
        flags.append("nonzero-center: full K-multilinear complex, not the center-multilinear subcomplex")
        warnings.warn("algebra has a nonzero center; building the full K-multilinear complex", stacklevel=2)
    ops = tuple(da.full.basis)
    space: OperatorSpace = da.full
    br = []
    for x in ops:
        row = []
        for y in ops:
            coords = space.coordinates(x @ y - y @ x)
            if coords is None:
                raise ContextError("bracket of derivations left the derivation space")
            row.append(tuple(coords))
        br.append(tuple(row))
    return DerivationContext(t, ops, tuple(br), False, zdim, tuple(flags))


# -- cochains --------------------------------------------------------------

def subsets(G: int, k: int) -> list[tuple]:
    return list(combinations(range(G), k))


@dataclass
class Cochain:
    degree: int
    G: int
    N: int
    coeffs: dict = field(default_factory=dict)  # increasing tuple -> vector of length N

    def evaluate(self, args: Sequence[int]) -> tuple:
        """Value on an arbitrary tuple of basis derivations (alternating)."""
        if len(set(args)) < len(args):
            return (ZERO,) * self.N
        order = sorted(range(len(args)), key=lambda i: args[i])
        s = _perm_sign(order)
        v = self.coeffs.get(tuple(args[i] for i in order))
        if v is None:
            return (ZERO,) * self.N
        return tuple(s * x for x in v)

    def to_vector(self) -> tuple:
        out = []
        for S in subsets(self.G, self.degree):
            out.extend(self.coeffs.get(S, (ZERO,) * self.N))
        return tuple(out)

    @classmethod
    def from_vector(cls, degree: int, G: int, N: int, v: Sequence) -> "Cochain":
        c = cls(degree, G, N)
        for idx, S in enumerate(subsets(G, degree)):
            part = tuple(v[idx * N:(idx + 1) * N])
            if any(part):
                c.coeffs[S] = part
        return c

    def is_zero(self) -> bool:
        return not any(any(v) for v in self.coeffs.values())


def _perm_sign(order: Sequence[int]) -> int:
    s = 1
    seen = list(order)
    for i in range(len(seen)):
        for j in range(i + 1, len(seen)):
            if seen[i] > seen[j]:
                s = -s
    return s


def _acc(out: dict, key, vec, s, N):
    cur = out.get(key)
    if cur is None:
        cur = [ZERO] * N
        out[key] = cur
    for r, x in enumerate(vec):
        if x:
            cur[r] += s * x


def _coboundary_basis(ctx: DerivationContext, S: tuple, n: int, c_vec: Sequence | None = None) -> dict:
    """δ of the cochain supported on the increasing tuple S with value ``c_vec`` (default a_n)."""
    G, N = ctx.G, ctx.N
    if c_vec is None:
        c_vec = tuple(Fraction(int(r == n)) for r in range(N))
    out: dict = {}
    Sset = set(S)
    # sum_i (-1)^i eps_i . c(..., eps_i omitted, ...)
    for t_ in range(G):
        if t_ in Sset:
            continue
        T = tuple(sorted(S + (t_,)))
        i = T.index(t_)
        _acc(out, T, ctx.ops[t_] @ c_vec, sign(i), N)
    # sum_{i<j} (-1)^{i+j} c([eps_i, eps_j], ... omitted ...)
    for pos_l, l in enumerate(S):
        R = S[:pos_l] + S[pos_l + 1:]
        Rset = set(R)
        free = [u for u in range(G) if u not in Rset]
        for ui, u in enumerate(free):
            for v in free[ui + 1:]:
                g = ctx.brackets[u][v][l]
                if not g:
                    continue
                T = tuple(sorted(R + (u, v)))
                i, j = T.index(u), T.index(v)
                _acc(out, T, c_vec, sign(i + j + pos_l) * g, N)
    return out


def coboundary(ctx: DerivationContext, c: Cochain) -> Cochain:
    if (c.G, c.N) != (ctx.G, ctx.N):
        raise ValueError("cochain does not belong to this context")
    out = Cochain(c.degree + 1, ctx.G, ctx.N)
    if c.degree + 1 > ctx.G:
        return out
    acc: dict = {}
    for S, v in c.coeffs.items():
        for T, w in _coboundary_basis(ctx, S, 0, v).items():
            _acc(acc, T, w, 1, ctx.N)
    out.coeffs = {T: tuple(w) for T, w in acc.items() if any(w)}
    return out


def coboundary_matrix(ctx: DerivationContext, k: int) -> RationalMatrix:
    """Matrix of δ^k : C^k -> C^{k+1} in the canonical cochain coordinates."""
    G, N = ctx.G, ctx.N
    src = subsets(G, k) if 0 <= k <= G else []
    rows = ctx.cochain_dim(k + 1)
    cols = len(src) * N
    if rows == 0 or cols == 0:
        return RationalMatrix.zeros(rows, cols)
    index = {T: i for i, T in enumerate(subsets(G, k + 1))}
    data = [[ZERO] * cols for _ in range(rows)]
    for si, S in enumerate(src):
        for n in range(N):
            col = si * N + n
            for T, w in _coboundary_basis(ctx, S, n).items():
                base = index[T] * N
                for r, x in enumerate(w):
                    if x:
                        data[base + r][col] = x
    return RationalMatrix(data, cols=cols)


def dd_zero(ctx: DerivationContext, k: int) -> bool:
    """δ^{k+1} ∘ δ^k = 0 as an exact matrix product."""
    a = coboundary_matrix(ctx, k)
    b = coboundary_matrix(ctx, k + 1)
    if a.cols == 0 or b.rows == 0:
        return True
    return (b @ a).is_zero()


def cohomology_dim(ctx: DerivationContext, k: int) -> dict:
    if not 0 <= k <= ctx.G:
        raise ValueError(f"degree must lie in 0..{ctx.G}")
    d_k = coboundary_matrix(ctx, k)
    dim_ck = ctx.cochain_dim(k)
    dim_ker = dim_ck - (rank(d_k) if d_k.rows and d_k.cols else 0)
    d_prev = coboundary_matrix(ctx, k - 1) if k >= 1 else None
    dim_im = rank(d_prev) if d_prev is not None and d_prev.rows and d_prev.cols else 0
    return {"k": k, "dim_ker": dim_ker, "dim_im_prev": dim_im, "dim": dim_ker - dim_im}


def cohomology_report(t: StructureTable, max_degree: int) -> dict:
    ctx = build_context(t)
    top = min(max_degree, ctx.G)
    H = [cohomology_dim(ctx, k) for k in range(top + 1)]
    dd = all(dd_zero(ctx, k) for k in range(top))
    out = {"G": ctx.G, "N": ctx.N, "H": H, "dd_zero_verified": dd}
    if ctx.flags:
        out["flags"] = list(ctx.flags)
    return out


# -- explicit formulas in structure constants --------------------------------

def wedge2_monomials(degrees: Sequence[int]) -> list[tuple[int, int]]:
    """Canonical theta^p ∧ theta^q with p < q, plus p == q for odd p."""
    n = len(degrees)
    return [(p, q) for p in range(n) for q in range(p, n) if p < q or degrees[p]]


def _wedge(p: int, q: int, degrees) -> tuple[tuple | None, int]:
    """theta^p ∧ theta^q = -(-1)^{|p||q|} theta^q ∧ theta^p, reduced to canonical order."""
    if p < q:
        return (p, q), 1
    if p == q:
        return ((p, p), 1) if degrees[p] else (None, 0)
    return (q, p), -sign(degrees[p] * degrees[q])


def _require_graded_context(t: StructureTable) -> dict:
    if center(t).dim:
        raise UnsupportedConfiguration("explicit coboundary formulas need an algebra with trivial center")
    da = derivation_algebra(t)
    inner = inner_derivations(t)
    return {"all_inner": da.dim == inner.dim, "dim_derivations": da.dim}


def graded_delta0(t: StructureTable) -> tuple[RationalMatrix, dict]:
    """δ^0 a_m = (-1)^{|a_m|} c^r_{nm} a_r ⊗ theta^n; column m, row n*N + r."""
    flags = _require_graded_context(t)
    N, d, c = t.dim, t.degrees, t.constants
    data = [[ZERO] * N for _ in range(N * N)]
    for m in range(N):
        s = sign(d[m])
        for n in range(N):
            for r, x in enumerate(c[n][m]):
                if x:
                    data[n * N + r][m] += s * x
    return RationalMatrix(data, cols=N), flags


def graded_delta1(t: StructureTable, twisted_first_term: bool = False) -> tuple[RationalMatrix, dict]:
    """δ^1 (a_m ⊗ theta^r) = c^n_{pm} a_n ⊗ theta^p∧theta^r - 1/2 c^r_{pn} a_m ⊗ theta^p∧theta^n.

    Rows are indexed by (wedge monomial, n) in ``wedge2_monomials`` order,
    columns by r*N + m, matching the C^1 coordinates of the general complex.
    ``twisted_first_term`` multiplies the first term by (-1)^{|a_p|(|a_p|+|a_m|)};
    with that factor δ^1∘δ^0 no longer vanishes once odd elements act on even
    ones, so it is off by default.
    """
    flags = _require_graded_context(t)
    N, d, c = t.dim, t.degrees, t.constants
    monos = wedge2_monomials(d)
    midx = {w: i for i, w in enumerate(monos)}
    data = [[ZERO] * (N * N) for _ in range(len(monos) * N)]
    for r in range(N):
        for m in range(N):
            col = r * N + m
            for p in range(N):
                s1 = sign(d[p] * (d[p] + d[m])) if twisted_first_term else 1
                key, sw = _wedge(p, r, d)
                if key is not None:
                    for n, x in enumerate(c[p][m]):
                        if x:
                            data[midx[key] * N + n][col] += s1 * sw * x
                for n in range(N):
                    x = c[p][n][r]
                    if x:
                        key, sw = _wedge(p, n, d)
                        if key is not None:
                            data[midx[key] * N + m][col] -= HALF * sw * x
    return RationalMatrix(data, cols=N * N), flags


# -- one-cocycles as derivations --------------------------------------------

def cocycles_as_derivations_check(ctx: DerivationContext) -> dict:
    """One-cocycles obey the Leibniz-type relation; one-coboundaries are minus inner derivations."""
    if ctx.center_dim:
        raise UnsupportedConfiguration("needs an algebra with trivial center")
    G, N = ctx.G, ctx.N
    d0 = coboundary_matrix(ctx, 0)
    d1 = coboundary_matrix(ctx, 1)
    Z1 = nullspace(d1) if d1.rows else Subspace.full(G * N)
    B1 = Subspace.span(G * N, [d0.column(j) for j in range(d0.cols)])

    def as_map(v):
        return [tuple(v[a * N:(a + 1) * N]) for a in range(G)]

    def bracket_value(c_map, a, b):
        out = [ZERO] * N
        for l, g in enumerate(ctx.brackets[a][b]):
            if g:
                for r, x in enumerate(c_map[l]):
                    out[r] += g * x
        return tuple(out)

    leibniz_fail = []
    for idx, v in enumerate(Z1.basis):
        cm = as_map(v)
        for a in range(G):
            for b in range(G):
                # c(eps_a . eps_b) = c(eps_a) . eps_b + eps_a . c(eps_b), with x . eps = -eps(x)
                lhs = bracket_value(cm, a, b)
                rhs = tuple(-x + y for x, y in zip(ctx.act(b, cm[a]), ctx.act(a, cm[b])))
                if lhs != rhs:
                    leibniz_fail.append((idx, a, b))
    inner_fail = []
    for m in range(N):
        a_m = tuple(Fraction(int(r == m)) for r in range(N))
        ad_a = ad_matrix(ctx.table, a_m)
        cm = as_map(d0.column(m))
        for e in range(G):
            # -∂_a(eps) = -[ad a, eps] must be ad of (δ^0 a)(eps)
            minus_da = (ad_a @ ctx.ops[e] - ctx.ops[e] @ ad_a).scale(-1)
            if minus_da != ad_matrix(ctx.table, cm[e]):
                inner_fail.append((m, e))
    return {
        "dim_cocycles": Z1.dim,
        "dim_coboundaries": B1.dim,
        "leibniz_ok": not leibniz_fail,
        "leibniz_failures": leibniz_fail,
        "coboundaries_inner": not inner_fail,
        "coboundary_failures": inner_fail,
        "h1_trivial": B1.contains_subspace(Z1),
    }
