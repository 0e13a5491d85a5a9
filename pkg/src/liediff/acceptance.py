"""Acceptance criteria, runnable from the CLI (``verify-paper``) and from pytest.

Every check is exact.  Randomized parts draw from ``random.Random(seed)``.
"""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable

from . import algebra as alg
from .cohomology import (build_context, coboundary_matrix, cocycles_as_derivations_check, cohomology_dim,
                         dd_zero, graded_delta0, graded_delta1)
from .derivations import closure_failures, derivation_algebra, family_containment, outer_report
from .diffops import Filtration, check_zero_order_with_derivation, composition_order_report
from .linalg import RationalMatrix, Subspace, nullspace, rank
from .modules import ModuleFiltration, check_representation, first_order_module_ops, gl_defining, zero_order_module_ops
from .realizations import (car_action, car_representation, ccr_representation_residuals, poly,
                           verify_intertwining_car, verify_intertwining_ccr)

DEFAULT_SEED = 20240601

VALIDATED_BUILTINS = ("sl2", "sl3", "sl4", "gl2", "gl3", "o3", "o4", "abelian:1", "abelian:2", "abelian:3",
                      "ccr:1", "ccr:2", "car:1", "car:2", "osp1|2")


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    details: list = field(default_factory=list)

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number:>2}. {self.title}"


class _Checks:
    def __init__(self):
        self.details: list[str] = []
        self.ok = True

    def __call__(self, cond: bool, what: str) -> bool:
        cond = bool(cond)
        if not cond:
            self.ok = False
        self.details.append(f"{'ok  ' if cond else 'FAIL'} {what}")
        return cond


def mixed_parity_table() -> alg.StructureTable:
    """4-dim graded Lie algebra (h, e | x, y): [h,e]=e, [h,x]=2x, [h,y]=y, [e,y]=x; trivial center."""
    return alg.StructureTable.from_entries(
        4, {(0, 1, 1): 1, (0, 2, 2): 2, (0, 3, 3): 1, (1, 3, 2): 1}, degrees=(0, 0, 1, 1),
        names=("h", "e", "x", "y"))


def random_rational(rng: random.Random, span: int = 9) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, 4))


# -- criteria ----------------------------------------------------------------

def c1_axioms(seed: int) -> _Checks:
    ck = _Checks()
    for name in VALIDATED_BUILTINS:
        ck(alg.validate(alg.builtin(name)).ok, f"{name} satisfies the (graded) Lie axioms")
    for name in ("car:1", "car:2"):
        t = alg.builtin(name)
        n = t.dim
        zero = all(not any(alg.jacobi_residual(t, a, b, c)) for a in range(n) for b in range(n) for c in range(n))
        ck(zero, f"{name} graded Jacobi residuals all zero")
    for name in ("ccr:1", "ccr:2"):
        t = alg.builtin(name)
        n = t.dim
        vanish = all(not any(alg.multiply(t, t.product(a, b), t.basis_vector(c)))
                     for a in range(n) for b in range(n) for c in range(n))
        ck(vanish, f"{name} all triple products vanish")
    return ck


def c2_semisimple(seed: int) -> _Checks:
    ck = _Checks()
    for name, expected in (("sl2", 3), ("sl3", 8), ("o3", 3)):
        t = alg.builtin(name)
        rep = outer_report(t)
        ck(rep["dim_full"] == expected, f"dim Der({name}) = {rep['dim_full']} (expected {expected})")
        ck(rep["dim_outer"] == 0, f"{name} has no outer derivations")
        ck(alg.center(t).dim == 0, f"{name} has zero center")
    return ck


def graded_leibniz_failures(t: alg.StructureTable, ops) -> list:
    """Basis pairs where a homogeneous operator breaks D(xy) = D(x)y + (-1)^{|D||x|} x D(y).

    Evaluated directly through the multiplication, independently of the solver.
    """
    bad = []
    for idx, op in enumerate(ops):
        cols = [op.matrix.column(i) for i in range(t.dim)]
        for i in range(t.dim):
            for j in range(t.dim):
                lhs = op.matrix @ t.product(i, j)
                x = alg.multiply(t, cols[i], t.basis_vector(j))
                y = alg.multiply(t, t.basis_vector(i), cols[j])
                s = alg.sign(op.parity * t.degrees[i])
                if lhs != tuple(a + s * b for a, b in zip(x, y)):
                    bad.append((idx, i, j))
    return bad


def c3_bound_closure(seed: int) -> _Checks:
    ck = _Checks()
    for name in VALIDATED_BUILTINS + ("mixed-parity test table",):
        t = mixed_parity_table() if name.startswith("mixed") else alg.builtin(name)
        da = derivation_algebra(t)
        ck(da.dim <= t.dim ** 2, f"dim Der({name}) = {da.dim} <= {t.dim ** 2}")
        ck(not closure_failures(da), f"Der({name}) closed under the graded bracket")
        ck(not graded_leibniz_failures(t, da.operators()), f"Der({name}) basis obeys the graded Leibniz rule")
        ck(all(da.contains(m) for m in alg.ad_basis(t)), f"Der({name}) contains every ad(a_i)")
    return ck


def c4_families(seed: int) -> _Checks:
    ck = _Checks()
    expected = {("ccr-generic", "ccr:1"): 5, ("ccr-generic", "ccr:2"): None, ("car-generic", "car:1"): 3}
    for (family, name), fam_dim in expected.items():
        rep = family_containment(alg.builtin(name), family)
        ck(rep["all_leibniz"], f"{family} on {name}: all {len(rep['generators'])} generators pass the Leibniz check")
        ck(rep["contained"], f"{family} on {name}: family inside the solver space")
        if fam_dim is not None:
            ck(rep["family_dim"] == fam_dim, f"{family} on {name}: family dim {rep['family_dim']} (expected {fam_dim})")
        note = "equal" if rep["equal"] else "solver space strictly larger (center-scaling derivation)"
        ck(True, f"{family} on {name}: family dim {rep['family_dim']}, solver dim {rep['solver_dim']} -> {note}")
    return ck


def c5_filtration(seed: int) -> _Checks:
    ck = _Checks()
    f = Filtration(alg.builtin("sl2"))
    ck(f.level(0).dim == 1, f"Diff_0(sl2) dim {f.level(0).dim} (expected 1)")
    dims = [f.level(k).dim for k in range(6)]
    ck(all(f.space(k + 1).contains_space(f.space(k)) for k in range(5)), f"Diff_k(sl2) monotone: {dims}")
    ck(dims[-1] == 9 and f.level(5).stabilized, f"Diff_k(sl2) stabilizes at dim {dims[-1]} (expected 9)")
    for n in (2, 3):
        d0 = Filtration(alg.abelian(n)).level(0).dim
        ck(d0 == n * n, f"Diff_0(abelian({n})) dim {d0} (expected {n * n})")
    for name in ("sl2", "o3", "ccr:1"):
        t = alg.builtin(name)
        filt = Filtration(t)
        zero = filt.space(0)
        ders = derivation_algebra(t).even.basis
        good = all(all(check_zero_order_with_derivation(t, phi, d, zero)[key]
                       for key in ("composition_is_derivation", "bracket_is_zero_order"))
                   for phi in zero.basis for d in ders)
        ck(good, f"{name}: Phi∘D is a derivation and [Phi, D] is zero-order over all basis pairs")
    for name in ("sl2", "o3"):
        t = alg.builtin(name)
        filt = Filtration(t)
        comp_bad, br_bad = [], []
        for k in range(0, 5):
            for m in range(0, 5 - k):
                r = composition_order_report(t, k, m, filt)
                if not r["composition_ok"]:
                    comp_bad.append((k, m))
                if r["bracket_checked"] and not r["bracket_ok"]:
                    br_bad.append((k, m, len(r["bracket_failures"]), r["pairs"]))
        ck(not comp_bad, f"{name}: Diff_k∘Diff_m ⊆ Diff_(k+m) for k+m <= 4" + (f"; failures at {comp_bad}" if comp_bad else ""))
        ck(not br_bad, f"{name}: [Diff_k, Diff_m] ⊆ Diff_m for 1 <= k, m <= k, k+m <= 4"
           + (f"; failing (k, m, bad pairs, pairs): {br_bad}" if br_bad else ""))
    return ck


def c6_modules(seed: int) -> _Checks:
    ck = _Checks()
    r = gl_defining(2)
    z = zero_order_module_ops(r)
    fo = first_order_module_ops(r)
    filt = ModuleFiltration(r)
    ck(z.dim == 1, f"gl2 on Q^2: zero-order dim {z.dim} (expected 1)")
    ck(fo.dim == 4, f"gl2 on Q^2: first-order dim {fo.dim} (expected 4)")
    stable = filt.level(3)
    ck(stable.stabilized and stable.dim == 4, f"gl2 on Q^2: module filtration stabilizes at dim {stable.dim} (expected 4)")
    ck(all(fo.contains(m) for m in r.action), "every module multiplication rho(a) is first-order")
    return ck


def c7_ce(seed: int) -> _Checks:
    ck = _Checks()
    for name in ("sl2", "sl3", "o3"):
        t = alg.builtin(name)
        ctx = build_context(t)
        ck(ctx.inner_identified, f"{name}: derivation basis identified with the algebra basis")
        ck(all(dd_zero(ctx, k) for k in range(4)), f"{name}: δ^(k+1)∘δ^k = 0 for k <= 3")
        d0, _ = graded_delta0(t)
        d1, _ = graded_delta1(t)
        ck(d0 == coboundary_matrix(ctx, 0), f"{name}: δ^0 matches the structure-constant formula entrywise")
        ck(d1 == coboundary_matrix(ctx, 1), f"{name}: δ^1 matches the Maurer-Cartan formula entrywise")
        h0, h1 = cohomology_dim(ctx, 0)["dim"], cohomology_dim(ctx, 1)["dim"]
        ck(h0 == 0 and h1 == 0, f"{name}: dim H^0 = {h0}, dim H^1 = {h1} (expected 0, 0)")
        rep = cocycles_as_derivations_check(ctx)
        ck(rep["leibniz_ok"], f"{name}: all {rep['dim_cocycles']} basis 1-cocycles satisfy the Leibniz relation")
    return ck


def c8_graded_ce(seed: int) -> _Checks:
    ck = _Checks()
    for name in ("sl2", "o3"):
        t = alg.builtin(name)
        ctx = build_context(t)
        ck(graded_delta0(t)[0] == coboundary_matrix(ctx, 0) and graded_delta1(t)[0] == coboundary_matrix(ctx, 1),
           f"{name} (all even): graded δ^0, δ^1 reduce to the ungraded matrices")
    t = mixed_parity_table()
    ck(alg.validate(t).ok, "4-dim mixed-parity table satisfies the graded axioms")
    d0, flags = graded_delta0(t)
    d1, _ = graded_delta1(t)
    ck((d1 @ d0).is_zero(), f"4-dim mixed-parity table: δ^1∘δ^0 = 0 (all derivations inner: {flags['all_inner']})")
    return ck


def c9_realizations(seed: int) -> _Checks:
    ck = _Checks()
    rng = random.Random(seed)
    polys = [poly([1] * (d + 1)) for d in range(15)] + [poly([random_rational(rng) for _ in range(15)])]
    ck(all(not ccr_representation_residuals(f) for f in polys),
       "CCR(1) polynomial action: commutator of actions = action of bracket, deg f <= 14")
    bad = 0
    for _ in range(100):
        params = [random_rational(rng) for _ in range(6)]
        f = poly([random_rational(rng) for _ in range(rng.randint(1, 9))])
        if not verify_intertwining_ccr(params, f)["ok"]:
            bad += 1
    ck(bad == 0, f"CCR(1) intertwining residual zero for 100 random parameter tuples x 3 generators ({bad} failures)")
    rep = car_representation()
    ck(not check_representation(rep), "CAR(1) Grassmann action: graded representation property")
    pi, phi = car_action((1, 0, 0)).matrix, car_action((0, 1, 0)).matrix
    ck(pi.commutator(phi, -1) == RationalMatrix.identity(2), "CAR(1): anticommutator of e_pi, e_phi actions = identity")
    grid = [Fraction(v) for v in (-2, 0, 1)] + [Fraction(1, 2)]
    bad = 0
    count = 0
    for params in product(grid, repeat=4):
        for h in ((1, 0), (0, 1), (Fraction(2, 3), -3)):
            count += 1
            if not verify_intertwining_car(params, h)["ok"]:
                bad += 1
    ck(bad == 0, f"CAR(1) intertwining residual zero on a {len(grid)}^4 grid x 3 vectors ({bad}/{count} failures)")
    return ck


def _random_matrix(rng: random.Random, r: int, c: int) -> RationalMatrix:
    # low-rank products make rank deficiency common
    k = rng.randint(0, min(r, c))
    a = RationalMatrix([[random_rational(rng, 3) for _ in range(k)] for _ in range(r)], cols=k)
    b = RationalMatrix([[random_rational(rng, 3) for _ in range(c)] for _ in range(k)], cols=c)
    return a @ b if k else RationalMatrix.zeros(r, c)


def linalg_invariants(seed: int, count: int = 200) -> list[str]:
    """Failures of rank-nullity, kernel, canonical-form and Grassmann-formula checks."""
    rng = random.Random(seed)
    failures = []
    for i in range(count):
        r, c = rng.randint(1, 8), rng.randint(1, 8)
        m = _random_matrix(rng, r, c)
        ns = nullspace(m)
        if rank(m) + ns.dim != c:
            failures.append(f"rank-nullity #{i}")
        if any(any(m @ v) for v in ns.basis):
            failures.append(f"kernel #{i}")
        if ns.canonical() != ns:
            failures.append(f"canonical form #{i}")
        n = rng.randint(1, 8)
        u = Subspace.span(n, [[random_rational(rng, 2) for _ in range(n)] for _ in range(rng.randint(0, n))])
        v = Subspace.span(n, [[random_rational(rng, 2) for _ in range(n)] for _ in range(rng.randint(0, n))])
        if (u + v).dim + u.intersect(v).dim != u.dim + v.dim:
            failures.append(f"grassmann #{i}")
    return failures


def c10_infrastructure(seed: int) -> _Checks:
    ck = _Checks()
    for name in VALIDATED_BUILTINS:
        t = alg.builtin(name)
        ck(alg.parse_table(alg.emit_table(t)) == t, f"{name}: file-format round trip is the identity")
    a = _deterministic_fingerprint(seed)
    b = _deterministic_fingerprint(seed)
    ck(a == b, "seeded randomized checks reproduce byte-identical output")
    fails = linalg_invariants(seed)
    ck(not fails, f"linear-algebra invariants on 200 random matrices up to 8x8 ({len(fails)} failures)")
    return ck


def _deterministic_fingerprint(seed: int) -> str:
    rng = random.Random(seed)
    out = []
    for _ in range(5):
        params = [random_rational(rng) for _ in range(6)]
        f = poly([random_rational(rng) for _ in range(4)])
        out.append(repr((params, f, verify_intertwining_ccr(params, f)["ok"])))
    out.extend(linalg_invariants(seed, count=20))
    return "\n".join(out)


CRITERIA: list[tuple[int, str, Callable]] = [
    (1, "axioms of all builtins", c1_axioms),
    (2, "semisimple derivations are inner", c2_semisimple),
    (3, "derivation bound and closure", c3_bound_closure),
    (4, "CCR/CAR derivation families contained in the solver space", c4_families),
    (5, "operator filtration, composition and bracket orders", c5_filtration),
    (6, "module differential operators for gl2 on Q^2", c6_modules),
    (7, "Chevalley-Eilenberg calculus for sl2, sl3, o3", c7_ce),
    (8, "graded coboundaries in degrees 0 and 1", c8_graded_ce),
    (9, "CCR(1) and CAR(1) operator realizations", c9_realizations),
    (10, "infrastructure: round trip, determinism, linear algebra", c10_infrastructure),
]


def run_criterion(number: int, seed: int = DEFAULT_SEED) -> CriterionResult:
    for num, title, fn in CRITERIA:
        if num == number:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                try:
                    ck = fn(seed)
                except Exception as exc:  # a crash is a failure of that criterion
                    return CriterionResult(num, title, False, [f"FAIL raised {type(exc).__name__}: {exc}"])
            return CriterionResult(num, title, ck.ok, ck.details)
    raise KeyError(number)


def run_all(seed: int = DEFAULT_SEED) -> list[CriterionResult]:
    return [run_criterion(num, seed) for num, _, _ in CRITERIA]
