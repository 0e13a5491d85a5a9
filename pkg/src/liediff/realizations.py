"""Operator realizations of CCR(1) on polynomials and of CAR(1) on the Grassmann algebra.

CCR(1) acts on polynomials in x through w = pi e_pi + phi e_phi + lam 1 ->
pi d/dx + phi x + lam.  Smooth functions are replaced by polynomials of degree
at most ``budget``; the identities checked here have polynomial coefficients,
so they hold on all smooth functions exactly when they hold on polynomials.
Any operation whose result would exceed the budget raises instead of
truncating.

CAR(1) acts on Lambda = span(1, c) through w -> pi d/dc + phi c + lam, with
d/dc(1) = 0, d/dc(c) = 1 and c acting by left multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable, Sequence

from .algebra import car, ccr
from .linalg import ONE, ZERO, RationalMatrix, format_rational, to_rational
from .modules import Representation
from .operators import matrix_parity

DEFAULT_BUDGET = 16
HALF = Fraction(1, 2)


class BudgetExceeded(ValueError):
    pass


# -- polynomials ------------------------------------------------------------

def poly(coeffs: Sequence) -> tuple:
    """Normalized coefficient tuple (constant term first, no trailing zeros)."""
    c = [to_rational(x) for x in coeffs]
    while c and not c[-1]:
        c.pop()
    return tuple(c)


def degree(p: Sequence) -> int:
    return len(p) - 1  # zero polynomial has degree -1


def padd(p, q):
    n = max(len(p), len(q))
    return poly([(p[i] if i < len(p) else ZERO) + (q[i] if i < len(q) else ZERO) for i in range(n)])


def pscale(p, s):
    s = to_rational(s)
    return poly([s * x for x in p])


def pmul(p, q):
    if not p or not q:
        return ()
    out = [ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                if b:
                    out[i + j] += a * b
    return poly(out)


def pderiv(p, k: int = 1):
    for _ in range(k):
        p = poly([i * p[i] for i in range(1, len(p))])
    return p


def parse_poly(s: str) -> tuple:
    """Parse ``"3/2*x^2 - x + 4"``-style polynomials in x with rational coefficients."""
    text = s.replace(" ", "").replace("**", "^")
    if not text:
        raise ValueError("empty polynomial")
    terms = []
    cur = ""
    for ch in text:
        if ch in "+-" and cur and not cur.endswith(("*", "^", "/")):
            terms.append(cur)
            cur = ch
        else:
            cur += ch
    terms.append(cur)
    out: dict = {}
    for term in terms:
        sgn = 1
        while term and term[0] in "+-":
            if term[0] == "-":
                sgn = -sgn
            term = term[1:]
        if not term:
            raise ValueError(f"bad polynomial {s!r}")
        if "x" in term:
            coef_s, _, power_s = term.partition("x")
            coef_s = coef_s.rstrip("*")
            coef = to_rational(coef_s) if coef_s else ONE
            power = int(power_s[1:]) if power_s.startswith("^") else (1 if not power_s else None)
            if power is None or power < 0:
                raise ValueError(f"bad term {term!r}")
        else:
            coef, power = to_rational(term), 0
        out[power] = out.get(power, ZERO) + sgn * coef
    top = max(out) if out else 0
    return poly([out.get(i, ZERO) for i in range(top + 1)])


def format_poly(p: Sequence) -> str:
    if not p:
        return "0"
    parts = []
    for i in range(len(p) - 1, -1, -1):
        c = p[i]
        if not c:
            continue
        mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
        cs = format_rational(c)
        if mono and c == 1:
            cs = ""
        elif mono and c == -1:
            cs = "-"
        parts.append(f"{cs}{'*' if cs not in ('', '-') and mono else ''}{mono}")
    return " + ".join(parts).replace("+ -", "- ")


# -- polynomial differential operators ----------------------------------------

@dataclass(frozen=True)
class PolyDiffOp:
    """sum_d coeff_d(x) (d/dx)^d acting on polynomials of degree <= budget."""

    terms: tuple  # ((derivative order, coefficient polynomial), ...) sorted, nonzero
    budget: int = DEFAULT_BUDGET
    order: int = 1

    @classmethod
    def build(cls, terms: dict, budget: int = DEFAULT_BUDGET, order: int = 1) -> "PolyDiffOp":
        clean = tuple(sorted((d, poly(c)) for d, c in terms.items() if poly(c)))
        return cls(clean, budget, order)

    def max_coeff_degree(self) -> int:
        return max((degree(c) for _, c in self.terms), default=-1)

    def __call__(self, f: Sequence) -> tuple:
        f = poly(f)
        if degree(f) > self.budget:
            raise BudgetExceeded(f"input degree {degree(f)} exceeds budget {self.budget}")
        out = ()
        for d, c in self.terms:
            out = padd(out, pmul(c, pderiv(f, d)))
        if degree(out) > self.budget:
            raise BudgetExceeded(f"result degree {degree(out)} exceeds budget {self.budget}")
        return out

    def __add__(self, other: "PolyDiffOp") -> "PolyDiffOp":
        terms = dict(self.terms)
        for d, c in other.terms:
            terms[d] = padd(terms.get(d, ()), c)
        return PolyDiffOp.build(terms, min(self.budget, other.budget), max(self.order, other.order))

    def compose(self, other: "PolyDiffOp") -> "PolyDiffOp":
        """self ∘ other, with order label self.order + other.order."""
        terms: dict = {}
        for i, a in self.terms:
            for j, b in other.terms:
                for s in range(i + 1):
                    bs = pderiv(b, s)
                    if bs:
                        key = i + j - s
                        terms[key] = padd(terms.get(key, ()), pscale(pmul(a, bs), comb(i, s)))
        return PolyDiffOp.build(terms, min(self.budget, other.budget), self.order + other.order)

    def __matmul__(self, other: "PolyDiffOp") -> "PolyDiffOp":
        return self.compose(other)


def ccr_action(w: Sequence, budget: int = DEFAULT_BUDGET) -> PolyDiffOp:
    """pi e_pi + phi e_phi + lam 1  ->  pi d/dx + phi x + lam."""
    pi, phi, lam = (to_rational(x) for x in w)
    return PolyDiffOp.build({1: (pi,), 0: (lam, phi)}, budget, order=1)


def ccr_first_order(M, O1, O2, C1, C2, lam, budget: int = DEFAULT_BUDGET) -> PolyDiffOp:
    """O1 d²/dx² + (C2 - M x) d/dx - (C1 + O2 x / 2) x + lam, exactly as written."""
    M, O1, O2, C1, C2, lam = (to_rational(v) for v in (M, O1, O2, C1, C2, lam))
    return PolyDiffOp.build({2: (O1,), 1: (C2, -M), 0: (lam, -C1, -HALF * O2)}, budget, order=1)


def ccr_derivation(M, O1, O2, C1, C2) -> RationalMatrix:
    """(pi, phi, lam) -> (M pi + O1 phi, -M phi + O2 pi, C1 pi + C2 phi) on ccr(1)."""
    M, O1, O2, C1, C2 = (to_rational(v) for v in (M, O1, O2, C1, C2))
    return RationalMatrix([[M, O1, 0], [O2, -M, 0], [C1, C2, 0]])


def ccr_paired_derivation(M, O1, O2, C1, C2) -> RationalMatrix:
    """Derivation intertwined by ``ccr_first_order``: the O1 slot carries 2*O1.

    [O1 d²/dx², x] = 2 O1 d/dx, so the second-derivative coefficient O1 pairs
    with the derivation sending e_phi to 2*O1 e_pi.
    """
    return ccr_derivation(M, 2 * to_rational(O1), O2, C1, C2)


CCR_GENERATORS = {"e_pi": (1, 0, 0), "e_phi": (0, 1, 0), "1": (0, 0, 1)}


def verify_intertwining_ccr(params: Sequence, f: Sequence, budget: int = DEFAULT_BUDGET,
                            literal_pairing: bool = False) -> dict:
    """Residuals of Delta(w f) - (dw) f - w(Delta f) for w in (e_pi, e_phi, 1)."""
    M, O1, O2, C1, C2, lam = (to_rational(v) for v in params)
    f = poly(f)
    if degree(f) + 2 > budget:
        raise BudgetExceeded(f"deg f + 2 = {degree(f) + 2} exceeds budget {budget}")
    delta = ccr_first_order(M, O1, O2, C1, C2, lam, budget)
    der = ccr_derivation(M, O1, O2, C1, C2) if literal_pairing else ccr_paired_derivation(M, O1, O2, C1, C2)
    residuals = {}
    for name, w in CCR_GENERATORS.items():
        act = ccr_action(w, budget)
        dw = der @ w
        lhs = delta(act(f))
        rhs = padd(ccr_action(dw, budget)(f), act(delta(f)))
        residuals[name] = padd(lhs, pscale(rhs, -1))
    return {"residuals": residuals, "ok": not any(residuals.values())}


def ccr_representation_residuals(f: Sequence, budget: int = DEFAULT_BUDGET) -> dict:
    """(w.w')(f) - w(w'(f)) + w'(w(f)) for all basis pairs of ccr(1)."""
    t = ccr(1)
    out = {}
    basis = list(CCR_GENERATORS.values())
    for i, w in enumerate(basis):
        for j, w2 in enumerate(basis):
            a, b = ccr_action(w, budget), ccr_action(w2, budget)
            lhs = ccr_action(t.product(i, j), budget)(f)
            res = padd(lhs, pscale(padd(a(b(f)), pscale(b(a(f)), -1)), -1))
            if res:
                out[i, j] = res
    return out


# -- Grassmann module --------------------------------------------------------

LAMBDA_DEGREES = (0, 1)
D_C = RationalMatrix([[0, 1], [0, 0]])   # d/dc : c -> 1, 1 -> 0
MUL_C = RationalMatrix([[0, 0], [1, 0]])  # c.   : 1 -> c, c -> 0
ID2 = RationalMatrix.identity(2)


@dataclass(frozen=True)
class GrassmannOp:
    matrix: RationalMatrix
    order: int = 1

    @property
    def parity(self):
        return matrix_parity(self.matrix, LAMBDA_DEGREES)

    def __call__(self, h: Sequence) -> tuple:
        return self.matrix @ tuple(to_rational(x) for x in h)

    def compose(self, other: "GrassmannOp") -> "GrassmannOp":
        return GrassmannOp(self.matrix @ other.matrix, self.order + other.order)

    def __matmul__(self, other: "GrassmannOp") -> "GrassmannOp":
        return self.compose(other)

    def homogeneous_parts(self) -> dict:
        m = self.matrix
        even = RationalMatrix([[m[0, 0], 0], [0, m[1, 1]]])
        odd = RationalMatrix([[0, m[0, 1]], [m[1, 0], 0]])
        return {0: even, 1: odd}


def car_action(w: Sequence) -> GrassmannOp:
    """pi e_pi + phi e_phi + lam 1  ->  pi d/dc + phi c + lam, i.e. (pi h1 + lam h0) + (phi h0 + lam h1) c."""
    pi, phi, lam = (to_rational(x) for x in w)
    return GrassmannOp(D_C.scale(pi) + MUL_C.scale(phi) + ID2.scale(lam))


def car_first_order(M, C1, C2, lam) -> GrassmannOp:
    """(C2 - M c) d/dc + C1 c + lam."""
    M, C1, C2, lam = (to_rational(v) for v in (M, C1, C2, lam))
    return GrassmannOp(D_C.scale(C2) - (MUL_C @ D_C).scale(M) + MUL_C.scale(C1) + ID2.scale(lam))


def car_derivation(M, C1, C2) -> RationalMatrix:
    """(pi, phi, lam) -> (M pi, -M phi, C1 pi + C2 phi) on car(1)."""
    M, C1, C2 = (to_rational(v) for v in (M, C1, C2))
    return RationalMatrix([[M, 0, 0], [0, -M, 0], [C1, C2, 0]])


CAR_GENERATORS = {"e_pi": ((1, 0, 0), 1), "e_phi": ((0, 1, 0), 1), "1": ((0, 0, 1), 0)}


def car_representation() -> Representation:
    return Representation(car(1), 2, (D_C, MUL_C, ID2), LAMBDA_DEGREES)


def verify_intertwining_car(params: Sequence, h: Sequence, graded: bool = True) -> dict:
    """Residuals of Delta(w h) - (dw) h - (-1)^{|Delta||w|} w(Delta h), per homogeneous part of Delta.

    The even part of Delta (M, lam) pairs with the even part of the derivation
    (M), the odd part (C1, C2) with the odd part.  With ``graded=False`` the
    sign is dropped, which fails for the odd part.
    """
    M, C1, C2, lam = (to_rational(v) for v in params)
    h = tuple(to_rational(x) for x in h)
    parts = {0: (car_first_order(M, 0, 0, lam).matrix, car_derivation(M, 0, 0)),
             1: (car_first_order(0, C1, C2, 0).matrix, car_derivation(0, C1, C2))}
    residuals = {}
    for p, (delta, der) in parts.items():
        for name, (w, wdeg) in CAR_GENERATORS.items():
            act = car_action(w).matrix
            s = -1 if (graded and p * wdeg % 2) else 1
            lhs = delta @ (act @ h)
            rhs1 = car_action(der @ w).matrix @ h
            rhs2 = act @ (delta @ h)
            res = tuple(a - b - s * c for a, b, c in zip(lhs, rhs1, rhs2))
            residuals[f"{name}/{'odd' if p else 'even'}"] = res
    return {"residuals": residuals, "ok": not any(any(r) for r in residuals.values())}


# -- composites --------------------------------------------------------------

def verify_composite(factors: Sequence, derivations: Sequence, action: Callable, w: Sequence,
                     f: Sequence) -> tuple:
    """Residual of [D_1 ∘ ... ∘ D_k, w] f = sum_i D_1..D_{i-1} (∂_i w) D_{i+1}..D_k f.

    ``factors`` are first-order operators (callables), ``derivations`` their
    paired derivation matrices, ``action`` maps algebra coordinates to an
    operator.  Ungraded commutators only.
    """
    def apply_all(ops, g):
        for op in reversed(ops):
            g = op(g)
        return g

    def sub(u, v):
        n = max(len(u), len(v))
        u = tuple(u) + (ZERO,) * (n - len(u))
        v = tuple(v) + (ZERO,) * (n - len(v))
        return tuple(a - b for a, b in zip(u, v))

    aw = action(w)
    lhs = sub(apply_all(factors, aw(f)), aw(apply_all(factors, f)))
    rhs: tuple = ()
    for i, der in enumerate(derivations):
        term = apply_all(list(factors[:i]) + [action(der @ tuple(w))] + list(factors[i + 1:]), f)
        rhs = sub(rhs, tuple(-x for x in term)) if rhs else tuple(term)
    res = sub(lhs, rhs)
    while res and not res[-1]:
        res = res[:-1]
    return res


def residual_report_json(report: dict, formatter: Callable = format_poly) -> dict:
    return {"ok": report["ok"], "residuals": {k: formatter(v) for k, v in report["residuals"].items()}}

