"""Degree-l Kummer extensions K(mu^(1/l)) of a local field K.

Lines of K^x / K^x^l are classified by their level m; the break, the
discriminant valuation and a uniformiser of the extension follow from m.
Independent routes (Galois action on an explicit uniformiser, an explicit
unramified extension for the pairing, exhaustive line enumeration) check
the closed forms.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import (
    DegenerateLines,
    KummerHypothesisFails,
    LiftFailed,
    NotALine,
    NotDeepEnough,
    NotDivisible,
    TooLarge,
    ZeroInput,
)
from .finite_field import FiniteField, FqPoly, absolute_trace, poly_roots
from .local_field import AtLeast, LFElement, LocalField, ext_norm, newton_root, poly_mulmod
from .serialize import element_json
from .unit_filtration import TRIVIAL, filtration_dims, level_with_witness


# ---------------------------------------------------------------------------
# hypotheses and roots of unity


def kummer_hypothesis(K: LocalField, l: int) -> bool:
    if l == K.p:
        return bool(K.mu_p)
    return (K.q - 1) % l == 0


def _require(K: LocalField, l: int):
    if not kummer_hypothesis(K, l):
        raise KummerHypothesisFails(f"K has no primitive {l}-th root of unity")


def root_of_unity(K: LocalField, l: int) -> LFElement:
    """A primitive l-th root of unity in K (the stored one for l = p)."""
    _require(K, l)
    if l == K.p:
        return K.zeta
    for r in K.residue.nonzero_elements():
        if r != 1 and r**l == 1:
            return K.teichmuller(r, K.hi)
    raise KummerHypothesisFails("no residue of order l")  # pragma: no cover


def level_cap(K: LocalField, l: int) -> int:
    """l * e1 for l = p, 0 for tame l."""
    return K.pe1 if l == K.p else 0


# ---------------------------------------------------------------------------
# line reports


@dataclass
class UniformiserRecipe:
    """How to write a uniformiser of L = K(mu^(1/l)).

    kind is RootOfGenerator (the l-th root of ``generator``, which has
    valuation 1), XiMinusRoot ((xi - root)^x * pi^y with m x + l y = 1) or
    BaseUniformiser (L is unramified and pi stays a uniformiser).
    """

    kind: str
    generator: LFElement
    xi: Optional[LFElement] = None
    x: int = 0
    y: int = 0

    def to_json(self) -> dict:
        out = {"kind": self.kind, "generator": element_json(self.generator)}
        if self.kind == "XiMinusRoot":
            out.update({"xi": element_json(self.xi), "x": self.x, "y": self.y})
        return out


@dataclass
class LineReport:
    l: int
    m: int
    convention: str  # "units" (o^x / o^x^l) or "K^x" (K^x / K^x^l)
    is_unramified: bool
    t: int
    v_disc: int
    recipe: UniformiserRecipe
    precision_used: int

    def to_json(self) -> dict:
        return {
            "l": self.l,
            "m": self.m,
            "m_convention": self.convention,
            "is_unramified": self.is_unramified,
            "t": self.t,
            "v_disc": self.v_disc,
            "uniformiser_recipe": self.recipe.to_json(),
            "precision_used": self.precision_used,
        }


def _normalize_valuation(K: LocalField, l: int, mu: LFElement) -> tuple[LFElement, int]:
    """A generator of the same line with valuation 0 or 1, and that valuation."""
    v = mu.valuation()
    if isinstance(v, AtLeast):
        raise ZeroInput("0 does not define a Kummer line")
    if v % l == 0:
        return mu.div_pi(v), 0
    a = pow(v, -1, l)
    w = mu**a
    return w.div_pi(a * v - 1), 1


def classify_line(K: LocalField, l: int, mu: LFElement) -> LineReport:
    _require(K, l)
    nmu, v = _normalize_valuation(K, l, mu)
    cap = level_cap(K, l)
    if v == 1:
        t = cap
        v_disc = (l - 1) * (1 + t)
        recipe = UniformiserRecipe("RootOfGenerator", nmu)
        return LineReport(l, 0, "K^x", False, t, v_disc, recipe, nmu.prec)
    m, xi = level_with_witness(K, l, nmu)
    if m is TRIVIAL:
        raise NotALine("the generator is an l-th power")
    if l != K.p or m == cap:
        recipe = UniformiserRecipe("BaseUniformiser", nmu, xi)
        return LineReport(l, m, "units", True, -1, 0, recipe, nmu.prec)
    x = pow(m, -1, l)
    y = (1 - m * x) // l
    t = cap - m
    recipe = UniformiserRecipe("XiMinusRoot", nmu, xi, x, y)
    return LineReport(l, m, "units", False, t, (l - 1) * (1 + t), recipe, nmu.prec)


def verify_report(K: LocalField, l: int, report: LineReport) -> bool:
    """Recheck a report from its witnesses by plain arithmetic."""
    r = report.recipe
    cap = level_cap(K, l)
    gen = r.generator
    if r.kind == "RootOfGenerator":
        return gen.valuation() == 1 and report.t == cap and report.v_disc == (l - 1) * (1 + cap)
    if r.kind == "BaseUniformiser":
        if l != K.p:
            res = gen.residue()
            return res ** ((K.q - 1) // l) != 1 and report.t == -1 and report.v_disc == 0
        return (r.xi**l - gen).valuation() == cap and report.t == -1 and report.v_disc == 0
    m = report.m
    return (
        (r.xi**l - gen).valuation() == m
        and m * r.x + l * r.y == 1
        and report.t == cap - m
        and report.v_disc == (l - 1) * (1 + report.t)
    )


# ---------------------------------------------------------------------------
# the break from the Galois action on a uniformiser


def _poly_pow_mod(a: list, n: int, g: list) -> list:
    K = g[0].K
    result = [K.one.with_prec(K.hi)] + [K.zero.with_prec(K.hi)] * (len(g) - 2)
    for _ in range(n):
        result = poly_mulmod(result, a, g)
    return result


def break_oracle(K: LocalField, l: int, mu: LFElement) -> int:
    """The break t = v_L(sigma(Lambda) - Lambda) - 1 for a uniformiser Lambda of L.

    L = K[x]/(x^l - mu') with sigma(x) = zeta x, and v_L(a(x)) = v_K(N(a(x)))
    because L|K is totally ramified.
    """
    report = classify_line(K, l, mu)
    if report.is_unramified:
        raise ValueError("break_oracle needs a ramified line")
    r = report.recipe
    gen = r.generator
    zeta = root_of_unity(K, l)
    zero = K.zero.with_prec(K.hi)
    g = [-gen] + [zero] * (l - 1) + [K.one.with_prec(K.hi)]
    xvar = [zero, K.one.with_prec(K.hi)] + [zero] * (l - 2)
    if r.kind == "RootOfGenerator":
        lam = xvar
        slam = [zero, zeta] + [zero] * (l - 2)
        shift = 0
    else:
        base = [r.xi, -K.one.with_prec(K.hi)] + [zero] * (l - 2)
        sbase = [r.xi, -zeta] + [zero] * (l - 2)
        lam = _poly_pow_mod(base, r.x, g)
        slam = _poly_pow_mod(sbase, r.x, g)
        shift = l * r.y  # v_L(pi^y)
    v_lam = ext_norm(g, lam).valuation() + shift
    if v_lam != 1:
        raise AssertionError(f"recipe element has v_L = {v_lam}, expected 1")
    diff = [a - b for a, b in zip(slam, lam)]
    nv = ext_norm(g, diff).valuation()
    if isinstance(nv, AtLeast):
        raise AssertionError("precision too low to see sigma(Lambda) - Lambda")
    return int(nv) + shift - 1


# ---------------------------------------------------------------------------
# unramified line and pairing


def _nontrivial_class_rep(F: FiniteField):
    """Least residue with nonzero absolute trace (generates k / wp(k))."""
    return next(a for a in F.elements() if absolute_trace(a) != 0)


def unramified_line_generator(K: LocalField, l: int) -> LFElement:
    _require(K, l)
    if l != K.p:
        r = next(x for x in K.residue.nonzero_elements() if x ** ((K.q - 1) // l) != 1)
        return K.teichmuller(r)
    u = K.lift(_nontrivial_class_rep(K.residue))
    return (1 - u * K.p * (1 - K.zeta)).with_prec(K.prec)


@dataclass
class PairingValue:
    exponent: int
    value: LFElement

    def to_json(self) -> dict:
        return {"exponent": self.exponent, "value": element_json(self.value)}


def _check_deep(K: LocalField, eta: LFElement):
    _require(K, K.p)
    if (1 - eta).valuation() < K.pe1:
        raise NotDeepEnough(f"v(1 - eta) must be at least {K.pe1}")


def kummer_pairing(K: LocalField, eta: LFElement, a: int) -> PairingValue:
    """<phi^a, eta> for phi the Frobenius of the unramified degree-p extension."""
    _check_deep(K, eta)
    p = K.p
    c = (1 - eta) / (K(p) * (1 - K.zeta))
    s = absolute_trace(c.residue())
    k = (a * s) % p
    return PairingValue(k, (K.zeta**k).with_prec(K.prec))


class UnramifiedExtension:
    """L = K with residue field enlarged to degree n*f, same Eisenstein polynomial.

    The embedding sends y_K to a Hensel lift of a root of the residue modulus
    of K; ``frobenius`` is the generator of Gal(L|K) fixing pi.
    """

    def __init__(self, K: LocalField, n: int):
        self.K = K
        p, f = K.p, K.f
        self.n = n
        F = FiniteField(p, n * f)
        # W_L as an e=1 field to lift roots of integer polynomials
        W = LocalField(p, n * f, [-p, 1], prec_pi=K.M + 8, _check_mu=False)
        self.W = W
        gK = [W(c, W.prec) for c in K.residue.modulus]
        gbar = FqPoly(F, [F(c) for c in K.residue.modulus])
        root = min(poly_roots(gbar), key=lambda r: r.coeffs)
        self.Y = newton_root(gK, W.lift(root, W.prec), W.prec) if f > 1 else W.one
        self._ypow = [W.one.with_prec(W.prec)]
        for _ in range(1, f):
            self._ypow.append(self._ypow[-1] * self.Y)
        eis = [self._map_w(c) for c in K.eis]
        self.L = LocalField(p, n * f, eis, prec_pi=K.prec)
        L = self.L
        # Frobenius over K: y_L -> the root of the L-modulus congruent to y_L^q
        GL = [L(c, L.hi) for c in L.residue.modulus]
        gen = L.residue.gen
        z0 = L.lift(gen**K.q, L.hi)
        self.frob_y = newton_root(GL, z0, L.hi) if n * f > 1 else L.one
        self._frob_pows = [L.one.with_prec(L.hi)]
        for _ in range(1, n * f):
            self._frob_pows.append(self._frob_pows[-1] * self.frob_y)

    def _map_w(self, w) -> list:
        acc = self.W.zero.with_prec(self.W.prec)
        for j, cj in enumerate(w):
            if cj:
                acc = acc + self._ypow[j] * cj
        return list(acc.c)

    def embed(self, x: LFElement) -> LFElement:
        L = self.L
        vec = []
        for layer in x.layers():
            vec.extend(self._map_w(layer))
        return L.make(vec, x.prec)

    def frobenius(self, z: LFElement) -> LFElement:
        L = self.L
        fl = L.f
        acc = L.zero.with_prec(z.prec)
        for i, layer in enumerate(z.layers()):
            w = L.zero.with_prec(L.hi)
            for j, c in enumerate(layer):
                if c:
                    w = w + self._frob_pows[j] * c
            acc = acc + w * L.pi_power(i)
        return acc.with_prec(z.prec)


def pairing_oracle(K: LocalField, eta: LFElement, ext: Optional[UnramifiedExtension] = None) -> PairingValue:
    """sigma(xi)/xi for xi^p = eta in the unramified degree-p extension."""
    _check_deep(K, eta)
    p = K.p
    ext = ext or UnramifiedExtension(K, p)
    L = ext.L
    eta_L = ext.embed(eta)
    xi = L.pth_root(eta_L)
    if xi is None:
        raise LiftFailed("eta has no p-th root in the unramified extension")
    ratio = ext.frobenius(xi) / xi
    zeta_L = ext.embed(K.zeta)
    prec = min(ratio.prec, zeta_L.prec)
    for k in range(p):
        if (ratio - zeta_L**k).with_prec(prec).is_zero():
            return PairingValue(k, (K.zeta**k).with_prec(K.prec))
    raise LiftFailed("sigma(xi)/xi is not a p-th root of unity at working precision")


# ---------------------------------------------------------------------------
# counting lines by break


def delta(l: int, n: int) -> int:
    """Number of lines in an (n+1)-dimensional F_l-space."""
    return (l ** (1 + n) - 1) // (l - 1)


def census_rows(l: int, e: int, f: int) -> list[tuple[int, int]]:
    """(t_i, n_i) for a field with ramification e, residue degree f and mu_l inside."""
    p = l
    e1 = e // (p - 1)
    ts = [t for t in range(1, p * e1) if t % p]
    rows = []
    for i, t in enumerate(ts, start=1):
        rows.append((t, sum(p**k for k in range((i - 1) * f + 1, i * f + 1))))
    rows.append((p * e1, p ** (1 + e * f)))
    return rows


@dataclass
class BreakCensus:
    l: int
    rows: list
    unramified: int
    total: int
    exhaustive: Optional[bool] = None

    def to_json(self) -> dict:
        return {
            "l": self.l,
            "rows": [list(r) for r in self.rows],
            "unramified": self.unramified,
            "total_lines": self.total,
            "exhaustively_checked": self.exhaustive,
        }


def line_basis(K: LocalField, l: int) -> list[LFElement]:
    """An F_l-basis of K^x / K^x^l."""
    _require(K, l)
    basis = [K.pi.with_prec(K.prec)]
    if l != K.p:
        basis.append(unramified_line_generator(K, l))
        return basis
    for n in range(1, K.pe1):
        if n % K.p:
            for j in range(K.f):
                w = [0] * K.f
                w[j] = 1
                basis.append((K.one + K.w_element(w) * K.pi_power(n)).with_prec(K.prec))
    basis.append(unramified_line_generator(K, l))
    return basis


def iter_lines(K: LocalField, l: int):
    """Yield (coefficient vector, generator) for every line of K^x / K^x^l."""
    basis = line_basis(K, l)
    dim = len(basis)
    for lead in range(dim):
        for tail in itertools.product(range(l), repeat=dim - lead - 1):
            vec = (0,) * lead + (1,) + tail
            g = K.one
            for b, c in zip(basis, vec):
                if c:
                    g = g * b**c
            yield vec, g.with_prec(K.prec)


def census_by_filtration(K: LocalField, l: int) -> list[tuple[int, int]]:
    """n_t as differences of line counts of the filtration steps."""
    table = filtration_dims(K, l)
    cap = level_cap(K, l)

    def dim_at(n: int) -> int:
        return table.total_dim if n <= 0 else table.dim(n)

    rows = []
    for t in range(1, cap + 1):
        lo = (l ** dim_at(cap - t + 1) - 1) // (l - 1)
        hi = (l ** dim_at(cap - t) - 1) // (l - 1)
        if hi > lo:
            rows.append((t, hi - lo))
    return rows


def count_by_break(K: LocalField, l: int, exhaustive: Optional[bool] = None, limit: int = 10**5) -> BreakCensus:
    _require(K, l)
    if l != K.p:
        rows = [(0, l)]
        total = l + 1
    else:
        rows = census_rows(l, K.e, K.f)
        total = delta(l, 1 + K.d)
        assert census_by_filtration(K, l) == rows
        assert sum(n for _, n in rows) + 1 == total
    census = BreakCensus(l, rows, 1, total)
    if exhaustive is None:
        exhaustive = total <= limit
    if exhaustive:
        if total > limit:
            raise TooLarge(f"{total} lines exceed the enumeration limit")
        counts: dict[int, int] = {}
        for _, g in iter_lines(K, l):
            rep = classify_line(K, l, g)
            counts[rep.t] = counts.get(rep.t, 0) + 1
        got = sorted((t, n) for t, n in counts.items() if t >= 0)
        if got != rows or counts.get(-1, 0) != 1:
            raise AssertionError(f"exhaustive census {counts} disagrees with {rows}")
        census.exhaustive = True
    return census


def mass_from_rows(l: int, f: int, rows) -> Fraction:
    return sum((Fraction(n, l ** ((l - 1) * t * f)) for t, n in rows), Fraction(0))


def mass_contribution(K: LocalField, l: int) -> Fraction:
    census = count_by_break(K, l, exhaustive=False)
    return mass_from_rows(l, K.f, census.rows)


def base_change_break(t_prime: int, s: int) -> int:
    if s < 1 or t_prime % s:
        raise NotDivisible(f"{s} does not divide {t_prime}")
    return t_prime // s


def compositum_is_unramified(K: LocalField, l: int, mu1: LFElement, mu2: LFElement) -> bool:
    """Does the plane spanned by two ramified lines contain the unramified line?"""
    combos = [(1, b) for b in range(l)] + [(0, 1)]
    found = False
    for a, b in combos:
        g = mu1**a * mu2**b if a else mu2
        try:
            rep = classify_line(K, l, g)
        except NotALine:
            raise DegenerateLines("the two generators span a single line")
        if rep.is_unramified:
            if (a, b) in ((1, 0), (0, 1)):
                raise DegenerateLines("one of the lines is the unramified line")
            found = True
    return found


# ---------------------------------------------------------------------------
# Gal(M|K) for M the compositum of all degree-p Kummer extensions


@dataclass
class GaloisFiltration:
    upper: list  # (n, dim G^n)
    upper_breaks: list
    lower: list  # (i, dim G_i) up to the last nontrivial index
    different_sum: int
    v_disc_M: int

    def to_json(self) -> dict:
        return {
            "upper": [list(r) for r in self.upper],
            "upper_breaks": self.upper_breaks,
            "lower": [list(r) for r in self.lower],
            "different_exponent": self.different_sum,
            "v_disc_M": self.v_disc_M,
        }


def galois_filtration_M(K: LocalField) -> GaloisFiltration:
    p = K.p
    _require(K, p)
    table = filtration_dims(K, p)
    T = table.total_dim
    top = K.pe1

    def ubar(n: int) -> int:
        return T if n <= 0 else table.dim(n)

    upper = [(n, T - ubar(top - n + 1)) for n in range(1, top + 2)]
    g = dict(upper)
    g[0] = T - 1
    breaks = [-1] + [n for n in range(1, top + 1) if g[n] > g[n + 1]]
    # Herbrand: psi(n) = sum_{j <= n} (G^0 : G^j); G_i = G^n for psi(n-1) < i <= psi(n)
    psi = [0]
    for n in range(1, top + 2):
        psi.append(psi[-1] + p ** (g[0] - g[n]))
    lower = [(0, g[0])]
    S = p ** g[0] - 1
    for n in range(1, top + 2):
        for i in range(psi[n - 1] + 1, psi[n] + 1):
            if g[n]:
                lower.append((i, g[n]))
            S += p ** g[n] - 1
    # M is unramified of degree p over the inertia field
    return GaloisFiltration(upper, breaks, lower, S, p * S)
