"""Discriminants: unramified extensions, lifts from characteristic 2, towers.

Classes of unit discriminants live in o^x / o^x^2; for p = 2 the nontrivial
class of an unramified extension sits on the line U_{2e}, which is identified
with k / wp(k) through (eta - 1) / 4.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .errors import ChainMismatch, ConditionFailed, Inseparable, NotALine
from .finite_field import FqPoly, absolute_trace, ff_poly_disc
from .kummer import LineReport, _nontrivial_class_rep, classify_line
from .local_field import LFElement, LocalField, ext_norm
from .serialize import element_json
from .unit_filtration import TRIVIAL, Level, unit_level


# ---------------------------------------------------------------------------
# unramified extensions


@dataclass
class DiscClass:
    representative: LFElement
    trivial: bool
    level_certificate: Level

    def to_json(self) -> dict:
        return {
            "representative": element_json(self.representative),
            "trivial": self.trivial,
            "level_certificate": repr(self.level_certificate)
            if self.level_certificate is TRIVIAL
            else self.level_certificate,
        }


def nontrivial_unramified_class(K: LocalField) -> LFElement:
    """1 + 4 omega for p = 2, a Teichmuller non-square for odd p."""
    if K.p == 2:
        omega = K.lift(_nontrivial_class_rep(K.residue))
        return 1 + 4 * omega
    r = next(x for x in K.residue.nonzero_elements() if x ** ((K.q - 1) // 2) != 1)
    return K.teichmuller(r)


def unramified_disc(K: LocalField, r: int) -> DiscClass:
    """Class of the discriminant of the unramified extension of degree r."""
    if r < 1:
        raise ValueError("degree must be positive")
    if r % 2:
        return DiscClass(K.one, True, TRIVIAL)
    rep = nontrivial_unramified_class(K)
    level = unit_level(K, 2, rep)
    expected = 2 * K.e if K.p == 2 else 0
    assert level == expected, f"class representative has level {level}, expected {expected}"
    return DiscClass(rep, False, level)


def same_square_class(K: LocalField, a: LFElement, b: LFElement) -> bool:
    """Whether the units a and b agree modulo squares of units."""
    return unit_level(K, 2, a * b.inverse()) is TRIVIAL


# ---------------------------------------------------------------------------
# integer discriminants (exact, independent of the local arithmetic)


def _int_det(rows: list[list[int]]) -> int:
    """Bareiss fraction-free determinant."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[-1][-1]


def int_poly_disc(coeffs: Sequence[int]) -> int:
    """Discriminant of a monic integer polynomial (little-endian)."""
    n = len(coeffs) - 1
    if n < 1:
        raise ValueError("degree must be positive")
    if n == 1:
        return 1
    deriv = [i * c for i, c in enumerate(coeffs)][1:]
    a, b = list(reversed(coeffs)), list(reversed(deriv))
    size = 2 * n - 1
    rows = []
    for i in range(n - 1):
        rows.append([0] * i + a + [0] * (size - len(a) - i))
    for i in range(n):
        rows.append([0] * i + b + [0] * (size - len(b) - i))
    res = _int_det(rows)
    return (-1) ** (n * (n - 1) // 2) * res


# ---------------------------------------------------------------------------
# characteristic 2 discriminant through a lift


def disc_class_via_lift(g: FqPoly) -> int:
    """Class in k / wp(k) = F_2 of the discriminant of the lift of g.

    g is lifted coefficientwise to the unramified extension W of Z_2 with
    residue field k; its discriminant D is a unit lying in U_2 times a square,
    and the class of (D - 1)/4 mod wp(k) is read off after removing squares.
    """
    F = g.field
    if F.p != 2:
        raise ValueError("disc_class_via_lift is defined in characteristic 2")
    if ff_poly_disc(g).is_zero():
        raise Inseparable("polynomial has a repeated root")
    g = g.monic()
    n = g.degree
    if n <= 1:
        return 0
    K = LocalField(2, F.f, [-2, 1], unram_modulus=F.modulus)
    G = [K.lift(c, K.hi) for c in g.coeffs]
    dG = [c * i for i, c in enumerate(G)][1:]
    D = ext_norm(G, dG)
    if (n * (n - 1) // 2) % 2:
        D = -D
    if not D.is_unit():
        raise Inseparable("lifted discriminant is not a unit")
    red = K.reduce_by_pth_powers(D, 3)
    if not red.stuck:
        return 0
    if red.level != 2:
        raise ConditionFailed(f"lifted discriminant has level {red.level}, expected at least 2")
    b = (red.w - 1).digit(2)
    return absolute_trace(b)


# ---------------------------------------------------------------------------
# splitting type and the compositum test


def splitting_type(K: LocalField, l: int, mu: LFElement) -> str:
    try:
        report = classify_line(K, l, mu)
    except NotALine:
        return "Split"
    return "Inert" if report.is_unramified else "Ramified"


# ---------------------------------------------------------------------------
# towers


@dataclass
class Link:
    field: LocalField
    l: int
    mu: Union[int, LFElement]

    def generator(self) -> LFElement:
        return self.field(self.mu) if isinstance(self.mu, int) else self.mu


@dataclass
class PipelineResult:
    total: int
    reports: list
    cumulative: list

    def to_json(self) -> dict:
        return {
            "v_disc_total": self.total,
            "cumulative": self.cumulative,
            "links": [r.to_json() for r in self.reports],
        }


def _extension_shape(K: LocalField, l: int, report: LineReport) -> tuple[int, int]:
    if report.is_unramified:
        return K.e, K.f * l
    return K.e * l, K.f


def _check_chain(links: Sequence[Link], reports: Sequence[LineReport]):
    for i in range(len(links) - 1):
        K, nxt = links[i].field, links[i + 1].field
        e, f = _extension_shape(K, links[i].l, reports[i])
        if (nxt.p, nxt.e, nxt.f) != (K.p, e, f):
            raise ChainMismatch(
                f"link {i + 1} has (p, e, f) = {(nxt.p, nxt.e, nxt.f)}, "
                f"but the extension built at link {i} has {(K.p, e, f)}"
            )


def _tower_v(links: Sequence[Link], reports: Sequence[LineReport], lo: int, hi: int, split) -> int:
    """v over links[lo].field of the discriminant of the top of links[lo:hi].

    Splits the tower at ``split(lo, hi)`` and applies d_{L|K} = d_{M|K}^[L:M] N(d_{L|M}).
    """
    if hi - lo == 1:
        return reports[lo].v_disc
    mid = split(lo, hi)
    lower = _tower_v(links, reports, lo, mid, split)
    upper = _tower_v(links, reports, mid, hi, split)
    degree = 1
    for k in range(mid, hi):
        degree *= links[k].l
    f_rel = links[mid].field.f // links[lo].field.f
    return degree * lower + f_rel * upper


def relative_disc_pipeline(chain: Sequence[Link]) -> PipelineResult:
    links = list(chain)
    if not links:
        raise ValueError("empty chain")
    reports = [classify_line(k.field, k.l, k.generator()) for k in links]
    _check_chain(links, reports)
    f0 = links[0].field.f
    total = 0
    cumulative = []
    for link, rep in zip(links, reports):
        total = link.l * total + (link.field.f // f0) * rep.v_disc
        cumulative.append(total)
    return PipelineResult(total, reports, cumulative)


_SPLITS = {
    "halves": lambda lo, hi: (lo + hi) // 2,
    "bottom": lambda lo, hi: lo + 1,
    "top": lambda lo, hi: hi - 1,
}


def pipeline_regrouped(chain: Sequence[Link], grouping: str = "halves") -> int:
    """The same total with the tower bracketed differently.

    ``bottom`` peels the lowest link first (d of the upper part is computed over
    the first extension), ``top`` peels the highest link, ``halves`` bisects.
    """
    links = list(chain)
    reports = [classify_line(k.field, k.l, k.generator()) for k in links]
    _check_chain(links, reports)
    return _tower_v(links, reports, 0, len(links), _SPLITS[grouping])


def arch_disc_sign(n: int, h: int) -> int:
    """Sign of the discriminant of a degree-n real algebra with h irreducible factors."""
    if n < 1 or not 1 <= h <= n:
        raise ValueError("need n >= 1 and 1 <= h <= n")
    return (-1) ** (n - h)
