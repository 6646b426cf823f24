"""Weierstrass cubics over the ring of integers of K and their discriminants.

    y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6

Coefficients may be Python ints (exact over Z) or elements of a local field.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .errors import MinimalityNotCertified, NonUnitScale, PointSearchFailed, SingularCubic
from .local_field import AtLeast, LFElement, LocalField, newton_root
from .serialize import element_json
from .unit_filtration import is_unit_power

Coeff = Union[int, LFElement]


def _is_zero(x: Coeff) -> bool:
    return x == 0 if isinstance(x, int) else x.is_zero()


@dataclass(frozen=True)
class WeierstrassCubic:
    a1: Coeff
    a2: Coeff
    a3: Coeff
    a4: Coeff
    a6: Coeff

    @property
    def a(self) -> tuple:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def b2(self):
        return self.a1 * self.a1 + 4 * self.a2

    @property
    def b4(self):
        return 2 * self.a4 + self.a1 * self.a3

    @property
    def b6(self):
        return self.a3 * self.a3 + 4 * self.a6

    @property
    def b8(self):
        a1, a2, a3, a4, a6 = self.a
        return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4

    @property
    def c4(self):
        return self.b2 * self.b2 - 24 * self.b4

    @property
    def c6(self):
        b2, b4, b6 = self.b2, self.b4, self.b6
        return -(b2 * b2 * b2) + 36 * b2 * b4 - 216 * b6

    @property
    def d(self):
        b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
        return -(b2 * b2 * b8) - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    def check_identities(self):
        b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
        assert _is_zero(4 * b8 - (b2 * b6 - b4 * b4)), "4 b8 = b2 b6 - b4^2 fails"
        c4, c6 = self.c4, self.c6
        assert _is_zero(c6 * c6 - (c4 * c4 * c4 - 1728 * self.d)), "c6^2 = c4^3 - 1728 d fails"

    def to_json(self) -> list:
        return [x if isinstance(x, int) else element_json(x) for x in self.a]


def weierstrass_invariants(a1: Coeff, a2: Coeff, a3: Coeff, a4: Coeff, a6: Coeff) -> WeierstrassCubic:
    c = WeierstrassCubic(a1, a2, a3, a4, a6)
    c.check_identities()
    if _is_zero(c.d):
        raise SingularCubic("discriminant vanishes at working precision")
    return c


def transform_cubic(c: WeierstrassCubic, u: Coeff, r: Coeff, s: Coeff, t: Coeff) -> WeierstrassCubic:
    """Coefficients after x = u^2 x' + r, y = u^3 y' + u^2 s x' + t."""
    if isinstance(u, int):
        if u not in (1, -1):
            raise NonUnitScale("integer scale must be +-1 to stay integral")
        inv = u
    else:
        if not u.is_unit():
            raise NonUnitScale("u must be a unit")
        inv = u.inverse()
    a1, a2, a3, a4, a6 = c.a
    n1 = a1 + 2 * s
    n2 = a2 - s * a1 + 3 * r - s * s
    n3 = a3 + r * a1 + 2 * t
    n4 = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t
    n6 = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1
    out = WeierstrassCubic(
        inv * n1,
        inv**2 * n2,
        inv**3 * n3,
        inv**4 * n4,
        inv**6 * n6,
    )
    out.check_identities()
    return out


# ---------------------------------------------------------------------------
# classes in K^x / o^x^12


@dataclass
class DiscClass12:
    representative: LFElement
    valuation: int

    def same_class(self, other: "DiscClass12") -> bool:
        if self.valuation != other.valuation:
            return False
        K = self.representative.K
        a = self.representative.div_pi(self.valuation)
        b = other.representative.div_pi(other.valuation)
        return is_unit_power(K, a * b.inverse(), 12)

    def to_json(self) -> dict:
        return {"representative": element_json(self.representative), "valuation": self.valuation}


def _as_element(K: LocalField, x: Coeff) -> LFElement:
    return K(x) if isinstance(x, int) else x


def disc_class(K: LocalField, c: WeierstrassCubic) -> DiscClass12:
    d = _as_element(K, c.d)
    v = d.valuation()
    if isinstance(v, AtLeast):
        raise SingularCubic("discriminant vanishes at working precision")
    if v >= 12:
        raise MinimalityNotCertified(f"v(d) = {v} >= 12; minimality needs Tate's algorithm")
    return DiscClass12(d, int(v))


# ---------------------------------------------------------------------------
# realising a unit discriminant with good reduction


def _residue_sqrt(r):
    for x in r.field.elements():
        if x * x == r:
            return x
    return None


def realize_disc(K: LocalField, delta: LFElement) -> WeierstrassCubic:
    """An integral cubic with discriminant exactly delta (a unit) at working precision."""
    if not delta.is_unit():
        raise NonUnitScale("delta must be a unit")
    p = K.p
    prec = delta.prec
    one = K.one.with_prec(K.hi)
    zero = K.zero.with_prec(K.hi)
    if p in (2, 3):
        # y^2 + xy = x^3 + a6 has d = -a6 - 432 a6^2
        f = [delta, one, 432 * one]
        a6 = newton_root(f, -delta, prec)
        cubic = WeierstrassCubic(one, zero, zero, zero, a6)
    else:
        # a point (xi, eta) on eta^2 = xi^3 - 1728 delta gives a4 = -xi/48, a6 = -eta/864
        target = 1728 * delta
        point = None
        for xb in K.residue.elements():
            rhs = xb * xb * xb - target.residue()
            if rhs.is_zero():
                continue
            sq = _residue_sqrt(rhs)
            if sq is not None:
                xi = K.lift(xb, prec)
                rhs_full = xi * xi * xi - target
                eta = newton_root([-rhs_full, zero, one], K.lift(sq, prec), prec)
                point = (xi, eta)
                break
        if point is None:
            for xb in K.residue.elements():
                if (xb * xb * xb - target.residue()).is_zero():
                    xi = newton_root([-target, zero, zero, one], K.lift(xb, prec), prec)
                    point = (xi, K.zero.with_prec(prec))
                    break
        if point is None:
            raise PointSearchFailed("no residue point on the auxiliary curve")
        xi, eta = point
        a4 = -xi * K(48).inverse()
        a6 = -eta * K(864).inverse()
        cubic = WeierstrassCubic(zero, zero, zero, a4, a6)
    cubic.check_identities()
    d = cubic.d
    if not (d - delta).with_prec(prec).is_zero():
        raise PointSearchFailed("realised discriminant differs from delta")  # pragma: no cover
    return cubic
