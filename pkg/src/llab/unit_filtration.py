"""The filtration U_n = 1 + p^n of the units and its image in K^x / K^x^l.

Structured tests reduce a unit by l-th powers one graded piece at a time;
the brute-force helpers enumerate (o / p^n)^x and serve as oracles.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Optional, Union

from .errors import NotAUnit, PrecisionTooLow, TooLarge
from .exact_arith import val_p
from .finite_field import FqElement, _prime_factors
from .local_field import LFElement, LocalField


class _Trivial:
    """Sentinel level of a unit that is an l-th power."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Trivial"

    def __reduce__(self):
        return (_Trivial, ())


TRIVIAL = _Trivial()
Level = Union[int, _Trivial]


def _residue_is_lth_power(r: FqElement, l: int) -> bool:
    q = r.field.q
    return r ** ((q - 1) // gcd(l, q - 1)) == 1


def _check_unit(u: LFElement):
    if not u.is_unit():
        raise NotAUnit("expected a unit of the ring of integers")


def is_lth_power_mod(K: LocalField, l: int, u: LFElement, n: int) -> bool:
    """Is the image of the unit u in (o/p^n)^x an l-th power?"""
    _check_unit(u)
    if n < 1 or n > u.prec:
        raise PrecisionTooLow(f"cannot decide modulo pi^{n} with precision {u.prec}")
    if l != K.p:
        # 1-units are uniquely l-divisible, only the residue matters
        return _residue_is_lth_power(u.residue(), l)
    return not K.reduce_by_pth_powers(u, n).stuck


def level_with_witness(K: LocalField, l: int, u: LFElement) -> tuple[Level, Optional[LFElement]]:
    """Level m of the class of u together with xi such that v(xi^l - u) = m."""
    _check_unit(u)
    if l != K.p:
        if _residue_is_lth_power(u.residue(), l):
            return TRIVIAL, None
        return 0, None
    stop = K.pe1_floor + 1
    if u.prec < stop:
        raise PrecisionTooLow(f"need precision at least {stop}")
    red = K.reduce_by_pth_powers(u, stop)
    if not red.stuck:
        return TRIVIAL, red.xi
    return red.level, red.xi


def unit_level(K: LocalField, l: int, u: LFElement) -> Level:
    return level_with_witness(K, l, u)[0]


# ---------------------------------------------------------------------------
# dimension tables


@dataclass
class FiltrationTable:
    l: int
    entries: list  # (n, dim of graded piece n, dim of U-bar_n)
    total_dim: int

    def dim(self, n: int) -> int:
        """dim of U-bar_n (0 beyond the table)."""
        for m, _, dm in self.entries:
            if m == n:
                return dm
        return 0 if n > self.entries[-1][0] else self.entries[0][2]

    def to_json(self) -> dict:
        return {
            "l": self.l,
            "total_dim": self.total_dim,
            "rows": [{"n": n, "graded": g, "dim": dm} for n, g, dm in self.entries],
        }


def graded_dim(K: LocalField, n: int) -> int:
    """dim over F_p of U-bar_n / U-bar_{n+1} for l = p and n >= 1."""
    p = K.p
    if n * (p - 1) > p * K.e:
        return 0
    if n * (p - 1) == p * K.e:
        return 1 if K.mu_p else 0
    if n % p == 0:
        return 0
    return K.f


def filtration_dims(K: LocalField, l: int) -> FiltrationTable:
    if l != K.p:
        g0 = 1 if (K.q - 1) % l == 0 else 0
        return FiltrationTable(l, [(0, g0, g0), (1, 0, 0)], 1 + g0)
    top = K.pe1_floor + 1
    graded = {n: graded_dim(K, n) for n in range(1, top + 1)}
    graded[0] = 0
    entries = []
    for n in range(top + 1):
        entries.append((n, graded[n], sum(graded[k] for k in range(max(n, 1), top + 1))))
    return FiltrationTable(l, entries, 1 + entries[0][2])


def filtration_dims_bruteforce(K: LocalField) -> dict[int, int]:
    """dim U-bar_n for l = p via W_n / (W_n cap W_0^p) with W_0 = (o/p^{B})^x."""
    p = K.p
    B = K.pe1_floor + 1
    if K.q**B > 1 << 16:
        raise TooLarge("ring too large for enumeration")
    units = list(K.elements_mod(B, units_only=True))
    powers = {(x**p).key() for x in units}
    out = {}
    for n in range(B + 1):
        Wn = [x for x in units if n == 0 or (x - 1).valuation() >= n]
        inter = sum(1 for x in Wn if x.key() in powers)
        ratio = len(Wn) // inter
        out[n] = val_p(ratio, p)[0]
    return out


def lth_powers_mod(K: LocalField, l: int, n: int) -> set:
    """Keys of all l-th powers in (o/p^n)^x, by enumeration."""
    if K.q**n > 1 << 16:
        raise TooLarge("ring too large for enumeration")
    return {(x**l).key() for x in K.elements_mod(n, units_only=True)}


# ---------------------------------------------------------------------------
# the graded p-power maps


@dataclass
class RhoAnalysis:
    lambda_n: int
    ker_order: int
    coker_order: int


def _h(K: LocalField, n: int, a: FqElement) -> FqElement:
    p = K.p
    if n * (p - 1) < K.e:
        return a**p
    if n * (p - 1) == K.e:
        return a**p - K.eps_bar * a
    return -K.eps_bar * a


def rho_analysis(K: LocalField, n: int) -> RhoAnalysis:
    """Kernel and cokernel of U_n/U_{n+1} -> U_lambda/U_{lambda+1}, x -> x^p.

    Computed by raising 1 + a pi^n to the p-th power for every a in k and
    reading the coefficient at level lambda(n); the map h is checked against it.
    """
    if n < 1:
        raise ValueError("n must be positive")
    p = K.p
    lam = min(p * n, n + K.e)
    prec = lam + 1
    image = set()
    kernel = 0
    pin = K.pi_power(n)
    for a in K.residue.elements():
        y = (K.one + K.lift(a) * pin).with_prec(prec)
        z = y**p - 1
        assert z.valuation() >= lam
        got = z.digit(lam)
        assert got == _h(K, n, a), "graded p-power map disagrees with h"
        image.add(got.coeffs)
        if got.is_zero():
            kernel += 1
    return RhoAnalysis(lam, kernel, K.q // len(image))


# ---------------------------------------------------------------------------
# unit groups of finite quotients


@dataclass
class GroupStructure:
    elementary_divisors: list
    generators: list = field(default_factory=list)

    @property
    def order(self) -> int:
        out = 1
        for d in self.elementary_divisors:
            out *= d
        return out

    @property
    def invariant_factors(self) -> list[int]:
        """Cyclic factors d_1 | d_2 | ... (CRT-merged elementary divisors)."""
        by_prime: dict[int, list[int]] = {}
        for d in self.elementary_divisors:
            by_prime.setdefault(_prime_factors(d)[0], []).append(d)
        for powers in by_prime.values():
            powers.sort(reverse=True)
        width = max((len(v) for v in by_prime.values()), default=0)
        out = []
        for i in range(width):
            m = 1
            for powers in by_prime.values():
                if i < len(powers):
                    m *= powers[i]
            out.append(m)
        return sorted(out)


def _partition_from_counts(counts: list[int]) -> list[int]:
    """Exponents lambda_i from c_k = log |G[l^k]|."""
    parts = []
    prev = 0
    number_ge = []
    for c in counts:
        number_ge.append(c - prev)
        prev = c
    # number_ge[k-1] = #{i : lambda_i >= k}
    for k in range(len(number_ge)):
        nxt = number_ge[k + 1] if k + 1 < len(number_ge) else 0
        parts.extend([k + 1] * (number_ge[k] - nxt))
    return parts


def unit_group_structure(K: LocalField, n: int) -> GroupStructure:
    """Elementary divisors and independent generators of (o/p^n)^x."""
    if K.q**n > 1 << 20:
        raise TooLarge(f"q^n = {K.q**n} exceeds the enumeration bound")
    if n < 1:
        raise ValueError("n must be positive")
    units = list(K.elements_mod(n, units_only=True))
    order = len(units)
    if order == 1:
        return GroupStructure([], [])
    one_key = K.one.with_prec(n).key()
    divisors, gens = [], []
    for ell in _prime_factors(order):
        a = val_p(order, ell)[0]
        cofactor = order // ell**a
        sylow = {}
        for x in units:
            y = x**cofactor
            sylow.setdefault(y.key(), y)
        sylow_elems = list(sylow.values())
        orders = {}
        for y in sylow_elems:
            k, z = 0, y
            while z.key() != one_key:
                z = z**ell
                k += 1
            orders[y.key()] = k
        maxk = max(orders.values())
        counts = []
        for k in range(1, maxk + 1):
            cnt = sum(1 for v in orders.values() if v <= k)
            counts.append(val_p(cnt, ell)[0])
        parts = sorted(_partition_from_counts(counts), reverse=True)
        chosen = _independent_generators(K, n, sylow_elems, orders, parts, ell, one_key)
        for k, g in zip(parts, chosen):
            divisors.append(ell**k)
            gens.append(g)
    # present in ascending divisor order
    pairs = sorted(zip(divisors, gens), key=lambda dg: dg[0])
    result = GroupStructure([d for d, _ in pairs], [g for _, g in pairs])
    assert result.order == order
    if n * (K.p - 1) > (K.p * K.e):  # n > e1 + e
        p_parts = sum(1 for d in result.elementary_divisors if d % K.p == 0)
        assert p_parts == K.d + (1 if K.mu_p else 0), "p-part does not match W x Z_p^d"
    return result


def _independent_generators(K, n, elems, orders, parts, ell, one_key):
    """Backtracking choice of g_i of order ell^parts[i] generating a direct product."""

    def span(gens_with_orders):
        keys = {one_key}
        frontier = [K.one.with_prec(n)]
        elems_ = list(frontier)
        for g, k in gens_with_orders:
            new = []
            for x in elems_:
                z = x
                for _ in range(ell**k - 1):
                    z = z * g
                    if z.key() not in keys:
                        keys.add(z.key())
                        new.append(z)
            elems_ += new
        return keys

    def rec(i, chosen, keys):
        if i == len(parts):
            return chosen
        target = len(keys) * ell ** parts[i]
        for g in elems:
            if orders[g.key()] != parts[i] or g.key() in keys:
                continue
            new_keys = span(list(zip(chosen + [g], parts[: i + 1])))
            if len(new_keys) == target:
                res = rec(i + 1, chosen + [g], new_keys)
                if res is not None:
                    return res
        return None

    out = rec(0, [], {one_key})
    assert out is not None, "no independent generating set found"
    return out


# ---------------------------------------------------------------------------
# N-th power classes of units


def _power_class_depth(K: LocalField, N: int) -> int:
    """n0 such that U_{n0} consists of N-th powers."""
    a = val_p(N, K.p)[0]
    if a == 0:
        return 1
    return int(K.e1) + 1 + a * K.e


def unit_power_class_reps(K: LocalField, N: int) -> list[LFElement]:
    """Representatives of o^x / o^x^N, enumerated modulo a sufficient depth."""
    n0 = _power_class_depth(K, N)
    if K.q**n0 > 1 << 16:
        raise TooLarge("class group too large to enumerate")
    units = list(K.elements_mod(n0, units_only=True))
    powers = {(x**N).key() for x in units}
    power_elems = [K.make(k, n0) for k in powers]
    covered = set()
    reps = []
    for x in units:
        if x.key() in covered:
            continue
        reps.append(K.make(x.c))
        for s in power_elems:
            covered.add((x * s).key())
    return reps


def is_unit_power(K: LocalField, u: LFElement, N: int) -> bool:
    """Is the unit u an N-th power in o^x (at working precision)?"""
    _check_unit(u)
    p = K.p
    a, _ = val_p(N, p)
    r = u.residue()
    if not _residue_is_lth_power(r, N):
        return False
    if a == 0:
        return True
    rho = u * K.teichmuller(r, u.prec).inverse()
    candidates = [rho]
    roots_of_unity = [K.one]
    if K.mu_p:
        roots_of_unity = [K.zeta**k for k in range(p)]
    for _ in range(a):
        nxt = []
        for c in candidates:
            root = K.pth_root(c)
            if root is not None:
                for z in roots_of_unity:
                    cand = root * z
                    if all(not (cand == o) for o in nxt):
                        nxt.append(cand)
        candidates = nxt
        if not candidates:
            return False
    return True
