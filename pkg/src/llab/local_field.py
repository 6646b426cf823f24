"""Finite extensions of Q_p as an unramified step followed by an Eisenstein step.

The ring of integers is Z_p[y, pi]/(g(y), E(pi)) where g lifts the residue
modulus and E is Eisenstein over W = Z_p[y]/(g).  An element is stored as a
flat tuple of integers indexed by k = i*f + j, the coordinate of pi^i y^j,
together with an absolute pi-adic precision ``prec``.

Because the monomials pi^i (0 <= i < e) have distinct valuations mod e, the
ideal (pi^n) is the coordinatewise set where coordinate (i, j) is divisible by
p^ceil((n - i)/e).  Reduction mod pi^n is therefore exact and canonical.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Iterator, Optional, Sequence, Union

from .errors import (
    ConditionFailed,
    CriterionOracleMismatch,
    MixedFields,
    NonUnitInverse,
    NoSuchTorsion,
    NotCoprime,
    NotEisenstein,
    PrecisionExhausted,
    PrecisionTooLow,
    ZeroResidue,
)
from .exact_arith import val_p, vp_or
from .finite_field import FiniteField, FqElement, FqPoly, poly_roots, solve_linearized


class AtLeast(int):
    """A valuation known only to be at least this value (element is 0 at precision)."""

    def __repr__(self):
        return f"AtLeast({int(self)})"

    __str__ = __repr__


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def minimal_precision(p: int, e: int) -> int:
    e1 = Fraction(e, p - 1)
    if e1.denominator == 1:
        return 2 * (p * int(e1) + 1) + 4 * e
    return 6 * e


def default_precision(p: int, e: int) -> int:
    e1 = Fraction(e, p - 1)
    if e1.denominator == 1:
        return 2 * (p * int(e1) + 1) + 4 * e
    return 6 * e + 8


@dataclass
class PowerReduction:
    """Result of dividing a unit by p-th powers level by level.

    ``u = xi**p * w`` with ``level = v(w - 1)``.  ``stuck`` is set when the
    leading term of ``w`` cannot be removed by any p-th power.
    """

    w: "LFElement"
    level: int
    xi: "LFElement"
    stuck: bool


class LocalField:
    """An immutable description of K together with its arithmetic."""

    def __init__(
        self,
        p: int,
        f: int,
        eisenstein: Sequence,
        prec_pi: Optional[int] = None,
        unram_modulus: Optional[Sequence[int]] = None,
        name: Optional[str] = None,
        _check_mu: bool = True,
    ):
        self.p = p
        self.f = f
        self.residue = FiniteField(p, f, unram_modulus)
        eis = [self._w_from_input(c) for c in eisenstein]
        if len(eis) < 2:
            raise NotEisenstein("Eisenstein polynomial must have degree at least 1")
        if eis[-1] != (1,) + (0,) * (f - 1):
            raise NotEisenstein("Eisenstein polynomial must be monic")
        if min(vp_or(c, p, 10**9) for c in eis[0]) != 1:
            raise NotEisenstein("constant term must have p-valuation exactly 1")
        for c in eis[1:-1]:
            if any(x % p for x in c):
                raise NotEisenstein("middle coefficients must be divisible by p")
        self.eis = tuple(eis)
        self.e = e = len(eis) - 1
        self.d = e * f
        self.q = p**f
        self.e1 = Fraction(e, p - 1)
        self.name = name

        floor_p_e1 = (p * self.e1.numerator) // self.e1.denominator
        self.pe1_floor = floor_p_e1
        self.pe1 = p * int(self.e1) if self.e1.denominator == 1 else None

        lo = minimal_precision(p, e)
        if prec_pi is None:
            prec_pi = default_precision(p, e)
        elif prec_pi < lo:
            raise PrecisionTooLow(f"prec_pi={prec_pi} below the minimum {lo} for this field")
        self.prec = _ceil_div(prec_pi, e) * e
        self.M = self.prec // e
        self.hi = self.prec + 8 * e
        self._mods_cache: dict[int, tuple] = {}
        self._build_tables()

        self.eps = self._compute_eps()
        self.eps_bar = self.eps.residue()
        self.zeta: Optional[LFElement] = None
        self.Pi: Optional[LFElement] = None
        if _check_mu:
            self.mu_p = has_mu_l(self, p)
            if self.mu_p:
                self.Pi = root_of_minus_p(self)
                self.zeta = self._compute_zeta()
        else:
            self.mu_p = None

    # ------------------------------------------------------------------
    # unramified coefficient ring W = Z[y]/(g), exact integer tuples
    def _w_from_input(self, c) -> tuple:
        if isinstance(c, int):
            c = [c]
        c = [int(x) for x in c]
        if len(c) > self.f:
            raise NotEisenstein("coefficient has more coordinates than f")
        return tuple(c) + (0,) * (self.f - len(c))

    def _w_mul(self, a: Sequence[int], b: Sequence[int]) -> tuple:
        f = self.f
        prod = [0] * (2 * f - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        out = prod[:f]
        for k in range(f, 2 * f - 1):
            if prod[k]:
                red = self._ypow[k]
                for i in range(f):
                    out[i] += prod[k] * red[i]
        return tuple(out)

    def _build_tables(self):
        f, e, d = self.f, self.e, self.d
        g = self.residue.modulus
        # y^k reduced with the integer lift of g (coefficients in [0, p))
        ypow = []
        cur = [1] + [0] * (f - 1)
        for k in range(2 * f - 1):
            ypow.append(tuple(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                cur = [a - top * m for a, m in zip(cur, g[:-1])]
        self._ypow = ypow
        # pi^k as flat vectors for k < 2e - 1
        neg_eis = [tuple(-x for x in c) for c in self.eis[:-1]]
        pipow = []
        vec = [(1,) + (0,) * (f - 1)] + [(0,) * f] * (e - 1)
        for k in range(2 * e - 1):
            pipow.append(vec)
            top = vec[-1]
            vec = [(0,) * f] + vec[:-1]
            if any(top):
                vec = [tuple(a + b for a, b in zip(vec[i], self._w_mul(top, neg_eis[i]))) for i in range(e)]
        table = []
        for a in range(d):
            ia, ja = divmod(a, f)
            row = []
            for b in range(d):
                ib, jb = divmod(b, f)
                ymon = ypow[ja + jb]
                layers = pipow[ia + ib]
                flat = []
                for i, layer in enumerate(layers):
                    flat.extend(self._w_mul(layer, ymon))
                row.append(tuple((c, x) for c, x in enumerate(flat) if x))
            table.append(row)
        self._table = table

    def _mods(self, prec: int) -> tuple:
        m = self._mods_cache.get(prec)
        if m is None:
            p, e, f = self.p, self.e, self.f
            m = tuple(p ** max(0, _ceil_div(prec - i, e)) for i in range(e) for _ in range(f))
            self._mods_cache[prec] = m
        return m

    # ------------------------------------------------------------------
    # construction of elements
    def make(self, vec: Sequence[int], prec: Optional[int] = None) -> "LFElement":
        prec = self.prec if prec is None else prec
        if prec < 1:
            raise PrecisionExhausted("element would carry no precision")
        mods = self._mods(prec)
        return LFElement(self, tuple(x % m for x, m in zip(vec, mods)), prec)

    def __call__(self, x, prec: Optional[int] = None) -> "LFElement":
        if isinstance(x, LFElement):
            if x.K is not self:
                raise MixedFields("element belongs to another field")
            return x
        if isinstance(x, int):
            return self.make((x,) + (0,) * (self.d - 1), prec)
        if isinstance(x, FqElement):
            return self.lift(x, prec)
        rows = list(x)
        if rows and isinstance(rows[0], (list, tuple)):
            if len(rows) > self.e:
                raise ValueError("too many pi-layers")
            vec = []
            for i in range(self.e):
                layer = list(rows[i]) if i < len(rows) else []
                if len(layer) > self.f:
                    raise ValueError("too many y-coordinates")
                vec.extend(layer + [0] * (self.f - len(layer)))
            return self.make(vec, prec)
        if len(rows) != self.d:
            raise ValueError(f"expected {self.d} coordinates")
        return self.make(rows, prec)

    def lift(self, r: FqElement, prec: Optional[int] = None) -> "LFElement":
        """Coordinate lift of a residue class into the unramified layer."""
        if r.field != self.residue:
            raise MixedFields("residue from another field")
        return self.make(tuple(r.coeffs) + (0,) * (self.d - self.f), prec)

    def w_element(self, w: Sequence[int], prec: Optional[int] = None) -> "LFElement":
        return self.make(tuple(w) + (0,) * (self.d - self.f), prec)

    @cached_property
    def pi(self) -> "LFElement":
        if self.e == 1:
            return self.w_element([-x for x in self.eis[0]], self.hi)
        vec = [0] * self.d
        vec[self.f] = 1
        return self.make(vec, self.hi)

    @cached_property
    def one(self) -> "LFElement":
        return self(1)

    @cached_property
    def zero(self) -> "LFElement":
        return self(0)

    def pi_power(self, k: int) -> "LFElement":
        cache = self.__dict__.setdefault("_pi_pows", {})
        if k not in cache:
            cache[k] = self.pi**k
        return cache[k]

    # ------------------------------------------------------------------
    # derived constants
    def _compute_eps(self) -> "LFElement":
        """epsilon with -p = epsilon * pi^e, via pi^e = -p * U."""
        p = self.p
        vec = list(c // p for c in self.eis[0])
        for i in range(1, self.e):
            vec.extend(c // p for c in self.eis[i])
        U = self.make(vec, self.hi + self.e)
        return U.inverse()

    def _compute_zeta(self) -> "LFElement":
        if self.p == 2:
            return self.make((-1,) + (0,) * (self.d - 1), self.hi)
        e1 = int(self.e1)
        k = self.residue
        # a nonzero with a^p = eps_bar * a gives 1 + a pi^{e1} close to a p-th root of 1
        a = next(x for x in k.nonzero_elements() if x ** (self.p - 1) == self.eps_bar)
        x0 = self.one.with_prec(self.hi) + self.lift(a, self.hi) * self.pi_power(e1)
        red = self.reduce_by_pth_powers(x0**self.p, self.hi)
        if red.stuck:
            raise CriterionOracleMismatch("could not extract a primitive p-th root of unity")
        zeta = (x0 * red.xi.inverse()).with_prec(self.hi - self.e)
        return zeta

    # ------------------------------------------------------------------
    def teichmuller(self, r: FqElement, prec: Optional[int] = None) -> "LFElement":
        if r.is_zero():
            raise ZeroResidue("the Teichmuller lift of 0 is 0; a unit residue is required")
        prec = self.prec if prec is None else prec
        y = self.lift(r, prec)
        for _ in range(prec + 2):
            z = y**self.q
            if z == y:
                return z
            y = z
        raise PrecisionExhausted("Teichmuller iteration did not stabilise")  # pragma: no cover

    def random_element(self, rng, prec: Optional[int] = None) -> "LFElement":
        prec = self.prec if prec is None else prec
        return self.make(tuple(rng.randrange(m) for m in self._mods(prec)), prec)

    def random_unit(self, rng, prec: Optional[int] = None) -> "LFElement":
        while True:
            x = self.random_element(rng, prec)
            if x.is_unit():
                return x

    def elements_mod(self, n: int, units_only: bool = False) -> Iterator["LFElement"]:
        """All residues of the ring of integers mod pi^n (units only if asked)."""
        mods = self._mods(n)
        f, p = self.f, self.p
        for vec in itertools.product(*(range(m) for m in mods)):
            if units_only and not any(x % p for x in vec[:f]):
                continue
            yield LFElement(self, vec, n)

    # ------------------------------------------------------------------
    def reduce_by_pth_powers(self, u: "LFElement", stop: int) -> PowerReduction:
        """Divide the unit u by p-th powers to push it as deep as possible.

        Works level by level: the residue is always a p-th power; at level
        j < p*e1 only multiples of p can be cleared (by (1 + a pi^{j/p})^p);
        at j = p*e1 we solve a^p - eps_bar*a = b; above p*e1 we solve
        -eps_bar*a = b with (1 + a pi^{j-e})^p.
        """
        if not u.is_unit():
            raise NonUnitInverse("p-th power reduction expects a unit")
        p, e = self.p, self.e
        stop = min(stop, u.prec)
        r = u.residue()
        x0 = self.lift(r.pth_root(), self.hi)
        xi = x0
        w = u * (x0**p).inverse()
        neg_eps_bar = -self.eps_bar
        while True:
            z = w - 1
            j = z.valuation()
            if j >= stop:
                return PowerReduction(w, int(min(j, stop)), xi, False)
            b = z.digit(j)
            # compare j with p*e1 = p*e/(p-1) exactly
            if j * (p - 1) < p * e:
                if j % p:
                    return PowerReduction(w, j, xi, True)
                level = j // p
                a = b.pth_root()
            elif j * (p - 1) == p * e:
                a = solve_linearized(self.eps_bar, b)
                if a is None:
                    return PowerReduction(w, j, xi, True)
                level = j // p
            else:
                level = j - e
                a = b / neg_eps_bar
            y = self.one.with_prec(self.hi) + self.lift(a, self.hi) * self.pi_power(level)
            w = w * (y**p).inverse()
            xi = xi * y

    def pth_root(self, u: "LFElement") -> Optional["LFElement"]:
        """A p-th root of the unit u to precision u.prec - e, or None."""
        red = self.reduce_by_pth_powers(u, u.prec)
        if red.stuck:
            return None
        return red.xi.with_prec(u.prec - self.e)

    # ------------------------------------------------------------------
    def __repr__(self):
        if self.name:
            return self.name
        return f"LocalField(p={self.p}, f={self.f}, e={self.e}, prec={self.prec})"

    def descriptor(self) -> dict:
        return {
            "p": self.p,
            "f": self.f,
            "unram_modulus": list(self.residue.modulus),
            "eisenstein": [list(c) for c in self.eis],
            "prec_pi": self.prec,
        }

    def invariants(self) -> dict:
        return {
            "p": self.p,
            "e": self.e,
            "f": self.f,
            "d": self.d,
            "q": self.q,
            "e1": self.e1,
            "prec_pi": self.prec,
            "mu_p": self.mu_p,
        }


Scalar = Union[int, "LFElement"]


class LFElement:
    """Element of the ring of integers of K, known modulo pi^prec."""

    __slots__ = ("K", "c", "prec")

    def __init__(self, K: LocalField, c: tuple, prec: int):
        self.K = K
        self.c = c
        self.prec = prec

    # -- helpers --------------------------------------------------------
    def _coerce(self, other) -> "LFElement":
        if isinstance(other, LFElement):
            if other.K is not self.K:
                raise MixedFields("elements of different fields")
            return other
        if isinstance(other, int):
            return self.K.make((other,) + (0,) * (self.K.d - 1), max(self.prec, self.K.prec))
        raise TypeError(f"cannot combine LFElement with {type(other).__name__}")

    def with_prec(self, prec: int) -> "LFElement":
        """Same element viewed at a (usually lower) precision."""
        return self.K.make(self.c, prec)

    def valuation(self) -> int:
        K = self.K
        p, e, f = K.p, K.e, K.f
        best = None
        for k, x in enumerate(self.c):
            if x:
                v = e * vp_or(x, p, 0) + k // f
                if best is None or v < best:
                    best = v
        return AtLeast(self.prec) if best is None else best

    def is_zero(self) -> bool:
        return not any(self.c)

    def is_unit(self) -> bool:
        p = self.K.p
        return any(x % p for x in self.c[: self.K.f])

    def residue(self) -> FqElement:
        p = self.K.p
        return FqElement(self.K.residue, tuple(x % p for x in self.c[: self.K.f]))

    def digit(self, j: int) -> FqElement:
        """Residue of self / pi^j, assuming v(self) >= j."""
        K = self.K
        p = K.p
        s, i = divmod(j, K.e)
        layer = self.c[i * K.f:(i + 1) * K.f]
        rho = K.residue(tuple(x // p**s for x in layer))
        return (-K.eps_bar) ** s * rho

    def key(self) -> tuple:
        return self.c

    def layers(self) -> list[tuple]:
        f = self.K.f
        return [self.c[i * f:(i + 1) * f] for i in range(self.K.e)]

    # -- ring operations -----------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        return self.K.make([a + b for a, b in zip(self.c, o.c)], min(self.prec, o.prec))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return self.K.make([a - b for a, b in zip(self.c, o.c)], min(self.prec, o.prec))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return self.K.make([-a for a in self.c], self.prec)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.K.make([a * other for a in self.c], self.prec)
        o = self._coerce(other)
        va, vb = int(self.valuation()), int(o.valuation())
        prec = min(self.prec + vb, o.prec + va)
        K = self.K
        out = [0] * K.d
        table = K._table
        ya = [(b, y) for b, y in enumerate(o.c) if y]
        for a, x in enumerate(self.c):
            if x:
                row = table[a]
                for b, y in ya:
                    t = x * y
                    for c, coef in row[b]:
                        out[c] += t * coef
        return K.make(out, prec)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = None
        base = self
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        if result is None:
            return self.K.one.with_prec(self.prec)
        return result

    def inverse(self) -> "LFElement":
        if not self.is_unit():
            raise NonUnitInverse("only units are invertible in the ring of integers")
        K = self.K
        x = K.lift(self.residue().inverse(), self.prec)
        for _ in range(self.prec.bit_length() + 2):
            err = 1 - self * x
            if err.is_zero():
                break
            x = x + x * err
        return x.with_prec(self.prec)

    def div_pi(self, k: int) -> "LFElement":
        """Exact division by pi^k (requires v(self) >= k); precision drops by k."""
        if k == 0:
            return self
        K = self.K
        v = self.valuation()
        if v < k:
            raise NonUnitInverse(f"valuation {int(v)} is below {k}")
        if self.prec - k < 1:
            raise PrecisionExhausted("division by pi exhausts the precision")
        a = self.with_prec(min(self.prec, K.hi - K.e))
        e, p = K.e, K.p
        s = _ceil_div(k, e)
        # 1/pi^k = pi^{es-k} (-eps)^s / p^s
        c = K.pi_power(e * s - k) * (-K.eps) ** s if e * s > k else (-K.eps) ** s
        b = a * c
        ps = p**s
        q = [x // ps for x in b.c]
        return K.make(q, a.prec - k)

    def __truediv__(self, other):
        if isinstance(other, int):
            other = self._coerce(other)
        o = self._coerce(other)
        if o.is_unit():
            return self * o.inverse()
        v = o.valuation()
        if isinstance(v, AtLeast):
            raise NonUnitInverse("division by an element that is 0 at precision")
        return self.div_pi(v) * o.div_pi(v).inverse()

    # -- comparison -----------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            other = self._coerce(other)
        if not isinstance(other, LFElement):
            return NotImplemented
        if other.K is not self.K:
            return False
        prec = min(self.prec, other.prec)
        mods = self.K._mods(prec)
        return all((a - b) % m == 0 for a, b, m in zip(self.c, other.c, mods))

    def __hash__(self):
        raise TypeError("LFElement equality is precision-dependent; hash .key() instead")

    def __repr__(self):
        return f"LFElement({self.K.e}x{self.K.f} {list(self.layers())}, prec={self.prec})"

    def pretty(self) -> str:
        """Expansion as a sum of W-coefficients times powers of pi."""
        terms = []
        for i, layer in enumerate(self.layers()):
            if not any(layer):
                continue
            if self.K.f == 1:
                coef = str(layer[0])
            else:
                coef = "(" + "+".join(f"{x}*y^{j}" for j, x in enumerate(layer) if x) + ")"
            terms.append(coef if i == 0 else f"{coef}*pi^{i}")
        return (" + ".join(terms) if terms else "0") + f" + O(pi^{self.prec})"


# ----------------------------------------------------------------------
# Module-level operations


def lf_make(p: int, f: int, eis_coeffs: Sequence, prec_pi: Optional[int] = None, **kw) -> LocalField:
    return LocalField(p, f, eis_coeffs, prec_pi, **kw)


def lf_valuation(a: LFElement) -> int:
    return a.valuation()


def teichmuller(r: FqElement, K: LocalField) -> LFElement:
    return K.teichmuller(r)


def has_mu_l(K: LocalField, l: int) -> bool:
    """Whether K contains the l-th roots of unity (l prime).

    For l = p the residue criterion on epsilon is cross-checked against an
    explicit search for a root of T^{p-1} + p; a disagreement is an error.
    """
    if l != K.p:
        return (K.q - 1) % l == 0
    p = K.p
    criterion = (
        K.e % (p - 1) == 0
        and K.eps_bar ** ((K.q - 1) // gcd(p - 1, K.q - 1)) == 1
    )
    oracle = _root_oracle(K) is not None
    if criterion != oracle:
        raise CriterionOracleMismatch(
            f"residue criterion says {criterion}, root search says {oracle} for {K!r}"
        )
    return criterion


def _root_oracle(K: LocalField) -> Optional[LFElement]:
    """Search for Pi with Pi^{p-1} = -p.

    With e/(p-1) integral, enumerate residues w with w^{p-1} = eps_bar and
    Newton-lift Pi = pi^{e/(p-1)} * w; otherwise scan the ring mod pi^{e+1} for an
    approximate root (none can exist, since a root would have valuation e/(p-1)).
    """
    p, e = K.p, K.e
    if p == 2:
        return K(-2, K.hi)
    if e % (p - 1):
        if K.q ** (e + 1) <= 1 << 16:
            target = K(-p).with_prec(e + 1)
            for x in K.elements_mod(e + 1):
                if x ** (p - 1) == target:
                    return x
        return None
    e1 = e // (p - 1)
    for wbar in K.residue.nonzero_elements():
        if wbar ** (p - 1) == K.eps_bar:
            break
    else:
        return None
    w = K.lift(wbar, K.hi)
    eps = K.eps
    for _ in range(K.hi.bit_length() + 3):
        num = w ** (p - 1) - eps
        if num.is_zero():
            break
        w = w - num * ((p - 1) * w ** (p - 2)).inverse()
    Pi = K.pi_power(e1) * w
    if not (Pi ** (p - 1) + p).is_zero():
        raise CriterionOracleMismatch("lifted root does not satisfy T^{p-1} + p = 0")
    return Pi


def root_of_minus_p(K: LocalField) -> Optional[LFElement]:
    """The root Pi of T^{p-1} + p with Pi / (1 - zeta) a 1-unit, or None."""
    if not (K.mu_p if K.mu_p is not None else has_mu_l(K, K.p)):
        return None
    Pi = _root_oracle(K)
    if K.p > 2 and K.zeta is not None:
        # the roots differ by (p-1)-th roots of unity; pick the one matching zeta
        r = (Pi / (1 - K.zeta)).residue()
        Pi = Pi * K.teichmuller(r.inverse(), Pi.prec)
    return Pi


def _euler_phi_prime_power(p: int, n: int) -> int:
    return p ** (n - 1) * (p - 1)


def torsion_level(K: LocalField, n: int) -> int:
    """Level a = e/phi(p^n) of a primitive p^n-th root of unity."""
    phi = _euler_phi_prime_power(K.p, n)
    if K.e % phi:
        raise NoSuchTorsion(f"phi({K.p}^{n}) = {phi} does not divide e = {K.e}")
    a = K.e // phi
    if n == 1 and K.zeta is not None:
        assert (1 - K.zeta).valuation() == a
    return a


def cyclotomic_unramified_degree(q: int, n: int) -> int:
    if gcd(n, q) != 1:
        raise NotCoprime(f"{n} is not prime to {q}")
    if n == 1:
        return 1
    k, x = 1, q % n
    while x != 1:
        x = x * q % n
        k += 1
    return k


def cyclotomic_eisenstein(p: int) -> list[int]:
    """Coefficients of Phi_p(1 - x), little-endian (p odd), or x - 2 for p = 2."""
    if p == 2:
        return [-2, 1]
    coeffs = [0] * p
    # sum_{k<p} (1-x)^k
    power = [1]
    for _ in range(p):
        for i, c in enumerate(power):
            coeffs[i] += c
        power = [a - b for a, b in zip(power + [0], [0] + power)]
    return coeffs[:p]


def build_cyclotomic(p: int, prec: Optional[int] = None) -> tuple[LocalField, LFElement]:
    K = LocalField(p, 1, cyclotomic_eisenstein(p), prec, name=f"Q_{p}(zeta_{p})" if p > 2 else "Q_2")
    zeta = K(-1, K.hi) if p == 2 else 1 - K.pi
    return K, zeta


# ----------------------------------------------------------------------
# polynomials over K (lists of LFElements, little-endian)


def poly_mulmod(a: list, b: list, g: list) -> list:
    """a*b mod g for monic g."""
    K = g[0].K
    n = len(g) - 1
    prod = [K.zero.with_prec(K.hi)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = prod[i + j] + x * y
    for k in range(len(prod) - 1, n - 1, -1):
        c = prod[k]
        if not c.is_zero():
            for i in range(n):
                prod[k - n + i] = prod[k - n + i] - c * g[i]
        prod[k] = K.zero
    prod = prod[:n]
    return prod + [K.zero.with_prec(K.hi)] * (n - len(prod))


def lf_det(rows: list) -> LFElement:
    """Determinant over the ring of integers, pivoting on least valuation."""
    m = [list(r) for r in rows]
    n = len(m)
    K = m[0][0].K
    det = K.one.with_prec(K.hi)
    sign = 1
    for c in range(n):
        best = None
        for i in range(c, n):
            for j in range(c, n):
                v = m[i][j].valuation()
                if not isinstance(v, AtLeast) and (best is None or v < best[0]):
                    best = (v, i, j)
        if best is None:
            prec = min(m[i][j].prec for i in range(c, n) for j in range(c, n))
            return (det * K.zero.with_prec(prec)) if sign == 1 else -(det * K.zero.with_prec(prec))
        _, i, j = best
        if i != c:
            m[c], m[i] = m[i], m[c]
            sign = -sign
        if j != c:
            for row in m:
                row[c], row[j] = row[j], row[c]
            sign = -sign
        piv = m[c][c]
        det = det * piv
        for i in range(c + 1, n):
            if not m[i][c].is_zero():
                t = m[i][c] / piv
                m[i] = [a - t * b for a, b in zip(m[i], m[c])]
    return det if sign == 1 else -det


def ext_norm(g: Sequence[LFElement], a: Sequence[LFElement]) -> LFElement:
    """Res(g, a) for monic g: the norm of a(x) from K[x]/(g) to K."""
    g = list(g)
    n = len(g) - 1
    K = g[0].K
    if not (g[-1] - 1).is_zero():
        raise ValueError("ext_norm expects a monic polynomial")
    a = list(a) + [K.zero.with_prec(K.hi)] * (n - len(a))
    if len(a) > n:
        raise ValueError("a must have degree below deg g")
    cols = []
    cur = a
    x = [K.zero.with_prec(K.hi), K.one.with_prec(K.hi)] if n > 1 else None
    for j in range(n):
        cols.append(cur)
        if j + 1 < n:
            cur = poly_mulmod(cur, x, g)
    rows = [[cols[j][i] for j in range(n)] for i in range(n)]
    return lf_det(rows)


def newton_root(coeffs: Sequence[LFElement], x0: LFElement, prec: Optional[int] = None) -> LFElement:
    """Newton-lift a root of a polynomial over K (strengthened Hensel condition)."""
    K = x0.K
    prec = K.prec if prec is None else prec
    coeffs = list(coeffs)
    deriv = [c * i for i, c in enumerate(coeffs)][1:]

    def ev(cs, x):
        acc = K.zero.with_prec(K.hi)
        for c in reversed(cs):
            acc = acc * x + c
        return acc

    fx, dfx = ev(coeffs, x0), ev(deriv, x0)
    k = dfx.valuation()
    if isinstance(k, AtLeast) or fx.valuation() <= 2 * k:
        raise ConditionFailed("Hensel condition v(f(x0)) > 2 v(f'(x0)) fails")
    x = x0.with_prec(prec + k)
    for _ in range(2 * prec.bit_length() + 4):
        fx = ev(coeffs, x)
        if fx.with_prec(prec).is_zero():
            return x.with_prec(prec)
        x = x - fx / ev(deriv, x)
        x = x.with_prec(prec + k)
    raise ConditionFailed("Newton iteration did not converge")  # pragma: no cover


def pi_digits(x: LFElement, n: int) -> list[FqElement]:
    """Residues d_j with x = sum lift(d_j) pi^j mod pi^n."""
    K = x.K
    rem = x.with_prec(n)
    digits = []
    for j in range(n):
        d = rem.digit(j) if rem.valuation() >= j else None
        if d is None:  # pragma: no cover
            raise AssertionError("digit expansion lost track of the valuation")
        digits.append(d)
        if not d.is_zero():
            rem = rem - K.lift(d, n) * K.pi_power(j)
    return digits


def pi_expansion_str(x: LFElement, n: int) -> str:
    """Render x mod pi^n as a sum of digit multiples of powers of pi."""
    terms = []
    for j, d in enumerate(pi_digits(x, n)):
        if d.is_zero():
            continue
        coef = str(d.to_int()) if x.K.f == 1 else f"[{','.join(map(str, d.coeffs))}]"
        if j == 0:
            terms.append(coef)
        else:
            mon = "pi" if j == 1 else f"pi^{j}"
            terms.append(mon if coef == "1" else f"{coef}*{mon}")
    return "+".join(terms) if terms else "0"
