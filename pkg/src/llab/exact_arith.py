"""Integers mod p^M, exact rationals and Hensel lifting over Z/p^M."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .errors import ConditionFailed, MixedModuli, NonUnitInverse, PrecisionExceeded, ZeroInput

# Exact rationals are the standard library's reduced fractions.
ExactRational = Fraction


def rational_str(x: Fraction) -> str:
    """Render as ``num/den`` (or just ``num`` for integers)."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def val_p(n: int, p: int) -> tuple[int, int]:
    """Split ``n = u * p**v`` with ``p`` not dividing ``u``."""
    if n == 0:
        raise ZeroInput("valuation of 0 is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


def vp_or(n: int, p: int, default: int) -> int:
    """p-adic valuation of ``n``, or ``default`` when ``n == 0``."""
    if n == 0:
        return default
    return val_p(n, p)[0]


@dataclass(frozen=True)
class PadicInt:
    """An element of Z/p^M Z with canonical representative in [0, p^M)."""

    value: int
    p: int
    M: int

    def __post_init__(self):
        if self.M < 1:
            raise PrecisionExceeded("precision exponent must be positive")
        object.__setattr__(self, "value", self.value % self.p**self.M)

    @property
    def modulus(self) -> int:
        return self.p**self.M

    def _other(self, other) -> int:
        if isinstance(other, PadicInt):
            if (other.p, other.M) != (self.p, self.M):
                raise MixedModuli(f"Z/{self.p}^{self.M} vs Z/{other.p}^{other.M}")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def _new(self, value: int) -> "PadicInt":
        return PadicInt(value, self.p, self.M)

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._new(self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._new(self.value - o)

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._new(o - self.value)

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._new(self.value * o)

    __rmul__ = __mul__

    def __neg__(self):
        return self._new(-self.value)

    def is_unit(self) -> bool:
        return self.value % self.p != 0

    def inverse(self) -> "PadicInt":
        if not self.is_unit():
            raise NonUnitInverse(f"{self.value} is not a unit mod {self.p}")
        return self._new(pow(self.value, -1, self.modulus))

    def __truediv__(self, other):
        o = other if isinstance(other, PadicInt) else self._new(other)
        return self * o.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return self._new(pow(self.value, n, self.modulus))

    def __eq__(self, other):
        if isinstance(other, int):
            return (self.value - other) % self.modulus == 0
        if isinstance(other, PadicInt):
            return (self.p, self.M, self.value) == (other.p, other.M, other.value)
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p, self.M))

    def valuation(self) -> int:
        """p-adic valuation of the representative, capped at M."""
        return vp_or(self.value, self.p, self.M)

    def __repr__(self):
        return f"PadicInt({self.value}, p={self.p}, M={self.M})"


Coefficient = Union[int, PadicInt]


def _eval(coeffs: Sequence[int], x: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _derivative(coeffs: Sequence[int]) -> list[int]:
    return [i * c for i, c in enumerate(coeffs)][1:]


def hensel_lift(f: Sequence[Coefficient], x0: PadicInt, target_M: int) -> PadicInt:
    """Newton-lift a root of ``f`` (little-endian coefficients) to precision p^target_M.

    Requires the strengthened condition v(f(x0)) > 2 v(f'(x0)), measured at
    the precision of ``x0``.  Coefficients given as :class:`PadicInt` bound the
    attainable target precision.
    """
    p = x0.p
    avail = min((c.M for c in f if isinstance(c, PadicInt)), default=None)
    if avail is not None and target_M > avail:
        raise PrecisionExceeded(f"coefficients known mod {p}^{avail}, asked for {p}^{target_M}")
    ints = [c.value if isinstance(c, PadicInt) else int(c) for c in f]
    df = _derivative(ints)

    x = x0.value
    k = vp_or(_eval(df, x) % p**x0.M, p, x0.M)
    if vp_or(_eval(ints, x) % p**x0.M, p, x0.M) <= 2 * k:
        raise ConditionFailed("Hensel condition v(f(x0)) > 2 v(f'(x0)) fails")

    # Work modulo a little more than the target so the last division by p^k is exact.
    work = p ** (target_M + 2 * k + 1)
    for _ in range(4 * target_M.bit_length() + 8):
        fx = _eval(ints, x) % work
        if fx % p**target_M == 0:
            return PadicInt(x, p, target_M)
        dfx = _eval(df, x) % work
        step = (fx // p**k) * pow(dfx // p**k, -1, work) % work
        x = (x - step) % work
    raise ConditionFailed("Newton iteration did not converge")  # pragma: no cover
