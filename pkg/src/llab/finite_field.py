"""Finite fields F_q = F_p[y]/(g) and polynomials over them.

Elements are coordinate tuples with respect to the power basis 1, y, ..., y^{f-1}.
Polynomials are little-endian lists of elements.  Factorization follows the
usual squarefree / distinct-degree / equal-degree pipeline with a seeded
generator, so outputs are reproducible.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Optional, Sequence

from .errors import (
    InseparablePolynomial,
    MixedFields,
    NotASubfield,
    NotIrreducible,
    ZeroInput,
    ZeroPolynomial,
)

FACTOR_SEED = 20240101


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# Linear algebra over F_p


def fp_solve(columns: Sequence[Sequence[int]], rhs: Sequence[int], p: int):
    """Solve ``sum x_j * columns[j] = rhs`` over F_p.

    Returns ``(particular, kernel_basis)`` or ``(None, kernel_basis)`` when the
    system is inconsistent.
    """
    nrows = len(rhs)
    ncols = len(columns)
    rows = [[columns[j][i] % p for j in range(ncols)] + [rhs[i] % p] for i in range(nrows)]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                t = rows[i][c]
                rows[i] = [(a - t * b) % p for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    free = [c for c in range(ncols) if c not in pivots]
    kernel = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fc] % p
        kernel.append(v)
    if any(rows[i][ncols] for i in range(r, nrows)):
        return None, kernel
    sol = [0] * ncols
    for i, pc in enumerate(pivots):
        sol[pc] = rows[i][ncols]
    return sol, kernel


# ---------------------------------------------------------------------------
# Fields and elements


class FiniteField:
    """The field F_p[y]/(modulus); ``modulus`` is little-endian and monic."""

    def __init__(self, p: int, f: int = 1, modulus: Optional[Sequence[int]] = None):
        if f < 1:
            raise ValueError("degree must be positive")
        self.p = p
        self.f = f
        self.q = p**f
        if modulus is None:
            modulus = default_modulus(p, f)
        else:
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != f + 1 or modulus[-1] != 1:
                raise NotIrreducible(f"modulus must be monic of degree {f}")
            if not _is_irreducible_over_prime(p, modulus):
                raise NotIrreducible(f"{list(modulus)} is reducible over F_{p}")
        self.modulus = tuple(modulus)
        # y^k for k in [f, 2f-2], reduced, used by multiplication.
        self._reduce = []
        cur = [(-c) % p for c in self.modulus[:-1]]  # y^f
        for _ in range(max(f - 1, 0)):
            self._reduce.append(tuple(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                cur = [(a - top * m) % p for a, m in zip(cur, self.modulus)]
        self._reduce.append(tuple(cur))

    # construction -------------------------------------------------------
    def __call__(self, x) -> "FqElement":
        if isinstance(x, FqElement):
            if x.field != self:
                raise MixedFields("element from another field")
            return x
        if isinstance(x, int):
            return FqElement(self, (x % self.p,) + (0,) * (self.f - 1))
        coords = tuple(int(c) % self.p for c in x)
        if len(coords) > self.f:
            raise ValueError("too many coordinates")
        return FqElement(self, coords + (0,) * (self.f - len(coords)))

    @cached_property
    def zero(self) -> "FqElement":
        return self(0)

    @cached_property
    def one(self) -> "FqElement":
        return self(1)

    @cached_property
    def gen(self) -> "FqElement":
        """The class of y (equal to 0 when f = 1, since the modulus is y)."""
        if self.f == 1:
            return self((-self.modulus[0]) % self.p)
        return self((0, 1))

    def elements(self) -> Iterator["FqElement"]:
        for coords in itertools.product(range(self.p), repeat=self.f):
            yield FqElement(self, tuple(reversed(coords)))

    def nonzero_elements(self) -> Iterator["FqElement"]:
        for x in self.elements():
            if not x.is_zero():
                yield x

    def basis(self) -> list["FqElement"]:
        return [self(tuple(int(i == j) for i in range(self.f))) for j in range(self.f)]

    def random_element(self, rng: random.Random) -> "FqElement":
        return FqElement(self, tuple(rng.randrange(self.p) for _ in range(self.f)))

    @cached_property
    def primitive_element(self) -> "FqElement":
        n = self.q - 1
        ps = _prime_factors(n)
        for x in self.nonzero_elements():
            if all(x ** (n // r) != self.one for r in ps):
                return x
        raise AssertionError("no primitive element")  # pragma: no cover

    # arithmetic on coordinate tuples -----------------------------------
    def _mul(self, a: tuple, b: tuple) -> tuple:
        p, f = self.p, self.f
        if f == 1:
            return ((a[0] * b[0]) % p,)
        prod = [0] * (2 * f - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        out = prod[:f]
        for k in range(f, 2 * f - 1):
            c = prod[k] % p
            if c:
                red = self._reduce[k - f]
                for i in range(f):
                    out[i] += c * red[i]
        return tuple(x % p for x in out)

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.modulus) == (other.p, other.modulus)

    def __hash__(self):
        return hash((self.p, self.modulus))

    def __repr__(self):
        if self.f == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.f}, modulus={list(self.modulus)})"


class FqElement:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: FiniteField, coeffs: tuple):
        self.field = field
        self.coeffs = coeffs

    def _other(self, other) -> tuple:
        if isinstance(other, FqElement):
            if other.field is not self.field and other.field != self.field:
                raise MixedFields("elements of different fields")
            return other.coeffs
        if isinstance(other, int):
            return self.field(other).coeffs
        raise TypeError(type(other))

    def __add__(self, other):
        p = self.field.p
        return FqElement(self.field, tuple((a + b) % p for a, b in zip(self.coeffs, self._other(other))))

    __radd__ = __add__

    def __sub__(self, other):
        p = self.field.p
        return FqElement(self.field, tuple((a - b) % p for a, b in zip(self.coeffs, self._other(other))))

    def __rsub__(self, other):
        return -(self - other)

    def __neg__(self):
        p = self.field.p
        return FqElement(self.field, tuple((-a) % p for a in self.coeffs))

    def __mul__(self, other):
        return FqElement(self.field, self.field._mul(self.coeffs, self._other(other)))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one.coeffs
        base = self.coeffs
        mul = self.field._mul
        while n:
            if n & 1:
                result = mul(result, base)
            n >>= 1
            if n:
                base = mul(base, base)
        return FqElement(self.field, result)

    def inverse(self) -> "FqElement":
        if self.is_zero():
            raise ZeroInput("0 has no inverse")
        return self ** (self.field.q - 2)

    def __truediv__(self, other):
        if isinstance(other, int):
            other = self.field(other)
        return self * other.inverse()

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, int):
            return self.coeffs == self.field(other).coeffs
        if isinstance(other, FqElement):
            return self.field == other.field and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __lt__(self, other):
        return self.coeffs < other.coeffs

    def frobenius(self, k: int = 1) -> "FqElement":
        return self ** (self.field.p**k)

    def pth_root(self) -> "FqElement":
        """Inverse of the Frobenius x -> x^p."""
        return self ** (self.field.q // self.field.p)

    def to_int(self) -> int:
        """Value in F_p, for elements of the prime field."""
        if any(self.coeffs[1:]):
            raise ValueError("element is not in the prime field")
        return self.coeffs[0]

    def __repr__(self):
        if self.field.f == 1:
            return str(self.coeffs[0])
        terms = []
        for j, c in enumerate(self.coeffs):
            if c:
                mon = "" if j == 0 else ("y" if j == 1 else f"y^{j}")
                terms.append(f"{c}{'*' if mon else ''}{mon}" if c != 1 or not mon else mon)
        return "+".join(terms) if terms else "0"


# ---------------------------------------------------------------------------
# Polynomials


class FqPoly:
    """Polynomial over F_q with little-endian coefficients and no trailing zeros."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FiniteField, coeffs: Iterable):
        cs = [field(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.field = field
        self.coeffs = cs

    @classmethod
    def x(cls, field: FiniteField) -> "FqPoly":
        return cls(field, [0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lead(self) -> FqElement:
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.lead() == 1

    def monic(self) -> "FqPoly":
        inv = self.lead().inverse()
        return FqPoly(self.field, [c * inv for c in self.coeffs])

    def _coerce(self, other) -> "FqPoly":
        if isinstance(other, FqPoly):
            if other.field != self.field:
                raise MixedFields("polynomials over different fields")
            return other
        return FqPoly(self.field, [other])

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        z = self.field.zero
        a = self.coeffs + [z] * (n - len(self.coeffs))
        b = other.coeffs + [z] * (n - len(other.coeffs))
        return FqPoly(self.field, [x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return FqPoly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            return FqPoly(self.field, [])
        F = self.field
        out = [F.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = out[i + j] + a * b
        return FqPoly(F, out)

    __rmul__ = __mul__

    def __divmod__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroPolynomial("division by the zero polynomial")
        F = self.field
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return FqPoly(F, []), FqPoly(F, rem)
        quo = [F.zero] * (dq + 1)
        inv = other.lead().inverse()
        n = len(other.coeffs)
        for k in range(dq, -1, -1):
            c = rem[k + n - 1] * inv
            quo[k] = c
            if c:
                for i, b in enumerate(other.coeffs):
                    rem[k + i] = rem[k + i] - c * b
        return FqPoly(F, quo), FqPoly(F, rem[: n - 1])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, n: int):
        result = FqPoly(self.field, [1])
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def powmod(self, n: int, modulus: "FqPoly") -> "FqPoly":
        result = FqPoly(self.field, [1])
        base = self % modulus
        while n:
            if n & 1:
                result = (result * base) % modulus
            n >>= 1
            if n:
                base = (base * base) % modulus
        return result

    def derivative(self) -> "FqPoly":
        return FqPoly(self.field, [c * i for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x: FqElement) -> FqElement:
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if isinstance(other, int):
            other = FqPoly(self.field, [other])
        if not isinstance(other, FqPoly):
            return NotImplemented
        return self.field == other.field and [c.coeffs for c in self.coeffs] == [c.coeffs for c in other.coeffs]

    def __hash__(self):
        return hash(tuple(c.coeffs for c in self.coeffs))

    def sort_key(self):
        return (self.degree, tuple(c.coeffs for c in self.coeffs))

    def to_json(self) -> list:
        return [list(c.coeffs) for c in self.coeffs]

    def __repr__(self):
        if self.is_zero():
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c.is_zero():
                continue
            mon = "" if i == 0 else ("T" if i == 1 else f"T^{i}")
            cs = repr(c)
            if mon and c == 1:
                terms.append(mon)
            elif mon:
                terms.append(f"({cs})*{mon}" if "+" in cs else f"{cs}*{mon}")
            else:
                terms.append(cs)
        return " + ".join(terms)


def poly_gcd(a: FqPoly, b: FqPoly) -> FqPoly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


# ---------------------------------------------------------------------------
# Irreducibility and the canonical modulus


def is_irreducible(g: FqPoly) -> bool:
    """Rabin's test over F_q."""
    n = g.degree
    if n < 1:
        return False
    if n == 1:
        return True
    g = g.monic()
    q = g.field.q
    x = FqPoly.x(g.field)

    def frob_power(k):
        h = x
        for _ in range(k):
            h = h.powmod(q, g)
        return h

    if frob_power(n) != x % g:
        return False
    for r in _prime_factors(n):
        if poly_gcd(g, frob_power(n // r) - x).degree != 0:
            return False
    return True


def _is_irreducible_over_prime(p: int, coeffs: Sequence[int]) -> bool:
    if len(coeffs) == 2:
        return True
    return is_irreducible(FqPoly(FiniteField(p, 1, (0, 1)), coeffs))


_DEFAULT_MODULI: dict[tuple[int, int], tuple[int, ...]] = {}


def default_modulus(p: int, f: int) -> tuple[int, ...]:
    """Least monic irreducible of degree f, ordering candidates by the integer
    sum c_i p^i of their non-leading coefficients (constant term least significant)."""
    key = (p, f)
    if key in _DEFAULT_MODULI:
        return _DEFAULT_MODULI[key]
    if f == 1:
        result = (0, 1)
    else:
        for n in range(p**f):
            coeffs = [(n // p**i) % p for i in range(f)] + [1]
            if coeffs[0] and _is_irreducible_over_prime(p, coeffs):
                result = tuple(coeffs)
                break
    _DEFAULT_MODULI[key] = result
    return result


# ---------------------------------------------------------------------------
# Factorization


def _pth_root_poly(g: FqPoly) -> FqPoly:
    p = g.field.p
    return FqPoly(g.field, [g.coeffs[i].pth_root() for i in range(0, len(g.coeffs), p)])


def squarefree_decomposition(g: FqPoly) -> list[tuple[FqPoly, int]]:
    """Monic squarefree parts with multiplicities (Yun's algorithm adapted to char p)."""
    F = g.field
    out: list[tuple[FqPoly, int]] = []
    c = poly_gcd(g, g.derivative())
    w = g // c
    i = 1
    while w.degree > 0:
        y = poly_gcd(w, c)
        z = w // y
        if z.degree > 0:
            out.append((z.monic(), i))
        i += 1
        w = y
        c = c // y
    if c.degree > 0:
        for h, m in squarefree_decomposition(_pth_root_poly(c.monic())):
            out.append((h, m * F.p))
    return out


def _distinct_degree(g: FqPoly) -> list[tuple[FqPoly, int]]:
    F = g.field
    x = FqPoly.x(F)
    out = []
    h = x % g
    d = 0
    rest = g
    while rest.degree >= 2 * (d + 1):
        d += 1
        h = h.powmod(F.q, rest)
        part = poly_gcd(rest, h - x)
        if part.degree > 0:
            out.append((part, d))
            rest = rest // part
            h = h % rest
    if rest.degree > 0:
        out.append((rest.monic(), rest.degree))
    return out


def _equal_degree(g: FqPoly, d: int, rng: random.Random) -> list[FqPoly]:
    if g.degree == d:
        return [g.monic()]
    F = g.field
    n = g.degree
    while True:
        a = FqPoly(F, [F.random_element(rng) for _ in range(n)])
        if a.degree < 1:
            continue
        if F.p == 2:
            t = a % g
            acc = t
            for _ in range(F.f * d - 1):
                t = (t * t) % g
                acc = acc + t
            b = acc
        else:
            b = a.powmod((F.q**d - 1) // 2, g) - FqPoly(F, [1])
        h = poly_gcd(g, b)
        if 0 < h.degree < n:
            return _equal_degree(h, d, rng) + _equal_degree(g // h, d, rng)


def ff_factor(g: FqPoly, seed: int = FACTOR_SEED) -> list[tuple[FqPoly, int]]:
    """Monic irreducible factors with multiplicities, sorted by (degree, coefficients)."""
    if g.is_zero():
        raise ZeroPolynomial("cannot factor the zero polynomial")
    rng = random.Random(seed)
    out = []
    if g.degree == 0:
        return out
    for part, mult in squarefree_decomposition(g.monic()):
        for block, d in _distinct_degree(part):
            for h in _equal_degree(block, d, rng):
                out.append((h, mult))
    out.sort(key=lambda fm: (fm[0].sort_key(), fm[1]))
    return out


def poly_roots(g: FqPoly) -> list[FqElement]:
    return [-h.coeffs[0] for h, _ in ff_factor(g) if h.degree == 1]


def irreducible_poly(F: FiniteField, r: int) -> FqPoly:
    """Least monic irreducible polynomial of degree r over F (same ordering as the modulus)."""
    elems = list(F.elements())
    for combo in itertools.product(elems, repeat=r):
        g = FqPoly(F, list(reversed(combo)) + [F.one])
        if (r == 1 or not g.coeffs[0].is_zero()) and is_irreducible(g):
            return g
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


# ---------------------------------------------------------------------------
# Discriminants, traces, Artin-Schreier


def _det(rows: list[list[FqElement]], F: FiniteField) -> FqElement:
    m = [list(r) for r in rows]
    n = len(m)
    det = F.one
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return F.zero
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det = det * m[c][c]
        inv = m[c][c].inverse()
        for i in range(c + 1, n):
            if m[i][c]:
                t = m[i][c] * inv
                m[i] = [a - t * b for a, b in zip(m[i], m[c])]
    return det


def resultant(a: FqPoly, b: FqPoly) -> FqElement:
    """Sylvester-matrix resultant."""
    F = a.field
    m, n = a.degree, b.degree
    if m < 0 or n < 0:
        return F.zero
    if m == 0:
        return a.coeffs[0] ** n
    if n == 0:
        return b.coeffs[0] ** m
    size = m + n
    rows = []
    for i in range(n):
        row = [F.zero] * size
        for j, c in enumerate(reversed(a.coeffs)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [F.zero] * size
        for j, c in enumerate(reversed(b.coeffs)):
            row[i + j] = c
        rows.append(row)
    return _det(rows, F)


def ff_poly_disc(g: FqPoly) -> FqElement:
    """(-1)^{n(n-1)/2} Res(g, g') for monic g."""
    if not g.is_monic():
        raise ValueError("discriminant expects a monic polynomial")
    n = g.degree
    if n < 1:
        raise ValueError("degree must be at least 1")
    r = resultant(g, g.derivative())
    return r if (n * (n - 1) // 2) % 2 == 0 else -r


def ff_trace(x: FqElement, sub_f: int = 1) -> FqElement:
    """Trace from F_q down to the subfield of degree ``sub_f``."""
    F = x.field
    if sub_f < 1 or F.f % sub_f:
        raise NotASubfield(f"{sub_f} does not divide {F.f}")
    step = F.p**sub_f
    acc = F.zero
    y = x
    for _ in range(F.f // sub_f):
        acc = acc + y
        y = y**step
    return acc


def absolute_trace(x: FqElement) -> int:
    return ff_trace(x, 1).to_int()


def _linear_map_columns(F: FiniteField, fn) -> list[list[int]]:
    return [list(fn(b).coeffs) for b in F.basis()]


def solve_linearized(c: FqElement, b: FqElement) -> Optional[FqElement]:
    """Least solution a (lexicographic on coordinates) of a^p - c*a = b, or None."""
    F = b.field
    cols = _linear_map_columns(F, lambda a: a ** F.p - c * a)
    sol, kernel = fp_solve(cols, list(b.coeffs), F.p)
    if sol is None:
        return None
    best = None
    for lam in itertools.product(range(F.p), repeat=len(kernel)):
        v = list(sol)
        for coef, kv in zip(lam, kernel):
            v = [(x + coef * y) % F.p for x, y in zip(v, kv)]
        if best is None or tuple(v) < best:
            best = tuple(v)
    return F(best)


def artin_schreier_solve(c: FqElement) -> Optional[FqElement]:
    """Least y with y^p - y = c, or None when the absolute trace of c is nonzero."""
    return solve_linearized(c.field.one, c)


@dataclass(frozen=True)
class DiscParity:
    even_degree_factor_count: int
    class_trivial: bool


def disc_parity(g: FqPoly, cross_check: bool = True) -> DiscParity:
    """Parity of the number of even-degree irreducible factors of a separable g.

    The discriminant class is trivial exactly when this count is even.  For odd
    p this is checked against the Euler criterion on the discriminant; for p = 2
    against the class of the discriminant of the lifted algebra.
    """
    disc = ff_poly_disc(g)
    if disc.is_zero():
        raise InseparablePolynomial("polynomial has a repeated root")
    factors = ff_factor(g)
    count = sum(1 for h, _ in factors if h.degree % 2 == 0)
    trivial = count % 2 == 0
    if cross_check:
        F = g.field
        if F.p != 2:
            is_square = disc ** ((F.q - 1) // 2) == 1
            if is_square != trivial:
                raise AssertionError(f"parity and Euler criterion disagree on {g}")
        else:
            from .discriminant import disc_class_via_lift

            if (disc_class_via_lift(g) == 0) != trivial:
                raise AssertionError(f"parity and lifted class disagree on {g}")
    return DiscParity(count, trivial)
