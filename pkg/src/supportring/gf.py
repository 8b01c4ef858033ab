"""Exact arithmetic in GF(p^k) and its quadratic extension GF(q^2).

Field elements are encoded as integers in ``range(q)``.  For GF(p^k) the
element ``c_0 + c_1 x + ... + c_{k-1} x^{k-1}`` has code ``sum(c_i * p**i)``,
so the integer order of codes is the base-p counting order of coefficient
tuples.  Every "least" choice (modulus, generator) refers to that order.

For GF(q^2) an element ``u + v t`` with ``u, v`` in GF(q) has code
``u + v * q``; codes below ``q`` are exactly the embedded base field.

All arithmetic goes through precomputed addition and multiplication tables,
built once per field from exact polynomial arithmetic.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

import numpy as np


class NotPrimePower(ValueError):
    pass


class ZeroInverse(ZeroDivisionError):
    pass


class DescriptorMismatch(ValueError):
    pass


class EvenCharacteristic(ValueError):
    pass


def factor_prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, k)`` with ``q == p**k``; raise NotPrimePower otherwise."""
    if not isinstance(q, int) or q < 2:
        raise NotPrimePower(f"{q!r} is not a prime power")
    p = next(d for d in itertools.count(2) if q % d == 0)
    k = 0
    n = q
    while n % p == 0:
        n //= p
        k += 1
    if n != 1:
        raise NotPrimePower(f"{q} is not a prime power")
    return p, k


# -- polynomials over GF(p), coefficient lists low degree first ---------------

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymod(a, m, p):
    a = _trim(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        a = _trim(a)
    return a


def _polymul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _monic_polys(degree, p):
    """Monic polynomials of the given degree, in base-p counting order."""
    for n in range(p**degree):
        coeffs = [(n // p**i) % p for i in range(degree)]
        yield coeffs + [1]


def is_irreducible(f, p) -> bool:
    """Trial division by every monic polynomial of degree <= deg(f)/2."""
    f = _trim(f)
    deg = len(f) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for g in _monic_polys(d, p):
            if not _polymod(f, g, p):
                return False
    return True


def least_irreducible(degree: int, p: int) -> tuple[int, ...]:
    for f in _monic_polys(degree, p):
        if is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("an irreducible polynomial exists in every degree")


# -- field classes ------------------------------------------------------------

class FiniteField:
    """Table-driven finite field; subclasses supply the tables."""

    q: int
    p: int
    _add: np.ndarray
    _mul: np.ndarray

    def _finish_tables(self):
        q = self.q
        self.add_table = self._add
        self.mul_table = self._mul
        self.neg_table = np.array([int(np.flatnonzero(self._add[x] == 0)[0]) for x in range(q)])
        inv = np.zeros(q, dtype=np.int64)
        for x in range(1, q):
            inv[x] = int(np.flatnonzero(self._mul[x] == 1)[0])
        self.inv_table = inv
        self.sub_table = self._add[:, self.neg_table]
        # python-level lists are much faster than numpy scalars in inner loops
        self._addl = self._add.tolist()
        self._mull = self._mul.tolist()
        self._negl = self.neg_table.tolist()
        self._invl = inv.tolist()
        self._gen = None

    # elementwise ops on codes
    def add(self, x: int, y: int) -> int:
        return self._addl[x][y]

    def sub(self, x: int, y: int) -> int:
        return self._addl[x][self._negl[y]]

    def mul(self, x: int, y: int) -> int:
        return self._mull[x][y]

    def neg(self, x: int) -> int:
        return self._negl[x]

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroInverse(f"0 has no inverse in {self}")
        return self._invl[x]

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def power(self, x: int, n: int) -> int:
        if n < 0:
            x, n = self.inv(x), -n
        r = 1
        while n:
            if n & 1:
                r = self._mull[r][x]
            x = self._mull[x][x]
            n >>= 1
        return r

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def elements(self) -> range:
        return range(self.q)

    def units(self) -> range:
        return range(1, self.q)

    def order(self, x: int) -> int:
        """Multiplicative order of a nonzero element, by exhaustive powering."""
        if x == 0:
            raise ZeroInverse("0 has no multiplicative order")
        n, y = 1, x
        while y != 1:
            y = self._mull[y][x]
            n += 1
        return n

    def units_generator(self) -> int:
        """Least element (in code order) of multiplicative order q-1."""
        if self._gen is None:
            self._gen = next(x for x in self.units() if self.order(x) == self.q - 1)
        return self._gen

    @functools.cached_property
    def log_table(self) -> dict[int, int]:
        """Discrete logarithm to the base ``units_generator()``."""
        g = self.units_generator()
        table, x = {}, 1
        for e in range(self.q - 1):
            table[x] = e
            x = self._mull[x][g]
        return table

    def log(self, x: int) -> int:
        if x == 0:
            raise ZeroInverse("log of 0")
        return self.log_table[x]

    def __call__(self, value) -> "FieldScalar":
        if isinstance(value, FieldScalar):
            if value.field != self:
                raise DescriptorMismatch(f"{value} does not belong to {self}")
            return value
        if not 0 <= value < self.q:
            raise ValueError(f"code {value} out of range for {self}")
        return FieldScalar(self, int(value))


class GF(FiniteField):
    """The field GF(p^k) modulo the least monic irreducible of degree k."""

    def __init__(self, q: int):
        p, k = factor_prime_power(q)
        self.q, self.p, self.k = q, p, k
        self.modulus = least_irreducible(k, p) if k > 1 else (0, 1)
        self._build()
        self._finish_tables()

    def coefficients(self, x: int) -> tuple[int, ...]:
        return tuple((x // self.p**i) % self.p for i in range(self.k))

    def encode(self, coeffs) -> int:
        coeffs = list(coeffs) + [0] * self.k
        return sum((c % self.p) * self.p**i for i, c in enumerate(coeffs[: self.k]))

    def _build(self):
        q, p = self.q, self.p
        polys = [self.coefficients(x) for x in range(q)]
        add = np.zeros((q, q), dtype=np.int64)
        mul = np.zeros((q, q), dtype=np.int64)
        for x in range(q):
            for y in range(q):
                add[x, y] = self.encode([(a + b) % p for a, b in zip(polys[x], polys[y])])
                prod = _polymod(_polymul(_trim(polys[x]), _trim(polys[y]), p), self.modulus, p)
                mul[x, y] = self.encode(prod)
        self._add, self._mul = add, mul

    def _key(self):
        return ("GF", self.p, self.k, self.modulus)

    def __eq__(self, other):
        return isinstance(other, FiniteField) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"GF({self.q})"

    def legendre(self, x: int) -> int:
        """Quadratic character: +1 on nonzero squares, -1 on nonsquares, 0 at 0."""
        if self.p == 2:
            raise EvenCharacteristic("the Legendre symbol needs odd q")
        if x == 0:
            return 0
        r = self.power(x, (self.q - 1) // 2)
        return 1 if r == 1 else -1

    @functools.cached_property
    def extension(self) -> "QuadraticExtension":
        return QuadraticExtension(self)


class QuadraticExtension(FiniteField):
    """GF(q^2) as GF(q)[t]/(t^2 + c1 t + c0) with the least such irreducible.

    Irreducibility of ``t^2 + c1 t + c0`` over GF(q) is decided by checking
    that it has no root in GF(q).
    """

    def __init__(self, base: GF):
        self.base = base
        q = base.q
        self.q = q * q
        self.p = base.p
        self.modulus = self._least_quadratic()
        self._build()
        self._finish_tables()

    def _least_quadratic(self):
        b = self.base
        for code in range(b.q * b.q):
            c0, c1 = code % b.q, code // b.q
            if all(b.add(b.add(b.mul(x, x), b.mul(c1, x)), c0) != 0 for x in b.elements()):
                return (c0, c1, 1)
        raise AssertionError("no irreducible quadratic found")

    def split(self, x: int) -> tuple[int, int]:
        return x % self.base.q, x // self.base.q

    def join(self, u: int, v: int) -> int:
        return u + v * self.base.q

    def _build(self):
        b, Q = self.base, self.q
        c0, c1, _ = self.modulus
        nc0, nc1 = b.neg(c0), b.neg(c1)
        add = np.zeros((Q, Q), dtype=np.int64)
        mul = np.zeros((Q, Q), dtype=np.int64)
        for x in range(Q):
            u1, v1 = self.split(x)
            for y in range(Q):
                u2, v2 = self.split(y)
                add[x, y] = self.join(b.add(u1, u2), b.add(v1, v2))
                # t^2 = -c1 t - c0
                vv = b.mul(v1, v2)
                u = b.add(b.mul(u1, u2), b.mul(vv, nc0))
                v = b.add(b.add(b.mul(u1, v2), b.mul(u2, v1)), b.mul(vv, nc1))
                mul[x, y] = self.join(u, v)
        self._add, self._mul = add, mul

    def _key(self):
        return ("GF2", self.base._key(), self.modulus)

    def __eq__(self, other):
        return isinstance(other, FiniteField) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"GF({self.base.q}^2)"

    def embed(self, x: int) -> int:
        return x

    def in_base(self, x: int) -> bool:
        return x < self.base.q

    def frobenius(self, x: int) -> int:
        return self.power(x, self.base.q)

    def norm(self, x: int) -> int:
        n = self.power(x, self.base.q + 1)
        assert self.in_base(n)
        return n

    def trace(self, x: int) -> int:
        t = self.add(x, self.frobenius(x))
        assert self.in_base(t)
        return t

    def roots_of(self, trace: int, det: int) -> tuple[int, int]:
        """Both roots of ``t^2 - trace t + det`` (coefficients in the base field)."""
        roots = [
            x for x in range(self.q)
            if self.add(self.sub(self.mul(x, x), self.mul(trace, x)), det) == 0
        ]
        if len(roots) == 1:
            roots *= 2
        assert len(roots) == 2
        return roots[0], roots[1]


@functools.lru_cache(maxsize=None)
def field_new(q: int) -> GF:
    """Field descriptor for GF(q); cached so repeated calls share tables."""
    return GF(q)


@dataclass(frozen=True)
class FieldScalar:
    """Immutable field element with operator overloading."""

    field: FiniteField
    value: int

    def _coerce(self, other) -> int:
        if isinstance(other, FieldScalar):
            if other.field != self.field:
                raise DescriptorMismatch(f"{self.field} vs {other.field}")
            return other.value
        if isinstance(other, int) and self.field.q == getattr(self.field, "p", None):
            return other % self.field.q
        raise TypeError(f"cannot combine {self!r} with {other!r}")

    def __add__(self, other):
        return FieldScalar(self.field, self.field.add(self.value, self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldScalar(self.field, self.field.sub(self.value, self._coerce(other)))

    def __mul__(self, other):
        return FieldScalar(self.field, self.field.mul(self.value, self._coerce(other)))

    __rmul__ = __mul__

    def __neg__(self):
        return FieldScalar(self.field, self.field.neg(self.value))

    def inverse(self):
        return FieldScalar(self.field, self.field.inv(self.value))

    def __truediv__(self, other):
        return self * FieldScalar(self.field, self._coerce(other)).inverse()

    def __pow__(self, n: int):
        return FieldScalar(self.field, self.field.power(self.value, n))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.field!r}({self.value})"


def arith(op: str, x: FieldScalar, y: FieldScalar | None = None) -> FieldScalar:
    """Dispatch ``add``, ``mul``, ``neg``, ``inv`` on field scalars."""
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    if op == "neg":
        return -x
    if op == "inv":
        return x.inverse()
    raise ValueError(f"unknown op {op!r}")
