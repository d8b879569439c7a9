"""Exact arithmetic in GF(p^m), polynomials over it, and x^n - 1 machinery.

Field elements are encoded as integers in [0, q).  For GF(p^m) with modulus
basis 1, X, ..., X^(m-1), the element with coordinates (c_0, ..., c_{m-1})
has code c_0 + c_1*p + ... + c_{m-1}*p^(m-1).  The same digit encoding is
reused for extension towers GF(q^d) built over an inner base field, with p
replaced by q.  All "first element satisfying P" choices scan codes in
ascending order, so every construction here is deterministic.

Polynomials are coefficient tuples in ascending degree with trailing zeros
trimmed.  The canonical order on monic polynomials of equal degree compares
coefficients from the leading end down, i.e. it coincides with the ascending
order of the integer encoding sum(c_i * q^i) + q^deg.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Iterator, Optional, Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    GcdViolation,
    NotPrime,
    Overflow,
    ReducibleModulus,
)

# Splitting fields GF(q^d) are rejected beyond this size.  Python integers are
# unbounded, so the cap is a sanity policy, chosen large enough for every
# grid this package enumerates (e.g. GF(13^30) for n = 31 over GF(13)).
MAX_FIELD_SIZE = 1 << 128

# Lookup tables are only built for fields small enough to enumerate.
MAX_TABLE_SIZE = 4096


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime divisors of n in ascending order."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


class Tables:
    """Dense numpy lookup tables for a small field."""

    def __init__(self, field: "Field"):
        q = field.q
        if q > MAX_TABLE_SIZE:
            raise Overflow(f"field of size {q} too large for lookup tables")
        dtype = np.int64
        add = np.empty((q, q), dtype=dtype)
        mul = np.empty((q, q), dtype=dtype)
        for a in range(q):
            for b in range(a, q):
                s = field.add(a, b)
                m = field.mul(a, b)
                add[a, b] = add[b, a] = s
                mul[a, b] = mul[b, a] = m
        neg = np.array([field.neg(a) for a in range(q)], dtype=dtype)
        inv = np.zeros(q, dtype=dtype)
        for a in range(1, q):
            inv[a] = field.inv(a)
        self.add = add
        self.mul = mul
        self.neg = neg
        self.inv = inv


class Field:
    """Common interface: arithmetic on integer-coded elements of GF(q)."""

    p: int
    m: int
    q: int
    modulus: "Poly"

    _tables: Optional[Tables] = None

    def add(self, a: int, b: int) -> int:
        raise NotImplementedError

    def mul(self, a: int, b: int) -> int:
        raise NotImplementedError

    def neg(self, a: int) -> int:
        raise NotImplementedError

    def inv(self, a: int) -> int:
        raise NotImplementedError

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def elements(self) -> range:
        return range(self.q)

    def from_int(self, c: int) -> int:
        """Reduce an ordinary integer into the prime subfield GF(p)."""
        return c % self.p

    def tables(self) -> Tables:
        if self._tables is None:
            self._tables = Tables(self)
        return self._tables

    def coeffs_of(self, a: int) -> tuple[int, ...]:
        """Base-p digits of the code, i.e. polynomial coordinates."""
        out = []
        for _ in range(self.m):
            out.append(a % self.p)
            a //= self.p
        return tuple(out)

    def __repr__(self):
        return f"GF({self.q})"


class PrimeField(Field):
    """GF(p) with elements 0..p-1 and mod-p arithmetic."""

    def __init__(self, p: int):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        self.p = p
        self.m = 1
        self.q = p
        self.modulus = Poly(self, (0, 1))  # the degree-1 convention X - 0

    def add(self, a, b):
        return (a + b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, self.p - 2, self.p)


class ExtField(Field):
    """GF(q0^d) built as base[X]/(modulus), elements coded in base-q0 digits."""

    def __init__(self, base: Field, modulus: "Poly", check: bool = True):
        if modulus.field is not base:
            raise DimensionMismatch("modulus must be a polynomial over the base field")
        d = modulus.degree
        if d < 1 or modulus.coeffs[-1] != base.one:
            raise ReducibleModulus("modulus must be monic of degree >= 1")
        size = base.q**d
        if size > MAX_FIELD_SIZE:
            raise Overflow(f"field of size {base.q}^{d} exceeds the supported limit")
        if check and not modulus.is_irreducible():
            raise ReducibleModulus(f"{modulus} is reducible over GF({base.q})")
        self.base = base
        self.degree = d
        self.p = base.p
        self.m = base.m * d
        self.q = size
        self.modulus = modulus
        # x^(d+k) mod modulus for k = 0..d-2, used to fold products.
        red = []
        xd = [base.neg(c) for c in modulus.coeffs[:-1]]
        row = list(xd)
        red.append(tuple(row))
        for _ in range(d - 2):
            row = [base.zero] + row
            top = row.pop()
            row = [base.add(c, base.mul(top, r)) for c, r in zip(row, xd)]
            red.append(tuple(row))
        self._reduction = red

    def decode(self, a: int) -> list[int]:
        q0 = self.base.q
        out = []
        for _ in range(self.degree):
            out.append(a % q0)
            a //= q0
        return out

    def encode(self, digits: Sequence[int]) -> int:
        q0 = self.base.q
        a = 0
        for c in reversed(digits):
            a = a * q0 + c
        return a

    def lift(self, c: int) -> int:
        """Embed a base-field code as a constant of the extension."""
        return c

    def add(self, a, b):
        F = self.base
        return self.encode([F.add(x, y) for x, y in zip(self.decode(a), self.decode(b))])

    def neg(self, a):
        F = self.base
        return self.encode([F.neg(x) for x in self.decode(a)])

    def mul(self, a, b):
        F = self.base
        d = self.degree
        da, db = self.decode(a), self.decode(b)
        prod = [F.zero] * (2 * d - 1)
        for i, x in enumerate(da):
            if x == 0:
                continue
            for j, y in enumerate(db):
                if y:
                    prod[i + j] = F.add(prod[i + j], F.mul(x, y))
        low = prod[:d]
        for k in range(d - 1):
            top = prod[d + k]
            if top:
                row = self._reduction[k]
                low = [F.add(c, F.mul(top, r)) for c, r in zip(low, row)]
        return self.encode(low)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return self.pow(a, self.q - 2)


class Poly:
    """Polynomial over a Field; coefficients ascending, trailing zeros trimmed."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: Sequence[int]):
        k = len(coeffs)
        while k > 0 and coeffs[k - 1] == 0:
            k -= 1
        self.field = field
        self.coeffs = tuple(coeffs[:k])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # zero polynomial gets -1

    def is_zero(self) -> bool:
        return not self.coeffs

    @classmethod
    def zero(cls, field):
        return cls(field, ())

    @classmethod
    def one(cls, field):
        return cls(field, (field.one,))

    @classmethod
    def x(cls, field):
        return cls(field, (field.zero, field.one))

    @classmethod
    def x_pow_n_minus_1(cls, field, n: int):
        c = [field.zero] * (n + 1)
        c[0] = field.neg(field.one)
        c[n] = field.one
        return cls(field, c)

    def _check(self, other: "Poly"):
        if self.field is not other.field:
            raise DimensionMismatch("polynomials over different fields")

    def __eq__(self, other):
        return isinstance(other, Poly) and self.field is other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((id(self.field), self.coeffs))

    def __add__(self, other):
        self._check(other)
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = F.add(out[i], c)
        return Poly(F, out)

    def __neg__(self):
        F = self.field
        return Poly(F, [F.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        F = self.field
        if self.is_zero() or other.is_zero():
            return Poly.zero(F)
        out = [F.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x == 0:
                continue
            for j, y in enumerate(other.coeffs):
                if y:
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
        return Poly(F, out)

    def scale(self, c: int) -> "Poly":
        F = self.field
        return Poly(F, [F.mul(c, a) for a in self.coeffs])

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        self._check(other)
        F = self.field
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        d = other.degree
        lead_inv = F.inv(other.coeffs[-1])
        quo = [F.zero] * max(0, len(rem) - d)
        for i in range(len(rem) - d - 1, -1, -1):
            c = F.mul(rem[i + d], lead_inv)
            if c == 0:
                continue
            quo[i] = c
            for j, oc in enumerate(other.coeffs):
                rem[i + j] = F.sub(rem[i + j], F.mul(c, oc))
        return Poly(F, quo), Poly(F, rem[:d])

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.coeffs[-1]))

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic() if not a.is_zero() else a

    def ext_gcd(self, other: "Poly") -> tuple["Poly", "Poly", "Poly"]:
        """Return (g, s, t) with s*self + t*other = g, g monic."""
        F = self.field
        r0, r1 = self, other
        s0, s1 = Poly.one(F), Poly.zero(F)
        t0, t1 = Poly.zero(F), Poly.one(F)
        while not r1.is_zero():
            q, r = r0.divmod(r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        if r0.is_zero():
            return r0, s0, t0
        c = F.inv(r0.coeffs[-1])
        return r0.scale(c), s0.scale(c), t0.scale(c)

    def eval(self, a: int) -> int:
        F = self.field
        out = F.zero
        for c in reversed(self.coeffs):
            out = F.add(F.mul(out, a), c)
        return out

    def pow_mod(self, e: int, modulus: "Poly") -> "Poly":
        result = Poly.one(self.field)
        base = self % modulus
        while e:
            if e & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            e >>= 1
        return result

    def is_irreducible(self) -> bool:
        """Rabin's test; assumes self is monic of degree >= 1."""
        F = self.field
        d = self.degree
        if d < 1:
            return False
        if d == 1:
            return True
        x = Poly.x(F)
        # x^(q^d) = x mod f
        if x.pow_mod(F.q**d, self) != x % self:
            return False
        for r in prime_factors(d):
            h = x.pow_mod(F.q ** (d // r), self) - x
            if self.gcd(h).degree != 0:
                return False
        return True

    def __repr__(self):
        if self.is_zero():
            return "Poly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}*x^{i}" if i else f"{c}")
        return "Poly(" + " + ".join(terms) + ")"


def smallest_irreducible(field: Field, degree: int) -> Poly:
    """Canonically smallest monic irreducible of the given degree.

    Candidates x^degree + sum(c_i x^i) are scanned by the integer encoding
    sum(c_i q^i) ascending, which orders coefficient tuples leading-end first.
    """
    q = field.q
    if degree == 1:
        return Poly.x(field)  # X itself; any monic linear is irreducible
    for code in range(q**degree):
        coeffs = []
        c = code
        for _ in range(degree):
            coeffs.append(c % q)
            c //= q
        coeffs.append(field.one)
        f = Poly(field, coeffs)
        if f.is_irreducible():
            return f
    raise AssertionError("no irreducible polynomial found (impossible)")


def field_make(p: int, m: int = 1, modulus: Optional[Poly] = None) -> Field:
    """Construct GF(p^m); selects the canonical modulus when none is given."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if m < 1:
        raise ReducibleModulus("extension degree must be >= 1")
    if p**m > MAX_FIELD_SIZE:
        raise Overflow(f"{p}^{m} exceeds the supported field size")
    if m == 1:
        F = PrimeField(p)
        if modulus is not None and modulus.degree != 1:
            raise ReducibleModulus("modulus must be monic of degree 1 for a prime field")
        return F
    base = PrimeField(p)
    if modulus is None:
        modulus = smallest_irreducible(base, m)
        return ExtField(base, modulus, check=False)
    modulus = Poly(base, modulus.coeffs)  # rebind onto this base instance
    if modulus.degree != m or modulus.coeffs[-1] != base.one:
        raise ReducibleModulus(f"modulus must be monic of degree {m}")
    return ExtField(base, modulus, check=True)


@lru_cache(maxsize=None)
def _field_cached(p: int, m: int) -> Field:
    return field_make(p, m)


def field_from_order(q: int) -> Field:
    """GF(q) for a prime power q, with the canonical modulus."""
    if q < 2:
        raise NotPrime(f"{q} is not a prime power")
    p = prime_factors(q)[0]
    m = 0
    t = q
    while t % p == 0 and t > 1:
        t //= p
        m += 1
    if t != 1:
        raise NotPrime(f"{q} is not a prime power")
    return _field_cached(p, m)


def mult_order(q: int, n: int) -> int:
    """Smallest t >= 1 with q^t = 1 mod n."""
    if n <= 1:
        raise GcdViolation("n must exceed 1")
    if math.gcd(n, q) != 1:
        raise GcdViolation(f"gcd({n}, {q}) != 1")
    t = 1
    x = q % n
    while x != 1:
        x = (x * q) % n
        t += 1
    return t


def cyclotomic_cosets(n: int, q: int) -> list[list[int]]:
    """q-cyclotomic cosets of Z_n, each in orbit order starting at its minimum."""
    if math.gcd(n, q) != 1:
        raise GcdViolation(f"gcd({n}, {q}) != 1")
    seen = [False] * n
    out = []
    for s in range(n):
        if seen[s]:
            continue
        orbit = []
        x = s
        while not seen[x]:
            seen[x] = True
            orbit.append(x)
            x = (x * q) % n
        out.append(orbit)
    return out


def _poly_sort_key(f: Poly):
    # degree, then coefficients from the leading end down
    return (f.degree, tuple(reversed(f.coeffs)))


def _element_of_order(E: Field, n: int) -> int:
    """First element (by code) of multiplicative order exactly n."""
    cof = (E.q - 1) // n
    checks = [n // r for r in prime_factors(n)]
    for x in range(2, E.q):
        y = E.pow(x, cof)
        if y == E.one:
            continue
        if all(E.pow(y, c) != E.one for c in checks):
            return y
    raise AssertionError("no element of the requested order (impossible)")


def factor_xn_minus_1_with_cosets(n: int, field: Field) -> list[tuple[Poly, list[int]]]:
    """Irreducible factors of x^n - 1 paired with their cyclotomic cosets.

    The factor with root 1 comes first; the rest follow the canonical
    polynomial order.  Factors are minimal polynomials of zeta^s computed in
    the splitting field GF(q^d), d = ord_n(q).
    """
    q = field.q
    if n < 1 or n % 2 == 0:
        raise GcdViolation(f"n must be a positive odd integer, got {n}")
    if math.gcd(n, q) != 1:
        raise GcdViolation(f"gcd({n}, {q}) != 1")
    x_minus_1 = Poly(field, (field.neg(field.one), field.one))
    if n == 1:
        return [(x_minus_1, [0])]
    cosets = cyclotomic_cosets(n, q)
    d = mult_order(q, n)
    if field.q**d > MAX_FIELD_SIZE:
        raise Overflow(f"splitting field GF({q}^{d}) exceeds the supported size")
    if d == 1:
        E: Field = field
        zeta = _element_of_order(field, n)
    else:
        E = ExtField(field, smallest_irreducible(field, d), check=False)
        zeta = _element_of_order(E, n)
    zpow = [E.one]
    for _ in range(n - 1):
        zpow.append(E.mul(zpow[-1], zeta))

    pairs = []
    for coset in cosets:
        f = Poly.one(E)
        for s in coset:
            f = f * Poly(E, (E.neg(zpow[s]), E.one))
        if E is field:
            g = Poly(field, f.coeffs)
        else:
            digits = [E.decode(c) for c in f.coeffs]
            assert all(all(dd == 0 for dd in ds[1:]) for ds in digits), "factor not over GF(q)"
            g = Poly(field, [ds[0] for ds in digits])
        pairs.append((g, coset))

    prod = Poly.one(field)
    for g, _ in pairs:
        prod = prod * g
    assert prod == Poly.x_pow_n_minus_1(field, n), "factor product mismatch"

    head = [pc for pc in pairs if pc[1] == [0]]
    tail = sorted((pc for pc in pairs if pc[1] != [0]), key=lambda pc: _poly_sort_key(pc[0]))
    assert head[0][0] == x_minus_1
    return head + tail


def factor_xn_minus_1(n: int, field: Field) -> list[Poly]:
    return [f for f, _ in factor_xn_minus_1_with_cosets(n, field)]


def sqrt_minus_one(field: Field) -> Optional[int]:
    """First r (by code) with r^2 = -1, or None when q = 3 mod 4."""
    target = field.neg(field.one)
    for r in field.elements():
        if field.mul(r, r) == target:
            return r
    return None
