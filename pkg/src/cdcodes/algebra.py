"""Twisted dihedral group algebras and their block decomposition.

One implementation covers both algebras of interest, parameterized by the
sign tw of v^2: tw = -1 gives the consta-dihedral algebra (relations
u^n = 1, v^2 = -1, v u = u^-1 v), tw = +1 the ordinary dihedral group
algebra.  The bar anti-automorphism sends v to tw * v, and in characteristic
2 the two algebras coincide.

Elements are pairs (a, b) of cyclic-algebra elements meaning a + b*v.  The
decomposition splits the algebra into the 2-dimensional block on the trivial
idempotent e_0 plus one 4k-dimensional block per conjugate idempotent pair
(matrix algebra over F_t = FHe) or per self-conjugate idempotent (matrix
algebra over the bar-fixed index-2 subfield of FHe), together with explicit
isomorphisms to 2x2 matrices.

Canonical element order inside a subfield of FH: coordinates over the RREF
basis of the subfield, encoded as sum(code_i * q^i) with basis vector 0 least
significant.  Every "first element such that ..." scan below uses this order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from typing import Iterator, Optional, Sequence

import numpy as np

from . import linalg
from .cyclic import CyclicElem, IdempotentSet, conj_pairing, lambda_n, primitive_idempotents
from .errors import (
    DegenerateG,
    DimensionMismatch,
    GcdViolation,
    NotInComponent,
    NotPaired,
)
from .field import Field, sqrt_minus_one

TRIVIAL_FIELD = "trivial_field"
TRIVIAL_SPLIT = "trivial_split"
PAIRED = "paired"
SELF_CONJ = "self_conj"


class AlgElem:
    """a + b*v in a twisted dihedral algebra; immutable."""

    __slots__ = ("alg", "a", "b")

    def __init__(self, alg: "TwistedDihedralAlgebra", a: CyclicElem, b: CyclicElem):
        self.alg = alg
        self.a = a
        self.b = b

    def _check(self, other: "AlgElem"):
        if self.alg is not other.alg:
            raise DimensionMismatch("elements of different algebras")

    def __add__(self, other):
        self._check(other)
        return AlgElem(self.alg, self.a + other.a, self.b + other.b)

    def __neg__(self):
        return AlgElem(self.alg, -self.a, -self.b)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        # (a + b v)(c + d v) = (ac + tw * b bar(d)) + (ad + b bar(c)) v
        self._check(other)
        alg = self.alg
        a, b, c, d = self.a, self.b, other.a, other.b
        part_a = a * c + (b * d.bar()).scale(alg.tw_code)
        part_b = a * d + b * c.bar()
        return AlgElem(alg, part_a, part_b)

    def bar(self) -> "AlgElem":
        return AlgElem(self.alg, self.a.bar(), self.b.scale(self.alg.tw_code))

    def sigma(self) -> int:
        """Coefficient of u^0 v^0."""
        return self.a.coeffs[0]

    def inner(self, other: "AlgElem") -> int:
        self._check(other)
        F = self.alg.field
        out = F.zero
        for x, y in zip(self.a.coeffs + self.b.coeffs, other.a.coeffs + other.b.coeffs):
            out = F.add(out, F.mul(x, y))
        return out

    def scale(self, c: int) -> "AlgElem":
        return AlgElem(self.alg, self.a.scale(c), self.b.scale(c))

    def left_u(self) -> "AlgElem":
        """u * self (cheap shift form)."""
        return AlgElem(self.alg, self.a.shift(1), self.b.shift(1))

    def left_v(self) -> "AlgElem":
        """v * self = tw*bar(b) + bar(a) v."""
        return AlgElem(self.alg, self.b.bar().scale(self.alg.tw_code), self.a.bar())

    def to_word(self) -> tuple[int, ...]:
        return self.a.coeffs + self.b.coeffs

    def is_zero(self) -> bool:
        return self.a.is_zero() and self.b.is_zero()

    def __eq__(self, other):
        return (
            isinstance(other, AlgElem)
            and self.alg is other.alg
            and self.a == other.a
            and self.b == other.b
        )

    def __hash__(self):
        return hash((id(self.alg), self.a.coeffs, self.b.coeffs))

    def __repr__(self):
        return f"AlgElem(a={list(self.a.coeffs)}, b={list(self.b.coeffs)})"


class SubfieldView:
    """A subfield of FH given by an identity idempotent and an RREF basis.

    Elements are CyclicElems; the view supplies identity-aware inversion,
    membership, and the canonical integer encoding of coordinates.
    """

    def __init__(self, field: Field, n: int, identity: CyclicElem, span: Sequence[CyclicElem], label: str = ""):
        self.field = field
        self.n = n
        self.identity = identity
        R, pivots = linalg.rref(field, np.array([list(v.coeffs) for v in span], dtype=np.int64))
        self.basis = tuple(CyclicElem(field, row.tolist()) for row in R)
        self._R = R
        self._pivots = pivots
        self.dim = len(self.basis)
        self.order = field.q**self.dim
        self.label = label

    @property
    def zero(self) -> CyclicElem:
        return CyclicElem.zero(self.field, self.n)

    def contains(self, y: CyclicElem) -> bool:
        return linalg.in_row_space(self.field, self._R, self._pivots, list(y.coeffs))

    def code_of(self, y: CyclicElem, check: bool = True) -> int:
        """Coordinate encoding; with check=True raises if y is outside."""
        coords = [y.coeffs[p] for p in self._pivots]
        code = 0
        for c in reversed(coords):
            code = code * self.field.q + c
        if check and self.element(code) != y:
            raise NotInComponent("element outside the subfield")
        return code

    def element(self, code: int) -> CyclicElem:
        q = self.field.q
        out = self.zero
        for b in self.basis:
            d = code % q
            code //= q
            if d:
                out = out + b.scale(d)
        return out

    def elements(self) -> Iterator[CyclicElem]:
        for code in range(self.order):
            yield self.element(code)

    def inv(self, y: CyclicElem) -> CyclicElem:
        if y.is_zero():
            raise ZeroDivisionError("inverse of 0")
        return y.pow(self.order - 2)

    def __repr__(self):
        return f"SubfieldView({self.label or 'dim %d' % self.dim}, |F|={self.order})"


class Mat2:
    """2x2 matrix with entries constrained to a SubfieldView of FH."""

    __slots__ = ("ft", "entries")

    def __init__(self, ft: SubfieldView, entries):
        self.ft = ft
        (a, b), (c, d) = entries
        self.entries = ((a, b), (c, d))

    @classmethod
    def identity(cls, ft: SubfieldView):
        z = ft.zero
        return cls(ft, ((ft.identity, z), (z, ft.identity)))

    @classmethod
    def zero(cls, ft: SubfieldView):
        z = ft.zero
        return cls(ft, ((z, z), (z, z)))

    def __add__(self, other):
        (a, b), (c, d) = self.entries
        (e, f), (g, h) = other.entries
        return Mat2(self.ft, ((a + e, b + f), (c + g, d + h)))

    def __neg__(self):
        (a, b), (c, d) = self.entries
        return Mat2(self.ft, ((-a, -b), (-c, -d)))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        (a, b), (c, d) = self.entries
        (e, f), (g, h) = other.entries
        return Mat2(
            self.ft,
            (
                (a * e + b * g, a * f + b * h),
                (c * e + d * g, c * f + d * h),
            ),
        )

    def scaled(self, s: CyclicElem) -> "Mat2":
        (a, b), (c, d) = self.entries
        return Mat2(self.ft, ((s * a, s * b), (s * c, s * d)))

    def __eq__(self, other):
        return isinstance(other, Mat2) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def is_zero(self) -> bool:
        (a, b), (c, d) = self.entries
        return a.is_zero() and b.is_zero() and c.is_zero() and d.is_zero()

    def vec(self):
        (a, b), (c, d) = self.entries
        return [a, b, c, d]

    def __repr__(self):
        return f"Mat2({self.entries!r})"


def _ft_mat_inv(ft: SubfieldView, rows: list[list[CyclicElem]]) -> list[list[CyclicElem]]:
    """Gauss-Jordan inverse of a small matrix with entries in a subfield."""
    k = len(rows)
    aug = [list(r) + [ft.identity if i == j else ft.zero for j in range(k)] for i, r in enumerate(rows)]
    for c in range(k):
        piv = next(i for i in range(c, k) if not aug[i][c].is_zero())
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = ft.inv(aug[c][c])
        aug[c] = [inv * x for x in aug[c]]
        for i in range(k):
            if i != c and not aug[i][c].is_zero():
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return [r[k:] for r in aug]


def sqrt_min(ft: SubfieldView, a: CyclicElem) -> Optional[CyclicElem]:
    """Smallest square root of a in the subfield, or None for non-squares.

    Even order: the Frobenius inverse a^(order/2).  Odd order: Euler test,
    then a^((order+1)/4) when order = 3 mod 4, Tonelli-Shanks otherwise,
    with the non-residue chosen as the first one in canonical order; of the
    two roots +-t the one with the smaller code is returned, which equals
    the first root an ascending scan would find.
    """
    if a.is_zero():
        return ft.zero
    e = ft.identity
    order = ft.order
    if order % 2 == 0:
        return a.pow(order // 2)
    if a.pow((order - 1) // 2) != e:
        return None
    if order % 4 == 3:
        t = a.pow((order + 1) // 4)
    else:
        Q, S = order - 1, 0
        while Q % 2 == 0:
            Q //= 2
            S += 1
        z = None
        for code in range(1, order):
            cand = ft.element(code)
            if cand.pow((order - 1) // 2) == -e:
                z = cand
                break
        assert z is not None
        M, c, t_val, r = S, z.pow(Q), a.pow(Q), a.pow((Q + 1) // 2)
        while t_val != e:
            i, t2 = 0, t_val
            while t2 != e:
                t2 = t2 * t2
                i += 1
            b = c
            for _ in range(M - i - 1):
                b = b * b
            M, c, t_val, r = i, b * b, t_val * (b * b), r * b
        t = r
    mt = -t
    return t if ft.code_of(t, check=False) <= ft.code_of(mt, check=False) else mt


def solve_norm_equation(
    ft: SubfieldView, g: CyclicElem, rhs: Optional[CyclicElem] = None
) -> tuple[CyclicElem, CyclicElem]:
    """First (s, s') in scan order with s^2 + g s s' + s'^2 = rhs in ft.

    rhs defaults to -1.  Candidates with s' = 0 are preferred; for rhs = -1
    such a solution exists iff the subfield has even order or order = 1 mod 4.
    Afterwards s' is scanned in canonical order; completing the square turns
    each s' into a root extraction, so the returned s is the smaller of the
    two admissible values, exactly as an ascending scan would produce.
    """
    e = ft.identity
    two = e + e
    if g == two or g == -two:
        raise DegenerateG("g = +-2 makes X^2 + gX + 1 split")
    if rhs is None:
        rhs = -e
    t0 = sqrt_min(ft, rhs)
    if t0 is not None:
        return t0, ft.zero
    # characteristic 2 always admits s' = 0 (squaring is bijective)
    assert ft.field.p != 2
    inv2 = ft.inv(two)
    b = e - g * g * (inv2 * inv2)
    half_g = g * inv2
    for code in range(1, ft.order):
        sp = ft.element(code)
        t = sqrt_min(ft, rhs - b * (sp * sp))
        if t is not None:
            cand = [t - half_g * sp, -t - half_g * sp]
            cand.sort(key=lambda z: ft.code_of(z, check=False))
            return cand[0], sp
    raise AssertionError("norm equation has no solution (impossible)")


class Component:
    """One block A_t of the decomposition, with its isomorphism data."""

    def __init__(self, alg: "TwistedDihedralAlgebra", index: int, kind: str, idem_indices: tuple[int, ...]):
        self.alg = alg
        self.index = index
        self.kind = kind
        self.idem_indices = idem_indices
        idems = alg.idempotents().idems
        F = alg.field
        n = alg.n
        self.r: Optional[int] = None
        self.g = self.s = self.s_prime = None
        self.ft: Optional[SubfieldView] = None
        self.ebar: Optional[CyclicElem] = None

        if kind in (TRIVIAL_FIELD, TRIVIAL_SPLIT):
            self.e = idems[0]
            self.k = None
            self.dim = 2
            self.identity = alg.embed_fh(self.e)
            if kind == TRIVIAL_SPLIT:
                r = alg.sqrt_of_v_sq()
                assert r is not None
                self.r = r
            return

        i = idem_indices[0]
        self.e = idems[i]
        ue = self.e.shift(1)
        fhe_span = [self.e]
        x = self.e
        for _ in range(n - 1):
            x = x.shift(1)
            fhe_span.append(x)
        self.fhe = SubfieldView(F, n, self.e, fhe_span, label=f"FHe[{i}]")
        self.ue = ue
        self.uinv_e = self.e.shift(-1)

        if kind == PAIRED:
            j = idem_indices[1]
            self.ebar = idems[j]
            self.k = self.fhe.dim
            self.dim = 4 * self.k
            self.ft = self.fhe
            self.identity = alg.embed_fh(self.e + self.ebar)
            return

        # self-conjugate: F_t = bar-fixed subfield of FHe, spanned by traces
        assert kind == SELF_CONJ
        assert self.e.bar() == self.e
        span = [y + y.bar() for y in fhe_span]
        if F.p == 2:
            span.append(self.e)  # char 2: e itself is bar-fixed, traces may miss it
        ftv = SubfieldView(F, n, self.e, span, label=f"Fix(FHe[{i}])")
        self.ft = ftv
        self.k = ftv.dim
        self.dim = 4 * self.k
        assert self.fhe.dim == 2 * self.k
        self.identity = alg.embed_fh(self.e)
        # g from the minimal polynomial X^2 + gX + 1 of ue over F_t.
        # (ve)^2 = tw e, so nu must satisfy nu^2 = tw eps, which pins the
        # norm-equation right-hand side to tw (i.e. -1 consta, +1 dihedral).
        self.g = -(ue + self.uinv_e)
        assert ftv.contains(self.g)
        self.s, self.s_prime = solve_norm_equation(ftv, self.g, rhs=self.e.scale(alg.tw_code))
        self._diff_inv = self.fhe.inv(ue - self.uinv_e)
        z = ftv.zero
        self.epsilon = Mat2.identity(ftv)
        self.eta = Mat2(ftv, ((-self.g, self.e), (-self.e, z)))
        sgsp = self.s * self.g + self.s_prime
        self.nu = Mat2(ftv, ((self.s, self.s_prime), (sgsp, -self.s)))
        self.eta_nu = self.eta * self.nu
        basis = [self.epsilon, self.eta, self.nu, self.eta_nu]
        cols = [m.vec() for m in basis]
        rows = [[cols[j][i] for j in range(4)] for i in range(4)]
        self._b_inv = _ft_mat_inv(ftv, rows)

    # -- membership ---------------------------------------------------------

    def contains(self, x: AlgElem) -> bool:
        return self.identity * x == x

    def project(self, x: AlgElem) -> AlgElem:
        """The A_t-component 1_At * x."""
        return self.identity * x

    # -- matrix isomorphisms -------------------------------------------------

    def _require(self, kinds):
        if self.kind not in kinds:
            if kinds == (PAIRED,):
                raise NotPaired(f"block {self.index} is {self.kind}")
            raise NotInComponent(f"block {self.index} is {self.kind}")

    def iso_to_mat2(self, x: AlgElem) -> Mat2:
        self._require((PAIRED, SELF_CONJ))
        if not self.contains(x):
            raise NotInComponent("element not in this block")
        if self.kind == PAIRED:
            # matrix (a11 a12; a21 a22) <-> a11 e + sign a12 e v + bar(a21) ebar v + bar(a22) ebar
            sign = self.alg.tw_code
            e = self.e
            eb = self.ebar
            a11 = x.a * e
            a22 = x.a.bar() * e
            a12 = (x.b * e).scale(sign)
            a21 = x.b.bar() * e
            return Mat2(self.ft, ((a11, a12), (a21, a22)))
        a, b = self._split_ft(x.a)
        c, d = self._split_ft(x.b)
        M = self.epsilon.scaled(a) + self.eta.scaled(b) + self.nu.scaled(c) + self.eta_nu.scaled(d)
        return M

    def iso_from_mat2(self, M: Mat2) -> AlgElem:
        self._require((PAIRED, SELF_CONJ))
        if self.kind == PAIRED:
            sign = self.alg.tw_code
            (a11, a12), (a21, a22) = M.entries
            part_a = a11 + a22.bar()
            part_b = a12.scale(sign) + a21.bar()
            return AlgElem(self.alg, part_a, part_b)
        v = M.vec()
        coeffs = []
        for row in self._b_inv:
            acc = self.ft.zero
            for r, x in zip(row, v):
                acc = acc + r * x
            coeffs.append(acc)
        a, b, c, d = coeffs
        return AlgElem(self.alg, a + b * self.ue, c + d * self.ue)

    def _split_ft(self, y: CyclicElem) -> tuple[CyclicElem, CyclicElem]:
        """Write y in FHe as alpha + beta * ue with alpha, beta in F_t."""
        beta = (y - y.bar()) * self._diff_inv
        alpha = y - beta * self.ue
        return alpha, beta

    def bar_via_matrix(self, M: Mat2) -> Mat2:
        """Matrix form of the bar map on a paired block.

        Consta case: (a11 a12; a21 a22) -> (a22 -a12; -a21 a11); the dihedral
        analogue keeps the off-diagonal signs.
        """
        self._require((PAIRED,))
        sign = self.alg.tw_code
        (a11, a12), (a21, a22) = M.entries
        return Mat2(self.ft, ((a22, a12.scale(sign)), (a21.scale(sign), a11)))

    def __repr__(self):
        return f"Component(t={self.index}, {self.kind}, k={self.k})"


class TwistedDihedralAlgebra:
    """F-algebra on u, v with u^n = 1, v^2 = tw, v u = u^-1 v."""

    def __init__(self, field: Field, n: int, tw: int):
        if n < 1:
            raise GcdViolation("n must be a positive integer")
        if tw not in (1, -1):
            raise ValueError("tw must be +1 or -1")
        self.field = field
        self.n = n
        self.tw = tw
        self.tw_code = field.one if tw == 1 else field.neg(field.one)
        self._idems: Optional[IdempotentSet] = None
        self._components: Optional[list[Component]] = None

    # -- element constructors -------------------------------------------------

    def elem(self, a: CyclicElem, b: CyclicElem) -> AlgElem:
        return AlgElem(self, a, b)

    def embed_fh(self, a: CyclicElem) -> AlgElem:
        return AlgElem(self, a, CyclicElem.zero(self.field, self.n))

    def zero(self) -> AlgElem:
        z = CyclicElem.zero(self.field, self.n)
        return AlgElem(self, z, z)

    def one(self) -> AlgElem:
        return self.embed_fh(CyclicElem.one(self.field, self.n))

    def u(self, k: int = 1) -> AlgElem:
        return self.embed_fh(CyclicElem.u_power(self.field, self.n, k))

    def v(self) -> AlgElem:
        return AlgElem(self, CyclicElem.zero(self.field, self.n), CyclicElem.one(self.field, self.n))

    def from_word(self, word: Sequence[int]) -> AlgElem:
        n = self.n
        if len(word) != 2 * n:
            raise DimensionMismatch(f"word length must be {2 * n}")
        return AlgElem(self, CyclicElem(self.field, word[:n]), CyclicElem(self.field, word[n:]))

    def random_elem(self, rng) -> AlgElem:
        q = self.field.q
        return self.from_word([rng.randrange(q) for _ in range(2 * self.n)])

    # -- structure -------------------------------------------------------------

    def sqrt_of_v_sq(self) -> Optional[int]:
        """First r with r^2 = v^2 (i.e. r^2 = -1 consta, r^2 = 1 dihedral)."""
        if self.tw == 1:
            return self.field.one
        return sqrt_minus_one(self.field)

    def idempotents(self) -> IdempotentSet:
        if self._idems is None:
            self._check_semisimple()
            self._idems = primitive_idempotents(self.n, self.field)
        return self._idems

    def _check_semisimple(self):
        if self.n <= 1 or self.n % 2 == 0:
            raise GcdViolation(f"decomposition requires odd n > 1, got n={self.n}")
        if math.gcd(self.n, self.field.q) != 1:
            raise GcdViolation(f"gcd(n={self.n}, q={self.field.q}) != 1")

    def lambda_(self) -> int:
        self._check_semisimple()
        return lambda_n(self.n, self.field.q)

    def decompose(self) -> list[Component]:
        """Blocks A_0, A_1, ..., A_m in canonical idempotent order."""
        if self._components is not None:
            return self._components
        idem_set = self.idempotents()
        pairing = conj_pairing(idem_set)
        comps: list[Component] = []
        kind0 = TRIVIAL_SPLIT if self.sqrt_of_v_sq() is not None else TRIVIAL_FIELD
        comps.append(Component(self, 0, kind0, (0,)))
        t = 1
        for i in range(1, len(idem_set)):
            j = pairing[i]
            if j == i:
                comps.append(Component(self, t, SELF_CONJ, (i,)))
                t += 1
            elif j > i:
                comps.append(Component(self, t, PAIRED, (i, j)))
                t += 1
        # Corollary-style accounting: sum of dims = 2n, k-sum = (n-1)/2,
        # every block dimension at least 2*lambda(n)
        assert sum(c.dim for c in comps) == 2 * self.n
        ksum = sum(c.k for c in comps[1:])
        assert 2 * ksum == self.n - 1, "k-sum accounting failed"
        lam = self.lambda_()
        assert all(2 * c.k >= lam for c in comps[1:]), "2k_t >= lambda(n) failed"
        # orthogonality of the block identities
        total = self.zero()
        for c in comps:
            total = total + c.identity
        assert total == self.one()
        for ci in comps:
            for cj in comps:
                prod = ci.identity * cj.identity
                if ci is cj:
                    assert prod == ci.identity
                else:
                    assert prod.is_zero()
        self._components = comps
        return comps

    def left_ideal_rows(self, gens: Sequence[AlgElem]) -> np.ndarray:
        """Spanning rows of the left ideal generated by gens (not reduced)."""
        rows = []
        for g in gens:
            x = g
            for _ in range(self.n):
                rows.append(x.to_word())
                x = x.left_u()
            x = g.left_v()
            for _ in range(self.n):
                rows.append(x.to_word())
                x = x.left_u()
        return np.array(rows, dtype=np.int64)

    def decomposition_report(self) -> dict:
        comps = self.decompose()
        blocks = []
        for c in comps:
            entry: dict = {
                "t": c.index,
                "kind": c.kind,
                "dim": c.dim,
                "identity": list(c.identity.to_word()),
            }
            if c.kind == TRIVIAL_SPLIT:
                entry["r"] = c.r
            if c.k is not None:
                entry["k"] = c.k
                entry["idempotent_indices"] = list(c.idem_indices)
            if c.kind == SELF_CONJ:
                entry["g"] = list(c.g.coeffs)
                entry["s"] = list(c.s.coeffs)
                entry["s_prime"] = list(c.s_prime.coeffs)
            blocks.append(entry)
        return {
            "q": self.field.q,
            "n": self.n,
            "v_squared": self.tw,
            "lambda": self.lambda_(),
            "blocks": blocks,
        }

    def __repr__(self):
        sign = "-1" if self.tw == -1 else "+1"
        return f"TwistedDihedralAlgebra(q={self.field.q}, n={self.n}, v^2={sign})"
