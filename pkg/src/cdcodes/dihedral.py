"""Ordinary dihedral group algebra machinery (v^2 = +1).

This module carries the pieces specific to the untwisted algebra: the
counterexample showing that <C, D> = 0 does not imply bar(D) C = 0, the
matrix-level enumeration of simple left ideals of M_2(F), the f_ab ideal
classification on paired blocks (self-orthogonal iff 2ab = 0), and the
count of codes A_0 ehat_0 + A_1 f_{a1 b1} + ... built from one simple left
ideal per block: prod(q^k_t + 1) in total, prod(q^k_t - 1) of them LCD.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from typing import Optional, Sequence

import numpy as np

from . import codes as codes_mod
from . import linalg
from .algebra import PAIRED, AlgElem, Component, Mat2, TwistedDihedralAlgebra
from .codes import LinearCode, assemble_code, hull_dimension
from .cyclic import CyclicElem
from .errors import HypothesisUnmet, NotPaired, ZeroGenerator
from .field import Field, field_from_order, mult_order


def dihedral_algebra(field: Field, n: int) -> TwistedDihedralAlgebra:
    return TwistedDihedralAlgebra(field, n, 1)


def consta_dihedral_algebra(field: Field, n: int) -> TwistedDihedralAlgebra:
    return TwistedDihedralAlgebra(field, n, -1)


# -- matrix-level simple left ideals -----------------------------------------


def mat2_simple_left_ideals(field: Field) -> list[bytes]:
    """All simple left ideals of M_2(GF(q)), enumerated exhaustively.

    Every 2-dimensional subspace of the 4-dimensional matrix space is tested
    for closure under left multiplication by the matrix units; in the
    semisimple algebra M_2 these 2-dimensional left ideals are exactly the
    simple ones.  Returns canonical RREF keys; the count must be q + 1.
    """
    q = field.q
    gens = []
    for i in range(2):
        for j in range(2):
            E = np.zeros((2, 2), dtype=np.int64)
            E[i, j] = 1
            gens.append(E)

    def act(E, v):  # left multiplication on vec(row-major)
        M = v.reshape(2, 2)
        return linalg.matmul(field, E, M).reshape(4)

    found = set()
    # 2-dim subspaces via RREF canonical forms: pivots (c0, c1), free entries
    for c0, c1 in itertools.combinations(range(4), 2):
        free = [c for c in range(4) if c not in (c0, c1) and c > c0]
        free1 = [c for c in free if c > c1]
        free0 = [c for c in free if c < c1]
        for vals in itertools.product(range(q), repeat=len(free0) + 2 * len(free1)):
            b0 = np.zeros(4, dtype=np.int64)
            b1 = np.zeros(4, dtype=np.int64)
            b0[c0] = 1
            b1[c1] = 1
            it = iter(vals)
            for c in free0:
                b0[c] = next(it)
            for c in free1:
                b0[c] = next(it)
                b1[c] = next(it)
            basis = np.vstack([b0, b1])
            R, piv = linalg.rref(field, basis)
            if R.shape[0] != 2 or piv != (c0, c1):
                continue  # not the canonical form of this pivot pair
            closed = True
            for E in gens:
                for row in R:
                    img = act(E, row)
                    if not linalg.in_row_space(field, R, piv, img):
                        closed = False
                        break
                if not closed:
                    break
            if closed:
                found.add(R.tobytes())
    return sorted(found)


def mat2_generator_ideals(field: Field) -> list[bytes]:
    """The q+1 ideals from the generator list (a 1; 0 0), a in F, and (1 0; 0 0)."""
    keys = []
    for a in list(field.elements()) + [None]:
        if a is None:
            f = np.array([[1, 0], [0, 0]], dtype=np.int64)
        else:
            f = np.array([[a, 1], [0, 0]], dtype=np.int64)
        rows = []
        for i in range(2):
            for j in range(2):
                E = np.zeros((2, 2), dtype=np.int64)
                E[i, j] = 1
                rows.append(linalg.matmul(field, E, f).reshape(4))
        R, _ = linalg.rref(field, np.array(rows))
        keys.append(R.tobytes())
    assert len(set(keys)) == len(keys)
    return sorted(keys)


# -- the counterexample -------------------------------------------------------


@dataclass
class CounterexampleReport:
    q: int
    n: int
    c_bar_d_zero: bool
    inner_cd_zero: bool
    bar_d_c_nonzero: bool
    witness_word: tuple[int, ...]
    witness_matches_ebar_v: bool

    @property
    def ok(self) -> bool:
        return (
            self.c_bar_d_zero
            and self.inner_cd_zero
            and self.bar_d_c_nonzero
            and self.witness_matches_ebar_v
        )


def counterexample_check() -> CounterexampleReport:
    """<C, D> = 0 with bar(D) C != 0 at q = 7, n = 3, C = D = A_1 e.

    C bar(D) vanishes (hence the inner product does), yet bar(D) C contains
    ebar v != 0, exhibited via ebar (ebar v) e = ebar v.
    """
    F = field_from_order(7)
    alg = dihedral_algebra(F, 3)
    comp = alg.decompose()[1]
    e, ebar = comp.e, comp.ebar
    gen = alg.embed_fh(e)
    rows = alg.left_ideal_rows([gen])
    C, piv = linalg.rref(F, rows)
    assert C.shape[0] == 2 * comp.k

    def elems(R):
        return [alg.from_word(r.tolist()) for r in R]

    c_elems = elems(C)
    d_bar = [x.bar() for x in c_elems]
    c_bar_d_zero = all((x * y).is_zero() for x in c_elems for y in d_bar)
    inner_cd_zero = all(F.zero == x.inner(y) for x in c_elems for y in c_elems)

    prods = [y * x for y in d_bar for x in c_elems]
    bar_d_c_nonzero = any(not p.is_zero() for p in prods)

    # the paper-style witness: ebar (ebar v) e = ebar v
    ebar_v = alg.elem(CyclicElem.zero(F, 3), ebar)
    witness = (alg.embed_fh(ebar) * ebar_v) * alg.embed_fh(e)
    return CounterexampleReport(
        q=7,
        n=3,
        c_bar_d_zero=c_bar_d_zero,
        inner_cd_zero=inner_cd_zero,
        bar_d_c_nonzero=bar_d_c_nonzero,
        witness_word=witness.to_word(),
        witness_matches_ebar_v=(witness == ebar_v and not witness.is_zero()),
    )


# -- f_ab ideals on paired blocks ----------------------------------------------


def f_ab(comp: Component, a: CyclicElem, b: CyclicElem) -> AlgElem:
    """Element of a paired block corresponding to the matrix (a b; 0 0)."""
    if comp.kind != PAIRED:
        raise NotPaired("f_ab lives on a paired block")
    z = comp.ft.zero
    return comp.iso_from_mat2(Mat2(comp.ft, ((a, b), (z, z))))


def block_ideal(comp: Component, gen: AlgElem) -> LinearCode:
    alg = comp.alg
    rows = alg.left_ideal_rows([gen])
    return LinearCode.from_rows(alg.field, rows, n_len=2 * alg.n)


def enumerate_simple_left_ideals(comp: Component) -> list[LinearCode]:
    """The |F_t| + 1 simple left ideals of a paired block, as row spaces."""
    if comp.kind != PAIRED:
        raise NotPaired("enumeration is defined on paired blocks")
    ft = comp.ft
    e = ft.identity
    ideals = []
    for code in range(ft.order):
        ideals.append(block_ideal(comp, f_ab(comp, ft.element(code), e)))
    ideals.append(block_ideal(comp, f_ab(comp, e, ft.zero)))
    keys = {c.key() for c in ideals}
    assert len(keys) == ft.order + 1, "generator ideals are not pairwise distinct"
    assert all(c.k_dim == 2 * comp.k for c in ideals)
    return ideals


SELF_ORTHOGONAL_IN_BLOCK = "self_orthogonal_in_block"
LCD_IN_BLOCK = "lcd_in_block"


def classify_Cab(comp: Component, a: CyclicElem, b: CyclicElem) -> str:
    """Classify the block ideal generated by f_ab.

    Characteristic 2: always self-orthogonal.  Odd characteristic:
    self-orthogonal iff ab = 0 (dihedral blocks), cross-checked against the
    hull of the actual row space.
    """
    if comp.kind != PAIRED:
        raise NotPaired("classification is defined on paired blocks")
    if a.is_zero() and b.is_zero():
        raise ZeroGenerator("(a, b) = (0, 0)")
    alg = comp.alg
    if alg.tw == -1 and alg.field.p != 2:
        raise HypothesisUnmet("f_ab classification targets the dihedral algebra")
    prod_zero = (a * b).is_zero()
    predicted = SELF_ORTHOGONAL_IN_BLOCK if (alg.field.p == 2 or prod_zero) else LCD_IN_BLOCK
    code = block_ideal(comp, f_ab(comp, a, b))
    hull = hull_dimension(code)
    actual = SELF_ORTHOGONAL_IN_BLOCK if hull == code.k_dim else (
        LCD_IN_BLOCK if hull == 0 else "mixed"
    )
    assert actual == predicted, f"hull check disagrees: {actual} vs {predicted}"
    return predicted


# -- counting the C_ab codes ---------------------------------------------------


@dataclass
class CountReport:
    q: int
    n: int
    k_list: list[int]
    total_formula: int
    lcd_formula: int
    exhaustive: bool
    total_observed: Optional[int] = None
    lcd_observed: Optional[int] = None
    sampled: int = 0
    sample_agreements: int = 0
    seed: Optional[int] = None

    @property
    def verified(self) -> bool:
        if self.exhaustive:
            return (
                self.total_observed == self.total_formula
                and self.lcd_observed == self.lcd_formula
            )
        return self.sampled > 0 and self.sample_agreements == self.sampled


def _a0_hat_generator(alg: TwistedDihedralAlgebra) -> AlgElem:
    """ehat_0 = e_0 + e_0 v, the 1-dimensional ideal generator of A_0."""
    comp0 = alg.decompose()[0]
    gen = codes_mod.build_C0(comp0)
    assert gen is not None  # dihedral: r = 1 always exists
    return gen


def _block_generators(comp: Component) -> list[AlgElem]:
    """One generator per simple left ideal of the block, Eq.-(48)-style."""
    ft = comp.ft
    e = ft.identity
    gens = [f_ab(comp, ft.element(code), e) for code in range(ft.order)]
    gens.append(f_ab(comp, e, ft.zero))
    return gens


def count_Cab_codes(
    alg: TwistedDihedralAlgebra,
    exhaust_limit: int = 10_000,
    samples: int = 200,
    seed: int = 0,
) -> CountReport:
    """Count dihedral codes A_0 ehat_0 + sum_t A_t f_(at bt), and the LCD ones.

    Requires odd q and odd ord_n(q) (all nontrivial idempotents paired).
    When the formula total does not exceed exhaust_limit, every code is built
    and classified by hull; otherwise `samples` seeded random (a, b) choices
    are classified and checked against the ab = 0 rule.
    """
    if alg.tw != 1:
        raise HypothesisUnmet("C_ab counting is defined on the dihedral algebra")
    q = alg.field.q
    if q % 2 == 0:
        raise HypothesisUnmet("counting requires odd q")
    if mult_order(q, alg.n) % 2 == 0:
        raise HypothesisUnmet("counting requires odd ord_n(q)")
    comps = alg.decompose()[1:]
    assert all(c.kind == PAIRED for c in comps)
    k_list = [c.k for c in comps]
    total_formula = 1
    lcd_formula = 1
    for k in k_list:
        total_formula *= q**k + 1
        lcd_formula *= q**k - 1
    hat_gen = _a0_hat_generator(alg)

    if total_formula <= exhaust_limit:
        keys = set()
        lcd_count = 0
        for gens in itertools.product(*(_block_generators(c) for c in comps)):
            parts = list(zip(comps, gens))
            code = assemble_code(
                alg,
                parts,
                extra_generators=[hat_gen],
                expected_dim=alg.n,
                origin={"family": "C_ab"},
            )
            assert code.k_dim == alg.n
            keys.add(code.key())
            if hull_dimension(code) == 0:
                lcd_count += 1
        assert len(keys) == total_formula, "distinct (a,b) choices collided"
        return CountReport(
            q=q,
            n=alg.n,
            k_list=k_list,
            total_formula=total_formula,
            lcd_formula=lcd_formula,
            exhaustive=True,
            total_observed=len(keys),
            lcd_observed=lcd_count,
        )

    rng = random.Random(seed)
    agreements = 0
    for _ in range(samples):
        parts = []
        expect_lcd = True
        for c in comps:
            ft = c.ft
            while True:
                a = ft.element(rng.randrange(ft.order))
                b = ft.element(rng.randrange(ft.order))
                if not (a.is_zero() and b.is_zero()):
                    break
            if (a * b).is_zero():
                expect_lcd = False
            parts.append((c, f_ab(c, a, b)))
        # any (a, b) != 0 has matrix rank 1, so each block contributes 2k_t
        code = assemble_code(
            alg, parts, extra_generators=[hat_gen], expected_dim=alg.n, origin={"family": "C_ab"}
        )
        actual_lcd = hull_dimension(code) == 0
        if actual_lcd == expect_lcd:
            agreements += 1
    return CountReport(
        q=q,
        n=alg.n,
        k_list=k_list,
        total_formula=total_formula,
        lcd_formula=lcd_formula,
        exhaustive=False,
        sampled=samples,
        sample_agreements=agreements,
        seed=seed,
    )


def count_report_json(report: CountReport) -> dict:
    return {
        "q": report.q,
        "n": report.n,
        "k_list": report.k_list,
        "total_formula": report.total_formula,
        "lcd_formula": report.lcd_formula,
        "exhaustive": report.exhaustive,
        "total_observed": report.total_observed,
        "lcd_observed": report.lcd_observed,
        "sampled": report.sampled,
        "sample_agreements": report.sample_agreements,
        "verified": report.verified,
        "seed": report.seed,
    }
