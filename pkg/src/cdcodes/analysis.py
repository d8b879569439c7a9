"""Metric-side computations: minimum weight, q-entropy, balance, censuses.

The census machinery enumerates the twist group K* block by block, measures
the relative minimum distance of every twisted code, and compares the count
of bad twists {beta : Delta(C beta) <= delta} against the volume bound
|K*| * q^(-2*lambda(n)*(1/4 - h_q(delta) - log_q(n)/lambda(n))) whenever the
exponent hypothesis holds (a slack of 1e-9 absorbs float rounding).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterator, Optional, Sequence

import numpy as np

from . import codes as codes_mod
from . import linalg
from .algebra import AlgElem, Component, TwistedDihedralAlgebra
from .codes import BetaVector, KtField, LinearCode, assemble_code
from .errors import (
    BudgetExceeded,
    DomainError,
    GcdViolation,
    NoNonzeroWords,
    NotLeftIdeal,
)
from .field import mult_order, prime_factors

FLOAT_SLACK = 1e-9

EXHAUSTIVE = "exhaustive"
PRUNED = "pruned"

DEFAULT_WORD_BUDGET = 1 << 20


# -- q-entropy -----------------------------------------------------------------


def entropy_q(q: int, delta: float) -> float:
    """h_q(delta) = delta log_q(q-1) - delta log_q delta - (1-delta) log_q(1-delta)."""
    if q < 2:
        raise DomainError("q must be at least 2")
    delta = float(delta)
    if delta < 0 or delta > 1 - 1 / q + FLOAT_SLACK:
        raise DomainError(f"delta = {delta} outside [0, 1 - 1/q]")
    lq = math.log(q)

    def xlog(x):
        return 0.0 if x <= 0 else x * math.log(x) / lq

    return delta * math.log(q - 1) / lq - xlog(delta) - xlog(1 - delta)


# -- minimum weight --------------------------------------------------------------


@dataclass
class WeightReport:
    min_weight: int
    relative_distance: Fraction
    rate: Fraction
    method: str
    lower: int
    upper: int

    @property
    def exact(self) -> bool:
        return self.lower == self.upper


def codeword_weights(code: LinearCode) -> np.ndarray:
    """Hamming weights of all q^k codewords (index 0 is the zero word)."""
    words = linalg.enumerate_span(code.field, code.gen)
    return np.count_nonzero(words, axis=1)


def min_weight(code: LinearCode, budget: int = DEFAULT_WORD_BUDGET, mode: str = "auto") -> WeightReport:
    """Minimum nonzero weight; exhaustive within budget, bracketed beyond.

    mode "exhaustive" raises BudgetExceeded instead of falling back; the
    pruned method enumerates messages of bounded weight on an information
    set, giving bracket [w+1, best] once message weight w is exhausted.
    """
    if code.k_dim == 0:
        raise NoNonzeroWords("the zero code has no nonzero codeword")
    q = code.field.q
    count = q**code.k_dim
    if count <= budget and mode != PRUNED:
        w = codeword_weights(code)
        m = int(w[1:].min()) if len(w) > 1 else 0
        return WeightReport(
            min_weight=m,
            relative_distance=Fraction(m, code.n_len),
            rate=Fraction(code.k_dim, code.n_len),
            method=EXHAUSTIVE,
            lower=m,
            upper=m,
        )
    if mode == EXHAUSTIVE:
        raise BudgetExceeded(f"q^k = {count} exceeds the budget {budget}")
    return _pruned_min_weight(code, budget)


def _pruned_min_weight(code: LinearCode, budget: int) -> WeightReport:
    """Information-set bracketing: all messages of weight <= w are expanded;
    any unseen codeword then has weight >= w + 1 on the information set."""
    field = code.field
    q = field.q
    t = field.tables()
    R, piv = linalg.rref(field, code.gen)
    k, n = R.shape
    best = n
    spent = 0
    w = 0
    import itertools as it

    while w < k:
        w += 1
        layer = math.comb(k, w) * (q - 1) ** w
        if spent + layer > budget:
            w -= 1
            break
        for support in it.combinations(range(k), w):
            for vals in it.product(range(1, q), repeat=w):
                word = np.zeros(n, dtype=np.int64)
                for i, c in zip(support, vals):
                    word = t.add[word, t.mul[c, R[i]]]
                wt = int(np.count_nonzero(word))
                if 0 < wt < best:
                    best = wt
        spent += layer
    lower = min(best, w + 1)
    return WeightReport(
        min_weight=best,
        relative_distance=Fraction(best, n),
        rate=Fraction(k, n),
        method=PRUNED,
        lower=lower,
        upper=best,
    )


# -- coordinate permutations of the group action ---------------------------------


def theta_permutations(alg: TwistedDihedralAlgebra) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Signed permutations Theta_u, Theta_v with x*Theta == left mult.

    Returns (perm_u, sign_u, perm_v, sign_v): position j of the image word
    receives sign[j] * word[perm[j]].
    """
    n = alg.n
    F = alg.field
    perm_u = np.empty(2 * n, dtype=np.int64)
    sign_u = np.full(2 * n, F.one, dtype=np.int64)
    perm_v = np.empty(2 * n, dtype=np.int64)
    sign_v = np.full(2 * n, F.one, dtype=np.int64)
    for i in range(n):
        # u * u^i = u^(i+1);  u * u^i v = u^(i+1) v
        perm_u[(i + 1) % n] = i
        perm_u[n + (i + 1) % n] = n + i
        # v * u^i = u^(-i) v ; v * u^i v = tw * u^(-i)
        perm_v[n + (n - i) % n] = i
        perm_v[(n - i) % n] = n + i
        sign_v[(n - i) % n] = alg.tw_code
    return perm_u, sign_u, perm_v, sign_v


def apply_signed_perm(alg, word: np.ndarray, perm: np.ndarray, sign: np.ndarray) -> np.ndarray:
    t = alg.field.tables()
    return t.mul[sign, np.asarray(word, dtype=np.int64)[perm]]


def group_index_permutations(alg: TwistedDihedralAlgebra) -> list[np.ndarray]:
    """theta_g for all 2n group elements g = u^a v^b, as index permutations.

    theta_g maps the coordinate of u^i v^j to that of g * u^i v^j (signs are
    irrelevant for index sets).
    """
    n = alg.n
    perms = []
    for b in (0, 1):
        for a in range(n):
            perm = np.empty(2 * n, dtype=np.int64)
            for j in (0, 1):
                for i in range(n):
                    src = i + n * j
                    ii = (a + (i if b == 0 else -i)) % n
                    jj = (b + j) % 2
                    perm[src] = ii + n * jj
            perms.append(perm)
    return perms


# -- balance -----------------------------------------------------------------------


@dataclass
class BalanceReport:
    info_set: tuple[int, ...]
    images_checked: int
    all_images_information_sets: bool
    coverage: tuple[int, ...]
    uniform_coverage: bool
    multiplicity: Optional[int]
    census_checks: list[dict]

    @property
    def balanced(self) -> bool:
        return self.all_images_information_sets and self.uniform_coverage


def is_left_ideal(alg: TwistedDihedralAlgebra, code: LinearCode) -> bool:
    R, piv = linalg.rref(alg.field, code.gen)
    for row in code.gen:
        x = alg.from_word(row.tolist())
        for img in (x.left_u(), x.left_v()):
            if not linalg.in_row_space(alg.field, R, piv, np.array(img.to_word(), dtype=np.int64)):
                return False
    return True


def balanced_check(
    alg: TwistedDihedralAlgebra,
    code: LinearCode,
    deltas: Sequence[float] = (),
    budget: int = DEFAULT_WORD_BUDGET,
) -> BalanceReport:
    """Verify the balance property of a left-ideal code.

    The leftmost pivot columns give one information set; every group
    translate of it must again be an information set, and the translates
    must cover each coordinate equally often.  For each delta the census
    |B^<=delta| <= q^(k h_q(delta)) is checked when q^k fits the budget.
    """
    if not is_left_ideal(alg, code):
        raise NotLeftIdeal("code is not invariant under the algebra action")
    field = alg.field
    q = field.q
    k = code.k_dim
    _, piv = linalg.rref(field, code.gen)
    info = tuple(piv)
    perms = group_index_permutations(alg)
    coverage = np.zeros(2 * alg.n, dtype=np.int64)
    all_info = True
    for perm in perms:
        image = sorted(int(perm[c]) for c in info)
        coverage[image] += 1
        cols = code.gen[:, image]
        if linalg.rank(field, cols) != k:
            all_info = False
    uniform = bool(np.all(coverage == coverage[0]))
    census = []
    if deltas and q**k <= budget:
        weights = codeword_weights(code)
        for d in deltas:
            h = entropy_q(q, d)
            count = int(np.sum(weights <= d * code.n_len + FLOAT_SLACK))
            bound_log = k * h
            ok = math.log(count, q) <= bound_log + FLOAT_SLACK if count else True
            census.append({"delta": float(d), "count": count, "bound_log_q": bound_log, "ok": ok})
    return BalanceReport(
        info_set=info,
        images_checked=len(perms),
        all_images_information_sets=all_info,
        coverage=tuple(int(c) for c in coverage),
        uniform_coverage=uniform,
        multiplicity=int(coverage[0]) if uniform else None,
        census_checks=census,
    )


# -- support descriptors -------------------------------------------------------------


@dataclass
class SupportDescriptor:
    blocks: tuple[int, ...]
    ell: int


def support_descriptor(alg: TwistedDihedralAlgebra, x: AlgElem) -> SupportDescriptor:
    """Blocks where the component of x is nonzero, and the k-sum over them."""
    comps = alg.decompose()
    blocks = []
    ell = 0
    for c in comps[1:]:
        if not c.project(x).is_zero():
            blocks.append(c.index)
            ell += c.k
    return SupportDescriptor(blocks=tuple(blocks), ell=ell)


# -- the K* census ---------------------------------------------------------------------


@dataclass
class CensusResult:
    q: int
    n: int
    delta: float
    include_C0: bool
    k_star_size: int
    count: int
    hypothesis_ok: bool
    exponent: float
    bound: Optional[float]
    rows: list[tuple[int, tuple[int, ...], int, float]]  # (index, beta codes, min weight, Delta)
    support_ok: bool

    def summary_json(self) -> dict:
        return {
            "q": self.q,
            "n": self.n,
            "delta": self.delta,
            "include_C0": self.include_C0,
            "k_star_size": self.k_star_size,
            "count": self.count,
            "hypothesis_ok": self.hypothesis_ok,
            "exponent": self.exponent,
            "bound": self.bound,
            "support_bounds_ok": self.support_ok,
        }

    def csv_lines(self) -> list[str]:
        out = ["beta_index,beta_codes,min_weight,delta"]
        for idx, codes, w, d in self.rows:
            out.append(f"{idx},{':'.join(str(c) for c in codes)},{w},{d:.6f}")
        return out


def census_bound(q: int, n: int, lam: int, delta: float, k_star: int, hatted: bool) -> tuple[bool, float, Optional[float]]:
    """Exponent hypothesis and the volume bound for the census."""
    h = entropy_q(q, delta)
    margin = 0.25 - h - math.log(n, q) / lam
    hypothesis = margin > 0
    exponent = -2 * lam * margin
    if hatted:
        exponent += h
    bound = k_star * q**exponent if hypothesis else None
    return hypothesis, exponent, bound


def _census_chunk(
    alg: TwistedDihedralAlgebra,
    parts,
    kts: Sequence[KtField],
    include_C0: bool,
    delta: float,
    indices: Sequence[int],
    word_budget: int,
) -> list[tuple[int, tuple[int, ...], int, float]]:
    rows = []
    radices = [kt.order - 1 for kt in kts]
    for idx in indices:
        rem = idx
        codes_vec = []
        for r in radices:
            codes_vec.append(1 + rem % r)
            rem //= r
        beta = BetaVector(kts, codes_vec)
        code = assemble_code(alg, parts, include_C0=include_C0, beta=beta)
        rep = min_weight(code, budget=word_budget)
        rows.append((idx, beta.codes, rep.min_weight, float(rep.relative_distance)))
    return rows


def census_K_le_delta(
    alg: TwistedDihedralAlgebra,
    delta: float,
    include_C0: bool = False,
    k_star_budget: int = 100_000,
    word_budget: int = DEFAULT_WORD_BUDGET,
    jobs: int = 1,
) -> CensusResult:
    """Exact census of {beta in K* : Delta(C beta) <= delta}.

    Asserts count <= |K*| always, and count <= the volume bound whenever the
    exponent hypothesis 1/4 - h_q(delta) - log_q(n)/lambda(n) > 0 holds.
    Support sizes of minimum-weight witnesses are checked against
    min k_t <= ell_d <= (n-1)/2.
    """
    q = alg.field.q
    if not 0 < delta <= 1:
        raise DomainError("delta must lie in (0, 1]")
    comps = alg.decompose()
    kts = codes_mod.kt_fields(alg)
    parts = codes_mod.standard_parts(alg)
    size = codes_mod.k_star_size(kts)
    if size > k_star_budget:
        raise BudgetExceeded(f"|K*| = {size} exceeds the census budget {k_star_budget}")
    indices = range(size)
    if jobs > 1:
        rows = _parallel_census(alg, parts, kts, include_C0, delta, size, word_budget, jobs)
    else:
        rows = _census_chunk(alg, parts, kts, include_C0, delta, indices, word_budget)
    rows.sort(key=lambda r: r[0])
    count = sum(1 for _, _, _, d in rows if d <= delta + FLOAT_SLACK)
    lam = alg.lambda_()
    h_delta_ok = delta <= 1 - 1 / q + FLOAT_SLACK
    if h_delta_ok:
        hypothesis, exponent, bound = census_bound(q, alg.n, lam, delta, size, hatted=include_C0)
    else:
        hypothesis, exponent, bound = False, float("nan"), None
    assert count <= size
    if hypothesis:
        assert count <= bound + FLOAT_SLACK, f"census count {count} exceeds bound {bound}"

    # support bounds on a witness word per code (the first generator row)
    kmin = min(c.k for c in comps[1:])
    support_ok = True
    for idx, codes_vec, w, d in rows[: min(len(rows), 64)]:
        beta = BetaVector(kts, codes_vec)
        x = parts[0][1] * beta.component(parts[0][0].index)
        sd = support_descriptor(alg, x)
        if sd.ell and not (kmin <= sd.ell <= (alg.n - 1) // 2):
            support_ok = False
    assert support_ok, "support-size bounds violated"

    return CensusResult(
        q=q,
        n=alg.n,
        delta=float(delta),
        include_C0=include_C0,
        k_star_size=size,
        count=count,
        hypothesis_ok=hypothesis,
        exponent=exponent,
        bound=bound,
        rows=rows,
        support_ok=support_ok,
    )


def _parallel_census(alg, parts, kts, include_C0, delta, size, word_budget, jobs):
    """Deterministic partition of the beta index range across processes."""
    from concurrent.futures import ProcessPoolExecutor

    chunks = []
    step = (size + jobs - 1) // jobs
    for start in range(0, size, step):
        chunks.append(range(start, min(start + step, size)))
    payload = (alg.field.p, alg.field.m, alg.n, alg.tw, include_C0, delta, word_budget)
    try:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts_rows = list(pool.map(_census_worker, [(payload, list(c)) for c in chunks]))
    except (OSError, RuntimeError):
        return _census_chunk(alg, parts, kts, include_C0, delta, range(size), word_budget)
    rows = []
    for r in parts_rows:
        rows.extend(r)
    return rows


def _census_worker(arg):
    (p, m, n, tw, include_C0, delta, word_budget), indices = arg
    from .field import _field_cached

    field = _field_cached(p, m)
    alg = TwistedDihedralAlgebra(field, n, tw)
    kts = codes_mod.kt_fields(alg)
    parts = codes_mod.standard_parts(alg)
    return _census_chunk(alg, parts, kts, include_C0, delta, indices, word_budget)


# -- good twist search ------------------------------------------------------------------


def find_good_beta(
    alg: TwistedDihedralAlgebra,
    delta: float,
    strategy: str = "exhaustive",
    seed: Optional[int] = None,
    include_C0: bool = False,
    samples: int = 1000,
    word_budget: int = DEFAULT_WORD_BUDGET,
) -> tuple[Optional[BetaVector], Optional[WeightReport]]:
    """First beta with Delta(C beta) > delta, or (None, None) when exhausted.

    delta must satisfy 0 < delta < 1 - 1/q and h_q(delta) < 1/4.
    """
    q = alg.field.q
    if not 0 < delta < 1 - 1 / q:
        raise DomainError(f"delta = {delta} outside (0, 1 - 1/q)")
    if entropy_q(q, delta) >= 0.25:
        raise DomainError(f"h_q({delta}) >= 1/4")
    kts = codes_mod.kt_fields(alg)
    parts = codes_mod.standard_parts(alg)
    if strategy == "exhaustive":
        betas: Iterator[BetaVector] = codes_mod.enumerate_beta(kts)
    elif strategy == "sampled":
        if seed is None:
            raise DomainError("sampled strategy requires a seed")
        rng = random.Random(seed)
        betas = (BetaVector.random(kts, rng) for _ in range(samples))
    else:
        raise DomainError(f"unknown strategy {strategy!r}")
    for beta in betas:
        code = assemble_code(alg, parts, include_C0=include_C0, beta=beta)
        rep = min_weight(code, budget=word_budget)
        if rep.relative_distance > delta:
            return beta, rep
    return None, None


# -- good-n predicates ---------------------------------------------------------------------


@dataclass
class GoodNFlags:
    q: int
    n: int
    coprime_odd: bool
    ord_odd: bool
    minus1_in_q: bool
    two_exactly_divides_ord: bool
    in_G_t: bool


def good_n_predicates(q: int, n: int) -> GoodNFlags:
    """Number-theoretic flags steering the asymptotic families."""
    if math.gcd(n, q) != 1:
        raise GcdViolation(f"gcd({n}, {q}) != 1")
    coprime_odd = n > 1 and n % 2 == 1
    if coprime_odd:
        ordv = mult_order(q, n)
        ord_odd = ordv % 2 == 1
        minus1 = any(pow(q, k, n) == n - 1 for k in range(1, ordv + 1))
        two_exact = ordv % 2 == 0 and ordv % 4 != 0
    else:
        ord_odd = minus1 = two_exact = False
    in_gt = False
    if coprime_odd and n > q and len(prime_factors(n)) == 1 and prime_factors(n)[0] == n:
        in_gt = mult_order(q, n) >= math.log(n, q) ** 2
    return GoodNFlags(
        q=q,
        n=n,
        coprime_odd=coprime_odd,
        ord_odd=ord_odd,
        minus1_in_q=minus1,
        two_exactly_divides_ord=two_exact,
        in_G_t=in_gt,
    )


PROFILE_SELF_ORTHOGONAL = "SelfOrthogonal"
PROFILE_LCD = "LCD"
PROFILE_SELF_DUAL = "SelfDual"


def good_n_sequence(q: int, limit: int, profile: str) -> list[int]:
    """Odd n <= limit, coprime to q, whose flags fit the requested family."""
    out = []
    for n in range(3, limit + 1, 2):
        if math.gcd(n, q) != 1:
            continue
        flags = good_n_predicates(q, n)
        if profile == PROFILE_SELF_ORTHOGONAL:
            if flags.ord_odd:
                out.append(n)
        elif profile == PROFILE_LCD:
            if q % 2 == 1 and (q - 1) % 4 != 0 and flags.minus1_in_q and flags.two_exactly_divides_ord:
                out.append(n)
        elif profile == PROFILE_SELF_DUAL:
            if q % 2 == 0 or (q - 1) % 4 == 0:
                out.append(n)
        else:
            raise DomainError(f"unknown profile {profile!r}")
    return out
