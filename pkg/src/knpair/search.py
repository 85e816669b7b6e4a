"""Exhaustive ground truth: pair searches, the Eq-style counting oracle, and
element censuses.

Two engines coexist.  The streaming engine walks elements in enumeration
order computing per-element predicates directly (cheap k-normality first,
inverse next, exact order last) and is what the searches use; it never
builds field-sized tables, so found-cases exit early and not-found cases
stay within memory.  The table engine builds, once per context, the full
discrete-log walk and the F_q-order of every element (enumerated as f o gamma
over a normal gamma, so each element's order divisor falls out of
gcd(f, x^n - 1)); counting operations and censuses run off those tables.
Witnesses returned by any search are re-verified through the direct
modstruct predicates before being reported.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import gcd as int_gcd

from .errors import FieldTooLarge, NotADivisor, RNotDivisor
from .ffield import FieldCtx, FieldElement, field_for, find_primitive, mult_order
from .fqpoly import PolyQ, divisors_of
from .modstruct import (
    decompose_g,
    decompose_r,
    k_normality,
    m_gcd_degree,
    xn1,
    xn1_factorization,
)

ENUM_CEILING_BITS_DEFAULT = 24
TABLE_CEILING = 1 << 20
CHUNK = 1 << 13


@dataclass(frozen=True)
class SearchOutcome:
    found: bool
    witness: FieldElement | None
    scanned: int
    elapsed: float


# -- per-context scaffolding -----------------------------------------------------

class _Predicates:
    """Streaming per-element predicate kit for one context."""

    def __init__(self, ctx: FieldCtx):
        self.ctx = ctx
        fact = xn1_factorization(ctx)
        divs = sorted(divisors_of(xn1(ctx)), key=lambda h: h.sort_key())
        self.divisors = divs
        self.div_index = {h: i for i, h in enumerate(divs)}
        self.factors = fact.factors
        # quotient index per (divisor, factor) where the factor divides it
        self.quot = [
            {f: self.div_index[h // f] for f, _ in fact.factors if f.divides(h)}
            for h in divs
        ]
        self.top = self.div_index[xn1(ctx)]
        self.zero = (0,) * ctx.n

    def orbit(self, coeffs: tuple) -> list[tuple]:
        ctx = self.ctx
        out = [coeffs]
        for _ in range(ctx.n - 1):
            out.append(ctx._frob(out[-1]))
        return out

    def _action_is_zero(self, poly: PolyQ, orbit: list[tuple]) -> bool:
        ctx = self.ctx
        acc = self.zero
        for i, c in enumerate(poly.coeffs):
            if c:
                acc = ctx._add(acc, ctx._scale(orbit[i % ctx.n], c))
        return acc == self.zero

    def ord_divisor_index(self, coeffs: tuple) -> int:
        """Index of the F_q-order of the element with these coefficients."""
        orbit = self.orbit(coeffs)
        cur = self.top
        for f, e in self.factors:
            for _ in range(e):
                nxt = self.quot[cur].get(f)
                if nxt is None:
                    break
                if self._action_is_zero(self.divisors[nxt], orbit):
                    cur = nxt
                else:
                    break
        return cur

    def knorm(self, coeffs: tuple) -> int:
        return self.ctx.n - self.divisors[self.ord_divisor_index(coeffs)].degree

    def order_is(self, coeffs: tuple, r: int) -> bool:
        """ord = (q^n - 1)/r, via one confirmation power and per-prime rejections."""
        ctx = self.ctx
        N = ctx.N
        target = N // r
        one = (1,) + (0,) * (ctx.n - 1)
        if r > 1 and ctx._pow(coeffs, target) != one:
            return False
        for p, _ in ctx.fact_qn_minus_1.factors:
            if target % p == 0 and ctx._pow(coeffs, target // p) == one:
                return False
        return True


_PRED_CACHE: dict[FieldCtx, _Predicates] = {}


def _preds(ctx: FieldCtx) -> _Predicates:
    got = _PRED_CACHE.get(ctx)
    if got is None:
        got = _Predicates(ctx)
        _PRED_CACHE[ctx] = got
    return got


class _ScanTables:
    """Full dlog walk plus the F_q-order of every element, by code."""

    def __init__(self, ctx: FieldCtx):
        if ctx.order > TABLE_CEILING:
            raise FieldTooLarge(f"|F| = {ctx.order} exceeds the table ceiling {TABLE_CEILING}")
        self.ctx = ctx
        preds = _preds(ctx)
        self.divisors = preds.divisors
        self.div_index = preds.div_index
        N = ctx.N
        prim = find_primitive(ctx)
        pow_codes = [0] * N
        log_codes = [-1] * ctx.order
        cur = ctx.one().coeffs
        pc = prim.coeffs
        q = ctx.q
        for e in range(N):
            code = 0
            for dgt in reversed(cur):
                code = code * q + dgt
            pow_codes[e] = code
            log_codes[code] = e
            cur = ctx._mul(cur, pc)
        self.pow_codes = pow_codes
        self.log_codes = log_codes
        self.ord_idx = self._order_table(preds)

    def _order_table(self, preds: _Predicates) -> list[int]:
        ctx = self.ctx
        # locate a normal element, then enumerate every f o gamma
        gamma = None
        for code in range(1, ctx.order):
            cand = ctx.from_code(code)
            if preds.knorm(cand.coeffs) == 0:
                gamma = cand
                break
        assert gamma is not None
        orbit = preds.orbit(gamma.coeffs)
        poly = xn1(ctx)
        fq = ctx.fq
        # co-order per polynomial f: (x^n - 1)/gcd(f, x^n - 1), tabulated by
        # walking f through the odometer while maintaining alpha = f o gamma;
        # the per-digit code steps are not +1 in F_q once t > 1, so the
        # deltas between consecutive scalar multiples are precomputed
        table = [0] * ctx.order
        q, n, N = ctx.q, ctx.n, ctx.N
        digits = [0] * n
        alpha = (0,) * n
        delta = [
            [
                ctx._sub(ctx._scale(orbit[j], (c + 1) % q), ctx._scale(orbit[j], c))
                for c in range(q)
            ]
            for j in range(n)
        ]
        from . import _polyops

        for step in range(ctx.order):
            if step:
                j = 0
                while True:
                    alpha = ctx._add(alpha, delta[j][digits[j]])
                    digits[j] += 1
                    if digits[j] < q:
                        break
                    digits[j] = 0
                    j += 1
            f = _polyops.trim(list(digits))
            gcd_fx = _polyops.gcd(fq, f, list(poly.coeffs)) if f else list(poly.coeffs)
            co = PolyQ(fq, gcd_fx)
            order_poly = poly // co
            code = 0
            for dgt in reversed(alpha):
                code = code * q + dgt
            table[code] = self.div_index[order_poly]
        return table

    def inverse_code(self, code: int) -> int:
        e = self.log_codes[code]
        return self.pow_codes[(self.ctx.N - e) % self.ctx.N]


_TABLE_CACHE: dict[FieldCtx, _ScanTables] = {}


def scan_tables(ctx: FieldCtx) -> _ScanTables:
    got = _TABLE_CACHE.get(ctx)
    if got is None:
        got = _ScanTables(ctx)
        _TABLE_CACHE[ctx] = got
    return got


# -- searches ---------------------------------------------------------------------

def _ceiling_check(ctx: FieldCtx, ceiling_bits: int) -> None:
    if ctx.order > 1 << ceiling_bits:
        raise FieldTooLarge(f"|F| = {ctx.order} exceeds the enumeration ceiling 2^{ceiling_bits}")


def _scan_ranges(total: int, jobs: int):
    if jobs <= 1:
        yield [(0, total)]
        return
    starts = list(range(0, total, CHUNK))
    for i in range(0, len(starts), jobs):
        yield [(s, min(s + CHUNK, total)) for s in starts[i : i + jobs]]


def _run_partitioned(total: int, jobs: int, scan_chunk):
    """Scan [0, total) in chunk waves; first hit in chunk order wins."""
    scanned = 0
    if jobs <= 1:
        hit, seen = scan_chunk(0, total)
        return hit, seen
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        for wave in _scan_ranges(total, jobs):
            results = list(pool.map(lambda lohi: scan_chunk(*lohi), wave))
            for hit, seen in results:
                scanned += seen
                if hit is not None:
                    return hit, scanned
    return None, scanned


def search_pair(q: int, n: int, r: int, k: int, ceiling_bits: int = ENUM_CEILING_BITS_DEFAULT,
                jobs: int = 1, factor_hints=None) -> SearchOutcome:
    """First alpha in enumeration order with ord(alpha) = ord(alpha^-1) = (q^n-1)/r
    and both alpha, alpha^-1 k-normal."""
    ctx = field_for(q, n, factor_hints=factor_hints)
    _ceiling_check(ctx, ceiling_bits)
    if r < 1 or ctx.N % r:
        raise RNotDivisor(f"r = {r} does not divide q^n - 1")
    preds = _preds(ctx)
    t0 = time.perf_counter()

    def scan_chunk(lo: int, hi: int):
        seen = 0
        for code in range(max(lo, 1), hi):
            seen += 1
            coeffs = ctx.from_code(code).coeffs
            if preds.knorm(coeffs) != k:
                continue
            inv = ctx._inv(coeffs)
            if preds.knorm(inv) != k:
                continue
            if not preds.order_is(coeffs, r):
                continue
            return code, seen
        return None, seen

    hit, scanned = _run_partitioned(ctx.order, jobs, scan_chunk)
    elapsed = time.perf_counter() - t0
    if hit is None:
        return SearchOutcome(False, None, scanned, elapsed)
    witness = ctx.from_code(hit)
    _verify_pair_witness(witness, r, k)
    return SearchOutcome(True, witness, scanned, elapsed)


def _verify_pair_witness(alpha: FieldElement, r: int, k: int) -> None:
    ctx = alpha.ctx
    inv = alpha.inv()
    ok = (
        mult_order(alpha) == ctx.N // r
        and mult_order(inv) == ctx.N // r
        and k_normality(alpha) == k
        and k_normality(inv) == k
        and m_gcd_degree(alpha) == k
        and m_gcd_degree(inv) == k
    )
    if not ok:
        raise AssertionError("witness failed independent re-verification")


def direct_search(q: int, n: int, ceiling_bits: int = ENUM_CEILING_BITS_DEFAULT,
                  jobs: int = 1, factor_hints=None) -> SearchOutcome:
    """Sweep alpha = beta^q - beta for a primitive 1-normal pair (alpha, alpha^-1).

    Accepts the first beta whose alpha is nonzero with
    deg gcd(m_alpha, x^n - 1) = deg gcd(m_{alpha^-1}, x^n - 1) = 1 and
    ord(alpha) = q^n - 1 (the gcd degree is evaluated as 1-normality of the
    element, which is the same quantity)."""
    ctx = field_for(q, n, factor_hints=factor_hints)
    _ceiling_check(ctx, ceiling_bits)
    preds = _preds(ctx)
    t0 = time.perf_counter()

    def scan_chunk(lo: int, hi: int):
        seen = 0
        for code in range(lo, hi):
            seen += 1
            beta = ctx.from_code(code).coeffs
            alpha = ctx._sub(ctx._frob(beta), beta)
            if all(c == 0 for c in alpha):
                continue
            if preds.knorm(alpha) != 1:
                continue
            inv = ctx._inv(alpha)
            if preds.knorm(inv) != 1:
                continue
            if not preds.order_is(alpha, 1):
                continue
            return code, seen
        return None, seen

    hit, scanned = _run_partitioned(ctx.order, jobs, scan_chunk)
    elapsed = time.perf_counter() - t0
    if hit is None:
        return SearchOutcome(False, None, scanned, elapsed)
    beta = ctx.from_code(hit)
    alpha = beta.frob() - beta
    inv = alpha.inv()
    if not (m_gcd_degree(alpha) == 1 and m_gcd_degree(inv) == 1 and mult_order(alpha) == ctx.N):
        raise AssertionError("witness failed independent re-verification")
    return SearchOutcome(True, alpha, scanned, elapsed)


# -- exact counting ---------------------------------------------------------------

def _divisor_predicates(ctx: FieldCtx, tables: _ScanTables, g: PolyQ, h: PolyQ, H: PolyQ):
    """Per-order-divisor booleans for the three polynomial-side predicates."""
    poly = xn1(ctx)
    gd = decompose_g(g, ctx)
    co_g = poly // g
    co_lams = [poly // lam for lam in gd.lambdas]
    hfree, Hfree, in_img, lam_img = [], [], [], []
    for div in tables.divisors:
        co_order = poly // div
        hfree.append(h.gcd(co_order).degree == 0)
        Hfree.append(H.gcd(co_order).degree == 0)
        in_img.append(div.divides(co_g))
        lam_img.append(any(div.divides(cl) for cl in co_lams))
    return hfree, Hfree, in_img, lam_img


def _g_action_codes(ctx: FieldCtx, g: PolyQ) -> list[list[int]]:
    """Images of the power basis under (g o .), as coefficient tuples."""
    from .modstruct import mod_action

    images = []
    for j in range(ctx.n):
        basis = ctx.element(tuple(1 if i == j else 0 for i in range(ctx.n)))
        images.append(list(mod_action(g, basis).coeffs))
    return images


def count_N(q: int, n: int, r: int, k: int, g: PolyQ, h: PolyQ, d: int, H: PolyQ,
            factor_hints=None) -> int:
    """Exact count of beta outside the zero set of (g o .) with beta h-free,
    g o beta in Q_r^d and (g o beta)^-1 in T_{g,k}^H."""
    ctx = field_for(q, n, factor_hints=factor_hints)
    poly = xn1(ctx)
    g, h, H = g.monic(), h.monic(), H.monic()
    if g.degree != k or not g.divides(poly):
        raise NotADivisor("g must be a monic degree-k divisor of x^n - 1")
    if not h.divides(poly):
        raise NotADivisor("h does not divide x^n - 1")
    rd = decompose_r(r, ctx)
    gd = decompose_g(g, ctx)
    if d < 1 or rd.R % d:
        raise NotADivisor(f"d = {d} does not divide R = {rd.R}")
    if not H.divides(gd.G):
        raise NotADivisor("H does not divide G")
    tables = scan_tables(ctx)
    hfree, Hfree, in_img, lam_img = _divisor_predicates(ctx, tables, g, h, H)
    images = _g_action_codes(ctx, g)
    N = ctx.N
    lambdas = rd.lambdas
    ord_idx = tables.ord_idx
    log_codes = tables.log_codes
    pow_codes = tables.pow_codes
    qq = ctx.q
    count = 0
    z_seen = 0
    for code in range(ctx.order):
        beta = ctx.from_code(code).coeffs
        acf = ctx._apply_linear(images, beta)
        alpha_code = 0
        for dgt in reversed(acf):
            alpha_code = alpha_code * qq + dgt
        if alpha_code == 0:
            z_seen += 1
            continue
        if not hfree[ord_idx[code]]:
            continue
        e = log_codes[alpha_code]
        gam = int_gcd(e, N) if e else N
        if int_gcd(d, gam) != 1 or gam % r:
            continue
        if any(gam % lam == 0 for lam in lambdas):
            continue
        inv_code = pow_codes[(N - e) % N]
        oi = ord_idx[inv_code]
        if Hfree[oi] and in_img[oi] and not lam_img[oi]:
            count += 1
    assert z_seen == q**k, "zero set of (g o .) has unexpected size"
    return count


def pair_profile(ctx: FieldCtx, g: PolyQ):
    """Histogram over beta outside Z of (ord-idx of beta, gcd(dlog(g o beta), N),
    ord-idx of (g o beta)^-1); one pass serves every (r, h, d, H) combination."""
    tables = scan_tables(ctx)
    images = _g_action_codes(ctx, g)
    N = ctx.N
    qq = ctx.q
    ord_idx, log_codes, pow_codes = tables.ord_idx, tables.log_codes, tables.pow_codes
    hist: dict[tuple[int, int, int], int] = {}
    for code in range(ctx.order):
        beta = ctx.from_code(code).coeffs
        acf = ctx._apply_linear(images, beta)
        alpha_code = 0
        for dgt in reversed(acf):
            alpha_code = alpha_code * qq + dgt
        if alpha_code == 0:
            continue
        e = log_codes[alpha_code]
        gam = int_gcd(e, N) if e else N
        inv_code = pow_codes[(N - e) % N]
        key = (ord_idx[code], gam, ord_idx[inv_code])
        hist[key] = hist.get(key, 0) + 1
    return hist


def count_from_profile(ctx: FieldCtx, g: PolyQ, hist, r: int, h: PolyQ, d: int, H: PolyQ) -> int:
    """count_N recomputed from a pair_profile histogram (same quantity)."""
    tables = scan_tables(ctx)
    rd = decompose_r(r, ctx)
    hfree, Hfree, in_img, lam_img = _divisor_predicates(ctx, tables, g, h.monic(), H.monic())
    lambdas = rd.lambdas
    total = 0
    for (oi_b, gam, oi_i), cnt in hist.items():
        if not hfree[oi_b]:
            continue
        if int_gcd(d, gam) != 1 or gam % r:
            continue
        if any(gam % lam == 0 for lam in lambdas):
            continue
        if Hfree[oi_i] and in_img[oi_i] and not lam_img[oi_i]:
            total += cnt
    return total


# -- censuses ---------------------------------------------------------------------

def census(q: int, n: int, what: str, arg: int | None = None, factor_hints=None):
    """Exhaustive counts: knormal(k) / rprimitive(r) / fq_order_fibers / pair_table(r)."""
    ctx = field_for(q, n, factor_hints=factor_hints)
    tables = scan_tables(ctx)
    N = ctx.N
    if what == "knormal":
        if arg is None or not 0 <= arg <= ctx.n - 1:
            raise ValueError("knormal census needs k in [0, n-1]")
        want = ctx.n - arg
        return sum(
            1
            for code in range(1, ctx.order)
            if tables.divisors[tables.ord_idx[code]].degree == want
        )
    if what == "rprimitive":
        if arg < 1 or N % arg:
            raise RNotDivisor(f"r = {arg} does not divide q^n - 1")
        count = 0
        for code in range(1, ctx.order):
            e = tables.log_codes[code]
            gam = int_gcd(e, N) if e else N
            if gam == arg:
                count += 1
        return count
    if what == "fq_order_fibers":
        fibers: dict[PolyQ, int] = {}
        for code in range(ctx.order):
            div = tables.divisors[tables.ord_idx[code]]
            fibers[div] = fibers.get(div, 0) + 1
        return fibers
    if what == "pair_table":
        if arg < 1 or N % arg:
            raise RNotDivisor(f"r = {arg} does not divide q^n - 1")
        out: dict[int, int] = {}
        for code in range(1, ctx.order):
            e = tables.log_codes[code]
            gam = int_gcd(e, N) if e else N
            if gam != arg:
                continue
            kb = ctx.n - tables.divisors[tables.ord_idx[code]].degree
            ki = ctx.n - tables.divisors[tables.ord_idx[tables.inverse_code(code)]].degree
            if kb == ki:
                out[kb] = out.get(kb, 0) + 1
        return out
    raise ValueError(f"unknown census selector {what!r}")
