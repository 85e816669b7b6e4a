"""The F_q[x]-module structure on F_{q^n}.

The additive group of F_{q^n} is an F_q[x]-module under
h o b = sum a_i b^(q^i); every element is annihilated by x^n - 1.  This
module provides the action itself, the minimal annihilating divisor
(fq_order), k-normality, the freeness tests, the multiplicative and
module-theoretic decompositions of r and g, and membership tests for the
element classes the counting machinery quantifies over.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd as int_gcd

from .errors import CtxMismatch, NotADivisor, ZeroElement
from .ffield import FieldCtx, FieldElement, mult_order
from .fqpoly import PolyFactorization, PolyQ, factor_poly
from .intarith import IntFactorization, factor_int

_XN1_CACHE: dict[FieldCtx, tuple[PolyQ, PolyFactorization]] = {}


def xn1(ctx: FieldCtx) -> PolyQ:
    """x^n - 1 over F_q for this tower."""
    return _xn1_fact(ctx)[0]


def _xn1_fact(ctx: FieldCtx) -> tuple[PolyQ, PolyFactorization]:
    got = _XN1_CACHE.get(ctx)
    if got is None:
        poly = PolyQ.xn_minus_1(ctx.fq, ctx.n)
        got = (poly, factor_poly(poly))
        _XN1_CACHE[ctx] = got
    return got


def xn1_factorization(ctx: FieldCtx) -> PolyFactorization:
    return _xn1_fact(ctx)[1]


# -- the module action ----------------------------------------------------------

def frobenius_orbit(b: FieldElement, length: int | None = None) -> list[tuple]:
    """[b, b^q, ..., b^(q^(length-1))] as raw coefficient tuples."""
    ctx = b.ctx
    length = ctx.n if length is None else length
    orbit = [b.coeffs]
    for _ in range(length - 1):
        orbit.append(ctx._frob(orbit[-1]))
    return orbit


def _action_coeffs(ctx: FieldCtx, g_coeffs: tuple, orbit: list[tuple]) -> tuple:
    n = ctx.n
    acc = (0,) * n
    for i, c in enumerate(g_coeffs):
        if c:
            acc = ctx._add(acc, ctx._scale(orbit[i % len(orbit)], c))
    return acc


def mod_action(g: PolyQ, b: FieldElement) -> FieldElement:
    """g o b = sum g_i * b^(q^i)."""
    ctx = b.ctx
    if g.fq != ctx.fq:
        raise CtxMismatch("polynomial and element live over different F_q")
    orbit = frobenius_orbit(b)
    return FieldElement(ctx, _action_coeffs(ctx, g.coeffs, orbit))


def m_poly(a: FieldElement) -> list[FieldElement]:
    """Coefficients (constant first) of sum_i a^(q^(i-1)) x^(n-i)."""
    ctx = a.ctx
    orbit = frobenius_orbit(a)
    # coefficient of x^j is a^(q^(n-1-j))
    return [FieldElement(ctx, orbit[ctx.n - 1 - j]) for j in range(ctx.n)]


def _strip_big(c: list[FieldElement]) -> list[FieldElement]:
    while c and c[-1].is_zero():
        c.pop()
    return c


def m_gcd_degree(a: FieldElement) -> int:
    """deg gcd(m_a(x), x^n - 1) over F_{q^n}, by plain Euclid."""
    ctx = a.ctx
    one, zero = ctx.one(), ctx.zero()
    f = _strip_big([-one] + [zero] * (ctx.n - 1) + [one])
    g = _strip_big(m_poly(a))
    while g:
        lead_inv = g[-1].inv()
        rem = list(f)
        while len(rem) >= len(g):
            factor = rem[-1] * lead_inv
            shift = len(rem) - len(g)
            for i, c in enumerate(g):
                rem[shift + i] = rem[shift + i] - factor * c
            _strip_big(rem)
        f, g = g, rem
    return len(f) - 1


def fq_order(a: FieldElement) -> PolyQ:
    """Minimal monic divisor h of x^n - 1 with h o a = 0 (1 for the zero element)."""
    ctx = a.ctx
    poly, fact = _xn1_fact(ctx)
    orbit = frobenius_orbit(a)
    zero = (0,) * ctx.n
    h = poly
    for f, e in fact.factors:
        for _ in range(e):
            cand = h // f
            if _action_coeffs(ctx, cand.coeffs, orbit) == zero:
                h = cand
            else:
                break
    return h


def k_normality(a: FieldElement) -> int:
    """k with deg gcd(m_a, x^n - 1) = k, computed as n - deg(fq_order)."""
    if a.is_zero():
        raise ZeroElement("k-normality is defined for nonzero elements only")
    return a.ctx.n - fq_order(a).degree


def is_e_free(b: FieldElement, e: int) -> bool:
    """No divisor of e beyond 1 divides (q^n - 1)/ord(b)."""
    ctx = b.ctx
    if e < 1 or ctx.N % e:
        raise NotADivisor(f"{e} does not divide q^n - 1")
    if b.is_zero():
        raise ZeroElement("e-freeness is defined for nonzero elements only")
    return int_gcd(e, ctx.N // mult_order(b)) == 1


def is_h_free(b: FieldElement, h: PolyQ) -> bool:
    """gcd(h, (x^n - 1)/Ord_q(b)) = 1."""
    ctx = b.ctx
    poly = xn1(ctx)
    if h.is_zero() or not h.divides(poly):
        raise NotADivisor("h does not divide x^n - 1")
    co_order = poly // fq_order(b)
    return h.gcd(co_order).degree == 0


# -- decompositions of r and g ---------------------------------------------------

@dataclass(frozen=True)
class RDecomposition:
    """r = u * prod(p_j^b_j) with p_j^(b_j+1) | q^n - 1 and gcd(u, (q^n-1)/u) = 1."""

    r: int
    u: int
    parts: tuple[tuple[int, int, int, int], ...]  # (p_j, b_j, delta_j, lambda_j)
    R: int
    N: int

    def __post_init__(self) -> None:
        prod = self.u
        for p, b, delta, lam in self.parts:
            if delta != p**b or lam != p ** (b + 1):
                raise NotADivisor("inconsistent part powers")
            if self.N % lam:
                raise NotADivisor("lambda_j does not divide q^n - 1")
            prod *= delta
        if prod != self.r:
            raise NotADivisor("parts do not multiply back to r")
        if int_gcd(self.u, self.N // self.u) != 1:
            raise NotADivisor("u is not unitary in q^n - 1")

    @property
    def lambdas(self) -> tuple[int, ...]:
        return tuple(lam for _, _, _, lam in self.parts)


@dataclass(frozen=True)
class GDecomposition:
    """g = pi * prod(f_i^b_i) with f_i^(b_i+1) | x^n - 1 and pi unitary."""

    g: PolyQ
    pi: PolyQ
    parts: tuple[tuple[PolyQ, int, PolyQ, PolyQ], ...]  # (f_i, b_i, Delta_i, Lambda_i)
    G: PolyQ
    xn1: PolyQ

    def __post_init__(self) -> None:
        prod = self.pi
        for f, b, delta, lam in self.parts:
            if delta != f**b or lam != f ** (b + 1):
                raise NotADivisor("inconsistent part powers")
            if not lam.divides(self.xn1):
                raise NotADivisor("Lambda_i does not divide x^n - 1")
            prod = prod * delta
        if prod != self.g:
            raise NotADivisor("parts do not multiply back to g")
        if self.pi.gcd(self.xn1 // self.pi).degree != 0:
            raise NotADivisor("pi is not unitary in x^n - 1")

    @property
    def lambdas(self) -> tuple[PolyQ, ...]:
        return tuple(lam for _, _, _, lam in self.parts)

    @property
    def k(self) -> int:
        return self.g.degree


def decompose_r(r: int, ctx: FieldCtx) -> RDecomposition:
    N = ctx.N
    if r < 1 or N % r:
        raise NotADivisor(f"r = {r} does not divide q^n - 1 = {N}")
    fact_N = ctx.fact_qn_minus_1
    fact_r = factor_int(r)
    u = 1
    parts = []
    for p, b in fact_r.factors:
        if fact_N.exponent_of(p) > b:
            parts.append((p, b, p**b, p ** (b + 1)))
        else:
            u *= p**b
    R = fact_N.radical() // fact_r.radical()
    return RDecomposition(r, u, tuple(parts), R, N)


def decompose_g(g: PolyQ, ctx: FieldCtx) -> GDecomposition:
    poly, fact_xn1 = _xn1_fact(ctx)
    g = g.monic()
    if g.is_zero() or not g.divides(poly):
        raise NotADivisor("g does not divide x^n - 1")
    fact_g = factor_poly(g)
    pi = PolyQ.one(ctx.fq)
    parts = []
    for f, b in fact_g.factors:
        if fact_xn1.exponent_of(f) > b:
            parts.append((f, b, f**b, f ** (b + 1)))
        else:
            pi = pi * f**b
    G = fact_xn1.radical() // fact_g.radical()
    return GDecomposition(g, pi, tuple(parts), G, poly)


# -- element-class membership ----------------------------------------------------

def in_Qrd(a: FieldElement, rd: RDecomposition, d: int) -> bool:
    """a is d-free, an r-th power, and not a lambda_j-th power for any j."""
    ctx = a.ctx
    if d < 1 or rd.R % d:
        raise NotADivisor(f"d = {d} does not divide R = {rd.R}")
    if a.is_zero():
        raise ZeroElement("Q_r^d membership is defined for nonzero elements only")
    if not is_e_free(a, d):
        return False
    N = ctx.N
    one = (1,) + (0,) * (ctx.n - 1)
    if ctx._pow(a.coeffs, N // rd.r) != one:
        return False
    for lam in rd.lambdas:
        if ctx._pow(a.coeffs, N // lam) == one:
            return False
    return True


def in_TgkH(a: FieldElement, gd: GDecomposition, H: PolyQ) -> bool:
    """a is H-free, in the image of (g o .), and in no (Lambda_i o .) image."""
    ctx = a.ctx
    if H.is_zero() or not H.divides(gd.G):
        raise NotADivisor("H does not divide G")
    if a.is_zero():
        raise ZeroElement("T_{g,k}^H membership is defined for nonzero elements only")
    if not is_h_free(a, H):
        return False
    orbit = frobenius_orbit(a)
    zero = (0,) * ctx.n
    co_g = gd.xn1 // gd.g
    if _action_coeffs(ctx, co_g.coeffs, orbit) != zero:
        return False
    for lam in gd.lambdas:
        co_lam = gd.xn1 // lam
        if _action_coeffs(ctx, co_lam.coeffs, orbit) == zero:
            return False
    return True


def in_Sgk(a: FieldElement, gd: GDecomposition) -> bool:
    """Membership in S_{g,k}: k-normal with co-order exactly g."""
    return in_TgkH(a, gd, gd.G)
