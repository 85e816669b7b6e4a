import random

import pytest

from knpair.errors import NotADivisor, ZeroElement
from knpair.ffield import field_for, frobenius, make_field, mult_order
from knpair.fqpoly import PolyQ, degree_k_divisors, divisors_of, phi_q
from knpair.intarith import euler_phi
from knpair.modstruct import (
    decompose_g,
    decompose_r,
    fq_order,
    in_Qrd,
    in_Sgk,
    in_TgkH,
    is_e_free,
    is_h_free,
    k_normality,
    m_gcd_degree,
    m_poly,
    mod_action,
    xn1,
)


def test_mod_action_x_minus_1(f8):
    x_1 = PolyQ(f8.fq, (1, 1))
    for code in range(8):
        b = f8.from_code(code)
        assert mod_action(x_1, b) == frobenius(b) - b


def test_mod_action_annihilator_exhaustive_f8(f8):
    poly = xn1(f8)
    for code in range(8):
        assert mod_action(poly, f8.from_code(code)).is_zero()


def test_mod_action_module_axiom():
    ctx = make_field(3, 1, 3)
    rng = random.Random(7)
    poly_pool = [PolyQ(ctx.fq, [rng.randrange(3) for _ in range(4)]) for _ in range(6)]
    for _ in range(20):
        f = rng.choice(poly_pool)
        g = rng.choice(poly_pool)
        b = ctx.from_code(rng.randrange(ctx.order))
        assert mod_action(f * g, b) == mod_action(f, mod_action(g, b))


def test_m_poly_shapes(f8):
    assert all(c.is_zero() for c in m_poly(f8.zero()))
    ones = m_poly(f8.one())
    assert all(c == f8.one() for c in ones)


def test_m_gcd_matches_fq_order_degree():
    for q, n in [(2, 3), (3, 3)]:
        ctx = field_for(q, n)
        for code in range(ctx.order):
            a = ctx.from_code(code)
            assert m_gcd_degree(a) == ctx.n - fq_order(a).degree


def test_fq_order_examples(f8):
    assert fq_order(f8.one()) == PolyQ(f8.fq, (1, 1))
    assert fq_order(f8.zero()) == PolyQ.one(f8.fq)
    fibers: dict[str, int] = {}
    for code in range(8):
        key = fq_order(f8.from_code(code)).coeffs
        fibers[key] = fibers.get(key, 0) + 1
    assert fibers == {(1,): 1, (1, 1): 1, (1, 1, 1): 3, (1, 0, 0, 1): 3}


def test_normal_iff_full_order(f8):
    poly = xn1(f8)
    for code in range(1, 8):
        a = f8.from_code(code)
        assert (fq_order(a) == poly.monic()) == (k_normality(a) == 0)


def test_k_normality_census_f8(f8):
    counts = {0: 0, 1: 0, 2: 0}
    for code in range(1, 8):
        counts[k_normality(f8.from_code(code))] += 1
    assert counts == {0: 3, 1: 3, 2: 1}
    assert k_normality(f8.one()) == f8.n - 1
    with pytest.raises(ZeroElement):
        k_normality(f8.zero())


def test_knormal_composition_lemma():
    # g o beta is k-normal for normal beta and monic degree-k divisor g
    for q, n in [(2, 4), (3, 4), (4, 3)]:
        ctx = field_for(q, n)
        normal = next(
            ctx.from_code(c) for c in range(1, ctx.order) if k_normality(ctx.from_code(c)) == 0
        )
        for k in range(n):
            for g in degree_k_divisors(xn1(ctx), k):
                assert k_normality(mod_action(g, normal)) == k


def test_e_free_definitions_agree_exhaustive_f16():
    # order-based criterion vs the direct power-test definition
    ctx = make_field(2, 1, 4)
    N = ctx.N
    powers = {d: set() for d in (3, 5, 15)}
    for code in range(1, ctx.order):
        a = ctx.from_code(code)
        for d in powers:
            powers[d].add((a**d).coeffs)
    for code in range(1, ctx.order):
        a = ctx.from_code(code)
        for e in (1, 3, 5, 15):
            direct = not any(e % d == 0 and a.coeffs in powers[d] for d in powers if d > 1 and e % d == 0)
            assert is_e_free(a, e) == direct


def test_e_free_primitive(f8):
    for code in range(1, 8):
        a = f8.from_code(code)
        assert is_e_free(a, 7) == (mult_order(a) == 7)


def test_h_free_trivial(f8):
    one_poly = PolyQ.one(f8.fq)
    for code in range(8):
        assert is_h_free(f8.from_code(code), one_poly)
    with pytest.raises(NotADivisor):
        is_h_free(f8.one(), PolyQ(f8.fq, (1, 0, 1)))  # x^2+1 does not divide x^3-1


def test_decompose_r_trivial():
    ctx = make_field(3, 1, 4)
    rd = decompose_r(1, ctx)
    assert rd.u == 1 and rd.parts == () and rd.R == ctx.fact_qn_minus_1.radical()


def test_decompose_r_3_4_r2():
    ctx = make_field(3, 1, 4)  # q^n - 1 = 80 = 2^4 * 5
    rd = decompose_r(2, ctx)
    assert rd.u == 1
    assert rd.parts == ((2, 1, 2, 4),)
    assert rd.R == 5


def test_decompose_r_unitary_part():
    ctx = make_field(2, 1, 4)  # N = 15 = 3 * 5
    rd = decompose_r(3, ctx)
    assert rd.u == 3 and rd.parts == () and rd.R == 5
    with pytest.raises(NotADivisor):
        decompose_r(7, ctx)


def test_decompose_g_squarefree():
    ctx = make_field(2, 1, 5)
    g = PolyQ(ctx.fq, (1, 1))
    gd = decompose_g(g, ctx)
    assert gd.pi == g and gd.parts == ()
    assert gd.G == (xn1(ctx) // g).monic()


def test_decompose_g_with_lambda():
    ctx = make_field(2, 1, 4)  # x^4 - 1 = (x-1)^4
    g = PolyQ(ctx.fq, (1, 1))
    gd = decompose_g(g, ctx)
    assert gd.pi.is_one()
    assert len(gd.parts) == 1
    f, b, delta, lam = gd.parts[0]
    assert (f, b) == (g, 1) and delta == g and lam == g * g
    assert gd.G.is_one()


def test_in_Qrd_r_primitive_characterization():
    # with d = R, membership is exactly ord = (q^n - 1)/r; exhaustive over F_81, r = 2
    ctx = make_field(3, 1, 4)
    rd = decompose_r(2, ctx)
    members = 0
    for code in range(1, ctx.order):
        a = ctx.from_code(code)
        got = in_Qrd(a, rd, rd.R)
        assert got == (mult_order(a) == ctx.N // 2)
        members += got
    assert members == euler_phi(ctx.N // 2)


def test_in_Qrd_r1_is_primitivity(f8):
    rd = decompose_r(1, f8)
    for code in range(1, 8):
        a = f8.from_code(code)
        assert in_Qrd(a, rd, rd.R) == (mult_order(a) == 7)


def test_in_TgkH_sgk_characterization_f16():
    ctx = make_field(2, 1, 4)
    poly = xn1(ctx)
    for k in range(ctx.n):
        for g in degree_k_divisors(poly, k):
            gd = decompose_g(g, ctx)
            target = (poly // g).monic()
            for code in range(1, ctx.order):
                a = ctx.from_code(code)
                assert in_Sgk(a, gd) == (fq_order(a) == target)


def test_in_TgkH_normality_case(f8):
    gd = decompose_g(PolyQ.one(f8.fq), f8)
    for code in range(1, 8):
        a = f8.from_code(code)
        assert in_TgkH(a, gd, gd.G) == (k_normality(a) == 0)


def test_sgk_sizes_phi():
    for q, n in [(2, 3), (2, 4), (3, 3), (4, 2)]:
        ctx = field_for(q, n)
        poly = xn1(ctx)
        for k in range(n):
            for g in degree_k_divisors(poly, k):
                gd = decompose_g(g, ctx)
                size = sum(1 for c in range(1, ctx.order) if in_Sgk(ctx.from_code(c), gd))
                co = (poly // g).monic()
                assert size == (phi_q(co) if co.degree > 0 else 1)


def test_partition_lemma_including_repeated_factors():
    # q = 2, n = 4 exercises Lambda parts: x^4 - 1 = (x - 1)^4
    for q, n in [(2, 3), (2, 4), (3, 3), (2, 6), (4, 2)]:
        ctx = field_for(q, n)
        poly = xn1(ctx)
        for k in range(n):
            gds = [decompose_g(g, ctx) for g in degree_k_divisors(poly, k)]
            for code in range(1, ctx.order):
                a = ctx.from_code(code)
                hits = [gd for gd in gds if in_Sgk(a, gd)]
                if k_normality(a) == k:
                    assert len(hits) == 1
                else:
                    assert not hits


def test_frobenius_stability():
    ctx = make_field(3, 1, 3)
    for code in range(1, ctx.order):
        a = ctx.from_code(code)
        assert fq_order(frobenius(a)) == fq_order(a)
        assert mult_order(frobenius(a)) == mult_order(a)


def test_Qrd_inverse_symmetry():
    ctx = make_field(3, 1, 4)
    for r in (1, 2):
        rd = decompose_r(r, ctx)
        for code in range(1, ctx.order):
            a = ctx.from_code(code)
            assert in_Qrd(a, rd, rd.R) == in_Qrd(a.inv(), rd, rd.R)


def test_in_Qrd_bad_d():
    ctx = make_field(3, 1, 4)
    rd = decompose_r(2, ctx)
    with pytest.raises(NotADivisor):
        in_Qrd(ctx.one(), rd, 3)  # 3 does not divide R = 5
    with pytest.raises(ZeroElement):
        in_Qrd(ctx.zero(), rd, rd.R)
