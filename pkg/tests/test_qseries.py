from __future__ import annotations

import random

import pytest

from qhecke.errors import NonUnitConstantTerm, SupportOverflow
from qhecke.polyring import LaurentPoly, lp_eval_int
from qhecke.qseries import (
    INFINITY,
    Monomial,
    QSeries,
    div_factor,
    gauss_binomial,
    geometric_z_sum,
    mul_factor,
    pochhammer,
    qs_add,
    qs_collapse_z,
    qs_first_mismatch,
    qs_invert,
    qs_monomial,
    qs_mul,
    qs_mul_monomial,
    qs_neg,
    qs_one,
    qs_sub,
    qs_substitute_neg_q,
    qs_truncate_z,
    qs_zero,
    span_cap,
    zf_div_factor,
    zf_mul,
    zf_mul_factor,
    zf_one,
    zf_pochhammer_inf,
    zf_shift,
    zf_to_qseries,
)

PARTITIONS = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77, 101, 135]
DISTINCT = [1, 1, 1, 2, 2, 3, 4, 5, 6, 8, 10, 12, 15, 18, 22]


def rand_series(rng: random.Random, order: int, z_spread: int = 3) -> QSeries:
    coeffs = []
    for _ in range(order + 1):
        terms = {}
        for _ in range(rng.randrange(4)):
            terms[rng.randrange(-z_spread, z_spread + 1)] = rng.randrange(-5, 6)
        coeffs.append(LaurentPoly(terms))
    return QSeries(order, coeffs)


def rand_unit_series(rng: random.Random, order: int) -> QSeries:
    f = rand_series(rng, order, z_spread=2)
    coeffs = list(f.coeffs)
    coeffs[0] = LaurentPoly({0: rng.choice((1, -1))})
    return QSeries(order, coeffs)


def series_equal(f: QSeries, g: QSeries) -> bool:
    return qs_first_mismatch(f, g) is None


def test_zero_one_monomial():
    z = qs_zero(5)
    assert all(c.is_zero() for c in z.coeffs)
    one = qs_one(5)
    assert one.coeff(0).terms == {0: 1}
    assert all(one.coeff(k).is_zero() for k in range(1, 6))
    m = qs_monomial(-3, 2, 4, 5)
    assert m.coeff(4).terms == {2: -3}


def test_additive_group_ops():
    rng = random.Random(11)
    f = rand_series(rng, 8)
    g = rand_series(rng, 8)
    assert series_equal(qs_sub(f, g), qs_add(f, qs_neg(g)))
    assert series_equal(qs_add(f, qs_neg(f)), qs_zero(8))


def test_mul_monomial_matches_full_mul():
    rng = random.Random(12)
    for _ in range(50):
        f = rand_series(rng, 8)
        c = rng.randrange(-4, 5) or 1
        ze = rng.randrange(-2, 3)
        qe = rng.randrange(0, 3)
        assert series_equal(
            qs_mul_monomial(f, c, ze, qe), qs_mul(f, qs_monomial(c, ze, qe, 8))
        )


def test_geometric_z_sum():
    assert geometric_z_sum(1).terms == {0: 1}
    assert geometric_z_sum(3).terms == {0: 1, 1: 1, 2: 1}


def test_euler_products():
    # (q;q)_oo: pentagonal number signs
    f = pochhammer(Monomial(1, 0, 1), INFINITY, 14)
    expect = [0] * 15
    k = 1
    while True:
        done = True
        for e in (k * (3 * k - 1) // 2, k * (3 * k + 1) // 2):
            if e <= 14:
                expect[e] = (-1) ** k
                done = False
        if done:
            break
        k += 1
    expect[0] = 1
    assert [f.coeff(n).coeff(0) for n in range(15)] == expect
    # 1/(q;q)_oo counts partitions
    inv = qs_invert(f)
    assert [inv.coeff(n).coeff(0) for n in range(15)] == PARTITIONS
    # (-q;q)_oo counts partitions into distinct parts
    g = pochhammer(Monomial(-1, 0, 1), INFINITY, 14)
    assert [g.coeff(n).coeff(0) for n in range(15)] == DISTINCT


def test_pochhammer_finite_recurrence():
    a = Monomial(1, 1, 1)
    for step in (1, 2):
        for n in range(5):
            lhs = pochhammer(a, n + 1, 12, step)
            rhs = mul_factor(
                pochhammer(a, n, 12, step), -1, a.z_exp, a.q_exp + n * step
            )
            assert series_equal(lhs, rhs)


def test_gauss_binomial_values():
    g = gauss_binomial(4, 2, 1, 8)
    assert [g.coeff(k).coeff(0) for k in range(5)] == [1, 1, 2, 1, 1]
    # symmetry and degree
    for n in range(7):
        for k in range(n + 1):
            a = gauss_binomial(n, k, 1, 30)
            b = gauss_binomial(n, n - k, 1, 30)
            assert series_equal(a, b)
            deg = k * (n - k)
            assert a.coeff(deg).coeff(0) == 1
            assert all(a.coeff(e).is_zero() for e in range(deg + 1, 31))
    assert all(gauss_binomial(4, 7, 1, 6).coeff(k).is_zero() for k in range(7))


def test_gauss_binomial_pascal():
    # q-Pascal rule: [n k] = q^k [n-1 k] + [n-1 k-1]
    for n in range(2, 8):
        for k in range(1, n):
            lhs = gauss_binomial(n, k, 1, 30)
            rhs = qs_add(
                qs_mul_monomial(gauss_binomial(n - 1, k, 1, 30), 1, 0, k),
                gauss_binomial(n - 1, k - 1, 1, 30),
            )
            assert series_equal(lhs, rhs)


def test_mul_div_factor_roundtrip():
    rng = random.Random(13)
    for _ in range(200):
        f = rand_series(rng, 8)
        c = rng.choice((1, -1, 2, -3))
        ze = rng.randrange(-2, 3)
        qe = rng.randrange(1, 4)
        g = div_factor(mul_factor(f, c, ze, qe), c, ze, qe)
        assert series_equal(f, g)
        h = mul_factor(div_factor(f, c, ze, qe), c, ze, qe)
        assert series_equal(f, h)


def test_div_factor_rejects_constant_factor():
    with pytest.raises(NonUnitConstantTerm):
        div_factor(qs_one(5), 1, 1, 0)


def test_invert_contract_randomized():
    rng = random.Random(20260814)
    for _ in range(1000):
        order = rng.randrange(1, 7)
        f = rand_unit_series(rng, order)
        g = qs_invert(f)
        assert series_equal(qs_mul(f, g), qs_one(order))


def test_invert_rejects_bad_constant():
    with pytest.raises(NonUnitConstantTerm):
        qs_invert(qs_monomial(2, 0, 0, 4))
    with pytest.raises(NonUnitConstantTerm):
        qs_invert(qs_add(qs_one(4), qs_monomial(1, 1, 0, 4)))
    with pytest.raises(NonUnitConstantTerm):
        qs_invert(qs_zero(4))


def test_ring_axioms_randomized():
    rng = random.Random(99)
    for _ in range(1000):
        order = rng.randrange(1, 6)
        f = rand_series(rng, order, 2)
        g = rand_series(rng, order, 2)
        h = rand_series(rng, order, 2)
        assert series_equal(qs_mul(f, g), qs_mul(g, f))
        assert series_equal(qs_mul(f, qs_add(g, h)), qs_add(qs_mul(f, g), qs_mul(f, h)))
        assert series_equal(qs_mul(qs_mul(f, g), h), qs_mul(f, qs_mul(g, h)))
        assert series_equal(qs_mul(f, qs_one(order)), f)


def test_substitute_neg_q_is_involution_and_homomorphism():
    rng = random.Random(5)
    for _ in range(100):
        f = rand_series(rng, 7, 2)
        g = rand_series(rng, 7, 2)
        assert series_equal(qs_substitute_neg_q(qs_substitute_neg_q(f)), f)
        assert series_equal(
            qs_substitute_neg_q(qs_mul(f, g)),
            qs_mul(qs_substitute_neg_q(f), qs_substitute_neg_q(g)),
        )


def test_collapse_z_evaluates_coefficients():
    rng = random.Random(6)
    for _ in range(100):
        f = rand_series(rng, 6)
        z0 = rng.choice((1, -1))
        g = qs_collapse_z(f, z0)
        for k in range(7):
            assert g.coeff(k).coeff(0) == lp_eval_int(f.coeff(k), z0)
            assert set(g.coeff(k).terms) <= {0}


def test_truncate_z_window():
    f = qs_add(qs_monomial(2, -3, 1, 4), qs_monomial(5, 2, 1, 4))
    g = qs_truncate_z(f, -3, 1)
    assert g.coeff(1).terms == {-3: 2}
    h = qs_truncate_z(f, 0, 4)
    assert h.coeff(1).terms == {2: 5}


def test_first_mismatch_scan_order():
    a = qs_add(qs_one(4), qs_monomial(2, 1, 2, 4))
    b = qs_add(qs_one(4), qs_monomial(-1, -1, 2, 4))
    # both differ at q^2; the z scan is ascending so z=-1 reports first
    assert qs_first_mismatch(a, b) == (2, -1, 0, -1)
    assert qs_first_mismatch(a, a) is None


def test_support_overflow_guard():
    wide = LaurentPoly({e: 1 for e in range(0, span_cap(3) + 2)})
    f = QSeries(3, [wide, LaurentPoly(), LaurentPoly(), LaurentPoly()])
    with pytest.raises(SupportOverflow):
        qs_mul(f, f)


def test_zf_kernel_matches_qseries_ops():
    rng = random.Random(21)
    for _ in range(60):
        N = rng.randrange(4, 12)
        f = zf_one(N)
        g = qs_one(N)
        for _ in range(rng.randrange(5)):
            c = rng.choice((1, -1))
            e = rng.randrange(1, N + 1)
            if rng.random() < 0.5:
                zf_mul_factor(f, c, e)
                g = mul_factor(g, c, 0, e)
            else:
                zf_div_factor(f, c, e)
                g = div_factor(g, c, 0, e)
        assert series_equal(zf_to_qseries(f), g)


def test_zf_shift_and_mul():
    N = 10
    f = zf_one(N)
    zf_mul_factor(f, 1, 1)
    g = zf_shift(f, 2)
    assert g[:5] == [0, 0, 1, 1, 0]
    h = zf_mul(f, f)
    assert h[:3] == [1, 2, 1]


def test_zf_pochhammer_inf():
    N = 14
    f = zf_one(N)
    zf_pochhammer_inf(1, 1, -1, f)
    assert f == DISTINCT
    g = zf_one(N)
    zf_pochhammer_inf(1, 1, 1, g)
    h = zf_one(N)
    for e in range(1, N + 1):
        zf_div_factor(h, -1, e)
    assert zf_mul(g, h)[: N + 1] == [1] + [0] * N
