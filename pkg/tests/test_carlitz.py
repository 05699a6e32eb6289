"""Carlitz tower: D_i oracle, factorials, the period product, pi-tilde."""

import pytest

from ffmzv import tate
from ffmzv.carlitz import (
    CarlitzContext,
    carlitz_d,
    carlitz_d_bruteforce,
    carlitz_factorial,
    omega_functional_residual,
    omega_series,
    omega_for_eval,
    pi_omega_cross_check,
    pi_tilde,
)
from ffmzv.errors import BudgetError
from ffmzv.ffield import ops
from ffmzv.laurent import compare_to_precision, monomial, theta_pow, zero as ls_zero
from ffmzv.poly import BivarPoly
from ffmzv.tate import certificate_ok, eval_at_theta

CONFIGS = [(2, 1), (3, 1), (2, 2)]


def test_d_small_values():
    ctx = CarlitzContext(3, 1)
    assert carlitz_d(ctx, 0) == BivarPoly.one(ctx.field)
    assert carlitz_d(ctx, 1).terms == {(0, 3): 1, (0, 1): 2}  # theta^3 - theta
    neg1 = ops(ctx.field).neg[1]
    d2_expect = BivarPoly(ctx.field, {(0, 9): 1, (0, 1): neg1}) * carlitz_d(ctx, 1).twist(1)
    assert carlitz_d(ctx, 2) == d2_expect


@pytest.mark.parametrize("p,l", CONFIGS)
def test_d_recursion_equals_enumeration_to_budget(p, l):
    ctx = CarlitzContext(p, l, enum_budget=10**4)
    i = 0
    while ctx.q ** (i + 1) <= 10**4:
        i += 1
    for k in range(i + 1):
        assert carlitz_d(ctx, k) == carlitz_d_bruteforce(ctx, k)


def test_bruteforce_budget():
    ctx = CarlitzContext(3, 1, enum_budget=10)
    with pytest.raises(BudgetError):
        carlitz_d_bruteforce(ctx, 3)


@pytest.mark.parametrize("p,l", CONFIGS)
def test_factorial_digit_formula(p, l):
    ctx = CarlitzContext(p, l)
    q = ctx.q
    assert carlitz_factorial(ctx, 0) == BivarPoly.one(ctx.field)
    for s in range(q):
        assert carlitz_factorial(ctx, s) == BivarPoly.one(ctx.field)
    assert carlitz_factorial(ctx, q) == carlitz_d(ctx, 1)
    # independent digit routine: top-down digits via repeated subtraction
    for n in (q + 2, 3 * q + 1, q * q + q):
        expect = BivarPoly.one(ctx.field)
        rest = n
        i = 0
        while q**i <= rest:
            i += 1
        while rest:
            i -= 1
            digit = rest // q**i
            rest -= digit * q**i
            expect = expect * carlitz_d(ctx, i) ** digit
        assert carlitz_factorial(ctx, n) == expect


@pytest.mark.parametrize("p,l", CONFIGS)
def test_omega_constant_coefficient(p, l):
    ctx = CarlitzContext(p, l, prec=40, tdeg=6)
    om = omega_series(ctx)
    c0 = om.coeffs[0]
    assert c0.val == ctx.q and c0.coeffs[0] == 1
    assert certificate_ok(om)


def test_omega_linear_coefficient_from_expansion():
    # with exactly F factors, the t-coefficient is -z^q * sum theta^{-q^i}
    ctx = CarlitzContext(3, 1, prec=60)
    F = 3
    om = omega_series(ctx, tdeg=3, prec=60, factors=F)
    neg1 = ops(ctx.field).neg[1]
    expect = ls_zero(ctx.field, 3, 60)
    for i in range(1, F + 1):
        expect = expect + theta_pow(ctx.field, 3, 3**i, 80).inv()
    expect = (monomial(ctx.field, 3, 3, neg1, 80) * expect).truncate(om.coeffs[1].prec)
    assert compare_to_precision(om.coeffs[1], expect).status == "equal"


@pytest.mark.parametrize("p,l", CONFIGS)
@pytest.mark.parametrize("prec", [40, 64])
def test_omega_functional_equation(p, l, prec):
    ctx = CarlitzContext(p, l, prec=prec, tdeg=12)
    rep = omega_functional_residual(ctx, omega_series(ctx))
    assert rep.passed


@pytest.mark.parametrize("p,l", CONFIGS)
def test_omega_drop_factor_control_fails(p, l):
    ctx = CarlitzContext(p, l, prec=48, tdeg=10)
    rep = omega_functional_residual(ctx, omega_series(ctx, drop_factor=1))
    assert not rep.passed
    assert rep.worst_exponent is not None


def test_omega_zero_sanity_precheck():
    ctx = CarlitzContext(2, 1, prec=30)
    rep = omega_functional_residual(ctx, tate.zero(ctx.field, 2, 30, 4))
    assert not rep.passed and "precheck" in rep.note


@pytest.mark.parametrize("p,l", CONFIGS)
def test_pi_tilde_norm(p, l):
    from fractions import Fraction

    ctx = CarlitzContext(p, l)
    q = ctx.q
    assert pi_tilde(ctx, 40).norm_exponent() == Fraction(q, q - 1)


def test_pi_tilde_first_terms_q3():
    # -z^{-3} (1 + theta^{-2} + ...) = -z^{-3} - z + ...
    ctx = CarlitzContext(3, 1)
    pt = pi_tilde(ctx, 12)
    assert pt.val == -3 and pt.coeffs[0] == 2
    assert pt.coeff(1) == 2 and pt.coeff(-2) == 0 and pt.coeff(0) == 0


@pytest.mark.parametrize("p,l", CONFIGS)
def test_two_path_period_cross_check(p, l):
    rep = pi_omega_cross_check(CarlitzContext(p, l), 50)
    assert rep.status == "equal" and rep.precision >= 50


def test_eval_sized_omega():
    ctx = CarlitzContext(2, 1)
    ev = eval_at_theta(omega_for_eval(ctx, 50))
    assert ev.prec >= 50
    assert ev.val == ctx.q
