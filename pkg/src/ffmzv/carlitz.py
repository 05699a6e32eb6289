"""The Carlitz tower: D_i, factorials, the period series Omega, and pi-tilde.

Working conventions at level l (q = p^l):

  * D_0 = 1, D_i = (theta^{q^i} - theta) * D_{i-1}^q; equal to the product of
    all monic polynomials of degree i, which the brute-force oracle checks.
  * Gamma_{n+1} = prod D_i^{n_i} over the base-q digits of n.
  * Omega(t) = z^q * prod_{i>=1} (1 - t/theta^{q^i}): the (-theta)^{-q/(q-1)}
    prefactor is the exact monomial z^q in the fixed uniformizer.  Factor i
    contributes 1 + O(z^{(q-1)q^i}) per t-coefficient, so the factor count is
    derived from the precision target, never user-guessed.
  * pi_tilde = theta*(-theta)^{1/(q-1)} * prod (1 - theta^{1-q^i})^{-1}, an
    independent computation path cross-checked against 1/Omega(theta).

All formulas use explicit field negation, so characteristic 2 needs no
special-casing (-1 = 1 there).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .errors import BudgetError
from .ffield import FieldSpec, field as ff_field, ops
from .laurent import LaurentSeries, monomial
from .poly import BivarPoly, dense_theta_mul, t_minus_theta_frob
from .reports import ResidualReport
from . import tate
from .tate import TateElement


@dataclass
class CarlitzContext:
    """Level data: prime p, level l, q = p^l, plus default working sizes."""

    p: int
    l: int
    prec: int = 64
    tdeg: int = 16
    enum_budget: int = 10**6
    field: FieldSpec = None  # type: ignore[assignment]
    q: int = 0
    _cache: dict = dc_field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if self.field is None:
            self.field = ff_field(self.p, self.l)
        self.q = self.p**self.l
        if self.q < 2 or self.prec < 1:
            raise ValueError("q >= 2 and precision >= 1 required")


def carlitz_d(ctx: CarlitzContext, i: int) -> BivarPoly:
    """D_i as an exact theta-polynomial, by the Frobenius recursion."""
    key = ("D", i)
    if key in ctx._cache:
        return ctx._cache[key]
    if i == 0:
        d = BivarPoly.one(ctx.field)
    else:
        prev = carlitz_d(ctx, i - 1)
        neg1 = ops(ctx.field).neg[1]
        lin = BivarPoly(ctx.field, {(0, ctx.q**i): 1, (0, 1): neg1})
        d = lin * prev.twist(ctx.l)  # prev^q is the l-fold twist of a theta-poly
    ctx._cache[key] = d
    return d


def carlitz_d_bruteforce(ctx: CarlitzContext, i: int, budget: int | None = None) -> BivarPoly:
    """Product over all q^i monic polynomials of degree i (enumeration oracle)."""
    cap = ctx.enum_budget if budget is None else budget
    if ctx.q**i > cap:
        raise BudgetError(f"enumerating {ctx.q**i} monic polynomials exceeds budget {cap}")
    if i == 0:
        return BivarPoly.one(ctx.field)
    q, fld = ctx.q, ctx.field
    polys = []
    for code in range(q**i):
        coeffs = []
        c = code
        for _ in range(i):
            coeffs.append(c % q)
            c //= q
        polys.append(coeffs + [1])
    # balanced product tree over packed dense multiplications
    while len(polys) > 1:
        nxt = [
            dense_theta_mul(fld, polys[k], polys[k + 1]) if k + 1 < len(polys) else polys[k]
            for k in range(0, len(polys), 2)
        ]
        polys = nxt
    return BivarPoly.from_theta_coeffs(fld, {k: c for k, c in enumerate(polys[0]) if c})


def carlitz_factorial(ctx: CarlitzContext, n: int) -> BivarPoly:
    """Gamma_{n+1} = prod D_i^{n_(i)} over the base-q digits n_(i) of n."""
    if n < 0:
        raise ValueError("factorial index must be non-negative")
    result = BivarPoly.one(ctx.field)
    i = 0
    while n:
        n, digit = divmod(n, ctx.q)
        if digit:
            result = result * carlitz_d(ctx, i) ** digit
        i += 1
    return result


def omega_factor_count(q: int, prec: int) -> int:
    """Factors needed so both omitted-factor and omitted-coefficient errors are O(z^prec)."""
    f = 1
    while q ** (f + 1) < prec:
        f += 1
    return f + 1  # safety margin


def omega_series(
    ctx: CarlitzContext,
    tdeg: int | None = None,
    prec: int | None = None,
    factors: int | None = None,
    drop_factor: int | None = None,
) -> TateElement:
    """Truncated period product with certified tail (slope (q-1)q, offset q).

    `drop_factor` skips one factor of the product; the result then violates
    the functional equation and serves as a negative control.
    """
    q, fld = ctx.q, ctx.field
    prec = ctx.prec if prec is None else prec
    tdeg = ctx.tdeg if tdeg is None else tdeg
    work = prec + q + 2
    nfac = omega_factor_count(q, work) if factors is None else factors
    o = ops(fld)
    acc = tate.from_laurent(monomial(fld, q, q, 1, work))  # the exact prefactor z^q
    for i in range(1, nfac + 1):
        if i == drop_factor:
            continue
        # 1 - t/theta^{q^i}: the t-coefficient is (-1)^{q^i + 1} z^{(q-1)q^i}
        c = 1 if (q**i + 1) % 2 == 0 else o.neg[1]
        fac = TateElement(
            fld,
            q,
            [
                LaurentSeries(fld, q, 0, [1], work),
                monomial(fld, q, (q - 1) * q**i, c, work),
            ],
            None,
            True,
        )
        acc = (acc * fac).truncate_tdeg(tdeg)
    coeffs = list(acc.coeffs)
    while len(coeffs) < tdeg + 1:
        coeffs.append(LaurentSeries(fld, q, work, [], work))
    return TateElement(fld, q, coeffs, ((q - 1) * q, q), False)


def omega_for_eval(ctx: CarlitzContext, target: int) -> TateElement:
    """Omega sized so that evaluation at t = theta is certified to O(z^target).

    The tail cap is (sigma-(q-1))(D+1)+tau with sigma = q(q-1), tau = q, and
    each stored coefficient must carry target + (q-1)k z-digits.
    """
    q = ctx.q
    step = (q - 1) * (q - 1)
    tdeg = max(1, -(-(target - q) // step))
    prec = target + (q - 1) * tdeg + 2
    return omega_series(ctx, tdeg=tdeg, prec=prec)


def pi_tilde(ctx: CarlitzContext, prec: int | None = None) -> LaurentSeries:
    """The fundamental period by its own product formula (never through Omega)."""
    q, fld = ctx.q, ctx.field
    prec = ctx.prec if prec is None else prec
    work = prec + q + 2
    o = ops(fld)
    # theta * (-theta)^{1/(q-1)} = theta * z^{-1} = -z^{-q}
    acc = monomial(fld, q, -q, o.neg[1], work)
    i = 1
    while True:
        v = (q - 1) * (q**i - 1)  # valuation of theta^{1-q^i}
        if v >= work + q:
            break
        c = 1 if (q**i) % 2 == 0 else o.neg[1]  # z^v-coefficient of 1 - theta^{1-q^i}
        factor = LaurentSeries(fld, q, 0, [1] + [0] * (v - 1) + [c], work)
        acc = acc * factor.inv()
        i += 1
    return acc.truncate(prec)


def pi_omega_cross_check(ctx: CarlitzContext, target: int) -> "IdentityReport":
    """Two independent paths to the period: product formula vs 1/Omega(theta).

    pi_tilde * Omega(theta) equals the exact constant -1 (the prefactors give
    theta * (-theta)^{1/(q-1)} * (-theta)^{-q/(q-1)} = theta/(-theta), root
    choice cancelling); in characteristic 2 this is +1.  The check certifies
    agreement of the two paths to at least `target` z-digits.
    """
    from .laurent import compare_to_precision, monomial as ls_monomial
    from .reports import IdentityReport

    q = ctx.q
    work = target + q + 4
    pt = pi_tilde(ctx, work)
    ev = tate.eval_at_theta(omega_for_eval(ctx, work))
    prod = pt * ev
    expect = ls_monomial(ctx.field, q, 0, ops(ctx.field).neg[1], prod.prec)
    cmp = compare_to_precision(prod, expect)
    status = cmp.status
    if status == "equal" and cmp.exponent < target:
        status = "incomparable"
    return IdentityReport(
        status=status,
        precision=cmp.exponent if status != "unequal" else None,
        exponent=cmp.exponent if status == "unequal" else None,
        note="product formula x Omega(theta) = -1 exactly (+1 in characteristic 2)",
    )


def omega_functional_residual(ctx: CarlitzContext, omega: TateElement) -> ResidualReport:
    """Residual of Omega = (t - theta^q) * Omega^(l), the defining equation.

    Verified, not assumed: reports the worst Gauss-norm exponent of the
    difference against the certified precision floor.
    """
    if omega.coeffs[0].is_zero():
        return ResidualReport(
            passed=False,
            worst_exponent=None,
            floor_z=min(c.prec for c in omega.coeffs),
            note="sanity precheck failed: constant coefficient is zero to precision",
        )
    q = ctx.q
    cap = min(c.prec for c in omega.coeffs)
    work = cap + q * (q - 1) + 2
    factor = tate.from_poly(t_minus_theta_frob(ctx.field, ctx.l), q, work)
    twisted = tate.twist(omega, ctx.l).cap_precision(work)
    rhs = (factor * twisted).truncate_tdeg(omega.tdeg)
    resid = omega - rhs
    chk = tate.zero_check(resid)
    worst = None
    loc = None
    if not chk.ok:
        worst = Fraction(-chk.worst_zval, q - 1)
        loc = (chk.worst_tdeg,)
    return ResidualReport(passed=chk.ok, worst_exponent=worst, floor_z=chk.floor_z, location=loc)
