"""Power sums, multiple zeta values, Anderson-Thakur polynomials, and
multiple polylogarithms, all as exact truncated z-series.

The depth-d zeta value at level l is the sum of 1/(a_1^{s_1}...a_d^{s_d})
over monic tuples with strictly decreasing degrees; it is assembled from the
degree-d power sums S_d(s) = sum(a^-s, a monic of degree d) by dynamic
programming over degree tuples, with the brute-force tuple enumeration
retained as a test oracle.  Stopping criteria use exact a-priori valuation
bounds, never floating estimates: a surviving monomial of the expansion of
S_d(s) must contain every one of the d free coefficients with exponent a
positive multiple of q-1, which gives

    v_z(S_d(s)) >= (q-1) * (d*s + (q-1)*d*(d+1)/2),

quadratic in d, so enumeration budgets stay at desk scale (the linear bound
(q-1)*d*s holds a fortiori).

Anderson-Thakur polynomials come from inverting the generating series
1 - sum_i (prod_j (t^{q^i}-theta^{q^j}) / prod_j (t^{q^i}-t^{q^j})) x^{q^i}
as a power series in x and scaling slot s by Gamma_{s+1}|_{theta=t}.  The
extraction convention is the plain x^s coefficient slot: it is the one that
reproduces H_s = 1 for 0 <= s <= q-1 and is validated operationally by the
period identity against the convention-free monic-sum path.  All checked
identities are printed with this convention note.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .carlitz import CarlitzContext, carlitz_factorial
from .errors import BudgetError, ConventionError
from .ffield import ops
from .laurent import LaurentSeries, compare_to_precision, from_rational
from .laurent import zero as ls_zero
from .poly import BivarPoly, dense_theta_mul
from .reports import CheckReport, IdentityReport
from . import tate
from .tate import TateElement


# -- indices -------------------------------------------------------------------


@dataclass(frozen=True)
class Index:
    entries: tuple[int, ...]

    def __post_init__(self):
        if not self.entries or any(s < 1 for s in self.entries):
            raise ValueError("an index is a nonempty tuple of positive integers")

    @property
    def dep(self) -> int:
        return len(self.entries)

    @property
    def wt(self) -> int:
        return sum(self.entries)

    def window(self, i: int, j: int) -> "Index":
        """The contiguous window (s_i..s_j), 1-based inclusive."""
        return Index(self.entries[i - 1 : j])

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.entries)) + ")"


def parse_index(text: str) -> Index:
    return Index(tuple(int(x) for x in text.split(",")))


def parse_index_set(text: str) -> tuple[Index, ...]:
    return tuple(parse_index(part) for part in text.split(";") if part)


def subclosure(indices) -> tuple[Index, ...]:
    """Minimal window-closed superset, depth-ascending, lexicographic ties."""
    seen = set()
    for idx in indices:
        d = idx.dep
        for i in range(1, d + 1):
            for j in range(i, d + 1):
                seen.add(idx.window(i, j))
    return tuple(sorted(seen, key=lambda ix: (ix.dep, ix.entries)))


def is_subclosed(indices) -> bool:
    have = set(indices)
    return all(w in have for idx in indices for w in subclosure([idx]))


# -- monic power sums and zeta values --------------------------------------------


def power_sum_val_bound(q: int, d: int, s: int) -> int:
    """Certified lower bound for v_z(S_d(s)); quadratic in d."""
    return (q - 1) * (d * s + (q - 1) * d * (d + 1) // 2)


def _monic_coeff_lists(q: int, d: int):
    for code in range(q**d):
        coeffs = []
        c = code
        for _ in range(d):
            coeffs.append(c % q)
            c //= q
        yield coeffs + [1]


def monic_power_sum(ctx: CarlitzContext, d: int, s: int, prec: int | None = None) -> LaurentSeries:
    """S_d(s) = sum of a^-s over the q^d monic polynomials of degree d."""
    if s < 1 or d < 0:
        raise ValueError("need s >= 1 and d >= 0")
    prec = ctx.prec if prec is None else prec
    key = ("S", d, s, prec)
    if key in ctx._cache:
        return ctx._cache[key]
    q, fld = ctx.q, ctx.field
    if q**d > ctx.enum_budget:
        raise BudgetError(f"{q**d} monic polynomials exceed budget {ctx.enum_budget}")
    acc = ls_zero(fld, q, prec)
    for coeffs in _monic_coeff_lists(q, d):
        a_pow = coeffs
        for _ in range(s - 1):
            a_pow = dense_theta_mul(fld, a_pow, coeffs)
        acc = acc + from_rational(fld, q, {0: 1}, {k: c for k, c in enumerate(a_pow)}, prec)
    ctx._cache[key] = acc
    return acc


def _decreasing_tuples(d: int, contrib, stop: int):
    """Strictly decreasing tuples (i_0 > ... > i_{d-1} >= 0) with total
    contribution below `stop`; contrib(j, v) must be nondecreasing in v."""
    chosen = [0] * d

    def rec(pos: int, lo: int, acc: int):
        v = lo
        while True:
            c = contrib(pos, v)
            rest = sum(contrib(k, v + pos - k) for k in range(pos))
            if acc + c + rest >= stop:
                return
            chosen[pos] = v
            if pos == 0:
                yield tuple(chosen)
            else:
                yield from rec(pos - 1, v + 1, acc + c)
            v += 1

    yield from rec(d - 1, 0, 0)


def _all_decreasing_tuples(d: int, max_first: int):
    def rec(pos: int, lo: int, prefix):
        if pos < 0:
            yield tuple(prefix)
            return
        for v in range(lo, max_first + 1):
            if v + pos > max_first:
                break
            prefix[pos] = v
            yield from rec(pos - 1, v + 1, prefix)

    yield from rec(d - 1, 0, [0] * d)


def mzv(
    ctx: CarlitzContext,
    s: Index,
    prec: int | None = None,
    max_degree: int | None = None,
) -> LaurentSeries:
    """zeta_l(s_1,...,s_d) over decreasing-degree monic tuples.

    With `max_degree` set, returns the exact partial sum over all degree
    tuples with d_1 <= max_degree (the oracle comparison form); otherwise the
    degree cutoff comes from the certified valuation bound.
    """
    prec = ctx.prec if prec is None else prec
    work = prec + 2
    q, fld = ctx.q, ctx.field
    entries = s.entries
    d = len(entries)
    if max_degree is not None:
        tuples = _all_decreasing_tuples(d, max_degree)
    else:
        tuples = _decreasing_tuples(
            d, lambda j, v: power_sum_val_bound(q, v, entries[j]), work
        )
    acc = ls_zero(fld, q, work)
    for tup in tuples:
        term = monic_power_sum(ctx, tup[0], entries[0], work)
        for j in range(1, d):
            term = term * monic_power_sum(ctx, tup[j], entries[j], work)
        acc = acc + term.truncate(work)
    return acc.truncate(prec)


def mzv_tuple_count(ctx: CarlitzContext, s: Index, prec: int | None = None) -> int:
    """Number of degree tuples the direct summation visits at this precision."""
    prec = ctx.prec if prec is None else prec
    entries = s.entries
    return sum(
        1
        for _ in _decreasing_tuples(
            s.dep, lambda j, v: power_sum_val_bound(ctx.q, v, entries[j]), prec + 2
        )
    )


def mzv_bruteforce(ctx: CarlitzContext, s: Index, max_degree: int, prec: int) -> LaurentSeries:
    """Exhaustive enumeration over monic tuples with deg a_1 <= max_degree."""
    q, fld = ctx.q, ctx.field
    entries = s.entries
    d = len(entries)
    acc = ls_zero(fld, q, prec + 2)
    for tup in _all_decreasing_tuples(d, max_degree):
        pools = [list(_monic_coeff_lists(q, dv)) for dv in tup]
        stack = [(0, [1])]  # (position, accumulated denominator poly)
        while stack:
            pos, den = stack.pop()
            if pos == d:
                acc = acc + from_rational(
                    fld, q, {0: 1}, {k: c for k, c in enumerate(den)}, prec + 2
                )
                continue
            for a in pools[pos]:
                a_pow = a
                for _ in range(entries[pos] - 1):
                    a_pow = dense_theta_mul(fld, a_pow, a)
                stack.append((pos + 1, dense_theta_mul(fld, den, a_pow)))
    return acc.truncate(prec)


# -- Anderson-Thakur polynomials ---------------------------------------------------


class _Frac:
    """num/den with num in F[t, theta] and den monic in t (no gcd reduction)."""

    __slots__ = ("num", "den")

    def __init__(self, num: BivarPoly, den: BivarPoly):
        self.num = num
        self.den = den

    def __add__(self, other: "_Frac") -> "_Frac":
        return _Frac(self.num * other.den + other.num * self.den, self.den * other.den)

    def __mul__(self, other: "_Frac") -> "_Frac":
        return _Frac(self.num * other.num, self.den * other.den)


def anderson_thakur_polynomials(ctx: CarlitzContext, s_max: int) -> list[BivarPoly]:
    """H_0..H_{s_max}; integral by construction (exact division, loud abort)."""
    key = ("AT", s_max)
    if key in ctx._cache:
        return ctx._cache[key]
    q, fld = ctx.q, ctx.field
    one = BivarPoly.one(fld)
    neg = ops(fld).neg

    def tpow(e: int) -> BivarPoly:
        return BivarPoly(fld, {(e, 0): 1})

    # generating coefficients a_i of x^{q^i}; a_0 = 1
    a: dict[int, _Frac] = {0: _Frac(one, one)}
    i = 1
    while q**i <= s_max:
        num = one
        den = one
        for j in range(1, i + 1):
            num = num * BivarPoly(fld, {(q**i, 0): 1, (0, q**j): neg[1]})
        for j in range(i):
            den = den * (tpow(q**i) - tpow(q**j))
        a[i] = _Frac(num, den)
        i += 1
    # series inversion: c_n = sum_i a_i c_{n - q^i}
    c: list[_Frac] = [_Frac(one, one)]
    for n in range(1, s_max + 1):
        acc: _Frac | None = None
        for i, ai in a.items():
            if q**i <= n:
                term = ai * c[n - q**i]
                acc = term if acc is None else acc + term
        c.append(acc)
    out = []
    for s_idx in range(s_max + 1):
        gamma_t = carlitz_factorial(ctx, s_idx).subs_theta_to_t()
        quot, rem = (gamma_t * c[s_idx].num).divmod_t(c[s_idx].den)
        if not rem.is_zero():
            raise ConventionError(
                f"generating-series slot {s_idx} did not divide out: convention bug"
            )
        out.append(quot)
    ctx._cache[key] = out
    return out


def at_bound_report(ctx: CarlitzContext, hs: list[BivarPoly]) -> CheckReport:
    """Convergence bound per polynomial: ||H_{s-1}|| < |theta|^{sq/(q-1)}."""
    q = ctx.q
    failures = []
    for s_idx in range(1, len(hs) + 1):
        h = hs[s_idx - 1]
        e = h.gauss_exponent()
        if e is not None and (q - 1) * e >= s_idx * q:
            failures.append((s_idx - 1, e, Fraction(s_idx * q, q - 1)))
    return CheckReport(passed=not failures, checked=len(hs), failures=failures)


# -- Carlitz multiple polylogarithms ------------------------------------------------


@dataclass(frozen=True)
class CmplSpec:
    """Index s with one polynomial argument per entry."""

    s: Index
    u: tuple[BivarPoly, ...]

    def __post_init__(self):
        if len(self.u) != self.s.dep:
            raise ValueError("argument list length must equal the depth")


def convergence_report(ctx: CarlitzContext, spec: CmplSpec) -> CheckReport:
    """Strict norm condition ||u_i|| < |theta|^{s_i q/(q-1)}, compared exactly."""
    q = ctx.q
    items = []
    passed = True
    for i, (si, ui) in enumerate(zip(spec.s.entries, spec.u), start=1):
        e = ui.gauss_exponent()
        bound = Fraction(si * q, q - 1)
        ok = e is None or (q - 1) * e < si * q
        passed &= ok
        items.append((i, e, bound, ok))
    return CheckReport(
        passed=passed,
        checked=len(items),
        failures=[it for it in items if not it[3]],
        note="; ".join(
            f"u_{i}: ||u|| exponent {e if e is not None else '-inf'} vs bound {b}"
            for i, e, b, _ in items
        ),
    )


def _deltas(ctx: CarlitzContext, spec: CmplSpec) -> list[int]:
    q = ctx.q
    out = []
    for si, ui in zip(spec.s.entries, spec.u):
        e = ui.gauss_exponent()
        out.append(si * q - (q - 1) * (0 if e is None else e))
    return out


def _ell_inv_pow(ctx: CarlitzContext, i: int, e: int, rel: int) -> LaurentSeries:
    """((theta - theta^q)...(theta - theta^{q^i}))^-e with rel relative z-digits."""
    key = ("ellinv", i, e, rel)
    if key in ctx._cache:
        return ctx._cache[key]
    q, fld = ctx.q, ctx.field
    neg = ops(fld).neg
    poly = BivarPoly.one(fld)
    for a in range(1, i + 1):
        poly = poly * BivarPoly(fld, {(0, 1): 1, (0, q**a): neg[1]})
    ser = poly.eval_theta(q, rel + 2)  # negative valuation, so relative > rel
    val = ser.inv() ** e
    ctx._cache[key] = val
    return val


def cmpl_value(ctx: CarlitzContext, spec: CmplSpec, prec: int | None = None) -> LaurentSeries:
    """The polylogarithm value at t = theta, by direct summation.

    Exact valuation bookkeeping: the tuple (i_1 > ... > i_d >= 0) contributes
    at least sum_j (q^{i_j} delta_j - s_j q - (q-1) deg_t u_j) z-digits, with
    delta_j = s_j q - (q-1) deg_theta u_j > 0 under the convergence condition,
    so the dominant q^{i_1} factor terminates the sum.  Every atomic factor is
    materialized at a uniform relative precision, which the multiplication
    rule turns into absolute precision >= work for every term.
    """
    prec = ctx.prec if prec is None else prec
    q, fld = ctx.q, ctx.field
    rep = convergence_report(ctx, spec)
    if not rep.passed:
        raise ValueError(f"convergence condition violated: {rep.note}")
    if any(ui.is_zero() for ui in spec.u):
        return ls_zero(fld, q, prec)
    entries = spec.s.entries
    d = spec.s.dep
    deltas = _deltas(ctx, spec)
    tpen = [(q - 1) * ui.deg_t() for ui in spec.u]
    work = prec + 4

    def contrib(j: int, v: int) -> int:
        return q**v * deltas[j] - entries[j] * q - tpen[j]

    tuples = list(_decreasing_tuples(d, contrib, work))
    if not tuples:
        return ls_zero(fld, q, prec)
    bmin = min(sum(contrib(j, ij) for j, ij in enumerate(tup)) for tup in tuples)
    rel = work - min(bmin, 0) + 6
    acc = ls_zero(fld, q, work)
    for tup in tuples:
        term = None
        bound = 0
        for j, ij in enumerate(tup):
            bound += contrib(j, ij)
            low = -(q - 1) * (spec.u[j].deg_t() + spec.u[j].deg_theta() * q**ij)
            f = spec.u[j].eval_theta_twisted(ij * ctx.l, q, low + rel)
            term = f if term is None else term * f
            if ij > 0:
                term = term * _ell_inv_pow(ctx, ij, entries[j], rel)
        if not term.is_zero() and term.val < bound:
            raise ConventionError(
                f"term {tup} has valuation {term.val} below its certified bound {bound}"
            )
        acc = acc + term.truncate(work)
    return acc.truncate(prec)


def cmpl_series(
    ctx: CarlitzContext, spec: CmplSpec, tdeg: int | None = None, prec: int | None = None
) -> TateElement:
    """The t-motivic polylogarithm as a Tate element with certified tail."""
    prec = ctx.prec if prec is None else prec
    tdeg = ctx.tdeg if tdeg is None else tdeg
    q, fld = ctx.q, ctx.field
    rep = convergence_report(ctx, spec)
    if not rep.passed:
        raise ValueError(f"convergence condition violated: {rep.note}")
    if any(ui.is_zero() for ui in spec.u):
        return tate.zero(fld, q, prec, tdeg)
    entries = spec.s.entries
    d = spec.s.dep
    deltas = _deltas(ctx, spec)
    work = prec + 4
    sigma = (q - 1) * q

    def contrib(j: int, v: int) -> int:
        return q**v * deltas[j] - entries[j] * q

    tuples = list(_decreasing_tuples(d, contrib, work))
    bmin = min(
        (sum(contrib(j, ij) for j, ij in enumerate(tup)) for tup in tuples), default=0
    )
    rel = work - min(bmin, 0) + 6
    acc = tate.zero(fld, q, work, tdeg)
    for tup in tuples:
        num = spec.u[0].twist(tup[0] * ctx.l)
        for j in range(1, d):
            num = num * spec.u[j].twist(tup[j] * ctx.l)
        term = tate.from_poly(num, q, -(q - 1) * num.deg_theta() + rel)
        # group the inverted linear factors by twist exponent
        for a in range(1, tup[0] + 1):
            e = sum(entries[j] for j in range(d) if tup[j] >= a)
            key = ("teinv", a, e, tdeg, rel)
            if key in ctx._cache:
                fac = ctx._cache[key]
            else:
                from .laurent import theta_pow

                c = theta_pow(fld, q, q**a, -(q - 1) * q**a + rel)
                fac = tate.invert_linear_factor(c, e, tdeg)
                ctx._cache[key] = fac
            term = (term * fac).truncate_tdeg(tdeg)
        acc = acc + term
    coeffs = [c.truncate(work) for c in acc.coeffs]
    while len(coeffs) < tdeg + 1:
        coeffs.append(ls_zero(fld, q, work))
    tau_min = sum(deltas) - sigma * sum(ui.deg_t() for ui in spec.u) - q * spec.s.wt
    return TateElement(fld, q, coeffs[: tdeg + 1], (sigma, tau_min), False)


def cmpl_frobenius_residual(
    ctx: CarlitzContext, spec: CmplSpec, tdeg: int | None = None, prec: int | None = None
):
    """Residual of the defining recurrence, in its polynomial-only twisted form:

        (t - theta^q)^wt * L  =  (t - theta^q)^{s_d} * u_d * L'^{(l)}  +  L^{(l)}

    where L' drops the last index entry (empty L' = 1).  Checked, not assumed.
    """
    from .poly import t_minus_theta_frob
    from .reports import ResidualReport

    prec = ctx.prec if prec is None else prec
    tdeg = ctx.tdeg if tdeg is None else tdeg
    q, fld = ctx.q, ctx.field
    entries = spec.s.entries
    d = spec.s.dep
    big = cmpl_series(ctx, spec, tdeg, prec)
    if d == 1:
        prefix = tate.one(fld, q, prec + 4, 0)
    else:
        prefix = cmpl_series(ctx, CmplSpec(Index(entries[:-1]), spec.u[:-1]), tdeg, prec)
    cap = min(c.prec for c in big.coeffs)
    lin = t_minus_theta_frob(fld, ctx.l)
    lhs = tate.from_poly(lin ** spec.s.wt, q, cap + q * (q - 1) * spec.s.wt + 2) * big
    rhs1 = (
        tate.from_poly(lin ** entries[-1] * spec.u[-1], q, cap + q * (q - 1) * spec.s.wt + 2)
        * tate.twist(prefix, ctx.l).cap_precision(cap)
    )
    rhs2 = tate.twist(big, ctx.l).cap_precision(cap)
    resid = (lhs - rhs1 - rhs2).truncate_tdeg(tdeg)
    chk = tate.zero_check(resid)
    worst = None if chk.ok else Fraction(-chk.worst_zval, q - 1)
    loc = None if chk.ok else (chk.worst_tdeg,)
    return ResidualReport(passed=chk.ok, worst_exponent=worst, floor_z=chk.floor_z, location=loc)


# -- the period identity --------------------------------------------------------


def at_arguments(ctx: CarlitzContext, s: Index) -> tuple[BivarPoly, ...]:
    hs = anderson_thakur_polynomials(ctx, max(s.entries) - 1)
    return tuple(hs[si - 1] for si in s.entries)


def period_identity_report(
    ctx: CarlitzContext,
    s: Index,
    prec: int | None = None,
    u: tuple[BivarPoly, ...] | None = None,
) -> IdentityReport:
    """Compare the polylogarithm value at the AT arguments against
    Gamma_{s_1}...Gamma_{s_d} * zeta(s), two fully independent paths.

    Passing `u` overrides the arguments (perturbation controls).
    """
    prec = ctx.prec if prec is None else prec
    q, fld = ctx.q, ctx.field
    if u is None:
        u = at_arguments(ctx, s)
    gamma = BivarPoly.one(fld)
    for si in s.entries:
        gamma = gamma * carlitz_factorial(ctx, si - 1)
    work = prec + (q - 1) * gamma.deg_theta() + 4
    lhs = cmpl_value(ctx, CmplSpec(s, u), work)
    zeta = mzv(ctx, s, work)
    rhs = gamma.eval_theta(q, work + (q - 1) * gamma.deg_theta() + 2) * zeta
    cmp = compare_to_precision(lhs, rhs)
    if cmp.status == "equal" and cmp.exponent < prec:
        return IdentityReport(status="incomparable", precision=cmp.exponent)
    return IdentityReport(
        status=cmp.status,
        precision=cmp.exponent if cmp.status == "equal" else None,
        exponent=cmp.exponent if cmp.status == "unequal" else None,
        note=f"index {s}, AT-argument path vs factorial*zeta path",
    )
