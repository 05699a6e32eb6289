"""Truncated power series in t with Laurent-series coefficients.

Computational model of the Tate algebra: an element stores coefficients
c_0..c_D (each a truncated z-series with its own precision) plus a tail
certificate.  The certificate is either

  * exact   -- every coefficient beyond t^D is exactly zero (polynomials), or
  * (sigma, tau) -- a linear bound v_z(c_k) >= sigma*k + tau valid for ALL
    k >= 0 of the true series (checked against the stored range too), or
  * None    -- no claim; such elements cannot be evaluated at t = theta.

Every series built here (the period product, inverted linear factors, the
polylogarithm sums and their matrix products) has coefficient valuations
growing at least linearly in t-degree, so a linear certificate is always
available and composes: add keeps the weaker of the two bounds, mul adds
offsets and keeps the weaker slope, an n-fold twist scales both by p^n.

Evaluation at t = theta is certified: it requires slope > q-1, so that the
omitted tail sum(c_k theta^k, k > D) is O(z^((sigma-(q-1))(D+1)+tau)).
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import NamedTuple

from .errors import CertificateError, PrecisionError
from .ffield import FieldSpec, ops
from .laurent import LaurentSeries
from .laurent import twist as ls_twist
from .laurent import zero as ls_zero
from .poly import BivarPoly

_BIG = 1 << 60


class TateElement:
    __slots__ = ("field", "q", "tdeg", "coeffs", "tail", "exact")

    def __init__(
        self,
        field: FieldSpec,
        q: int,
        coeffs: list[LaurentSeries],
        tail: tuple | None,
        exact: bool,
    ):
        if not coeffs:
            raise ValueError("a Tate element stores at least the t^0 coefficient")
        self.field = field
        self.q = q
        self.coeffs = coeffs
        self.tdeg = len(coeffs) - 1
        self.tail = tail
        self.exact = exact

    def _compat(self, other: "TateElement") -> None:
        if self.field != other.field or self.q != other.q:
            raise ValueError("mixed Tate algebras")

    def coeff(self, k: int) -> LaurentSeries:
        return self.coeffs[k]

    def is_zero_to_precision(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    # -- certificate plumbing -------------------------------------------------

    def _coeff_val_bound(self, k: int) -> int:
        # lower bound for v_z of the true k-th coefficient from storage
        c = self.coeffs[k]
        return c.val if c.coeffs else c.prec

    def _tail_shift(self, sigma) -> int | Fraction:
        # min_k (v(c_k) - sigma*k): how an exact operand shifts a partner's offset
        return min(self._coeff_val_bound(k) - sigma * k for k in range(self.tdeg + 1))

    def __add__(self, other: "TateElement") -> "TateElement":
        self._compat(other)
        if self.exact and other.exact:
            d = max(self.tdeg, other.tdeg)
            exact, tail = True, None
        elif self.exact:
            d = other.tdeg
            exact = False
            tail = (
                None
                if other.tail is None
                else (other.tail[0], min(other.tail[1], self._tail_shift(other.tail[0])))
            )
        elif other.exact:
            d = self.tdeg
            exact = False
            tail = (
                None
                if self.tail is None
                else (self.tail[0], min(self.tail[1], other._tail_shift(self.tail[0])))
            )
        else:
            d = min(self.tdeg, other.tdeg)
            exact = False
            if self.tail is None or other.tail is None:
                tail = None
            else:
                tail = (min(self.tail[0], other.tail[0]), min(self.tail[1], other.tail[1]))
        out = []
        for k in range(d + 1):
            if k > self.tdeg:
                out.append(other.coeffs[k])
            elif k > other.tdeg:
                out.append(self.coeffs[k])
            else:
                out.append(self.coeffs[k] + other.coeffs[k])
        return TateElement(self.field, self.q, out, tail, exact)

    def __neg__(self) -> "TateElement":
        return TateElement(self.field, self.q, [-c for c in self.coeffs], self.tail, self.exact)

    def __sub__(self, other: "TateElement") -> "TateElement":
        return self + (-other)

    def __mul__(self, other: "TateElement") -> "TateElement":
        self._compat(other)
        ua = self.tdeg + 1 if not self.exact else _BIG
        ub = other.tdeg + 1 if not other.exact else _BIG
        d = min(ua, ub, self.tdeg + other.tdeg + 1) - 1
        if self.exact and other.exact:
            d = self.tdeg + other.tdeg
            exact, tail = True, None
        elif self.exact:
            exact = False
            tail = (
                None
                if other.tail is None
                else (other.tail[0], other.tail[1] + self._tail_shift(other.tail[0]))
            )
        elif other.exact:
            exact = False
            tail = (
                None
                if self.tail is None
                else (self.tail[0], self.tail[1] + other._tail_shift(self.tail[0]))
            )
        else:
            exact = False
            if self.tail is None or other.tail is None:
                tail = None
            else:
                tail = (min(self.tail[0], other.tail[0]), self.tail[1] + other.tail[1])
        out = []
        for k in range(d + 1):
            acc = None
            lo = max(0, k - other.tdeg)
            hi = min(k, self.tdeg)
            for i in range(lo, hi + 1):
                term = self.coeffs[i] * other.coeffs[k - i]
                acc = term if acc is None else acc + term
            if acc is None:
                acc = ls_zero(self.field, self.q, self.coeffs[0].prec)
            out.append(acc)
        return TateElement(self.field, self.q, out, tail, exact)

    def __pow__(self, e: int) -> "TateElement":
        if e < 0:
            raise ValueError("negative Tate power; use invert_unit")
        result = one(self.field, self.q, self.coeffs[0].prec, 0)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def cap_precision(self, prec: int) -> "TateElement":
        return TateElement(
            self.field, self.q, [c.truncate(prec) for c in self.coeffs], self.tail, self.exact
        )

    def truncate_tdeg(self, d: int) -> "TateElement":
        if d >= self.tdeg:
            return self
        return TateElement(self.field, self.q, self.coeffs[: d + 1], self.tail, False)

    def __repr__(self) -> str:
        return f"TateElement({to_text(self)})"


# -- twists -------------------------------------------------------------------


def twist(f: TateElement, n: int) -> TateElement:
    """n-fold twist: t-exponents fixed, every coefficient twisted."""
    if n < 0:
        raise ValueError("twist requires n >= 0")
    if n == 0:
        return f
    s = f.field.p**n
    tail = None if f.tail is None else (f.tail[0] * s, f.tail[1] * s)
    return TateElement(f.field, f.q, [ls_twist(c, n) for c in f.coeffs], tail, f.exact)


# -- constructors ---------------------------------------------------------------


def zero(field: FieldSpec, q: int, prec: int, tdeg: int = 0) -> TateElement:
    return TateElement(field, q, [ls_zero(field, q, prec) for _ in range(tdeg + 1)], None, True)


def one(field: FieldSpec, q: int, prec: int, tdeg: int = 0) -> TateElement:
    c = [ls_zero(field, q, prec) for _ in range(tdeg + 1)]
    c[0] = LaurentSeries(field, q, 0, [1], prec)
    return TateElement(field, q, c, None, True)


def t_var(field: FieldSpec, q: int, prec: int) -> TateElement:
    return TateElement(
        field,
        q,
        [ls_zero(field, q, prec), LaurentSeries(field, q, 0, [1], prec)],
        None,
        True,
    )


def from_laurent(c: LaurentSeries) -> TateElement:
    return TateElement(c.field, c.q, [c], None, True)


def from_poly(poly: BivarPoly, q: int, prec: int) -> TateElement:
    """Exact Tate element of a (t, theta)-polynomial, coefficients mod O(z^prec)."""
    field = poly.field
    rows: dict[int, dict[int, int]] = {}
    for (a, b), c in poly.terms.items():
        rows.setdefault(a, {})[b] = c
    d = max(rows, default=0)
    from .laurent import from_theta_poly

    out = []
    for k in range(d + 1):
        out.append(from_theta_poly(field, q, rows.get(k, {}), prec))
    return TateElement(field, q, out, None, True)


# -- the operations -------------------------------------------------------------


def invert_linear_factor(c: LaurentSeries, s: int, tdeg: int) -> TateElement:
    """(t - c)^(-s) for |c| > 1, via the geometric expansion; certified tail.

    Coefficient of t^k is (-1)^s C(s+k-1, k) c^-(s+k); the certificate has
    slope -v_z(c) and offset s * (-v_z(c)).
    """
    if s < 1:
        raise ValueError("s must be a positive integer")
    if c.is_zero():
        raise PrecisionError("linear factor constant is zero to precision")
    if c.val >= 0:
        raise ValueError(f"v_z(c) = {c.val} >= 0: outside the convergence region")
    o = ops(c.field)
    inv_c = c.inv()
    w = inv_c**s
    sign = 1 if s % 2 == 0 else o.neg[1]
    out = []
    for k in range(tdeg + 1):
        b = math.comb(s + k - 1, k) % c.field.p
        scal = o.mul[sign * o.n + b] if b else 0
        out.append(w.scalar_mul(scal))
        if k < tdeg:
            w = w * inv_c
    slope = -c.val
    return TateElement(c.field, c.q, out, (slope, s * slope), False)


def invert_unit(f: TateElement, tdeg: int | None = None) -> TateElement:
    """Power-series inverse of an element with invertible constant term.

    The result carries no tail certificate (used for consistency checks only).
    """
    if f.coeffs[0].is_zero():
        raise PrecisionError("constant coefficient is zero to precision")
    d = f.tdeg if tdeg is None else min(tdeg, f.tdeg) if not f.exact else tdeg
    g0 = f.coeffs[0].inv()
    out = [g0]
    for k in range(1, d + 1):
        acc = None
        for j in range(1, k + 1):
            cj = f.coeffs[j] if j <= f.tdeg else None
            if cj is None:
                continue
            term = cj * out[k - j]
            acc = term if acc is None else acc + term
        if acc is None:
            acc = ls_zero(f.field, f.q, f.coeffs[0].prec)
        out.append(-(g0 * acc))
    return TateElement(f.field, f.q, out, None, False)


def eval_at_theta(f: TateElement) -> LaurentSeries:
    """Specialize t -> theta with certified precision.

    Requires an exact tail or a certificate with slope > q - 1, so the
    omitted tail is O(z^((slope-(q-1))(D+1)+offset)).
    """
    q = f.q
    o = ops(f.field)
    acc = None
    for k, c in enumerate(f.coeffs):
        term = c.shift(-k * (q - 1))
        if k % 2:
            term = term.scalar_mul(o.neg[1])
        acc = term if acc is None else acc + term
    if f.exact:
        return acc
    if f.tail is None:
        raise CertificateError("missing tail certificate: cannot certify evaluation")
    sigma, tau = f.tail
    if sigma <= q - 1:
        raise CertificateError(f"tail slope {sigma} <= q-1 = {q - 1}: evaluation not certified")
    cap = math.floor((sigma - (q - 1)) * (f.tdeg + 1) + tau)
    return acc.truncate(min(acc.prec, cap))


def gauss_norm(f: TateElement) -> tuple[Fraction | None, bool]:
    """(sup-norm exponent over stored coefficients, tail-could-dominate flag)."""
    best: Fraction | None = None
    for c in f.coeffs:
        e = c.norm_exponent()
        if e is not None and (best is None or e > best):
            best = e
    if f.exact:
        return best, False
    if f.tail is None:
        return best, True
    sigma, tau = f.tail
    tail_exp = Fraction(-(sigma * (f.tdeg + 1) + tau), f.q - 1)
    return best, best is None or tail_exp > best


class ZeroCheck(NamedTuple):
    ok: bool
    worst_tdeg: int | None
    worst_zval: int | None
    floor_z: int


def zero_check(f: TateElement) -> ZeroCheck:
    """Is f zero to precision?  Reports the worst offending coefficient."""
    worst_k = worst_v = None
    floor = min(c.prec for c in f.coeffs)
    for k, c in enumerate(f.coeffs):
        if not c.is_zero():
            if worst_v is None or c.val < worst_v:
                worst_k, worst_v = k, c.val
    return ZeroCheck(worst_v is None, worst_k, worst_v, floor)


def certificate_ok(f: TateElement) -> bool:
    """Stored coefficients are consistent with the tail certificate."""
    if f.exact or f.tail is None:
        return True
    sigma, tau = f.tail
    for k in range(f.tdeg + 1):
        bound = min(sigma * k + tau, f.coeffs[k].prec)
        if f._coeff_val_bound(k) < bound:
            return False
    return True


def to_text(f: TateElement) -> str:
    from .laurent import to_text as ls_text

    parts = [f"({ls_text(c)})" + ("" if k == 0 else "*t" if k == 1 else f"*t^{k}")
             for k, c in enumerate(f.coeffs)]
    if f.exact:
        tail = "exact"
    elif f.tail is None:
        tail = "uncertified"
    else:
        tail = f"slope {f.tail[0]}, offset {f.tail[1]}"
    return " + ".join(parts) + f" + O(t^{f.tdeg + 1}; {tail})"
