"""Truncated Laurent series over F_{p^m} in the ramified uniformizer z.

Convention (printed in every report): z is the fixed (q-1)-th root
z = (-theta)^(-1/(q-1)), so

    theta = -z^(-(q-1)),     (-theta)^(1/(q-1)) = z^(-1),

and |theta| = p^l corresponds to v_z(theta) = -(q-1) with q = p^l.  A series
is stored as (val, coeffs, prec): coefficients for exponents val..val+len-1,
known modulo O(z^prec).  All coefficients below val are known zeros and the
leading stored coefficient is nonzero (normalized form); a series that is
zero to its precision has empty coeffs and val == prec.

Precision propagates pessimistically: add/sub keep min(prec_a, prec_b); mul
keeps min(val_a + prec_b, val_b + prec_a); the inverse of a series of
valuation v known mod z^prec is known mod z^(prec - 2v).  "Zero to
precision" is distinct from exact zero: comparisons never claim inequality
below the joint precision floor, and inverting a zero-to-precision series
raises PrecisionError rather than ZeroDivisionError.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

from .errors import PrecisionError
from .ffield import FieldSpec, ops


class LaurentSeries:
    __slots__ = ("field", "q", "val", "coeffs", "prec")

    def __init__(self, field: FieldSpec, q: int, val: int, coeffs: list[int], prec: int):
        # normalize: drop leading zeros, drop anything at/above prec
        n = len(coeffs)
        if val + n > prec:
            n = max(0, prec - val)
            coeffs = coeffs[:n]
        i = 0
        while i < n and coeffs[i] == 0:
            i += 1
        if i == n:
            val, coeffs = prec, []
        else:
            val += i
            j = n
            while coeffs[j - 1] == 0:
                j -= 1
            coeffs = coeffs[i:j]
        self.field = field
        self.q = q
        self.val = val
        self.coeffs = coeffs
        self.prec = prec

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        """Zero to the stored precision."""
        return not self.coeffs

    def _compat(self, other: "LaurentSeries") -> None:
        if self.field != other.field or self.q != other.q:
            raise ValueError("mixed Laurent series rings")

    def coeff(self, k: int) -> int:
        if k < self.val:
            return 0
        if k >= self.val + len(self.coeffs):
            if k >= self.prec:
                raise PrecisionError(f"coefficient of z^{k} beyond O(z^{self.prec})")
            return 0
        return self.coeffs[k - self.val]

    # -- ring operations ----------------------------------------------------

    def __add__(self, other: "LaurentSeries") -> "LaurentSeries":
        self._compat(other)
        prec = min(self.prec, other.prec)
        if not self.coeffs:
            return LaurentSeries(self.field, self.q, other.val, other.coeffs[:], prec)
        if not other.coeffs:
            return LaurentSeries(self.field, self.q, self.val, self.coeffs[:], prec)
        o = ops(self.field)
        val = min(self.val, other.val)
        out = [0] * (max(self.val + len(self.coeffs), other.val + len(other.coeffs)) - val)
        for src in (self, other):
            off = src.val - val
            if src is self:
                for i, c in enumerate(src.coeffs):
                    out[off + i] = c
            else:
                add, n = o.add, o.n
                for i, c in enumerate(src.coeffs):
                    if c:
                        out[off + i] = add[out[off + i] * n + c]
        return LaurentSeries(self.field, self.q, val, out, prec)

    def __neg__(self) -> "LaurentSeries":
        neg = ops(self.field).neg
        return LaurentSeries(
            self.field, self.q, self.val, [neg[c] for c in self.coeffs], self.prec
        )

    def __sub__(self, other: "LaurentSeries") -> "LaurentSeries":
        return self + (-other)

    def __mul__(self, other: "LaurentSeries") -> "LaurentSeries":
        self._compat(other)
        val = self.val + other.val
        prec = min(self.val + other.prec, other.val + self.prec)
        la, lb = len(self.coeffs), len(other.coeffs)
        out_len = min(prec - val, la + lb - 1) if la and lb else 0
        if out_len <= 0:
            return LaurentSeries(self.field, self.q, prec, [], prec)
        fa, fb = self.coeffs, other.coeffs
        o = ops(self.field)
        if o.m == 1:
            p = o.p
            out = [0] * out_len
            for i in range(min(la, out_len)):
                ai = fa[i]
                if ai:
                    lim = min(lb, out_len - i)
                    for j in range(lim):
                        out[i + j] += ai * fb[j]
            out = [c % p for c in out]
        else:
            mul, add, n = o.mul, o.add, o.n
            out = [0] * out_len
            for i in range(min(la, out_len)):
                ai = fa[i]
                if ai:
                    lim = min(lb, out_len - i)
                    base = ai * n
                    for j in range(lim):
                        bj = fb[j]
                        if bj:
                            out[i + j] = add[out[i + j] * n + mul[base + bj]]
        return LaurentSeries(self.field, self.q, val, out, prec)

    def scalar_mul(self, c: int) -> "LaurentSeries":
        if c == 0:
            return LaurentSeries(self.field, self.q, self.prec, [], self.prec)
        o = ops(self.field)
        mul, n = o.mul, o.n
        return LaurentSeries(
            self.field, self.q, self.val, [mul[c * n + x] for x in self.coeffs], self.prec
        )

    def shift(self, k: int) -> "LaurentSeries":
        """Exact multiplication by z^k."""
        return LaurentSeries(self.field, self.q, self.val + k, self.coeffs[:], self.prec + k)

    def inv(self) -> "LaurentSeries":
        if not self.coeffs:
            raise PrecisionError("inverting a series that is zero to precision")
        o = ops(self.field)
        v = self.val
        rel = self.prec - v
        fa = self.coeffs
        la = len(fa)
        c0inv = o.inv[fa[0]]
        out = [0] * rel
        out[0] = c0inv
        mul, add, neg, n = o.mul, o.add, o.neg, o.n
        for k in range(1, rel):
            acc = 0
            for j in range(1, min(k, la - 1) + 1):
                aj = fa[j]
                if aj:
                    acc = add[acc * n + mul[aj * n + out[k - j]]]
            out[k] = mul[c0inv * n + neg[acc]]
        return LaurentSeries(self.field, self.q, -v, out, self.prec - 2 * v)

    def __pow__(self, e: int) -> "LaurentSeries":
        if e < 0:
            return self.inv() ** (-e)
        if e == 0:
            return one(self.field, self.q, self.prec)
        if not self.coeffs:
            return LaurentSeries(self.field, self.q, self.prec * e, [], self.prec * e)
        # seed with relative precision prec - val so square-and-multiply
        # reproduces the true precision e*val + (prec - val) of the power
        result = one(self.field, self.q, self.prec - self.val)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def truncate(self, prec: int) -> "LaurentSeries":
        if prec >= self.prec:
            return self
        return LaurentSeries(self.field, self.q, self.val, self.coeffs[:], prec)

    # -- norms and comparison -----------------------------------------------

    def norm_exponent(self) -> Fraction | None:
        """|f| as the exponent e with |f| = |theta|^e; None for zero-to-precision."""
        if not self.coeffs:
            return None
        return Fraction(-self.val, self.q - 1)

    def __repr__(self) -> str:
        return f"LaurentSeries({to_text(self)})"


class Comparison(NamedTuple):
    status: str  # "equal" | "unequal"
    exponent: int  # first differing exponent, or the joint precision


def compare_to_precision(a: LaurentSeries, b: LaurentSeries) -> Comparison:
    """Compare two series on their joint known range.

    Returns "unequal" with the first differing exponent when the difference
    has a nonzero coefficient below min(prec_a, prec_b), else "equal" with
    the joint precision.  An "equal" whose joint precision falls below the
    caller's target carries no information; the report layer downgrades such
    results to "incomparable" rather than calling them passes or failures.
    """
    a._compat(b)
    joint = min(a.prec, b.prec)
    diff = a.truncate(joint) - b.truncate(joint)
    if diff.coeffs:
        return Comparison("unequal", diff.val)
    return Comparison("equal", joint)


# -- twists ------------------------------------------------------------------


def twist(f: LaurentSeries, n: int) -> LaurentSeries:
    """n-fold Frobenius twist: exponents i -> i*p^n, coefficients a -> a^{p^n}."""
    if n < 0:
        raise ValueError("twist requires n >= 0; use inverse_twist")
    if n == 0:
        return f
    o = ops(f.field)
    s = f.field.p**n
    if not f.coeffs:
        return LaurentSeries(f.field, f.q, f.prec * s, [], f.prec * s)
    out = [0] * ((len(f.coeffs) - 1) * s + 1)
    for i, c in enumerate(f.coeffs):
        if c:
            out[i * s] = o.frob_n(c, n)
    return LaurentSeries(f.field, f.q, f.val * s, out, f.prec * s)


def inverse_twist(f: LaurentSeries, n: int) -> LaurentSeries:
    """Exact inverse of twist; requires every supported exponent divisible by p^n."""
    if n <= 0:
        raise ValueError("inverse_twist requires n >= 1")
    o = ops(f.field)
    s = f.field.p**n
    prec = -(-f.prec // s)
    if not f.coeffs:
        return LaurentSeries(f.field, f.q, prec, [], prec)
    if f.val % s:
        raise ValueError(f"support exponent {f.val} not divisible by p^{n}")
    out = [0] * (len(f.coeffs) // s + 1)
    k = f.field.m - (n % f.field.m) if n % f.field.m else 0
    for i, c in enumerate(f.coeffs):
        if c:
            if i % s:
                raise ValueError(f"support exponent {f.val + i} not divisible by p^{n}")
            out[i // s] = o.frob_n(c, k)
    return LaurentSeries(f.field, f.q, f.val // s, out, prec)


# -- constructors --------------------------------------------------------------


def zero(field: FieldSpec, q: int, prec: int) -> LaurentSeries:
    return LaurentSeries(field, q, prec, [], prec)


def one(field: FieldSpec, q: int, prec: int) -> LaurentSeries:
    return LaurentSeries(field, q, 0, [1], prec)


def monomial(field: FieldSpec, q: int, k: int, coeff: int, prec: int) -> LaurentSeries:
    return LaurentSeries(field, q, k, [coeff], prec)


def theta_pow(field: FieldSpec, q: int, k: int, prec: int) -> LaurentSeries:
    """theta^k as the exact monomial (-1)^k z^(-k(q-1))."""
    o = ops(field)
    c = 1 if k % 2 == 0 else o.neg[1]
    return LaurentSeries(field, q, -k * (q - 1), [c], prec)


def theta(field: FieldSpec, q: int, prec: int) -> LaurentSeries:
    return theta_pow(field, q, 1, prec)


def from_theta_poly(field: FieldSpec, q: int, poly: dict[int, int], prec: int) -> LaurentSeries:
    """Embed sum(c_k theta^k) (k >= 0, c_k field encodings) as a z-series."""
    if not poly:
        return zero(field, q, prec)
    o = ops(field)
    deg = max(poly)
    val = -deg * (q - 1)
    out = [0] * (deg * (q - 1) + 1)
    for k, c in poly.items():
        if c:
            out[(deg - k) * (q - 1)] = c if k % 2 == 0 else o.mul[o.neg[1] * o.n + c]
    return LaurentSeries(field, q, val, out, prec)


def from_rational(
    field: FieldSpec, q: int, num: dict[int, int], den: dict[int, int], prec: int
) -> LaurentSeries:
    """Expansion of num/den (polynomials in theta) at precision O(z^prec)."""
    if not any(den.values()):
        raise ZeroDivisionError("zero denominator polynomial")
    deg_n = max((k for k, c in num.items() if c), default=0)
    deg_d = max(k for k, c in den.items() if c)
    # slack so the propagated precision of the quotient reaches prec
    work = prec + 2 * deg_d * (q - 1) + deg_n * (q - 1) + 2
    n_series = from_theta_poly(field, q, num, work)
    d_series = from_theta_poly(field, q, den, work)
    return (n_series * d_series.inv()).truncate(prec)


def to_text(f: LaurentSeries) -> str:
    """Canonical text form 'c*z^k + ... + O(z^N)'."""
    from .ffield import element_text

    parts = []
    for i, c in enumerate(f.coeffs):
        if c:
            k = f.val + i
            ct = element_text(f.field, c)
            if "+" in ct:
                ct = f"({ct})"
            if k == 0:
                parts.append(ct)
            else:
                zk = "z" if k == 1 else f"z^{k}"
                parts.append(zk if ct == "1" else f"{ct}*{zk}")
    parts.append(f"O(z^{f.prec})")
    return " + ".join(parts)
