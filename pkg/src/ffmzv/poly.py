"""Exact polynomials in (t, theta) over F_{p^m}.

Sparse dict representation {(deg_t, deg_theta): coeff encoding}.  These carry
the Frobenius-twist action (t fixed, theta-exponents scaled by p^n,
coefficients raised to p^n) and evaluate at t = theta into truncated Laurent
series.  A packed dense multiplication for univariate theta-polynomials is
provided for the brute-force product oracles, which otherwise would be
quadratically slow at enumeration scale.
"""

from __future__ import annotations

from .errors import ConventionError
from .ffield import FieldSpec, element_text, ops
from .laurent import LaurentSeries
from .laurent import zero as ls_zero


class BivarPoly:
    __slots__ = ("field", "terms")

    def __init__(self, field: FieldSpec, terms: dict[tuple[int, int], int]):
        self.field = field
        self.terms = {e: c for e, c in terms.items() if c}

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def zero(field: FieldSpec) -> "BivarPoly":
        return BivarPoly(field, {})

    @staticmethod
    def const(field: FieldSpec, c: int) -> "BivarPoly":
        return BivarPoly(field, {(0, 0): c % field.p if isinstance(c, int) else c})

    @staticmethod
    def one(field: FieldSpec) -> "BivarPoly":
        return BivarPoly(field, {(0, 0): 1})

    @staticmethod
    def t(field: FieldSpec) -> "BivarPoly":
        return BivarPoly(field, {(1, 0): 1})

    @staticmethod
    def theta(field: FieldSpec) -> "BivarPoly":
        return BivarPoly(field, {(0, 1): 1})

    @staticmethod
    def from_theta_coeffs(field: FieldSpec, coeffs: dict[int, int]) -> "BivarPoly":
        return BivarPoly(field, {(0, k): c for k, c in coeffs.items()})

    # -- queries --------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def deg_t(self) -> int:
        return max((a for a, _ in self.terms), default=0)

    def deg_theta(self) -> int:
        return max((b for _, b in self.terms), default=0)

    def gauss_exponent(self) -> int | None:
        """log_|theta| of the coefficient sup norm: max theta-degree, None if zero."""
        if not self.terms:
            return None
        return self.deg_theta()

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BivarPoly)
            and self.field == other.field
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.field, tuple(sorted(self.terms.items()))))

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other: "BivarPoly") -> "BivarPoly":
        o = ops(self.field)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = o.add[out.get(e, 0) * o.n + c]
        return BivarPoly(self.field, out)

    def __neg__(self) -> "BivarPoly":
        neg = ops(self.field).neg
        return BivarPoly(self.field, {e: neg[c] for e, c in self.terms.items()})

    def __sub__(self, other: "BivarPoly") -> "BivarPoly":
        return self + (-other)

    def __mul__(self, other: "BivarPoly") -> "BivarPoly":
        o = ops(self.field)
        mul, add, n = o.mul, o.add, o.n
        out: dict[tuple[int, int], int] = {}
        for (a1, b1), c1 in self.terms.items():
            base = c1 * n
            for (a2, b2), c2 in other.terms.items():
                e = (a1 + a2, b1 + b2)
                out[e] = add[out.get(e, 0) * n + mul[base + c2]]
        return BivarPoly(self.field, out)

    def scalar_mul(self, c: int) -> "BivarPoly":
        o = ops(self.field)
        return BivarPoly(self.field, {e: o.mul[c * o.n + x] for e, x in self.terms.items()})

    def __pow__(self, e: int) -> "BivarPoly":
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = BivarPoly.one(self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def twist(self, n: int) -> "BivarPoly":
        """n-fold twist: coefficients to the p^n, theta-exponents times p^n, t fixed."""
        if n == 0:
            return self
        o = ops(self.field)
        s = self.field.p**n
        return BivarPoly(
            self.field, {(a, b * s): o.frob_n(c, n) for (a, b), c in self.terms.items()}
        )

    # -- specializations ------------------------------------------------------

    def eval_theta(self, q: int, prec: int) -> LaurentSeries:
        """Substitute t = theta and expand in z (theta^k = (-1)^k z^(-k(q-1)))."""
        return self.eval_theta_twisted(0, q, prec)

    def eval_theta_twisted(self, n: int, q: int, prec: int) -> LaurentSeries:
        """(self twisted n-fold) evaluated at t = theta, as a z-series."""
        if not self.terms:
            return ls_zero(self.field, q, prec)
        o = ops(self.field)
        s = self.field.p**n
        acc: dict[int, int] = {}
        for (a, b), c in self.terms.items():
            k = a + b * s
            cc = o.frob_n(c, n) if n else c
            if k % 2:
                cc = o.neg[cc]
            z = -k * (q - 1)
            prev = acc.get(z, 0)
            acc[z] = o.add[prev * o.n + cc] if prev else cc
        val = min(acc)
        out = [0] * (max(acc) - val + 1)
        for z, c in acc.items():
            out[z - val] = c
        return LaurentSeries(self.field, q, val, out, prec)

    def subs_theta_to_t(self) -> "BivarPoly":
        """Rename theta to t; only valid for polynomials with no t-support."""
        if self.deg_t() != 0:
            raise ValueError("substitution theta -> t requires a pure theta-polynomial")
        return BivarPoly(self.field, {(b, 0): c for (_, b), c in self.terms.items()})

    def divmod_t(self, divisor: "BivarPoly") -> tuple["BivarPoly", "BivarPoly"]:
        """Long division in t; divisor must be monic in t with scalar lead."""
        dd = divisor.deg_t()
        lead = {b: c for (a, b), c in divisor.terms.items() if a == dd}
        if lead != {0: 1}:
            raise ConventionError("divisor is not monic in t")
        o = ops(self.field)
        rem = dict(self.terms)
        quot: dict[tuple[int, int], int] = {}
        div_terms = list(divisor.terms.items())
        while rem:
            a = max(e[0] for e in rem)
            if a < dd:
                break
            slice_terms = [(b, c) for (ta, b), c in rem.items() if ta == a]
            for b, c in slice_terms:
                quot[(a - dd, b)] = c
                for (da, db), dc in div_terms:
                    e = (a - dd + da, b + db)
                    v = o.sub(rem.get(e, 0), o.mul[c * o.n + dc])
                    if v:
                        rem[e] = v
                    else:
                        rem.pop(e, None)
            assert not any(ta == a for ta, _ in rem), "leading slice did not clear"
        return BivarPoly(self.field, quot), BivarPoly(self.field, rem)

    def __repr__(self) -> str:
        return f"BivarPoly({to_text(self)})"


def t_minus_theta_frob(field: FieldSpec, n: int) -> BivarPoly:
    """The n-fold twist (t - theta)^((n)) = t - theta^(p^n)."""
    neg1 = ops(field).neg[1]
    return BivarPoly(field, {(1, 0): 1, (0, field.p**n): neg1})


def to_text(f: BivarPoly) -> str:
    if not f.terms:
        return "0"
    parts = []
    for (a, b) in sorted(f.terms, reverse=True):
        c = f.terms[(a, b)]
        ct = element_text(f.field, c)
        if "+" in ct:
            ct = f"({ct})"
        factors = []
        if a:
            factors.append("t" if a == 1 else f"t^{a}")
        if b:
            factors.append("theta" if b == 1 else f"theta^{b}")
        if not factors:
            parts.append(ct)
        elif ct == "1":
            parts.append("*".join(factors))
        else:
            parts.append("*".join([ct] + factors))
    return " + ".join(parts)


def parse_poly(field: FieldSpec, text: str) -> BivarPoly:
    """Parse 'c*t^a*theta^b + ...' (integer coefficients, no parentheses)."""
    s = text.replace(" ", "").replace("-", "+-")
    if not s or s == "+-":
        raise ValueError(f"cannot parse polynomial {text!r}")
    result = BivarPoly.zero(field)
    for chunk in s.split("+"):
        if not chunk:
            continue
        coeff = 1
        if chunk.startswith("-"):
            coeff = -1
            chunk = chunk[1:]
        dt = dth = 0
        for factor in chunk.split("*"):
            if not factor:
                raise ValueError(f"cannot parse polynomial {text!r}")
            name, _, exp = factor.partition("^")
            e = int(exp) if exp else 1
            if name == "t":
                dt += e
            elif name == "theta":
                dth += e
            elif name.isdigit():
                coeff *= int(name) ** e
            else:
                raise ValueError(f"unknown factor {factor!r} in {text!r}")
        enc = ops(field).from_int(coeff)
        result = result + BivarPoly(field, {(dt, dth): enc})
    return result


# -- packed dense univariate products (oracle fast path) ----------------------


def _packed_mul_prime(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    n = min(len(a), len(b))
    stride = max(((p - 1) * (p - 1) * n).bit_length() + 1, 4)
    mask = (1 << stride) - 1
    xa = sum(c << (stride * i) for i, c in enumerate(a))
    xb = sum(c << (stride * i) for i, c in enumerate(b))
    prod = xa * xb
    out = []
    for _ in range(len(a) + len(b) - 1):
        out.append((prod & mask) % p)
        prod >>= stride
    return out


def dense_theta_mul(field: FieldSpec, a: list[int], b: list[int]) -> list[int]:
    """Product of dense theta-coefficient lists (encodings); fast for m <= 2."""
    p, m = field.p, field.m
    if m == 1:
        return _packed_mul_prime(a, b, p)
    if m == 2:
        a0 = [c % p for c in a]
        a1 = [c // p for c in a]
        b0 = [c % p for c in b]
        b1 = [c // p for c in b]
        # g^2 = mu0 + mu1*g from the modulus
        mu0 = (-field.modulus[0]) % p
        mu1 = (-field.modulus[1]) % p
        psum = lambda x, y: [(u + v) % p for u, v in zip(x, y)]
        p00 = _packed_mul_prime(a0, b0, p)
        p11 = _packed_mul_prime(a1, b1, p)
        pmid = _packed_mul_prime(psum(a0, a1), psum(b0, b1), p)
        ln = len(a) + len(b) - 1
        out = [0] * ln
        for i in range(ln):
            ab00 = p00[i] if i < len(p00) else 0
            ab11 = p11[i] if i < len(p11) else 0
            cross = ((pmid[i] if i < len(pmid) else 0) - ab00 - ab11) % p
            c0 = (ab00 + mu0 * ab11) % p
            c1 = (cross + mu1 * ab11) % p
            out[i] = c0 + p * c1
        return out
    # generic fallback: table-driven schoolbook
    o = ops(field)
    mul, add, n = o.mul, o.add, o.n
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            base = x * n
            for j, y in enumerate(b):
                if y:
                    out[i + j] = add[out[i + j] * n + mul[base + y]]
    return out
