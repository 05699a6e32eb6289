"""Arithmetic in finite fields F_{p^m} with Frobenius and subfield embeddings.

Elements are encoded as integers in [0, p^m): the encoding of the residue
class c_0 + c_1*g + ... + c_{m-1}*g^{m-1} (g a root of the modulus) is
sum(c_i * p^i).  The modulus for (p, m) is the monic irreducible of degree m
whose non-leading coefficient vector has the least integer encoding, so the
same (p, m) always yields the same field, bit for bit.

For the small fields used throughout (p^m <= 1024) full add/mul tables are
precomputed; coefficient-heavy callers work on raw encodings through the
cached :class:`FieldOps` object and only wrap into :class:`FfElem` at module
boundaries.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

_TABLE_CAP = 4096


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _poly_mod(num: list[int], den: list[int], p: int) -> list[int]:
    # remainder of num by den over F_p; den monic
    num = num[:]
    dd = len(den) - 1
    while len(num) - 1 >= dd and any(num):
        while num and num[-1] == 0:
            num.pop()
        if len(num) - 1 < dd:
            break
        lead = num[-1]
        shift = len(num) - 1 - dd
        for i, c in enumerate(den):
            num[shift + i] = (num[shift + i] - lead * c) % p
    while num and num[-1] == 0:
        num.pop()
    return num


def _poly_is_irreducible(poly: list[int], p: int) -> bool:
    deg = len(poly) - 1
    if deg == 1:
        return True
    # trial division by every monic polynomial of degree 1..deg//2
    for d in range(1, deg // 2 + 1):
        for code in range(p**d):
            den = _decode(code, d, p) + [1]
            if not _poly_mod(poly[:], den, p):
                return False
    return True


def _decode(code: int, length: int, p: int) -> list[int]:
    out = []
    for _ in range(length):
        out.append(code % p)
        code //= p
    return out


def _encode(coeffs: Sequence[int], p: int) -> int:
    val = 0
    for c in reversed(coeffs):
        val = val * p + (c % p)
    return val


@lru_cache(maxsize=None)
def _least_irreducible(p: int, m: int) -> tuple[int, ...]:
    for code in range(p**m):
        poly = _decode(code, m, p) + [1]
        if _poly_is_irreducible(poly, p):
            return tuple(poly)
    raise AssertionError("no irreducible polynomial found")  # unreachable


@dataclass(frozen=True)
class FieldSpec:
    """Defining data of F_{p^m}: characteristic, degree, canonical modulus."""

    p: int
    m: int
    modulus: tuple[int, ...]

    @property
    def order(self) -> int:
        return self.p**self.m

    def __repr__(self) -> str:
        return f"FieldSpec(p={self.p}, m={self.m})"


def field(p: int, m: int) -> FieldSpec:
    """Create the canonical F_{p^m}; deterministic in (p, m)."""
    if not _is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    if m < 1:
        raise ValueError(f"m must be a positive integer, got {m}")
    return FieldSpec(p, m, _least_irreducible(p, m))


class FieldOps:
    """Precomputed arithmetic tables for one FieldSpec (internal fast path)."""

    __slots__ = ("spec", "n", "p", "m", "add", "mul", "neg", "inv", "frob")

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        p, m = spec.p, spec.m
        n = p**m
        if n > _TABLE_CAP:
            raise ValueError(f"field order {n} exceeds table cap {_TABLE_CAP}")
        self.n, self.p, self.m = n, p, m
        add = [0] * (n * n)
        mul = [0] * (n * n)
        for a in range(n):
            da = _decode(a, m, p)
            for b in range(a, n):
                db = _decode(b, m, p)
                s = _encode([(x + y) % p for x, y in zip(da, db)], p)
                add[a * n + b] = s
                add[b * n + a] = s
                prod = [0] * (2 * m - 1)
                for i, x in enumerate(da):
                    if x:
                        for j, y in enumerate(db):
                            prod[i + j] = (prod[i + j] + x * y) % p
                r = _poly_mod(prod, list(spec.modulus), p)
                v = _encode(r + [0] * (m - len(r)), p)
                mul[a * n + b] = v
                mul[b * n + a] = v
        self.add = add
        self.mul = mul
        self.neg = [_encode([(-c) % p for c in _decode(a, m, p)], p) for a in range(n)]
        inv = [0] * n
        for a in range(1, n):
            inv[a] = self.pow(a, n - 2)
        self.inv = inv
        self.frob = [self.pow(a, p) for a in range(n)]

    def sub(self, a: int, b: int) -> int:
        return self.add[a * self.n + self.neg[b]]

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            if a == 0:
                raise ZeroDivisionError("inverse of zero field element")
            a = self.inv[a] if hasattr(self, "inv") else self.pow(a, self.n - 2)
            e = -e
        if a == 0:
            return 1 if e == 0 else 0
        e %= self.n - 1  # element order divides p^m - 1
        result, base, mul, n = 1, a, self.mul, self.n
        while e:
            if e & 1:
                result = mul[result * n + base]
            base = mul[base * n + base]
            e >>= 1
        return result

    def frob_n(self, a: int, n_fold: int) -> int:
        k = n_fold % self.m
        frob = self.frob
        for _ in range(k):
            a = frob[a]
        return a

    def from_int(self, c: int) -> int:
        # image of the rational integer c under Z -> F_p -> F_{p^m}
        return c % self.p


@lru_cache(maxsize=None)
def ops(spec: FieldSpec) -> FieldOps:
    return FieldOps(spec)


@dataclass(frozen=True)
class FfElem:
    """An element of F_{p^m}, tied to its FieldSpec."""

    spec: FieldSpec
    value: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(_decode(self.value, self.spec.m, self.spec.p))

    def _check(self, other: "FfElem") -> FieldOps:
        if self.spec != other.spec:
            raise ValueError("mixed field specs")
        return ops(self.spec)

    def __add__(self, other: "FfElem") -> "FfElem":
        o = self._check(other)
        return FfElem(self.spec, o.add[self.value * o.n + other.value])

    def __sub__(self, other: "FfElem") -> "FfElem":
        o = self._check(other)
        return FfElem(self.spec, o.sub(self.value, other.value))

    def __neg__(self) -> "FfElem":
        return FfElem(self.spec, ops(self.spec).neg[self.value])

    def __mul__(self, other: "FfElem") -> "FfElem":
        o = self._check(other)
        return FfElem(self.spec, o.mul[self.value * o.n + other.value])

    def __truediv__(self, other: "FfElem") -> "FfElem":
        o = self._check(other)
        if other.value == 0:
            raise ZeroDivisionError("division by zero field element")
        return FfElem(self.spec, o.mul[self.value * o.n + o.inv[other.value]])

    def __pow__(self, e: int) -> "FfElem":
        return FfElem(self.spec, ops(self.spec).pow(self.value, e))

    def __bool__(self) -> bool:
        return self.value != 0

    def __str__(self) -> str:
        return element_text(self.spec, self.value)


def elem(spec: FieldSpec, value: int | Sequence[int]) -> FfElem:
    if isinstance(value, int):
        return FfElem(spec, value % spec.order if value >= 0 else ops(spec).from_int(value))
    if len(value) > spec.m:
        raise ValueError("coefficient vector too long")
    return FfElem(spec, _encode(list(value) + [0] * (spec.m - len(value)), spec.p))


def frobenius(a: FfElem, n: int) -> FfElem:
    """n-fold Frobenius a -> a^{p^n}; negative n is the inverse twist."""
    return FfElem(a.spec, ops(a.spec).frob_n(a.value, n))


@lru_cache(maxsize=None)
def _embedding_root(sub: FieldSpec, sup: FieldSpec) -> int:
    o = ops(sup)
    for x in range(o.n):
        acc = 0
        for c in reversed(sub.modulus):
            acc = o.add[o.mul[acc * o.n + x] * o.n + (c % sub.p)]
        if acc == 0:
            return x
    raise AssertionError("no root of subfield modulus found")  # unreachable


def embed(a: FfElem, sup: FieldSpec) -> FfElem:
    """Embed a in the larger field; deterministic (least root in encoding order)."""
    sub = a.spec
    if sub.p != sup.p:
        raise ValueError("embedding requires equal characteristic")
    if sup.m % sub.m != 0:
        raise ValueError(f"degree {sub.m} does not divide {sup.m}")
    if sub == sup:
        return a
    root = _embedding_root(sub, sup)
    o = ops(sup)
    acc = 0
    for c in reversed(_decode(a.value, sub.m, sub.p)):
        acc = o.add[o.mul[acc * o.n + root] * o.n + c]
    return FfElem(sup, acc)


def element_text(spec: FieldSpec, value: int) -> str:
    """Canonical text in the polynomial basis: '0', '1', 'g+1', '2*g^3+1', ..."""
    if spec.m == 1:
        return str(value % spec.p)
    digits = _decode(value, spec.m, spec.p)
    terms = []
    for i in range(spec.m - 1, -1, -1):
        c = digits[i]
        if c == 0:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            var = "g" if i == 1 else f"g^{i}"
            terms.append(var if c == 1 else f"{c}*{var}")
    return "+".join(terms) if terms else "0"
