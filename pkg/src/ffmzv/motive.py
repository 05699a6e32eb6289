"""Matrix systems for Frobenius difference equations and their verifiers.

The exact side of a system is stored positively twisted: for an index
(s_1..s_d) with arguments (u_1..u_d) the stored matrix is lower bidiagonal
with column k carrying (t - theta^q)^{s_{k+1}+...+s_d} on the diagonal and
(t - theta^q)^{s_{k+1}+...+s_d} * u_{k+1} below it, all polynomial in
(t, theta).  The series side is lower triangular with Omega-powers on the
diagonal and Omega^{...} times polylogarithm series below.  Every equation is
verified in the positively twisted form

    Psi = Phi^{(l)} * Psi^{(l)}

(and Psi = (Phi')^{(ls)} * Psi^{(ls)} for derived systems), never with
inverse twists, which would leave the ramified coefficient ring.  This is an
exact logical equivalence: apply the bijective l-fold twist to both sides.

The block-group shells of the independence argument live at the bottom of
the module: parameterized lower-triangular shapes (a) + X_{s_1} + ... with
exact closure, inversion, and commutator checks over finite fields or a
univariate rational function field.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .carlitz import CarlitzContext, omega_series
from .errors import ShapeParseError
from .ffield import FieldSpec, ops
from .poly import BivarPoly, t_minus_theta_frob, to_text as poly_text
from .reports import CheckReport, ResidualReport
from .special import CmplSpec, Index, cmpl_series, convergence_report, is_subclosed, subclosure
from . import tate
from .tate import TateElement, to_text as tate_text


@dataclass
class MotiveMatrix:
    """Square system matrix; kind 'phi-exact' (stored twisted) or 'psi-series'."""

    level: int
    size: int
    kind: str
    entries: tuple  # tuple of tuples; BivarPoly or TateElement
    field: FieldSpec

    def entry(self, i: int, j: int):
        return self.entries[i][j]

    def to_json(self) -> dict:
        text = poly_text if self.kind == "phi-exact" else tate_text
        out = {
            "schema": "motive-matrix/1",
            "level": self.level,
            "size": self.size,
            "kind": self.kind,
            "entries": [[text(e) for e in row] for row in self.entries],
        }
        if self.kind == "phi-exact":
            # the untwisted matrix (with inverse-twisted arguments) is never
            # materialized; what is stored is its level-fold twist
            out["stored_twist"] = self.level
        return out


def _suffix_weights(s: Index) -> list[int]:
    entries = s.entries
    return [sum(entries[k:]) for k in range(len(entries) + 1)]  # last is 0


def phi_matrix(ctx: CarlitzContext, u: tuple[BivarPoly, ...], s: Index) -> MotiveMatrix:
    """The exact matrix of the system for (u, s), stored in (+l)-twisted form.

    The twist turns the u^{(-l)} factors of the untwisted matrix back into u,
    keeping every entry polynomial; the untwisted matrix is never
    materialized.
    """
    if len(u) != s.dep:
        raise ValueError("argument list length must equal the depth")
    fld = ctx.field
    d = s.dep
    lin = t_minus_theta_frob(fld, ctx.l)
    sw = _suffix_weights(s)
    zero = BivarPoly.zero(fld)
    rows = [[zero for _ in range(d + 1)] for _ in range(d + 1)]
    for k in range(d + 1):
        rows[k][k] = lin ** sw[k]
        if k < d:
            rows[k + 1][k] = lin ** sw[k] * u[k]
    return MotiveMatrix(ctx.l, d + 1, "phi-exact", tuple(map(tuple, rows)), fld)


def psi_matrix(
    ctx: CarlitzContext,
    u: tuple[BivarPoly, ...],
    s: Index,
    tdeg: int | None = None,
    prec: int | None = None,
) -> MotiveMatrix:
    """The series side: Omega-powers down the diagonal, window polylogarithm
    series below, bottom-right 1; entries carry valid tail certificates."""
    prec = ctx.prec if prec is None else prec
    tdeg = ctx.tdeg if tdeg is None else tdeg
    if len(u) != s.dep:
        raise ValueError("argument list length must equal the depth")
    for k in range(s.dep):
        rep = convergence_report(ctx, CmplSpec(Index(s.entries[k : k + 1]), (u[k],)))
        if not rep.passed:
            raise ValueError(f"convergence fails at position {k + 1}: {rep.note}")
    fld, q = ctx.field, ctx.q
    d = s.dep
    sw = _suffix_weights(s)
    om = omega_series(ctx, tdeg=tdeg, prec=prec)
    ompow: dict[int, TateElement] = {0: tate.one(fld, q, prec + q + 2, 0)}
    for e in range(1, max(sw) + 1):
        ompow[e] = ompow[e - 1] * om if e > 1 else om
    zero = tate.zero(fld, q, prec, tdeg)
    rows = [[zero for _ in range(d + 1)] for _ in range(d + 1)]
    for col in range(d + 1):
        rows[col][col] = ompow[sw[col]]
        for row in range(col + 1, d + 1):
            window = CmplSpec(Index(s.entries[col:row]), tuple(u[col:row]))
            ser = cmpl_series(ctx, window, tdeg, prec)
            rows[row][col] = (ompow[sw[col]] * ser).truncate_tdeg(tdeg)
    return MotiveMatrix(ctx.l, d + 1, "psi-series", tuple(map(tuple, rows)), fld)


def carlitz_system(
    ctx: CarlitzContext, tdeg: int | None = None, prec: int | None = None
) -> tuple[MotiveMatrix, MotiveMatrix]:
    """The 1x1 system (t - theta stored twisted, Omega as its trivialization)."""
    prec = ctx.prec if prec is None else prec
    tdeg = ctx.tdeg if tdeg is None else tdeg
    phi = MotiveMatrix(ctx.l, 1, "phi-exact", ((t_minus_theta_frob(ctx.field, ctx.l),),), ctx.field)
    psi = MotiveMatrix(
        ctx.l, 1, "psi-series", ((omega_series(ctx, tdeg=tdeg, prec=prec),),), ctx.field
    )
    return phi, psi


def example_system(
    ctx: CarlitzContext, m: int, n: int, tdeg: int | None = None, prec: int | None = None
) -> tuple[MotiveMatrix, MotiveMatrix]:
    """The worked 8x8 block pair for {(m), (n), (m, n)} with AT arguments:
    a 1x1 block, two 2x2 blocks, and a 3x3 block, as one direct sum."""
    from .special import at_arguments

    phi0, psi0 = carlitz_system(ctx, tdeg, prec)
    phi, psi = phi0, psi0
    for s in (Index((m,)), Index((n,)), Index((m, n))):
        u = at_arguments(ctx, s)
        phi = direct_sum(phi, phi_matrix(ctx, u, s))
        psi = direct_sum(psi, psi_matrix(ctx, u, s, tdeg, prec))
    return phi, psi


def direct_sum(a: MotiveMatrix, b: MotiveMatrix) -> MotiveMatrix:
    if a.kind != b.kind or a.level != b.level or a.field != b.field:
        raise ValueError("direct sum requires matching kind, level, and field")
    n, m = a.size, b.size
    if a.kind == "phi-exact":
        zero = BivarPoly.zero(a.field)
    else:
        first = a.entries[0][0]
        pad_tdeg = max(e.tdeg for mm in (a, b) for row in mm.entries for e in row)
        zero = tate.zero(first.field, first.q, first.coeffs[0].prec, pad_tdeg)
    rows = []
    for i in range(n):
        rows.append(tuple(list(a.entries[i]) + [zero] * m))
    for i in range(m):
        rows.append(tuple([zero] * n + list(b.entries[i])))
    return MotiveMatrix(a.level, n + m, a.kind, tuple(rows), a.field)


def derived_matrix(phi: MotiveMatrix, s: int) -> MotiveMatrix:
    """The s-th derived system, materialized fully twisted: the stored matrix
    becomes Phi^{(l)} Phi^{(2l)} ... Phi^{(sl)}, of level l*s (all positive
    twists, all polynomial)."""
    if phi.kind != "phi-exact":
        raise ValueError("derived systems are built from the exact side")
    if s < 1:
        raise ValueError("s must be a positive integer")
    l = phi.level
    acc = phi.entries
    for k in range(1, s):
        twisted = [[e.twist(k * l) for e in row] for row in phi.entries]
        acc = _poly_mat_mul(acc, twisted, phi.field)
    return MotiveMatrix(l * s, phi.size, "phi-exact", tuple(map(tuple, acc)), phi.field)


def _poly_mat_mul(a, b, field: FieldSpec):
    n = len(a)
    zero = BivarPoly.zero(field)
    out = [[zero for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for k in range(n):
            if a[i][k].is_zero():
                continue
            for j in range(n):
                if not b[k][j].is_zero():
                    out[i][j] = out[i][j] + a[i][k] * b[k][j]
    return out


def perturb_entry(psi: MotiveMatrix, i: int, j: int) -> MotiveMatrix:
    """Add theta to entry (i, j): a mutation no trivialization can absorb.

    Adding a twist-fixed constant to a bottom-row entry is invisible (it is a
    rational column operation), so mutations use theta, which no entry can
    hide at any position.
    """
    first = psi.entries[0][0]
    th = tate.from_poly(BivarPoly.theta(psi.field), first.q, first.coeffs[0].prec)
    rows = [list(r) for r in psi.entries]
    rows[i][j] = rows[i][j] + th
    return MotiveMatrix(psi.level, psi.size, psi.kind, tuple(map(tuple, rows)), psi.field)


def frobenius_residual(phi: MotiveMatrix, psi: MotiveMatrix) -> ResidualReport:
    """Max Gauss-norm exponent of Psi - Phi_stored * Psi^{(n)}, n = phi.level.

    For a plain system n = l; for a derived system the stored matrix already
    is (Phi')^{(ls)} and n = l*s, so the SAME Psi must satisfy the equation.
    """
    if phi.size != psi.size:
        raise ValueError("size mismatch")
    if phi.kind != "phi-exact" or psi.kind != "psi-series":
        raise ValueError("need an exact side and a series side")
    if phi.level % psi.level != 0:
        raise ValueError("twist level of the exact side must be a multiple of the series level")
    n = phi.level
    q = psi.entries[0][0].q
    r = psi.size
    p0 = min(c.prec for row in psi.entries for e in row for c in e.coeffs)
    # the exact side has valuations down to -(q-1)*deg_theta; cap high enough
    # that multiplying by it still leaves p0 digits
    maxdeg = max(
        (pe.deg_theta() for row in phi.entries for pe in row if not pe.is_zero()), default=0
    )
    cap = p0 + (q - 1) * maxdeg + 8
    tw = [[tate.twist(e, n).cap_precision(cap) for e in row] for row in psi.entries]
    # exact entries (the 1s and 0s) are reliable at every t-degree
    tdeg = min(
        (e.tdeg for row in psi.entries for e in row if not e.exact),
        default=max(e.tdeg for row in psi.entries for e in row),
    )
    worst_v = None
    worst_loc = None
    floor = None
    for i in range(r):
        for j in range(r):
            acc = None
            for k in range(r):
                pe = phi.entries[i][k]
                if pe.is_zero():
                    continue
                mat = tate.from_poly(pe, q, cap)
                term = (mat * tw[k][j]).truncate_tdeg(tdeg)
                acc = term if acc is None else acc + term
            resid = psi.entries[i][j].truncate_tdeg(tdeg) - acc if acc is not None else psi.entries[i][j]
            chk = tate.zero_check(resid)
            floor = chk.floor_z if floor is None else min(floor, chk.floor_z)
            if not chk.ok and (worst_v is None or chk.worst_zval < worst_v):
                worst_v = chk.worst_zval
                worst_loc = (i, j, chk.worst_tdeg)
    return ResidualReport(
        passed=worst_v is None,
        worst_exponent=None if worst_v is None else Fraction(-worst_v, q - 1),
        floor_z=floor if floor is not None else 0,
        location=worst_loc,
    )


def mutation_kill_report(ctx: CarlitzContext, phi: MotiveMatrix, psi: MotiveMatrix) -> CheckReport:
    """Perturb every entry of the series side once; all residuals must fail."""
    survivors = []
    for i in range(psi.size):
        for j in range(psi.size):
            rep = frobenius_residual(phi, perturb_entry(psi, i, j))
            if rep.passed:
                survivors.append((i, j))
    return CheckReport(
        passed=not survivors,
        checked=psi.size * psi.size,
        failures=survivors,
        note="each surviving location is a mutation the residual failed to detect",
    )


# -- the collapsed component identity ------------------------------------------


def component_collapse_report(
    ctx: CarlitzContext,
    s: Index,
    i: int,
    j: int,
    u: tuple[BivarPoly, ...] | None = None,
    tdeg: int | None = None,
    prec: int | None = None,
) -> ResidualReport:
    """Alternating chain sum for the (i, j) component, with the tensor
    collapsed to an ordinary product (1-based, i >= j).

    For i > j the sum telescopes to zero: the chain coefficients are exactly
    the entries of the inverse of the unipotent matrix of window series, so
    the sum is a component of U^{-1} U.  The chain factors pair consecutive
    indices L[k_t][k_{t-1}]; the alternative pairing with a shifted second
    index does not cancel and is rejected by this check.  For i == j the
    collapsed component is an Omega-power times its own series inverse,
    verified to equal 1 to precision.
    """
    from .special import at_arguments

    prec = ctx.prec if prec is None else prec
    tdeg = ctx.tdeg if tdeg is None else tdeg
    if u is None:
        u = at_arguments(ctx, s)
    if not 1 <= j <= i <= s.dep + 1:
        raise ValueError("need 1 <= j <= i <= dep + 1")
    fld, q = ctx.field, ctx.q
    d = s.dep
    om = omega_series(ctx, tdeg=tdeg, prec=prec)

    def omega_pow(e: int) -> TateElement:
        return om**e if e else tate.one(fld, q, prec + q + 2, 0)

    if i == j:
        wt = sum(s.entries[i - 1 :])
        w = omega_pow(wt)
        prod = w * tate.invert_unit(w)
        resid = prod - tate.one(fld, q, min(c.prec for c in prod.coeffs), 0)
        chk = tate.zero_check(resid)
        return ResidualReport(
            passed=chk.ok,
            worst_exponent=None if chk.ok else Fraction(-chk.worst_zval, q - 1),
            floor_z=chk.floor_z,
            note="diagonal component: Omega-power times its series inverse vs 1",
        )

    L: dict[tuple[int, int], TateElement] = {}
    for a in range(1, d + 2):
        for b in range(1, a):
            window = CmplSpec(Index(s.entries[b - 1 : a - 1]), tuple(u[b - 1 : a - 1]))
            L[(a, b)] = cmpl_series(ctx, window, tdeg, prec)
        L[(a, a)] = tate.one(fld, q, prec + 4, 0)
    ompow = omega_pow(sum(s.entries[j - 1 : i - 1]))
    acc = None
    for n in range(j, i + 1):
        # inverse-of-unipotent chain coefficient from n up to i
        if n == i:
            coeff = tate.one(fld, q, prec + 4, 0)
        else:
            coeff = None
            mids = list(range(n + 1, i))
            for m_len in range(0, len(mids) + 1):
                for subset in combinations(mids, m_len):
                    chain = (n,) + subset + (i,)
                    prod = L[(chain[1], chain[0])]
                    for a, b in zip(chain[2:], chain[1:]):
                        prod = prod * L[(a, b)]
                    prod = -prod if (len(chain) - 1) % 2 == 1 else prod
                    coeff = prod if coeff is None else coeff + prod
        term = (coeff * ompow * L[(n, j)]).truncate_tdeg(tdeg)
        acc = term if acc is None else acc + term
    chk = tate.zero_check(acc)
    return ResidualReport(
        passed=chk.ok,
        worst_exponent=None if chk.ok else Fraction(-chk.worst_zval, q - 1),
        floor_z=chk.floor_z,
        location=None if chk.ok else (i, j, chk.worst_tdeg),
        note="collapsed alternating chain sum",
    )


# -- block-group shells -----------------------------------------------------------


class FiniteFieldDomain:
    """Sample/arithmetic domain F_{p^N} for exact block-shape checks."""

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self._o = ops(spec)

    name = "finite-field"

    def zero(self):
        return 0

    def one(self):
        return 1

    def add(self, a, b):
        return self._o.add[a * self._o.n + b]

    def sub(self, a, b):
        return self._o.sub(a, b)

    def mul(self, a, b):
        return self._o.mul[a * self._o.n + b]

    def neg(self, a):
        return self._o.neg[a]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._o.inv[a]

    def pow(self, a, e):
        return self._o.pow(a, e)

    def eq(self, a, b):
        return a == b

    def is_zero(self, a):
        return a == 0

    def sample(self, rng: random.Random):
        return rng.randrange(self._o.n)

    def sample_nonzero(self, rng: random.Random):
        return rng.randrange(1, self._o.n)

    def text(self, a):
        from .ffield import element_text

        return element_text(self.spec, a)


class RationalFunctionDomain:
    """F_p(t) with unreduced fractions; equality by cross-multiplication."""

    def __init__(self, p: int, max_sample_degree: int = 2):
        self.p = p
        self.max_deg = max_sample_degree

    name = "rational-function"

    def _pmul(self, x, y):
        out = [0] * (len(x) + len(y) - 1)
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    out[i + j] = (out[i + j] + a * b) % self.p
        while len(out) > 1 and out[-1] == 0:
            out.pop()
        return tuple(out)

    def _padd(self, x, y):
        out = [0] * max(len(x), len(y))
        for i, a in enumerate(x):
            out[i] = a
        for i, b in enumerate(y):
            out[i] = (out[i] + b) % self.p
        while len(out) > 1 and out[-1] == 0:
            out.pop()
        return tuple(out)

    def zero(self):
        return ((0,), (1,))

    def one(self):
        return ((1,), (1,))

    def add(self, a, b):
        return (
            self._padd(self._pmul(a[0], b[1]), self._pmul(b[0], a[1])),
            self._pmul(a[1], b[1]),
        )

    def neg(self, a):
        return (tuple((-c) % self.p for c in a[0]), a[1])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        return (self._pmul(a[0], b[0]), self._pmul(a[1], b[1]))

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        return (a[1], a[0])

    def pow(self, a, e):
        if e < 0:
            return self.pow(self.inv(a), -e)
        out = self.one()
        base = a
        while e:
            if e & 1:
                out = self.mul(out, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return out

    def eq(self, a, b):
        return self._pmul(a[0], b[1]) == self._pmul(b[0], a[1])

    def is_zero(self, a):
        return all(c == 0 for c in a[0])

    def sample(self, rng: random.Random):
        num = tuple(rng.randrange(self.p) for _ in range(rng.randrange(1, self.max_deg + 2)))
        den = self._sample_nonzero_poly(rng)
        return (num if any(num) else (0,), den)

    def _sample_nonzero_poly(self, rng):
        while True:
            c = tuple(rng.randrange(self.p) for _ in range(rng.randrange(1, self.max_deg + 2)))
            if any(c):
                return c

    def sample_nonzero(self, rng: random.Random):
        return (self._sample_nonzero_poly(rng), self._sample_nonzero_poly(rng))

    def text(self, a):
        return f"{list(a[0])}/{list(a[1])}"


@dataclass
class BlockShape:
    """Parameterized block matrix (a) + X_{s_1} + ... + X_{s_j}.

    Within block X_s, column c carries a^{s_{c+1}+...+s_d} on the diagonal
    and a^{s_{c+1}+...+s_d} x_{(s_{c+1},...,s_r)} below it; the x-parameter of
    a window is shared wherever that window value recurs, in any block.
    """

    domain: object
    index_set: tuple[Index, ...]
    a: object
    xmap: dict[Index, object]

    def __post_init__(self):
        if not is_subclosed(self.index_set):
            have = set(self.index_set)
            missing = [str(w) for w in subclosure(self.index_set) if w not in have]
            raise ValueError(f"index set is not window-closed; missing {missing}")
        deps = [ix.dep for ix in self.index_set]
        if deps != sorted(deps):
            raise ValueError("index set must be enumerated depth-ascending")
        if self.domain.is_zero(self.a):
            raise ValueError("the scalar parameter must be invertible")

    @property
    def size(self) -> int:
        return 1 + sum(ix.dep + 1 for ix in self.index_set)

    def realize(self):
        dom = self.domain
        n = self.size
        m = [[dom.zero() for _ in range(n)] for _ in range(n)]
        m[0][0] = self.a
        off = 1
        for idx in self.index_set:
            d = idx.dep
            sw = [sum(idx.entries[k:]) for k in range(d + 1)]
            for c in range(d + 1):
                m[off + c][off + c] = dom.pow(self.a, sw[c])
                for r in range(c + 1, d + 1):
                    x = self.xmap[idx.window(c + 1, r)]
                    m[off + r][off + c] = dom.mul(dom.pow(self.a, sw[c]), x)
            off += d + 1
        return m

    @classmethod
    def parse(cls, domain, index_set, matrix) -> "BlockShape":
        """Inverse of realize; raises ShapeParseError on any mismatch."""
        n = 1 + sum(ix.dep + 1 for ix in index_set)
        if len(matrix) != n or any(len(row) != n for row in matrix):
            raise ShapeParseError(f"expected a {n}x{n} matrix")
        a = matrix[0][0]
        if domain.is_zero(a):
            raise ShapeParseError("scalar parameter is zero")
        xmap: dict[Index, object] = {}
        off = 1
        for idx in index_set:
            d = idx.dep
            sw = [sum(idx.entries[k:]) for k in range(d + 1)]
            for c in range(d + 1):
                for r in range(c + 1, d + 1):
                    w = idx.window(c + 1, r)
                    x = domain.mul(matrix[off + r][off + c], domain.inv(domain.pow(a, sw[c])))
                    if w in xmap:
                        if not domain.eq(xmap[w], x):
                            raise ShapeParseError(
                                f"window {w} extracted twice with different values"
                            )
                    else:
                        xmap[w] = x
            off += d + 1
        shape = cls(domain, tuple(index_set), a, xmap)
        expected = shape.realize()
        for i in range(n):
            for j in range(n):
                if not domain.eq(expected[i][j], matrix[i][j]):
                    raise ShapeParseError(f"entry ({i}, {j}) off the parameterized shape")
        return shape

    def is_v_element(self) -> bool:
        """Identity scalar, all windows zero except possibly the last index."""
        dom = self.domain
        if not dom.eq(self.a, dom.one()):
            return False
        last = self.index_set[-1]
        return all(dom.is_zero(x) for w, x in self.xmap.items() if w != last)

    def x_last(self):
        return self.xmap[self.index_set[-1]]


def _mat_mul(dom, a, b):
    n = len(a)
    out = [[dom.zero() for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for k in range(n):
            if dom.is_zero(a[i][k]):
                continue
            for j in range(n):
                if not dom.is_zero(b[k][j]):
                    out[i][j] = dom.add(out[i][j], dom.mul(a[i][k], b[k][j]))
    return out


def _mat_inv_lower(dom, a):
    # forward substitution; a lower triangular with invertible diagonal
    n = len(a)
    out = [[dom.zero() for _ in range(n)] for _ in range(n)]
    for j in range(n):
        out[j][j] = dom.inv(a[j][j])
        for i in range(j + 1, n):
            acc = dom.zero()
            for k in range(j, i):
                acc = dom.add(acc, dom.mul(a[i][k], out[k][j]))
            out[i][j] = dom.neg(dom.mul(dom.inv(a[i][i]), acc))
    return out


def _random_shape(dom, index_set, rng) -> BlockShape:
    a = dom.sample_nonzero(rng)
    xmap = {ix: dom.sample(rng) for ix in index_set}
    return BlockShape(dom, tuple(index_set), a, xmap)


def closure_report(domain, index_set, samples: int, seed: int) -> CheckReport:
    """Products and inverses of realized shapes parse back, with the scalar
    parameter multiplying; exact over the sample domain.

    The coordinate identities are polynomial in the parameters with degree
    span at most 2*wt + 1, so sample counts beyond that bound certify them
    over a field larger than the bound (reported in the note).
    """
    index_set = tuple(index_set)
    rng = random.Random(seed)
    failures = []
    for trial in range(samples):
        s1 = _random_shape(domain, index_set, rng)
        s2 = _random_shape(domain, index_set, rng)
        try:
            prod = BlockShape.parse(domain, index_set, _mat_mul(domain, s1.realize(), s2.realize()))
            if not domain.eq(prod.a, domain.mul(s1.a, s2.a)):
                failures.append((trial, "product scalar is not a1*a2"))
            invp = BlockShape.parse(domain, index_set, _mat_inv_lower(domain, s1.realize()))
            if not domain.eq(domain.mul(invp.a, s1.a), domain.one()):
                failures.append((trial, "inverse scalar is not a^-1"))
        except ShapeParseError as exc:
            failures.append((trial, str(exc)))
    wt_max = max(ix.wt for ix in index_set)
    bound = 2 * wt_max + 1
    return CheckReport(
        passed=not failures,
        checked=samples,
        failures=failures,
        note=f"degree bound {bound} (Schwartz-Zippel); samples {samples} "
        f"{'exceed' if samples > bound else 'DO NOT exceed'} it",
    )


def commutator_report(domain, index_set, samples: int, seed: int) -> CheckReport:
    """Exact commutator laws for the one-parameter subgroup of the last index.

    With R the shape whose only nonzero window parameter is x_{s_j} = v (unit
    scalar) and Q any shape with scalar parameter b:

        Q^{-1} R Q          has x_{s_j} = v * b^{wt(s_j)}
        R Q R^{-1} Q^{-1}   has x_{s_j} = v * (1 - b^{-wt(s_j)})

    both again with unit scalar and all other windows zero.  Q is drawn twice
    per trial: once with all window parameters zero (the worked-example
    pattern) and once fully random.
    """
    index_set = tuple(index_set)
    rng = random.Random(seed)
    last = index_set[-1]
    wt = last.wt
    failures = []
    for trial in range(samples):
        v = domain.sample(rng)
        b = domain.sample_nonzero(rng)
        zeros = {ix: domain.zero() for ix in index_set}
        r_shape = BlockShape(domain, index_set, domain.one(), {**zeros, last: v})
        rm = r_shape.realize()
        rinv = _mat_inv_lower(domain, rm)
        for tag, xdraw in (("plain", zeros), ("random-x", {ix: domain.sample(rng) for ix in index_set})):
            qm = BlockShape(domain, index_set, b, xdraw).realize()
            qinv = _mat_inv_lower(domain, qm)
            conj = BlockShape.parse(domain, index_set, _mat_mul(domain, _mat_mul(domain, qinv, rm), qm))
            expect_conj = domain.mul(v, domain.pow(b, wt))
            if not (conj.is_v_element() and domain.eq(conj.x_last(), expect_conj)):
                failures.append((trial, tag, "conjugation coordinate is not v*b^wt"))
            comm = BlockShape.parse(
                domain,
                index_set,
                _mat_mul(domain, _mat_mul(domain, _mat_mul(domain, rm, qm), rinv), qinv),
            )
            expect_comm = domain.mul(v, domain.sub(domain.one(), domain.pow(b, -wt)))
            if not (comm.is_v_element() and domain.eq(comm.x_last(), expect_comm)):
                failures.append((trial, tag, "commutator coordinate is not v*(1-b^-wt)"))
    bound = 2 * wt + 1
    return CheckReport(
        passed=not failures,
        checked=samples,
        failures=failures,
        note=f"degree bound {bound} (Schwartz-Zippel); samples {samples} "
        f"{'exceed' if samples > bound else 'DO NOT exceed'} it",
    )
