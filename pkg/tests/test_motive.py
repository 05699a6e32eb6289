"""Matrix systems, derived systems, and the block-group shells."""

import json
import random

import pytest

from ffmzv import tate
from ffmzv.carlitz import CarlitzContext
from ffmzv.errors import ShapeParseError
from ffmzv.ffield import field
from ffmzv.motive import (
    BlockShape,
    FiniteFieldDomain,
    MotiveMatrix,
    RationalFunctionDomain,
    carlitz_system,
    closure_report,
    commutator_report,
    component_collapse_report,
    derived_matrix,
    direct_sum,
    example_system,
    frobenius_residual,
    mutation_kill_report,
    perturb_entry,
    phi_matrix,
    psi_matrix,
    _mat_inv_lower,
    _mat_mul,
)
from ffmzv.poly import BivarPoly, t_minus_theta_frob
from ffmzv.special import Index, at_arguments, subclosure


def test_phi_shape_depth_one_zero_argument():
    ctx = CarlitzContext(3, 1)
    s = Index((2,))
    phi = phi_matrix(ctx, (BivarPoly.zero(ctx.field),), s)
    lin = t_minus_theta_frob(ctx.field, 1)
    assert phi.entry(0, 0) == lin**2
    assert phi.entry(1, 1) == BivarPoly.one(ctx.field)
    assert phi.entry(1, 0).is_zero() and phi.entry(0, 1).is_zero()


def test_phi_determinant_nonzero_at_theta():
    ctx = CarlitzContext(2, 1)
    s = Index((1, 2))
    phi = phi_matrix(ctx, at_arguments(ctx, s), s)
    det = BivarPoly.one(ctx.field)
    for k in range(phi.size):
        det = det * phi.entry(k, k)
    assert not det.eval_theta(ctx.q, 40).is_zero()


def test_psi_shape_depth_one_zero_argument():
    ctx = CarlitzContext(3, 1, prec=30, tdeg=6)
    s = Index((2,))
    psi = psi_matrix(ctx, (BivarPoly.zero(ctx.field),), s)
    assert psi.entry(1, 0).is_zero_to_precision()
    assert psi.entry(0, 1).is_zero_to_precision()
    # diagonal: Omega^2 and 1
    from ffmzv.carlitz import omega_series

    om2 = omega_series(ctx) ** 2
    assert tate.zero_check(psi.entry(0, 0) - om2).ok
    assert tate.zero_check(psi.entry(1, 1) - tate.one(ctx.field, 3, 20, 0)).ok


@pytest.mark.parametrize("p,l", [(2, 1), (3, 1)])
@pytest.mark.parametrize("entries", [(1,), (2,), (1, 1), (2, 1), (1, 2)])
def test_frobenius_residual_passes(p, l, entries):
    ctx = CarlitzContext(p, l, prec=48, tdeg=8)
    s = Index(entries)
    u = at_arguments(ctx, s)
    rep = frobenius_residual(phi_matrix(ctx, u, s), psi_matrix(ctx, u, s))
    assert rep.passed, rep


def test_residual_zeroed_entry_fails_with_location():
    ctx = CarlitzContext(2, 1, prec=40, tdeg=8)
    s = Index((1,))
    u = at_arguments(ctx, s)
    phi, psi = phi_matrix(ctx, u, s), psi_matrix(ctx, u, s)
    rows = [list(r) for r in psi.entries]
    rows[0][0] = tate.zero(ctx.field, ctx.q, 44, 8)
    broken = MotiveMatrix(psi.level, psi.size, psi.kind, tuple(map(tuple, rows)), psi.field)
    rep = frobenius_residual(phi, broken)
    assert not rep.passed
    assert rep.location is not None and rep.worst_exponent is not None


@pytest.mark.parametrize("p,l", [(2, 1), (3, 1)])
def test_mutation_kill_small(p, l):
    ctx = CarlitzContext(p, l, prec=48, tdeg=6)
    s = Index((2,))
    u = at_arguments(ctx, s)
    rep = mutation_kill_report(ctx, phi_matrix(ctx, u, s), psi_matrix(ctx, u, s))
    assert rep.passed and rep.checked == 4


def test_perturbed_bottom_right_is_killed():
    # adding a twist-fixed constant there would be invisible; theta is not
    ctx = CarlitzContext(2, 1, prec=40, tdeg=6)
    s = Index((1,))
    u = at_arguments(ctx, s)
    phi, psi = phi_matrix(ctx, u, s), psi_matrix(ctx, u, s)
    assert not frobenius_residual(phi, perturb_entry(psi, 1, 1)).passed


def test_direct_sum_blocks_and_residual_distribution():
    ctx = CarlitzContext(2, 1, prec=40, tdeg=6)
    phi1, psi1 = carlitz_system(ctx)
    s = Index((1,))
    u = at_arguments(ctx, s)
    phi2, psi2 = phi_matrix(ctx, u, s), psi_matrix(ctx, u, s)
    phi = direct_sum(phi1, phi2)
    psi = direct_sum(psi1, psi2)
    assert phi.size == 3 and psi.size == 3
    assert phi.entry(0, 1).is_zero() and phi.entry(2, 0).is_zero()
    assert frobenius_residual(phi, psi).passed
    # a failing block makes the sum fail, both ways
    bad2 = perturb_entry(psi2, 0, 0)
    assert not frobenius_residual(phi, direct_sum(psi1, bad2)).passed
    assert not frobenius_residual(direct_sum(phi2, phi1), direct_sum(bad2, psi1)).passed


def test_direct_sum_requires_matching():
    ctx = CarlitzContext(2, 1, prec=30, tdeg=4)
    phi1, psi1 = carlitz_system(ctx)
    with pytest.raises(ValueError):
        direct_sum(phi1, psi1)


def test_direct_sum_of_trivial_blocks_is_identity_pattern():
    ctx = CarlitzContext(2, 1)
    one = BivarPoly.one(ctx.field)
    triv = MotiveMatrix(1, 1, "phi-exact", ((one,),), ctx.field)
    two = direct_sum(triv, triv)
    assert two.size == 2
    assert two.entry(0, 0) == one and two.entry(1, 1) == one
    assert two.entry(0, 1).is_zero() and two.entry(1, 0).is_zero()


def test_builder_error_clauses():
    ctx = CarlitzContext(2, 1, prec=24, tdeg=4)
    s = Index((1, 2))
    with pytest.raises(ValueError, match="length"):
        phi_matrix(ctx, (BivarPoly.one(ctx.field),), s)
    divergent = (BivarPoly(ctx.field, {(0, 3): 1}), BivarPoly.one(ctx.field))
    with pytest.raises(ValueError, match="convergence"):
        psi_matrix(ctx, divergent, s)
    phi1, psi1 = carlitz_system(ctx)
    s1 = Index((1,))
    psi_big = psi_matrix(ctx, at_arguments(ctx, s1), s1)
    with pytest.raises(ValueError, match="size"):
        frobenius_residual(phi1, psi_big)
    with pytest.raises(ValueError, match="exact side"):
        derived_matrix(psi1, 2)
    ctx3 = CarlitzContext(3, 1, prec=24, tdeg=4)
    psi3 = carlitz_system(ctx3)[1]
    with pytest.raises(ValueError):
        direct_sum(psi1, psi3)


def test_derived_matrix_structure():
    ctx = CarlitzContext(2, 1, prec=40, tdeg=6)
    phi, _ = carlitz_system(ctx)
    assert derived_matrix(phi, 1).entries == phi.entries
    d2 = derived_matrix(phi, 2)
    lin1 = t_minus_theta_frob(ctx.field, 1)
    lin2 = t_minus_theta_frob(ctx.field, 2)
    assert d2.entry(0, 0) == lin1 * lin2  # (t - theta^p)(t - theta^{p^2})
    assert d2.level == 2


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("s", [2, 3])
def test_derived_same_trivialization(p, s):
    ctx = CarlitzContext(p, 1, prec=48, tdeg=6)
    phi, psi = carlitz_system(ctx)
    rep = frobenius_residual(derived_matrix(phi, s), psi)
    assert rep.passed


def test_psi_entries_carry_valid_certificates():
    from ffmzv.tate import certificate_ok

    ctx = CarlitzContext(3, 1, prec=40, tdeg=6)
    s = Index((1, 2))
    psi = psi_matrix(ctx, at_arguments(ctx, s), s)
    for row in psi.entries:
        for e in row:
            assert e.exact or (e.tail is not None and certificate_ok(e))


def test_example_system_8x8_and_serialization():
    ctx = CarlitzContext(2, 1, prec=40, tdeg=6)
    phi, psi = example_system(ctx, 1, 2)
    assert phi.size == 8 and psi.size == 8
    assert frobenius_residual(phi, psi).passed
    blob = json.dumps(psi.to_json(), sort_keys=True)
    assert json.loads(blob)["size"] == 8


@pytest.mark.parametrize("p,l", [(2, 1), (3, 1)])
def test_component_collapse(p, l):
    ctx = CarlitzContext(p, l, prec=44, tdeg=10)
    for entries in [(2,), (1, 2), (2, 1)]:
        s = Index(entries)
        for i in range(1, s.dep + 2):
            for j in range(1, i + 1):
                rep = component_collapse_report(ctx, s, i, j, prec=40)
                assert rep.passed, (p, l, entries, i, j, rep)


# -- block shells ----------------------------------------------------------------


F81 = FiniteFieldDomain(field(3, 4))
I_12 = subclosure([Index((1, 2))])


def test_block_identity_and_gamma3_shape():
    dom = F81
    I = subclosure([Index((1, 2))])  # (1), (2), (1,2)
    ident = BlockShape(dom, I, dom.one(), {ix: dom.zero() for ix in I})
    m = ident.realize()
    n = ident.size
    assert n == 1 + 2 + 2 + 3
    for i in range(n):
        for j in range(n):
            assert m[i][j] == (1 if i == j else 0)
    # generic scalar a with all windows zero: diagonal powers per column
    rng = random.Random(5)
    a = dom.sample_nonzero(rng)
    g = BlockShape(dom, I, a, {ix: dom.zero() for ix in I}).realize()
    # last block (for (1,2)) has diagonal a^3, a^2, 1
    assert g[5][5] == dom.pow(a, 3) and g[6][6] == dom.pow(a, 2) and g[7][7] == 1
    # x-sharing: set x_{(1)} only; it must appear in both the (1)-block and
    # the (1,2)-block subdiagonal, scaled by the column powers
    x = dom.sample_nonzero(rng)
    xm = {ix: dom.zero() for ix in I}
    xm[Index((1,))] = x
    h = BlockShape(dom, I, a, xm).realize()
    assert h[2][1] == dom.mul(dom.pow(a, 1), x)
    assert h[6][5] == dom.mul(dom.pow(a, 3), x)


def test_block_v_shape():
    dom = F81
    xm = {ix: dom.zero() for ix in I_12}
    xm[Index((1, 2))] = 7
    v = BlockShape(dom, I_12, dom.one(), xm).realize()
    n = len(v)
    for i in range(n):
        for j in range(n):
            expect = 1 if i == j else (7 if (i, j) == (7, 5) else 0)
            assert v[i][j] == expect


def test_block_parse_realize_roundtrip_1000():
    dom = F81
    rng = random.Random(2718)
    from ffmzv.motive import _random_shape

    for _ in range(1000):
        shape = _random_shape(dom, I_12, rng)
        back = BlockShape.parse(dom, I_12, shape.realize())
        assert back.a == shape.a and back.xmap == shape.xmap


def test_block_parse_rejects_tampering():
    dom = F81
    rng = random.Random(1)
    from ffmzv.motive import _random_shape

    m = _random_shape(dom, I_12, rng).realize()
    m[3][1] = dom.add(m[3][1], dom.one())  # off-pattern entry
    with pytest.raises(ShapeParseError):
        BlockShape.parse(dom, I_12, m)


def test_block_build_validation():
    dom = F81
    with pytest.raises(ValueError, match="window-closed"):
        BlockShape(dom, (Index((1, 2)),), dom.one(), {Index((1, 2)): 0})
    with pytest.raises(ValueError, match="invertible"):
        BlockShape(dom, I_12, dom.zero(), {ix: dom.zero() for ix in I_12})


def test_block_closure_100_samples():
    rep = closure_report(F81, I_12, 100, 12345)
    assert rep.passed and rep.checked == 100
    assert "exceed" in rep.note and "DO NOT" not in rep.note


def test_block_commutator_laws():
    rep = commutator_report(F81, I_12, 100, 999)
    assert rep.passed and rep.checked == 100


def test_block_commutator_b_one_is_trivial():
    dom = F81
    zeros = {ix: dom.zero() for ix in I_12}
    r = BlockShape(dom, I_12, dom.one(), {**zeros, Index((1, 2)): 5}).realize()
    q = BlockShape(dom, I_12, dom.one(), zeros).realize()  # b = 1
    comm = _mat_mul(dom, _mat_mul(dom, _mat_mul(dom, r, q), _mat_inv_lower(dom, r)), _mat_inv_lower(dom, q))
    parsed = BlockShape.parse(dom, I_12, comm)
    assert parsed.is_v_element() and dom.is_zero(parsed.x_last())


def test_block_conjugation_alpha_power():
    # Q^{-1} R Q with unit-v R and scalar alpha: coordinate becomes v*alpha^{m+n}
    dom = F81
    rng = random.Random(8)
    alpha = dom.sample_nonzero(rng)
    zeros = {ix: dom.zero() for ix in I_12}
    r = BlockShape(dom, I_12, dom.one(), {**zeros, Index((1, 2)): 1}).realize()
    q = BlockShape(dom, I_12, alpha, zeros).realize()
    conj = _mat_mul(dom, _mat_mul(dom, _mat_inv_lower(dom, q), r), q)
    parsed = BlockShape.parse(dom, I_12, conj)
    assert parsed.is_v_element()
    assert parsed.x_last() == dom.pow(alpha, 3)  # wt((1,2)) = 3


def test_block_rational_function_mode():
    dom = RationalFunctionDomain(3)
    assert closure_report(dom, I_12, 12, 4).passed
    assert commutator_report(dom, I_12, 6, 4).passed
