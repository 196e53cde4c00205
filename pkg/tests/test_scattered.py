import math

import numpy as np
import pytest

from scatpoly.errors import BadK, NotScattered
from scatpoly.linpoly import LinPoly
from scatpoly.scattered import (
    alpha_poly,
    baer_partition_check,
    beta_poly,
    build_psi,
    check_witness,
    is_scattered_fibers,
    is_scattered_ranks,
    nonscattered_witness_search,
    shift_ranks,
    theorem_predicate,
)


def test_build_psi_slots(ctx33, ctx34):
    for ctx in (ctx33, ctx34):
        t, n = ctx.t, ctx.n
        half = ctx.two_inv
        for k in range(1, n):
            coeffs = [0] * n
            for slot, term in ((k % n, half), ((t - k) % n, half),
                               ((t + k) % n, ctx.neg(half)), ((n - k) % n, half)):
                coeffs[slot] = ctx.add(coeffs[slot], term)
            assert build_psi(ctx, k) == LinPoly(ctx, coeffs)
    with pytest.raises(BadK):
        build_psi(ctx33, 0)
    with pytest.raises(BadK):
        build_psi(ctx33, ctx33.n)
    assert build_psi(ctx33, 1 - ctx33.n) == build_psi(ctx33, 1)


def test_psi_t_is_frobenius(ctx33, ctx34):
    # at k = t the four slots collapse onto the single degree-t term
    for ctx in (ctx33, ctx34):
        assert build_psi(ctx, ctx.t) == LinPoly.monomial(ctx, 1, ctx.t)


def test_psi_is_alpha_plus_beta(ctx33, ctx34):
    for ctx in (ctx33, ctx34):
        assert build_psi(ctx, 1) == alpha_poly(ctx) + beta_poly(ctx)


def test_psi_k_is_kth_composition_power(ctx33, ctx34):
    # psi_k on the eigenspace decomposition acts like the k-fold composite
    # of psi_1, as long as k stays clear of the multiples of t
    for ctx in (ctx33, ctx34):
        psi1 = build_psi(ctx, 1)
        acc = psi1
        for k in range(2, ctx.n):
            acc = psi1.compose(acc)
            if k % ctx.t == 0:
                continue
            assert acc == build_psi(ctx, k)


def test_psi_acts_as_frobenius_on_halves(ctx53):
    ctx = ctx53
    rng = np.random.default_rng(31)
    for k in (1, 2, 4):
        psi = build_psi(ctx, k)
        for x in rng.integers(0, ctx.order, size=15):
            h, w = ctx.split(int(x))
            # subfield half: degree t - k Frobenius; skew half: degree k
            assert psi(h) == ctx.frob(h, (ctx.t - k) % ctx.n)
            assert psi(w) == ctx.frob(w, k)


def test_adjoint_reverses_exponent(ctx34):
    for k in range(1, ctx34.n):
        if k % ctx34.t == 0:
            continue
        assert build_psi(ctx34, k).adjoint() == build_psi(ctx34, ctx34.n - k)


def test_theorem_predicate_table(ctx33, ctx53, ctx34):
    # t = 3 (odd): needs gcd(k, 6) = 1 and q = 1 mod 4
    assert [theorem_predicate(ctx33, k) for k in range(1, 6)] == [False] * 5
    assert [theorem_predicate(ctx53, k) for k in range(1, 6)] == \
        [True, False, False, False, True]
    # t = 4 (even): needs gcd(k, 4) = 1, q mod 4 irrelevant
    assert [theorem_predicate(ctx34, k) for k in range(1, 8)] == \
        [True, False, True, False, True, False, True]


@pytest.mark.parametrize("fixture,ks", [("ctx33", range(1, 6)), ("ctx34", range(1, 8))])
def test_checkers_agree_with_predicate(fixture, ks, request):
    ctx = request.getfixturevalue(fixture)
    for k in ks:
        psi = build_psi(ctx, k)
        vf = is_scattered_fibers(psi)
        vr = is_scattered_ranks(psi)
        assert vf.scattered == vr.scattered == theorem_predicate(ctx, k)
        if vf.scattered:
            assert vf.n_values == (ctx.order - 1) // (ctx.q - 1)
            assert vr.bad_shift is None
        else:
            assert check_witness(psi, vf.witness)
            assert vr.bad_shift is not None


def test_scattered_iff_all_shifts_near_invertible(ctx53):
    ctx = ctx53
    psi = build_psi(ctx, 1)
    ranks = shift_ranks(psi)
    assert len(ranks) == ctx.order
    # scattered means every shifted map psi + m*id has kernel dim <= 1
    assert int(ranks.min()) == ctx.n - 1
    for m in (0, 1, ctx.omega):
        shifted = psi + LinPoly.monomial(ctx, m, 0)
        assert ranks[m] == shifted.rank()


def test_witness_search(ctx33, ctx53):
    psi = build_psi(ctx33, 1)
    found = nonscattered_witness_search(psi)
    assert found is not None
    rho, x = found
    assert x != 0 and ctx33.frob(rho, 1) != rho
    assert psi(ctx33.mul(rho, x)) == ctx33.mul(rho, psi(x))
    # scattered maps admit no such scaling pair
    assert nonscattered_witness_search(build_psi(ctx53, 1)) is None


def test_check_witness_rejects_bad_pairs(ctx33):
    psi = build_psi(ctx33, 1)
    assert not check_witness(psi, (0, 5))
    assert not check_witness(psi, (7, 0))
    # a GF(q)-multiple shares the fiber but is not a valid witness
    y = 1
    z = ctx33.mul(2, y)
    assert not check_witness(psi, (y, z))


def test_baer_partition(ctx53, ctx34):
    rep = baer_partition_check(ctx53, 1)
    assert rep.ok
    assert (rep.intersection_size, rep.subfield_part_size, rep.skew_part_size) \
        == (62, 31, 31)
    rep = baer_partition_check(ctx34, 1)
    assert rep.ok
    assert (rep.intersection_size, rep.subfield_part_size, rep.skew_part_size) \
        == (80, 40, 40)
    expected = 2 * (ctx34.q**ctx34.t - 1) // (ctx34.q - 1)
    assert rep.intersection_size == expected
    with pytest.raises(NotScattered):
        baer_partition_check(ctx34, 2)


def test_predicate_gcd_consistency(ctx34):
    # sanity: the even-t branch really only depends on gcd(k, t)
    for k in range(1, ctx34.n):
        assert theorem_predicate(ctx34, k) == (math.gcd(k, ctx34.t) == 1)
