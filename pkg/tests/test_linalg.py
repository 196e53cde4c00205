import numpy as np

from scatpoly.linalg import (
    batch_dickson_rank,
    batch_rank,
    field_nullspace,
    field_rank,
    field_rref,
    modp_nullspace,
    modp_rref,
    parallel_map,
)
from scatpoly.linpoly import LinPoly


def _random_rows(ctx, rng, shape):
    return [[int(x) for x in row] for row in rng.integers(0, ctx.order, size=shape)]


def test_field_rref_canonical(ctx33):
    rng = np.random.default_rng(1)
    rows = _random_rows(ctx33, rng, (4, 6))
    red, piv = field_rref(ctx33, rows)
    # idempotent, pivots are leading ones with zeros above
    again, piv2 = field_rref(ctx33, red)
    assert again == red and piv2 == piv
    for i, c in enumerate(piv):
        assert red[i][c] == 1
        assert all(red[j][c] == 0 for j in range(len(red)) if j != i)
    # scaling a row by a nonzero constant does not change the canonical form
    scaled = [[ctx33.mul(5, x) for x in rows[0]]] + rows[1:]
    red2, _ = field_rref(ctx33, scaled)
    assert red2 == red


def test_field_rank_drops_dependent_rows(ctx33):
    rng = np.random.default_rng(2)
    rows = _random_rows(ctx33, rng, (3, 5))
    dup = rows + [[ctx33.mul(7, x) for x in rows[1]]]
    assert field_rank(ctx33, dup) == field_rank(ctx33, rows)
    zero = [[0] * 5]
    assert field_rank(ctx33, zero) == 0


def test_field_nullspace_annihilates(ctx53):
    rng = np.random.default_rng(3)
    rows = _random_rows(ctx53, rng, (3, 6))
    basis = field_nullspace(ctx53, rows)
    assert len(basis) == 6 - field_rank(ctx53, rows)
    for vec in basis:
        for row in rows:
            acc = 0
            for a, b in zip(row, vec):
                acc = ctx53.add(acc, ctx53.mul(a, b))
            assert acc == 0
    assert field_rank(ctx53, basis) == len(basis)


def test_batch_rank_matches_field_rank(ctx33):
    rng = np.random.default_rng(4)
    mats = rng.integers(0, ctx33.order, size=(10, 4, 4))
    # plant a singular matrix
    mats[3, 2] = mats[3, 0]
    got = batch_rank(ctx33, mats)
    for k in range(10):
        rows = [[int(x) for x in row] for row in mats[k]]
        assert got[k] == field_rank(ctx33, rows)


def test_batch_dickson_rank_matches_linpoly_rank(ctx33):
    rng = np.random.default_rng(5)
    coeffs = rng.integers(0, ctx33.order, size=(ctx33.n, 12))
    got = batch_dickson_rank(ctx33, coeffs)
    for j in range(12):
        f = LinPoly(ctx33, [int(c) for c in coeffs[:, j]])
        assert got[j] == f.rank()


def test_parallel_map_reducer():
    parts = [list(range(i, i + 3)) for i in range(0, 12, 3)]
    seq = parallel_map(sum, parts, workers=1)
    par = parallel_map(sum, parts, workers=2)
    assert seq == par == [sum(p) for p in parts]


def test_modp_rref_and_nullspace():
    mat = np.array([[1, 2, 0, 1], [2, 4, 1, 0], [0, 0, 1, 3]], dtype=np.int64)
    red, piv = modp_rref(mat, 5)
    assert piv == [0, 2]
    ns = modp_nullspace(mat, 5)
    assert ns.shape[0] == 4 - len(piv)
    assert not (mat @ ns.T % 5).any()
    # full-rank system has an empty kernel
    eye = np.eye(3, dtype=np.int64)
    assert modp_nullspace(eye, 3).shape[0] == 0
