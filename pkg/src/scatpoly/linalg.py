"""Linear-algebra kernels: batched field elimination plus small dense solvers.

Batch routines work on numpy int64 arrays of element indices and need a
table-mode context. Scalar routines work on lists of ints and run in either
mode. The modp_* routines are plain integer elimination mod a prime, used
where systems live over GF(p) rather than the big field.
"""

from __future__ import annotations

import multiprocessing

import numpy as np

_FORK_JOB = None


def _job_runner(part):
    return _FORK_JOB(part)


def parallel_map(fn, parts, workers: int = 1):
    """Map fn over parts, optionally on a fork-based worker pool.

    Results come back in submission order, so output is independent of
    worker count. Falls back to serial where fork is unavailable.
    """
    parts = list(parts)
    if workers <= 1 or len(parts) <= 1:
        return [fn(p) for p in parts]
    global _FORK_JOB
    try:
        mp = multiprocessing.get_context("fork")
    except ValueError:
        return [fn(p) for p in parts]
    _FORK_JOB = fn
    try:
        with mp.Pool(min(workers, len(parts))) as pool:
            return pool.map(_job_runner, parts)
    finally:
        _FORK_JOB = None


# ---------------------------------------------------------------------------
# batched elimination over GF(q^n)


def batch_rank(ctx, mats: np.ndarray) -> np.ndarray:
    """Ranks of a (B, r, c) stack of matrices over the field, via lockstep
    Gauss-Jordan with per-matrix pivot tracking."""
    ctx._need_tables()
    A = np.array(mats, dtype=np.int64, copy=True)
    B, nrows, ncols = A.shape
    exp, log, zech = ctx._exp, ctx._log, ctx._zech
    M = ctx.mult_order
    half = M // 2
    r = np.zeros(B, dtype=np.int64)
    rows = np.arange(nrows)
    ball = np.arange(B)
    for j in range(ncols):
        col = A[:, :, j]
        elig = (rows[None, :] >= r[:, None]) & (col != 0)
        has = elig.any(axis=1)
        if not has.any():
            continue
        piv = np.argmax(elig, axis=1)
        b = ball[has]
        rr = r[b]
        pp = piv[b]
        tmp = A[b, rr, :].copy()
        A[b, rr, :] = A[b, pp, :]
        A[b, pp, :] = tmp
        # scale pivot rows so the pivot entry is 1
        prow = A[b, rr, :]
        pinv = -log[prow[:, j]] % M
        lprow = (log[prow] + pinv[:, None]) % M
        prow = np.where(prow == 0, 0, exp[lprow])
        A[b, rr, :] = prow
        # clear column j everywhere else in one sweep
        colv = A[b, :, j].copy()
        colv[np.arange(len(b)), rr] = 0
        sc = exp[(log[colv][:, :, None] + log[prow][:, None, :]) % M]
        sc = np.where((colv[:, :, None] == 0) | (prow[:, None, :] == 0), 0, sc)
        negsc = np.where(sc == 0, 0, exp[(log[sc] + half) % M])
        Ab = A[b]
        la = log[Ab]
        d = (log[negsc] - la) % M
        out = np.where(d == half, 0, exp[(la + zech[d]) % M])
        out = np.where(negsc == 0, Ab, out)
        A[b] = np.where(Ab == 0, negsc, out)
        r[b] = rr + 1
    return r


def batch_dickson_rank(ctx, coeff_cols: np.ndarray, workers: int = 1,
                       chunk: int = 1 << 17) -> np.ndarray:
    """Ranks of the Dickson matrices of a batch of q-polynomials.

    coeff_cols has shape (n, B): column b holds the coefficient vector of
    the b-th polynomial. Entry (i, j) of each Dickson matrix is
    c[(j - i) mod n] ^ (q^i).
    """
    ctx._need_tables()
    n, B = coeff_cols.shape
    parts = [(lo, min(lo + chunk, B)) for lo in range(0, B, chunk)]

    def run(part):
        lo, hi = part
        C = coeff_cols[:, lo:hi]
        m = hi - lo
        A = np.empty((m, n, n), dtype=np.int64)
        rowsrc = C
        for i in range(n):
            A[:, i, :] = rowsrc[(np.arange(n) - i) % n].T
            rowsrc = ctx.vfrob(rowsrc, 1)
        return batch_rank(ctx, A)

    return np.concatenate(parallel_map(run, parts, workers))


# ---------------------------------------------------------------------------
# scalar elimination over the field (small systems)


def field_rref(ctx, rows):
    """Reduced row echelon form over the field; returns (rows, pivot_cols)
    with zero rows dropped. Input rows are not modified."""
    R = [list(r) for r in rows]
    if not R:
        return [], []
    ncols = len(R[0])
    pivots = []
    r = 0
    for j in range(ncols):
        piv = next((i for i in range(r, len(R)) if R[i][j] != 0), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        inv = ctx.inv(R[r][j])
        R[r] = [ctx.mul(inv, v) for v in R[r]]
        for i in range(len(R)):
            if i != r and R[i][j] != 0:
                c = R[i][j]
                R[i] = [ctx.sub(v, ctx.mul(c, w)) for v, w in zip(R[i], R[r])]
        pivots.append(j)
        r += 1
        if r == len(R):
            break
    return R[:r], pivots


def field_rank(ctx, rows) -> int:
    return len(field_rref(ctx, rows)[0])


def field_nullspace(ctx, rows):
    """Basis (list of vectors) of {v : sum_j rows[i][j] * v[j] = 0 for all i},
    in reduced form with deterministic free-column ordering."""
    if not rows:
        return []
    ncols = len(rows[0])
    R, pivots = field_rref(ctx, rows)
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for i, pj in enumerate(pivots):
            v[pj] = ctx.neg(R[i][f])
        basis.append(v)
    return basis


# ---------------------------------------------------------------------------
# elimination mod a prime (numpy, used for GF(p)-linear systems)


def modp_rref(mat: np.ndarray, p: int):
    R = np.array(mat, dtype=np.int64, copy=True) % p
    nrows, ncols = R.shape
    pivots = []
    r = 0
    for j in range(ncols):
        nz = np.nonzero(R[r:, j])[0]
        if len(nz) == 0:
            continue
        piv = r + int(nz[0])
        R[[r, piv]] = R[[piv, r]]
        R[r] = R[r] * pow(int(R[r, j]), p - 2, p) % p
        others = np.nonzero(R[:, j])[0]
        others = others[others != r]
        R[others] = (R[others] - np.outer(R[others, j], R[r])) % p
        pivots.append(j)
        r += 1
        if r == nrows:
            break
    return R[:r], pivots


def modp_nullspace(mat: np.ndarray, p: int) -> np.ndarray:
    mat = np.atleast_2d(np.asarray(mat, dtype=np.int64))
    ncols = mat.shape[1]
    R, pivots = modp_rref(mat, p)
    free = [j for j in range(ncols) if j not in pivots]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, pj in enumerate(pivots):
            basis[k, pj] = (-R[i, f]) % p
    return basis
