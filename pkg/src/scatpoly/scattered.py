"""The folded Frobenius family psi_k and scatteredness checkers.

Over the tower GF(q) < GF(q^t) < GF(q^n), n = 2t, the field splits as
GF(q^t) + W with W = ker(x + x^(q^t)). psi_k acts as the q^(t-k) Frobenius
on the subfield half and as the q^k Frobenius on W. A q-polynomial f is
scattered when every fiber of x -> f(x)/x on nonzero inputs has exactly
q - 1 elements, equivalently ker(f + m*id) has GF(q)-dimension <= 1 for
every scalar m. Two independent checkers of that property live here, plus
a direct search for counterexample pairs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .errors import BadK, NotScattered
from .linpoly import LinPoly
from . import linalg


# -- construction ------------------------------------------------------------

def _norm_k(ctx, k: int) -> int:
    k = int(k) % ctx.n
    if k == 0:
        raise BadK("k must not be divisible by 2t")
    return k


def alpha_poly(ctx) -> LinPoly:
    """Half-sum piece: projects onto the subfield half, then applies the
    q^(t-1) Frobenius: ((x + x^(q^t))^(q^(t-1))) / 2."""
    coeffs = [0] * ctx.n
    coeffs[ctx.t - 1] = ctx.two_inv
    coeffs[2 * ctx.t - 1] = ctx.two_inv
    return LinPoly(ctx, coeffs)


def beta_poly(ctx) -> LinPoly:
    """Half-difference piece: projects onto W, then applies the q Frobenius:
    ((x - x^(q^t))^q) / 2."""
    coeffs = [0] * ctx.n
    coeffs[1] = ctx.two_inv
    coeffs[(ctx.t + 1) % ctx.n] = ctx.neg(ctx.two_inv)
    return LinPoly(ctx, coeffs)


def build_psi(ctx, k: int = 1) -> LinPoly:
    """psi_k(x) = (x^(q^k) + x^(q^(t-k)) - x^(q^(t+k)) + x^(q^(2t-k))) / 2,
    exponents taken mod 2t with colliding terms accumulated."""
    k = _norm_k(ctx, k)
    n, t = ctx.n, ctx.t
    half = ctx.two_inv
    coeffs = [0] * n
    for slot, sign in ((k, 1), ((t - k) % n, 1), ((t + k) % n, -1), ((n - k) % n, 1)):
        term = half if sign > 0 else ctx.neg(half)
        coeffs[slot] = ctx.add(coeffs[slot], term)
    return LinPoly(ctx, coeffs)


def theorem_predicate(ctx, k: int) -> bool:
    """Predicted scatteredness of psi_k from the arithmetic of (q, t, k)
    alone: true iff t is even and gcd(k, t) = 1, or t is odd, gcd(k, 2t) = 1
    and q = 1 mod 4."""
    k = _norm_k(ctx, k)
    t = ctx.t
    if t % 2 == 0:
        return math.gcd(k, t) == 1
    return math.gcd(k, 2 * t) == 1 and ctx.q % 4 == 1


# -- verdicts ----------------------------------------------------------------

@dataclass(frozen=True)
class ScatterVerdict:
    scattered: bool
    method: str
    # two nonzero elements in one fiber of f(x)/x whose ratio is outside
    # GF(q); present exactly when not scattered
    witness: Optional[Tuple[int, int]] = None
    n_values: Optional[int] = None   # fibers method: distinct f(x)/x values
    bad_shift: Optional[int] = None  # ranks method: m with dim ker(f + m*id) >= 2

    def to_json(self):
        return {
            "scattered": self.scattered,
            "method": self.method,
            "witness": list(self.witness) if self.witness else None,
            "n_values": self.n_values,
            "bad_shift": self.bad_shift,
        }


def _witness_in_fiber(ctx, fiber: np.ndarray) -> Tuple[int, int]:
    """Pick (y, z) from a fiber with more than q - 1 elements such that
    z / y is outside GF(q)."""
    y = int(fiber[0])
    ratios = ctx.vmul(fiber, np.full_like(fiber, ctx.inv(y)))
    outside = ctx.vfrob(ratios, 1) != ratios
    z = int(fiber[np.flatnonzero(outside)[0]])
    return y, z


def check_witness(f: LinPoly, witness: Tuple[int, int]) -> bool:
    """True when y, z are nonzero, lie in one fiber of f(x)/x and their
    ratio is outside GF(q)."""
    ctx = f.ctx
    y, z = witness
    if y == 0 or z == 0:
        return False
    vy = ctx.div(f(y), y)
    vz = ctx.div(f(z), z)
    ratio = ctx.div(z, y)
    return vy == vz and ctx.frob(ratio, 1) != ratio


def is_scattered_fibers(f: LinPoly) -> ScatterVerdict:
    """Count distinct values of f(x)/x over nonzero x: the map is scattered
    iff there are (q^n - 1)/(q - 1) of them. On failure returns the fiber
    witness associated with the smallest oversized value."""
    ctx = f.ctx
    xs = np.arange(1, ctx.order, dtype=np.int64)
    vals = ctx.vmul(f.eval_vec(xs), ctx.vinv(xs))
    uniq, counts = np.unique(vals, return_counts=True)
    expected = (ctx.order - 1) // (ctx.q - 1)
    if len(uniq) == expected:
        return ScatterVerdict(True, "fibers", None, int(len(uniq)), None)
    v = uniq[np.flatnonzero(counts > ctx.q - 1)[0]]
    witness = _witness_in_fiber(ctx, xs[vals == v])
    return ScatterVerdict(False, "fibers", witness, int(len(uniq)), None)


def shift_ranks(f: LinPoly, ms: Optional[np.ndarray] = None, workers: int = 1,
                chunk: int = 1 << 16) -> np.ndarray:
    """Ranks of f + m*id for every shift m in ms (all field elements when
    ms is None), computed in batched Dickson form."""
    ctx = f.ctx
    if ms is None:
        ms = np.arange(ctx.order, dtype=np.int64)
    n = ctx.n
    out = []
    for lo in range(0, len(ms), chunk):
        part = ms[lo:lo + chunk]
        cols = np.empty((n, len(part)), dtype=np.int64)
        cols[0] = ctx.vadd(np.full(len(part), f.coeffs[0], dtype=np.int64), part)
        for i in range(1, n):
            cols[i] = f.coeffs[i]
        out.append(linalg.batch_dickson_rank(ctx, cols, workers=workers))
    return np.concatenate(out)


def is_scattered_ranks(f: LinPoly, workers: int = 1) -> ScatterVerdict:
    """Sweep every shift m and test dim ker(f + m*id) <= 1 via Dickson
    ranks. Independent of the fiber counter; same verdict contract.
    Stops at the first violating chunk, so the full sweep cost is paid
    only on scattered inputs."""
    ctx = f.ctx
    chunk = 1 << 16
    m = None
    for lo in range(0, ctx.order, chunk):
        ms = np.arange(lo, min(lo + chunk, ctx.order), dtype=np.int64)
        ranks = shift_ranks(f, ms, workers=workers)
        bad = np.flatnonzero(ranks < ctx.n - 1)
        if len(bad):
            m = int(ms[bad[0]])
            break
    if m is None:
        return ScatterVerdict(True, "ranks", None, None, None)
    g = f + LinPoly.monomial(ctx, m, 0)
    xs = np.arange(1, ctx.order, dtype=np.int64)
    fiber = xs[g.eval_vec(xs) == 0]
    witness = _witness_in_fiber(ctx, fiber)
    return ScatterVerdict(False, "ranks", witness, None, m)


def nonscattered_witness_search(f: LinPoly, workers: int = 1
                                ) -> Optional[Tuple[int, int]]:
    """Search for (rho, x), rho outside GF(q), x nonzero, f(rho*x) = rho*f(x);
    such a pair exists iff f is not scattered. rho runs over ascending
    generator powers, deterministic. Returns None when f is scattered."""
    ctx = f.ctx
    ctx._need_tables()
    M = ctx.order
    step = (M - 1) // (ctx.q - 1)  # GF(q)* is the index-step power subgroup
    js = np.arange(1, M, dtype=np.int64)
    js = js[js % step != 0]
    n = ctx.n
    chunk = 1 << 16
    for lo in range(0, len(js), chunk):
        rhos = ctx._exp[js[lo:lo + chunk]]
        cols = np.empty((n, len(rhos)), dtype=np.int64)
        cur = rhos
        for i in range(n):
            # coefficient of x^(q^i) in f(rho*x) - rho*f(x)
            cols[i] = ctx.vmul(np.full_like(rhos, f.coeffs[i]), ctx.vsub(cur, rhos))
            if i + 1 < n:
                cur = ctx.vfrob(cur, 1)
        ranks = linalg.batch_dickson_rank(ctx, cols, workers=workers)
        hit = np.flatnonzero(ranks < n)
        if len(hit):
            rho = int(rhos[hit[0]])
            g = LinPoly(ctx, [ctx.mul(f.coeffs[i], ctx.sub(ctx.frob(rho, i), rho))
                              for i in range(n)])
            xs = np.arange(1, M, dtype=np.int64)
            x = int(xs[g.eval_vec(xs) == 0][0])
            return rho, x
    return None


# -- Baer subline partition ----------------------------------------------------

@dataclass(frozen=True)
class BaerReport:
    """How the linear set of psi_k meets the subline over GF(q^t).

    The intersection splits into the images of the two halves of the field:
    points (1, h^(q^(t-k) - 1)) from subfield inputs h, and points
    (1, r^(q^k - 1)) from inputs r in W."""
    k: int
    intersection_size: int
    subfield_part_size: int
    skew_part_size: int
    disjoint: bool
    covers: bool

    @property
    def ok(self) -> bool:
        return (self.disjoint and self.covers
                and self.subfield_part_size == self.skew_part_size
                and self.intersection_size
                == self.subfield_part_size + self.skew_part_size)

    def to_json(self):
        return {
            "k": self.k,
            "intersection_size": self.intersection_size,
            "subfield_part_size": self.subfield_part_size,
            "skew_part_size": self.skew_part_size,
            "disjoint": self.disjoint,
            "covers": self.covers,
            "ok": self.ok,
        }


def baer_partition_check(ctx, k: int) -> BaerReport:
    """Intersect the linear set of psi_k with the subline over GF(q^t) and
    verify it is the disjoint union of the two predicted power-coset parts,
    each of size (q^t - 1)/(q - 1). Requires psi_k scattered."""
    k = _norm_k(ctx, k)
    f = build_psi(ctx, k)
    verdict = is_scattered_fibers(f)
    if not verdict.scattered:
        raise NotScattered(f"psi_{k} is not scattered at q={ctx.q}, t={ctx.t}")
    t, n, M = ctx.t, ctx.n, ctx.order

    els = np.arange(1, M, dtype=np.int64)
    frobt = ctx.vfrob(els, t)
    sub = els[frobt == els]           # GF(q^t)*
    wstar = els[ctx.vadd(els, frobt) == 0]

    part_sub = np.unique(ctx.vpow_int(sub, ctx.q ** ((t - k) % n) - 1))
    part_skew = np.unique(ctx.vpow_int(wstar, ctx.q ** (k % n) - 1))

    vals = f.line_values()
    inter = vals[ctx.vfrob(vals, t) == vals]

    union = np.union1d(part_sub, part_skew)
    disjoint = len(np.intersect1d(part_sub, part_skew)) == 0
    covers = np.array_equal(np.sort(inter), union)
    return BaerReport(k, int(len(inter)), int(len(part_sub)),
                      int(len(part_skew)), bool(disjoint), bool(covers))
