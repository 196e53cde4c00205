"""Rank-metric codes spanned by a q-polynomial and the identity map.

The code attached to f is {a*f + b*id : a, b in GF(q^n)}, viewed inside the
GF(q)-algebra of q-polynomials; distance between codewords is the rank of
their difference as a GF(q)-linear map. Scalar multiples share a rank, so
every distance-type quantity is computed over the q^n + 1 projective
representative classes (1, b) and (0, 1). Idealisers (one-sided stabilizing
subalgebras) come from an exact GF(p)-nullspace solve, never from search.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from .errors import BadHypotheses, CtxMismatch
from .linpoly import LinPoly
from .scattered import shift_ranks
from . import linalg, linsets


# -- GF(p) coordinates for q-polynomials --------------------------------------

def _digits_vec(ctx, x: int) -> np.ndarray:
    """Little-endian base-p digits of a field element, length e*n."""
    out = np.empty(ctx.en, dtype=np.int64)
    x = int(x)
    for i in range(ctx.en):
        out[i] = x % ctx.p
        x //= ctx.p
    return out


def _poly_vec(f: LinPoly) -> np.ndarray:
    """A q-polynomial as a GF(p)-vector of length n*(e*n): the digit blocks
    of its coefficients, slot by slot."""
    return np.concatenate([_digits_vec(f.ctx, c) for c in f.coeffs])


def _vec_poly(ctx, v: np.ndarray) -> LinPoly:
    en = ctx.en
    coeffs = []
    for s in range(ctx.n):
        x = 0
        for d in range(en - 1, -1, -1):
            x = x * ctx.p + int(v[s * en + d])
        coeffs.append(x)
    return LinPoly(ctx, coeffs)


def modp_action_matrix(f: LinPoly) -> np.ndarray:
    """Matrix of f acting on GF(q^n) as a GF(p)-space, in the polynomial
    basis; its GF(p)-rank is e times the Dickson rank."""
    ctx = f.ctx
    M = np.empty((ctx.en, ctx.en), dtype=np.int64)
    for d in range(ctx.en):
        M[:, d] = _digits_vec(ctx, f(ctx.p ** d))
    return M


# -- the code ------------------------------------------------------------------

class RankCode:
    """The two-generator code {a*f + b*id}; degenerate when f is itself a
    scalar multiple of the identity (the span collapses to one dimension)."""

    __slots__ = ("ctx", "f", "_dist")

    def __init__(self, ctx, f: LinPoly):
        if f.ctx is not ctx:
            raise CtxMismatch("polynomial belongs to a different field context")
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "_dist", None)

    def __setattr__(self, *a):
        raise AttributeError("RankCode is immutable")

    @property
    def degenerate(self) -> bool:
        return all(c == 0 for c in self.f.coeffs[1:])

    @property
    def size(self) -> int:
        return self.ctx.order if self.degenerate else self.ctx.order ** 2

    def _span(self):
        ident = [0] * self.ctx.n
        ident[0] = 1
        rows, _ = linalg.field_rref(self.ctx, [list(self.f.coeffs), ident])
        return tuple(tuple(r) for r in rows)

    def __eq__(self, other):
        return (isinstance(other, RankCode) and self.ctx is other.ctx
                and self._span() == other._span())

    def __hash__(self):
        return hash((id(self.ctx), self._span()))

    def __repr__(self):
        return f"RankCode(f={self.f!r}, degenerate={self.degenerate})"


def build_code(f: LinPoly) -> RankCode:
    return RankCode(f.ctx, f)


@dataclass(frozen=True)
class RankDistribution:
    """counts[r] = number of codewords of rank r, counting each (a, b) pair."""
    counts: Tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.counts)

    def __getitem__(self, r: int) -> int:
        return self.counts[r]

    def to_json(self):
        return {"counts": list(self.counts), "total": self.total}

    def csv_rows(self) -> List[Tuple[int, int]]:
        return [(r, c) for r, c in enumerate(self.counts)]


def rank_distribution(code: RankCode, workers: int = 1) -> RankDistribution:
    """Exact distribution from the projective representatives: each class
    (1, b) or (0, 1) contributes q^n - 1 scalings of one rank, plus the
    zero word."""
    if code._dist is None:
        ctx = code.ctx
        ranks = shift_ranks(code.f, workers=workers)
        counts = [0] * (ctx.n + 1)
        counts[0] = 1
        scalings = ctx.order - 1
        for r, c in zip(*np.unique(ranks, return_counts=True)):
            counts[int(r)] += scalings * int(c)
        counts[ctx.n] += scalings
        object.__setattr__(code, "_dist", RankDistribution(tuple(counts)))
    return code._dist


def min_rank_distance(code: RankCode, workers: int = 1) -> int:
    """Minimum rank over nonzero codewords."""
    dist = rank_distribution(code, workers=workers)
    return next(r for r in range(1, code.ctx.n + 1) if dist[r] > 0)


def is_mrd(code: RankCode, workers: int = 1) -> bool:
    """True iff the code size meets q^(n*(n-d+1)), i.e. d = n - 1 for these
    two-generator codes."""
    if code.degenerate:
        return False
    return min_rank_distance(code, workers=workers) == code.ctx.n - 1


def adjoint_code(code: RankCode) -> RankCode:
    return build_code(code.f.adjoint())


def code_equivalent(c1: RankCode, c2: RankCode, with_automorphisms: bool = True,
                    budget: int = linsets.DEFAULT_BUDGET
                    ) -> Optional[linsets.Certificate]:
    """Equivalence of the codes reduces to equivalence of the defining
    polynomials' graph subspaces; delegates to that search."""
    if c1.ctx is not c2.ctx:
        raise CtxMismatch("codes live over different field contexts")
    return linsets.subspace_equivalent(c1.f, c2.f,
                                       with_automorphisms=with_automorphisms,
                                       budget=budget)


# -- idealisers ------------------------------------------------------------------

@dataclass(frozen=True)
class IdealiserReport:
    side: str
    basis: Tuple[LinPoly, ...]
    dim_p: int
    dim_q: int
    # None when the structural checks were skipped
    closed: Optional[bool]
    commutative: Optional[bool]
    all_invertible: Optional[bool]
    contains_identity: Optional[bool]

    @property
    def is_field(self) -> Optional[bool]:
        flags = (self.closed, self.commutative, self.all_invertible,
                 self.contains_identity)
        if any(f is None for f in flags):
            return None
        return all(flags)

    def to_json(self):
        return {"side": self.side,
                "basis": [list(b.coeffs) for b in self.basis],
                "dim_p": self.dim_p, "dim_q": self.dim_q,
                "closed": self.closed, "commutative": self.commutative,
                "all_invertible": self.all_invertible,
                "contains_identity": self.contains_identity,
                "is_field": self.is_field}


def _member_fn(ctx, vecs: np.ndarray):
    """Membership test for the GF(p)-rowspan of vecs, via the kernel of its
    annihilator (double annihilator over a field)."""
    K = linalg.modp_nullspace(vecs, ctx.p)
    if len(K) == 0:
        return lambda v: True
    return lambda v: not ((K @ v) % ctx.p).any()


def idealiser(code: RankCode, side: str = "left", check_flags: bool = True
              ) -> IdealiserReport:
    """One-sided stabilizing subalgebra, by exact linear solve over GF(p).

    An unknown q-polynomial phi (n*(e*n) digit unknowns) lies in the left
    idealiser iff phi o c stays in the code for every c in a GF(p)-basis of
    the code; composing each digit-basis monomial with c is GF(p)-linear in
    phi, so each c contributes a block of linear conditions through the
    code's membership kernel. The right side swaps the composition order.
    """
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    ctx = code.ctx
    p, en, D = ctx.p, ctx.en, ctx.n * ctx.en
    ident = LinPoly.identity(ctx)
    gens = [g.scale(p ** d) for d in range(en) for g in (code.f, ident)]
    code_vecs = np.stack([_poly_vec(g) for g in gens])
    K = linalg.modp_nullspace(code_vecs, p)
    monos = [LinPoly.monomial(ctx, p ** d, s)
             for s in range(ctx.n) for d in range(en)]
    blocks = []
    if len(K):
        for c in gens:
            A = np.empty((D, D), dtype=np.int64)
            for j, b in enumerate(monos):
                comp = b.compose(c) if side == "left" else c.compose(b)
                A[:, j] = _poly_vec(comp)
            blocks.append((K @ A) % p)
    cond = np.concatenate(blocks) if blocks else np.zeros((0, D), dtype=np.int64)
    xi = linalg.modp_nullspace(cond, p)
    basis = tuple(_vec_poly(ctx, v) for v in xi)
    dim_p = len(xi)

    # vacuously true for the zero algebra; None when skipped
    verdict = True if (check_flags or not dim_p) else None
    closed = commutative = all_invertible = contains_identity = verdict
    if check_flags and dim_p:
        member = _member_fn(ctx, xi)
        contains_identity = member(_poly_vec(ident))
        for i, u in enumerate(basis):
            for j, v in enumerate(basis):
                closed = closed and member(_poly_vec(u.compose(v)))
                if j > i:
                    commutative = commutative and u.compose(v) == v.compose(u)
        combos = np.indices((p,) * dim_p).reshape(dim_p, -1).T
        vecs = (combos @ xi) % p
        pows = ctx.p ** np.arange(en, dtype=np.int64)
        coeffs = vecs.reshape(-1, ctx.n, en) @ pows
        nonzero = combos.any(axis=1)
        ranks = linalg.batch_dickson_rank(ctx, coeffs[nonzero].T)
        all_invertible = bool((ranks == ctx.n).all())
    return IdealiserReport(side=side, basis=basis, dim_p=dim_p,
                           dim_q=dim_p // ctx.e, closed=closed,
                           commutative=commutative,
                           all_invertible=all_invertible,
                           contains_identity=contains_identity)


# -- the counting statement ------------------------------------------------------

def count_new_codes(q: int, t: int) -> Tuple[List[int], int]:
    """The exponents 1 <= k < t coprime to 2t and their count phi(2t)/2,
    under the hypotheses: q a power of an odd prime, t >= 3, and q = 1
    (mod 4) whenever t is odd."""
    q, t = int(q), int(t)
    if t < 3:
        raise BadHypotheses("t must be at least 3")
    if q < 3 or q % 2 == 0:
        raise BadHypotheses("q must be odd")
    p = next((d for d in range(3, q + 1, 2) if q % d == 0), q)
    m = q
    while m % p == 0:
        m //= p
    if m != 1 or any(p % d == 0 for d in range(3, int(p ** 0.5) + 1, 2)):
        raise BadHypotheses("q must be a power of an odd prime")
    if t % 2 == 1 and q % 4 != 1:
        raise BadHypotheses("odd t requires q = 1 (mod 4)")
    ks = [k for k in range(1, t) if math.gcd(k, 2 * t) == 1]
    phi = sum(1 for i in range(1, 2 * t + 1) if math.gcd(i, 2 * t) == 1)
    return ks, phi // 2
