"""GF(q)-linear polynomials over GF(q^n), stored as length-n coefficient
vectors: f(x) = sum_i c_i x^(q^i). Composition, adjoint, Dickson matrix and
rank live here; scatteredness checks build on top in scattered.py."""

from __future__ import annotations

from collections import Counter
from typing import Optional

import numpy as np

from .errors import CtxMismatch
from . import linalg


class LinPoly:
    """Immutable q-polynomial bound to a field context."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx, coeffs):
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) != ctx.n:
            raise ValueError(f"need exactly {ctx.n} coefficients, got {len(coeffs)}")
        for c in coeffs:
            if not 0 <= c < ctx.order:
                raise ValueError(f"coefficient {c} out of range")
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, *a):
        raise AttributeError("LinPoly is immutable")

    @classmethod
    def zero(cls, ctx) -> "LinPoly":
        return cls(ctx, [0] * ctx.n)

    @classmethod
    def identity(cls, ctx) -> "LinPoly":
        return cls.monomial(ctx, 1, 0)

    @classmethod
    def monomial(cls, ctx, c: int, k: int) -> "LinPoly":
        coeffs = [0] * ctx.n
        coeffs[k % ctx.n] = c
        return cls(ctx, coeffs)

    # -- ring structure ----------------------------------------------------

    def _check(self, other):
        if self.ctx is not other.ctx:
            raise CtxMismatch("operands built over different field contexts")

    def __eq__(self, other):
        return (isinstance(other, LinPoly) and self.ctx is other.ctx
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((id(self.ctx), self.coeffs))

    def __repr__(self):
        return f"LinPoly{self.coeffs}"

    def __add__(self, other) -> "LinPoly":
        self._check(other)
        add = self.ctx.add
        return LinPoly(self.ctx, [add(a, b) for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other) -> "LinPoly":
        self._check(other)
        sub = self.ctx.sub
        return LinPoly(self.ctx, [sub(a, b) for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "LinPoly":
        return LinPoly(self.ctx, [self.ctx.neg(c) for c in self.coeffs])

    def scale(self, c: int) -> "LinPoly":
        """Left scalar multiple c * f."""
        mul = self.ctx.mul
        return LinPoly(self.ctx, [mul(c, v) for v in self.coeffs])

    def frob_twist(self, j: int = 1) -> "LinPoly":
        """Apply the p-power automorphism x -> x^(p^j) to every coefficient."""
        return LinPoly(self.ctx, [self.ctx.frob_p(c, j) for c in self.coeffs])

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def support(self):
        return [i for i, c in enumerate(self.coeffs) if c != 0]

    # -- evaluation ---------------------------------------------------------

    def __call__(self, x: int) -> int:
        ctx = self.ctx
        out = 0
        for i, c in enumerate(self.coeffs):
            if c:
                out = ctx.add(out, ctx.mul(c, ctx.frob(x, i)))
        return out

    def eval_vec(self, xs: np.ndarray) -> np.ndarray:
        ctx = self.ctx
        out = np.zeros_like(xs)
        cur = xs
        for i, c in enumerate(self.coeffs):
            if c:
                out = ctx.vadd(out, ctx.vscale(c, cur))
            if i + 1 < ctx.n:
                cur = ctx.vfrob(cur, 1)
        return out

    def line_values(self) -> np.ndarray:
        """Sorted distinct values of f(x)/x over nonzero x."""
        ctx = self.ctx
        xs = np.arange(1, ctx.order, dtype=np.int64)
        return np.unique(ctx.vmul(self.eval_vec(xs), ctx.vinv(xs)))

    # -- algebra of maps ----------------------------------------------------

    def compose(self, other: "LinPoly") -> "LinPoly":
        """self after other: (f o g)_m = sum_{i+j = m mod n} f_i * g_j^(q^i)."""
        self._check(other)
        ctx = self.ctx
        n = ctx.n
        out = [0] * n
        for i, fi in enumerate(self.coeffs):
            if fi == 0:
                continue
            for j, gj in enumerate(other.coeffs):
                if gj == 0:
                    continue
                m = (i + j) % n
                out[m] = ctx.add(out[m], ctx.mul(fi, ctx.frob(gj, i)))
        return LinPoly(ctx, out)

    def adjoint(self) -> "LinPoly":
        """The map f^ with Tr(y * f(x)) = Tr(x * f^(y)) for all x, y."""
        ctx = self.ctx
        n = ctx.n
        return LinPoly(ctx, [ctx.frob(self.coeffs[(n - i) % n], i) for i in range(n)])

    def dickson(self):
        """n x n matrix over GF(q^n) with entry (i, j) = c_{(j-i) mod n}^(q^i);
        its rank equals the rank of f as a GF(q)-linear map."""
        ctx = self.ctx
        n = ctx.n
        return [[ctx.frob(self.coeffs[(j - i) % n], i) for j in range(n)]
                for i in range(n)]

    def rank(self) -> int:
        return linalg.field_rank(self.ctx, self.dickson())

    def kernel_dim(self) -> int:
        return self.ctx.n - self.rank()

    def map_order(self, max_steps: int = 100_000) -> Optional[int]:
        """Least m >= 1 with the m-fold composition equal to the identity,
        or None when f is not invertible."""
        if self.rank() < self.ctx.n:
            return None
        ident = LinPoly.identity(self.ctx)
        g = self
        m = 1
        while g != ident:
            g = g.compose(self)
            m += 1
            if m > max_steps:
                raise RuntimeError(f"map order exceeds {max_steps}")
        return m

    def fiber_histogram(self) -> Counter:
        """Multiset of fiber sizes of x -> f(x)/x on nonzero x, as a Counter
        mapping fiber size to the number of fibers of that size."""
        ctx = self.ctx
        xs = np.arange(1, ctx.order, dtype=np.int64)
        vals = ctx.vmul(self.eval_vec(xs), ctx.vinv(xs))
        _, counts = np.unique(vals, return_counts=True)
        sizes, mult = np.unique(counts, return_counts=True)
        return Counter({int(s): int(m) for s, m in zip(sizes, mult)})

    # -- serialization ------------------------------------------------------

    def to_json(self):
        return list(self.coeffs)

    @classmethod
    def from_json(cls, ctx, obj) -> "LinPoly":
        return cls(ctx, obj)
