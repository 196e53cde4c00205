"""Tower GF(p) < GF(q) < GF(q^t) < GF(q^n) with n = 2t and q = p^e odd.

Elements are integer indices encoding polynomial-basis coordinates over
GF(p) in little-endian base-p order: the element sum(c_i * x^i) has index
sum(c_i * p^i). Index 0 is the zero element, indices below p are the
prime-field scalars.

Fields up to 2^26 elements get full discrete-log tables (exp, log, Zech,
q-Frobenius) and vectorized numpy kernels; larger fields fall back to
polynomial-basis arithmetic with precomputed Frobenius matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
import sympy

from .errors import BadParams, EvenP, NonPrimeP, ReducibleModulus, TSmall

TABLE_LIMIT = 1 << 26

_CTX_CACHE: dict = {}


# ---------------------------------------------------------------------------
# GF(p)[x] helpers on little-endian coefficient lists


def _trim(poly):
    while poly and poly[-1] == 0:
        poly.pop()
    return poly


def _poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def _poly_mod(a, mod, p):
    a = list(a)
    dm = len(mod) - 1
    inv_lead = pow(mod[-1], p - 2, p)
    while len(a) - 1 >= dm and a:
        a = _trim(a)
        if len(a) - 1 < dm:
            break
        coef = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - dm
        for i, m in enumerate(mod):
            a[shift + i] = (a[shift + i] - coef * m) % p
        a = _trim(a)
    return a


def _poly_gcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def is_irreducible(coeffs, p) -> bool:
    """Rabin test for a monic polynomial over GF(p), little-endian coeffs."""
    m = len(coeffs) - 1
    if m < 1 or coeffs[-1] != 1:
        return False
    if m == 1:
        return True
    if coeffs[0] == 0:
        return False  # divisible by x

    def xq_pow(k):
        # x^(p^k) mod f by square and multiply
        e = pow(p, k)
        base = [0, 1]
        acc = [1]
        while e:
            if e & 1:
                acc = _poly_mod(_poly_mul(acc, base, p), coeffs, p)
            base = _poly_mod(_poly_mul(base, base, p), coeffs, p)
            e >>= 1
        return acc

    def minus_x(poly):
        d = list(poly) + [0] * (2 - len(poly))
        d[1] = (d[1] - 1) % p
        return _trim(d)

    if minus_x(xq_pow(m)):
        return False  # x^(p^m) != x mod f
    for r in sorted(int(f) for f in sympy.primefactors(m)):
        d = minus_x(xq_pow(m // r))
        if not d or len(_poly_gcd(coeffs, d, p)) - 1 != 0:
            return False
    return True


def smallest_irreducible(p: int, m: int) -> tuple:
    """Lexicographically smallest monic irreducible of degree m over GF(p).

    Candidates x^m + c are ordered by the base-p integer encoding of the
    non-leading part c, smallest first, so the choice is reproducible
    across implementations.
    """
    for idx in range(p**m):
        coeffs = _digits_of(idx, p, m) + [1]
        if is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise RuntimeError("no irreducible polynomial found")  # unreachable


def _digits_of(a: int, p: int, m: int):
    out = []
    for _ in range(m):
        out.append(a % p)
        a //= p
    return out


def _undigits(digs, p: int) -> int:
    out = 0
    for d in reversed(digs):
        out = out * p + int(d)
    return out


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FieldSpec:
    """Serializable description of a tower field."""

    p: int
    e: int
    t: int
    modulus: Optional[tuple] = None

    def to_json(self) -> dict:
        out = {"p": self.p, "e": self.e, "t": self.t}
        if self.modulus is not None:
            out["modulus"] = list(self.modulus)
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "FieldSpec":
        mod = obj.get("modulus")
        return cls(int(obj["p"]), int(obj["e"]), int(obj["t"]),
                   tuple(int(c) for c in mod) if mod is not None else None)


class FieldCtx:
    """Arithmetic context for GF(q^n), q = p^e, n = 2t.

    Do not construct directly; use build_field so validation and caching
    apply. Scalar operations take and return plain ints. Vector operations
    (v-prefixed) take numpy int64 arrays of element indices and require
    table mode.
    """

    def __init__(self, spec: FieldSpec, use_tables: Optional[bool] = None):
        p, e, t = spec.p, spec.e, spec.t
        self.p, self.e, self.t = p, e, t
        self.q = p**e
        self.n = 2 * t
        self.en = e * self.n
        self.order = p**self.en
        self.mult_order = self.order - 1
        if spec.modulus is not None:
            self.modulus = tuple(int(c) % p for c in spec.modulus)
        else:
            self.modulus = smallest_irreducible(p, self.en)
        self.spec = FieldSpec(p, e, t, self.modulus)
        self.has_tables = (self.order <= TABLE_LIMIT) if use_tables is None else use_tables

        self._ppow = [p**i for i in range(self.en + 1)]
        self._mod_list = list(self.modulus)
        self._frob_mats: dict = {}

        self.omega = self._find_generator()
        if self.has_tables:
            self._build_tables()
        self.two_inv = pow(2, -1, p)  # p odd, so 2 is invertible

    # -- construction ------------------------------------------------------

    def _find_generator(self) -> int:
        M = self.mult_order
        prime_parts = [M // r for r in sorted(sympy.factorint(M))]
        cand = 2
        while True:
            if all(self._pow_nt(cand, m) != 1 for m in prime_parts):
                return cand
            cand += 1

    def _build_tables(self):
        p, en, order, M = self.p, self.en, self.order, self.mult_order
        mul_mat = self._mult_matrix(self.omega)
        block = min(4096, M)
        V = np.empty((en, M), dtype=np.int8)
        col = np.zeros(en, dtype=np.int64)
        col[0] = 1
        for j in range(block):
            V[:, j] = col
            col = mul_mat @ col % p
        if M > block:
            C = np.eye(en, dtype=np.int64)
            b = block
            A = mul_mat.copy()
            while b:
                if b & 1:
                    C = C @ A % p
                A = A @ A % p
                b >>= 1
            done = block
            while done < M:
                hi = min(done + block, M)
                V[:, done:hi] = C @ V[:, done - block:hi - block].astype(np.int64) % p
                done = hi
        weights = np.array(self._ppow[:en], dtype=np.int64)
        exp = weights @ V.astype(np.int64)
        if exp[0] != 1 or not np.array_equal(np.sort(exp), np.arange(1, order, dtype=np.int64)):
            raise RuntimeError("generator table construction failed")
        log = np.full(order, -1, dtype=np.int64)
        log[exp] = np.arange(M, dtype=np.int64)
        # Zech logs: zech[k] = log(1 + omega^k), -1 where the sum is zero
        d0 = exp % p
        one_plus = exp - d0 + (d0 + 1) % p
        zech = log[one_plus]
        # q-Frobenius as a permutation table on element indices
        frob = np.zeros(order, dtype=np.int64)
        frob[exp] = exp[np.arange(M, dtype=np.int64) * self.q % M]
        self._exp, self._log, self._zech, self._frob_q = exp, log, zech, frob

    def _mult_matrix(self, a: int) -> np.ndarray:
        """Matrix of y -> a*y on GF(p) digit vectors."""
        p, en = self.p, self.en
        cols = np.zeros((en, en), dtype=np.int64)
        cur = self.digits(a)
        for j in range(en):
            cols[:, j] = cur
            cur = [0] + cur
            cur = _poly_mod(cur, self._mod_list, p)
            cur = list(cur) + [0] * (en - len(cur))
        return cols

    # -- representation ----------------------------------------------------

    def digits(self, a: int):
        return _digits_of(a, self.p, self.en)

    def from_digits(self, digs) -> int:
        return _undigits(list(digs) + [0] * (self.en - len(digs)), self.p)

    def elements(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    def gen_power(self, j: int) -> int:
        """omega^j, exponent taken mod q^n - 1."""
        if self.has_tables:
            return int(self._exp[j % self.mult_order])
        return self._pow_nt(self.omega, j % self.mult_order)

    def __repr__(self):
        return f"FieldCtx(p={self.p}, e={self.e}, t={self.t})"

    # -- scalar arithmetic -------------------------------------------------

    def add(self, a: int, b: int) -> int:
        p = self.p
        out = 0
        w = 1
        while a or b:
            out += ((a % p) + (b % p)) % p * w
            a //= p
            b //= p
            w *= p
        return out

    def neg(self, a: int) -> int:
        p = self.p
        out = 0
        w = 1
        while a:
            out += (p - a % p) % p * w
            a //= p
            w *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.has_tables:
            return int(self._exp[(self._log[a] + self._log[b]) % self.mult_order])
        return self._mul_nt(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        if self.has_tables:
            return int(self._exp[-self._log[a] % self.mult_order])
        return self._inv_nt(a)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow_(self, a: int, m: int) -> int:
        if a == 0:
            if m > 0:
                return 0
            if m == 0:
                return 1
            raise ZeroDivisionError("0 has no inverse")
        m %= self.mult_order
        if self.has_tables:
            return int(self._exp[self._log[a] * m % self.mult_order])
        return self._pow_nt(a, m)

    def frob(self, a: int, k: int = 1) -> int:
        """k-fold q-power Frobenius x -> x^(q^k)."""
        if a == 0:
            return 0
        k %= self.n
        if self.has_tables:
            return int(self._exp[self._log[a] * pow(self.q, k, self.mult_order) % self.mult_order])
        digs = np.array(self.digits(a), dtype=np.int64)
        digs = self._frob_matrix(k) @ digs % self.p
        return self.from_digits(digs)

    def frob_p(self, a: int, j: int = 1) -> int:
        """p-power Frobenius x -> x^(p^j), the automorphism generator."""
        if a == 0:
            return 0
        return self.pow_(a, pow(self.p, j % self.en, self.mult_order))

    # -- no-table fallbacks ------------------------------------------------

    def _mul_nt(self, a: int, b: int) -> int:
        prod = _poly_mul(self.digits(a), self.digits(b), self.p)
        return self.from_digits(_poly_mod(prod, self._mod_list, self.p))

    def _pow_nt(self, a: int, m: int) -> int:
        acc, base = 1, a
        while m:
            if m & 1:
                acc = self._mul_nt(acc, base)
            base = self._mul_nt(base, base)
            m >>= 1
        return acc

    def _inv_nt(self, a: int) -> int:
        # a^(q^n - 2); the multiplicative group has order q^n - 1
        return self._pow_nt(a, self.mult_order - 1)

    def _frob_matrix(self, k: int) -> np.ndarray:
        if k not in self._frob_mats:
            p, en = self.p, self.en
            cols = np.zeros((en, en), dtype=np.int64)
            for j in range(en):
                img = self._pow_nt(self._ppow[j], pow(self.q, k))
                cols[:, j] = self.digits(img)
            self._frob_mats[k] = cols
        return self._frob_mats[k]

    # -- tower structure ---------------------------------------------------

    def _level_step(self, level: str) -> int:
        if level == "q":
            return 1
        if level == "qt":
            return self.t
        raise BadParams(f"unknown tower level {level!r}, expected 'q' or 'qt'")

    def trace(self, x: int, level: str = "q") -> int:
        """Relative trace from GF(q^n) onto GF(q) or GF(q^t)."""
        step = self._level_step(level)
        out = 0
        for i in range(0, self.n, step):
            out = self.add(out, self.frob(x, i))
        return out

    def norm(self, x: int, level: str = "q") -> int:
        """Relative norm from GF(q^n) onto GF(q) or GF(q^t)."""
        step = self._level_step(level)
        exp = (self.order - 1) // (self.q**step - 1)
        return self.pow_(x, exp)

    def in_subfield(self, x: int, level: str = "q") -> bool:
        return self.frob(x, self._level_step(level)) == x

    def in_w(self, x: int) -> bool:
        """Membership in W = {x : x + x^(q^t) = 0}, the twisted complement."""
        return self.add(x, self.frob(x, self.t)) == 0

    def split(self, x: int) -> tuple:
        """Decompose x = x1 + x2 with x1 in GF(q^t) and x2 in W."""
        half = self.two_inv
        xt = self.frob(x, self.t)
        x1 = self.mul(half, self.add(x, xt))
        x2 = self.mul(half, self.sub(x, xt))
        return x1, x2

    def w_unity_root(self, k: int) -> Optional[int]:
        """First x in W* (generator-power order) with x^(q^k + 1) = 1, else None.

        Nonzero W elements are exactly omega^j with j = (2m+1)(q^t+1)/2, so
        both the sweep and the unity test reduce to exponent arithmetic.
        """
        M = self.mult_order
        stride = self.q**self.t + 1
        target = self.q**k + 1
        j = stride // 2
        while j < M:
            if j * target % M == 0:
                return self.gen_power(j)
            j += stride
        return None

    # -- vector kernels (table mode only) -----------------------------------

    def _need_tables(self):
        if not self.has_tables:
            raise RuntimeError("vector kernels require table mode "
                               f"(field has {self.order} elements)")

    def vadd(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        self._need_tables()
        M = self.mult_order
        la, lb = self._log[a], self._log[b]
        d = (lb - la) % M
        s = self._exp[(la + self._zech[d]) % M]
        out = np.where(d == M // 2, 0, s)
        out = np.where(b == 0, a, out)
        return np.where(a == 0, b, out)

    def vneg(self, a: np.ndarray) -> np.ndarray:
        self._need_tables()
        M = self.mult_order
        return np.where(a == 0, 0, self._exp[(self._log[a] + M // 2) % M])

    def vsub(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.vadd(a, self.vneg(b))

    def vmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        self._need_tables()
        prod = self._exp[(self._log[a] + self._log[b]) % self.mult_order]
        return np.where((a == 0) | (b == 0), 0, prod)

    def vscale(self, c: int, a: np.ndarray) -> np.ndarray:
        self._need_tables()
        if c == 0:
            return np.zeros_like(a)
        lc = int(self._log[c])
        return np.where(a == 0, 0, self._exp[(self._log[a] + lc) % self.mult_order])

    def vinv(self, a: np.ndarray) -> np.ndarray:
        self._need_tables()
        if np.any(a == 0):
            raise ZeroDivisionError("0 has no inverse")
        return self._exp[-self._log[a] % self.mult_order]

    def vfrob(self, a: np.ndarray, k: int = 1) -> np.ndarray:
        self._need_tables()
        out = a
        for _ in range(k % self.n):
            out = self._frob_q[out]
        return out

    def vpow_int(self, a: np.ndarray, m: int) -> np.ndarray:
        """Entrywise a^m for a fixed integer exponent; 0^m = 0 (m > 0)."""
        self._need_tables()
        m %= self.mult_order
        if m == 0:
            return np.where(a == 0, 0, 1)
        return np.where(a == 0, 0, self._exp[self._log[a] * m % self.mult_order])


def build_field(p: int, e: int, t: int, modulus=None,
                use_tables: Optional[bool] = None) -> FieldCtx:
    """Validate parameters and return a (cached) field context.

    Raises NonPrimeP, EvenP, TSmall or ReducibleModulus on bad input.
    """
    if not isinstance(p, int) or p < 2 or not sympy.isprime(p):
        raise NonPrimeP(f"p = {p} is not prime")
    if p == 2:
        raise EvenP("characteristic 2 is not supported; p must be odd")
    if not isinstance(e, int) or e < 1:
        raise BadParams(f"e = {e} must be a positive integer")
    if not isinstance(t, int) or t < 3:
        raise TSmall(f"t = {t} is below the minimum t >= 3")
    key = (p, e, t, tuple(modulus) if modulus is not None else None, use_tables)
    if key in _CTX_CACHE:
        return _CTX_CACHE[key]
    if modulus is not None:
        mod = [int(c) % p for c in modulus]
        if len(mod) != e * 2 * t + 1 or mod[-1] != 1:
            raise ReducibleModulus(
                f"modulus must be monic of degree {e * 2 * t} over GF({p})")
        if not is_irreducible(mod, p):
            raise ReducibleModulus("supplied modulus is reducible over GF(p)")
    ctx = FieldCtx(FieldSpec(p, e, t, tuple(modulus) if modulus else None),
                   use_tables=use_tables)
    _CTX_CACHE[key] = ctx
    return ctx


def build_field_from_spec(spec: FieldSpec, use_tables: Optional[bool] = None) -> FieldCtx:
    return build_field(spec.p, spec.e, spec.t, modulus=spec.modulus, use_tables=use_tables)
