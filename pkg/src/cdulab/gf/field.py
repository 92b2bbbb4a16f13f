"""Arithmetic in GF(p^n) on integer element indices.

An element is stored as the integer whose base-p digits d_0..d_{n-1} are its
coordinates in the polynomial basis 1, g, ..., g^{n-1}, where g is the class of
x modulo the defining polynomial.  Every ``FieldCtx`` method accepts Python ints
or numpy integer arrays and broadcasts like numpy.

Fields up to ``logtable_cap`` elements get exp/log tables; larger fields fall
back to digit-wise (carry-less for p = 2) polynomial multiplication.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..errors import CompositeCharacteristic, ConfigError, DivisionByZero, MixedFields, NotADivisor, ReducibleModulus

DEFAULT_LOGTABLE_CAP = 1 << 20


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def prime_factors(m: int) -> list[int]:
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


# ---------------------------------------------------------------------------
# Polynomials over GF(p) as coefficient lists, constant term first.
# ---------------------------------------------------------------------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    a = _trim([int(x) % p for x in a])
    m = _trim([int(x) % p for x in m])
    dm = len(m) - 1
    lead_inv = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm:
        t = a[-1] * lead_inv % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - t * mi) % p
        _trim(a)
    return a


def _pmul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def _pgcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a = _trim(list(a))
    b = _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _ppowmod(base: Sequence[int], e: int, m: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(base, m, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        base = _pmod(_pmul(base, base, p), m, p)
        e >>= 1
    return result


def _has_root(f: Sequence[int], p: int) -> bool:
    for r in range(p):
        acc = 0
        for c in reversed(f):
            acc = (acc * r + c) % p
        if acc == 0:
            return True
    return False


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Irreducibility of a monic polynomial over GF(p).

    Degree <= 4 is settled by exhaustive root and quadratic-factor search,
    higher degree by gcd(x^(p^i) - x, f) = 1 for i <= n/2.
    """
    f = [int(c) % p for c in modulus]
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    if n <= 4:
        if _has_root(f, p):
            return False
        if n == 4:
            for c0 in range(p):
                for c1 in range(p):
                    if not _pmod(f, [c0, c1, 1], p):
                        return False
        return True
    x = [0, 1]
    xp = x
    for _ in range(1, n // 2 + 1):
        xp = _ppowmod(xp, p, f, p)
        diff = list(xp) + [0] * max(0, 2 - len(xp))
        diff[1] = (diff[1] - 1) % p
        g = _pgcd(f, _trim(diff), p)
        if len(g) != 1:
            return False
    return True


def smallest_irreducible(p: int, n: int) -> list[int]:
    """First monic irreducible of degree n, ordering lower coefficients as a base-p integer
    read from the x^{n-1} digit down (so x^3+x+1 precedes x^3+x^2+1)."""
    for r in range(p**n):
        low = [(r // p**i) % p for i in range(n)]
        cand = low + [1]
        if is_irreducible(cand, p):
            return cand
    raise ReducibleModulus(f"no irreducible polynomial of degree {n} over GF({p})")


@dataclass(frozen=True)
class FieldSpec:
    p: int
    n: int
    modulus: tuple[int, ...]

    def to_json(self) -> dict:
        return {"p": self.p, "n": self.n, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, obj) -> "FieldSpec":
        if isinstance(obj, str):
            obj = json.loads(obj)
        try:
            return cls(int(obj["p"]), int(obj["n"]), tuple(int(c) for c in obj["modulus"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"malformed field spec: {obj!r}") from exc

    def modulus_str(self) -> str:
        terms = []
        for i in range(self.n, -1, -1):
            c = self.modulus[i]
            if c == 0:
                continue
            mono = "1" if i == 0 else ("x" if i == 1 else f"x^{i}")
            terms.append(mono if c == 1 and i > 0 else (f"{c}" if i == 0 else f"{c}*{mono}"))
        return "+".join(terms)


class FieldCtx:
    """A materialized GF(p^n).  Immutable after construction."""

    def __init__(self, spec: FieldSpec, logtable_cap: int = DEFAULT_LOGTABLE_CAP):
        self.spec = spec
        self.p = spec.p
        self.n = spec.n
        self.q = spec.p**spec.n
        self.modulus = spec.modulus
        self.pw = np.array([self.p**i for i in range(self.n)], dtype=np.int64)
        self._modint = sum(c << i for i, c in enumerate(spec.modulus)) if self.p == 2 else None
        self._exp = None
        self._log = None
        self.generator = None
        if self.q <= logtable_cap:
            self._build_tables()

    # -- identity -------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, FieldCtx) and other.spec == self.spec

    def __hash__(self):
        return hash(self.spec)

    def __repr__(self):
        return f"GF({self.p}^{self.n}) mod {self.spec.modulus_str()}"

    @property
    def order(self) -> int:
        return self.q

    @property
    def has_tables(self) -> bool:
        return self._exp is not None

    @property
    def gamma(self) -> int:
        """Index of the class of x (the polynomial-basis generator)."""
        if self.n > 1:
            return self.p
        return (-self.modulus[0]) % self.p

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def element(self, i: int) -> "FieldElement":
        return FieldElement(self, int(i))

    # -- scalar slow path (table construction, poly tier) ----------------
    def _mul_slow(self, a: int, b: int) -> int:
        p, n = self.p, self.n
        if p == 2:
            r = 0
            while b:
                if b & 1:
                    r ^= a
                b >>= 1
                a <<= 1
                if a >> n & 1:
                    a ^= self._modint
            return r
        da = [(a // p**i) % p for i in range(n)]
        db = [(b // p**i) % p for i in range(n)]
        prod = _pmod(_pmul(_trim(da), _trim(db), p), self.modulus, p)
        return sum(c * p**i for i, c in enumerate(prod))

    def _pow_slow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._mul_slow(r, a)
            a = self._mul_slow(a, a)
            e >>= 1
        return r

    def _mul_const_vec(self, vals: np.ndarray, k: int) -> np.ndarray:
        # multiplication by k is GF(p)-linear: combine the images k*g^i of the basis
        images = [k]
        for _ in range(1, self.n):
            images.append(self._mul_slow(images[-1], self.gamma))
        vals = np.asarray(vals, dtype=np.int64)
        if self.p == 2:
            out = np.zeros_like(vals)
            for i, img in enumerate(images):
                out ^= np.where((vals >> i) & 1, img, 0)
            return out
        out = np.zeros_like(vals)
        for i, img in enumerate(images):
            d = (vals // self.pw[i]) % self.p
            out = self.add(out, self.scale(img, d))
        return out

    def _build_tables(self):
        q = self.q
        if q == 2:
            g = 1
        else:
            facs = prime_factors(q - 1)
            g = None
            for cand in range(2, q):
                if all(self._pow_slow(cand, (q - 1) // r) != 1 for r in facs):
                    g = cand
                    break
        self.generator = g
        exp = np.zeros(2 * (q - 1), dtype=np.int64)
        exp[0] = 1
        filled = 1
        while filled < q - 1:
            take = min(filled, q - 1 - filled)
            exp[filled:filled + take] = self._mul_const_vec(exp[:take], self._pow_slow(g, filled))
            filled += take
        exp[q - 1:] = exp[:q - 1]
        log = np.zeros(q, dtype=np.int64)
        log[exp[:q - 1]] = np.arange(q - 1)
        if len(np.unique(exp[:q - 1])) != q - 1:
            raise ReducibleModulus("multiplicative group is not cyclic; modulus is reducible")
        exp.setflags(write=False)
        log.setflags(write=False)
        self._exp = exp
        self._log = log

    # -- digit helpers ----------------------------------------------------
    def digits(self, a) -> np.ndarray:
        """Base-p coordinates, shape ``a.shape + (n,)``."""
        a = np.asarray(a, dtype=np.int64)
        return (a[..., None] // self.pw) % self.p

    def from_digits(self, d) -> np.ndarray:
        d = np.asarray(d, dtype=np.int64) % self.p
        return (d * self.pw).sum(axis=-1)

    # -- additive structure ---------------------------------------------
    def add(self, a, b):
        if self.p == 2:
            return _ret(np.bitwise_xor(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)), a, b)
        a_ = np.asarray(a, dtype=np.int64)
        b_ = np.asarray(b, dtype=np.int64)
        out = np.zeros(np.broadcast(a_, b_).shape, dtype=np.int64)
        for w in self.pw:
            out += ((a_ // w + b_ // w) % self.p) * w
        return _ret(out, a, b)

    def sub(self, a, b):
        if self.p == 2:
            return self.add(a, b)
        a_ = np.asarray(a, dtype=np.int64)
        b_ = np.asarray(b, dtype=np.int64)
        out = np.zeros(np.broadcast(a_, b_).shape, dtype=np.int64)
        for w in self.pw:
            out += ((a_ // w - b_ // w) % self.p) * w
        return _ret(out, a, b)

    def neg(self, a):
        return self.sub(0, a)

    def scale(self, a, k):
        """Multiply by an integer k taken modulo p (repeated addition)."""
        a_ = np.asarray(a, dtype=np.int64)
        k_ = np.asarray(k, dtype=np.int64) % self.p
        if self.p == 2:
            return _ret(a_ * k_, a, k)
        out = np.zeros(np.broadcast(a_, k_).shape, dtype=np.int64)
        for w in self.pw:
            out += (((a_ // w) % self.p) * k_ % self.p) * w
        return _ret(out, a, k)

    def sum(self, a, axis=None):
        """Field sum of the entries of an array."""
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return np.bitwise_xor.reduce(a, axis=axis) if a.size else np.int64(0)
        d = self.digits(a)
        if axis is None:
            s = d.reshape(-1, self.n).sum(axis=0) % self.p
            return int((s * self.pw).sum())
        ax = axis if axis >= 0 else a.ndim + axis
        s = d.sum(axis=ax) % self.p
        return (s * self.pw).sum(axis=-1)

    # -- multiplicative structure -------------------------------------------
    def mul(self, a, b):
        a_ = np.asarray(a, dtype=np.int64)
        b_ = np.asarray(b, dtype=np.int64)
        if self._exp is not None:
            la = self._log[a_]
            lb = self._log[b_]
            out = np.where((a_ == 0) | (b_ == 0), 0, self._exp[la + lb])
            return _ret(out, a, b)
        return _ret(self._mul_poly(a_, b_), a, b)

    def _mul_poly(self, a, b):
        a, b = np.broadcast_arrays(a, b)
        a = a.copy()
        if self.p == 2:
            out = np.zeros(a.shape, dtype=np.int64)
            for i in range(self.n):
                out ^= np.where((b >> i) & 1, a, 0)
                a <<= 1
                a = np.where((a >> self.n) & 1, a ^ self._modint, a)
            return out
        out = np.zeros(a.shape, dtype=np.int64)
        top = self.pw[-1]
        red = np.array(self.modulus[:-1], dtype=np.int64)
        red_idx = int((red * self.pw).sum())
        for i in range(self.n):
            bi = (b // self.pw[i]) % self.p
            out = self.add(out, self.scale(a, bi))
            # a <- a * g: shift digits up, reduce the overflowing digit
            t = a // top
            a = (a % top) * self.p
            a = self.sub(a, self.scale(red_idx, t))
        return out

    def pow(self, a, e: int):
        e = int(e)
        a_ = np.asarray(a, dtype=np.int64)
        if e < 0:
            return self.pow(self.inv(a), -e)
        if e == 0:
            return _ret(np.ones_like(a_), a)
        if self._exp is not None:
            er = e % (self.q - 1)
            out = np.where(a_ == 0, 0, self._exp[(self._log[a_] * er) % (self.q - 1)])
            return _ret(out, a)
        result = np.ones_like(a_)
        base = a_.copy()
        while e:
            if e & 1:
                result = self._mul_poly(result, base)
            base = self._mul_poly(base, base)
            e >>= 1
        return _ret(result, a)

    def inv(self, a):
        a_ = np.asarray(a, dtype=np.int64)
        if np.any(a_ == 0):
            raise DivisionByZero("inverse of 0")
        if self._exp is not None:
            return _ret(self._exp[(self.q - 1 - self._log[a_]) % (self.q - 1)], a)
        return self.pow(a, self.q - 2)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    # -- Frobenius and subfields ----------------------------------------------
    def frobenius(self, a, j: int = 1):
        """x -> x^(p^j)."""
        j = int(j) % self.n
        if j == 0:
            return _ret(np.asarray(a, dtype=np.int64).copy(), a)
        return self.pow(a, self.p**j)

    def trace(self, a):
        """Absolute trace to GF(p); result is an index in [0, p)."""
        acc = np.asarray(a, dtype=np.int64)
        cur = acc
        for _ in range(1, self.n):
            cur = self.frobenius(cur, 1)
            acc = self.add(acc, cur)
        return _ret(np.asarray(acc), a)

    def check_divisor(self, s: int):
        if s < 1 or self.n % s:
            raise NotADivisor(f"{s} does not divide n={self.n}")

    def in_subfield(self, a, s: int):
        self.check_divisor(s)
        a_ = np.asarray(a, dtype=np.int64)
        out = np.asarray(self.frobenius(a_, s)) == a_
        return bool(out) if out.ndim == 0 else out

    def subfield_mask(self, s: int) -> np.ndarray:
        return self.in_subfield(self.elements(), s)

    def subfield_elements(self, s: int) -> np.ndarray:
        return np.flatnonzero(self.subfield_mask(s)).astype(np.int64)

    def minimal_subfield(self, a) -> int:
        """Smallest s | n with a in GF(p^s)."""
        for s in divisors(self.n):
            if self.in_subfield(a, s):
                return s
        return self.n

    def spot_check(self, rng: np.random.Generator, trials: int = 16) -> None:
        """Field axioms on random triples; raises AssertionError on failure."""
        x, y, z = rng.integers(0, self.q, size=(3, trials))
        assert np.array_equal(self.mul(x, self.mul(y, z)), self.mul(self.mul(x, y), z))
        assert np.array_equal(self.mul(x, self.add(y, z)), self.add(self.mul(x, y), self.mul(x, z)))
        assert np.array_equal(self.add(x, self.add(y, z)), self.add(self.add(x, y), z))
        nz = x[x != 0]
        if nz.size:
            assert np.all(self.mul(nz, self.inv(nz)) == 1)


def _ret(out, *inputs):
    """Return a Python int when every input was a scalar."""
    if all(np.ndim(i) == 0 for i in inputs):
        return int(out)
    return out


def make_field(p: int, n: int, modulus: Sequence[int] | None = None,
               logtable_cap: int = DEFAULT_LOGTABLE_CAP) -> FieldCtx:
    """Build GF(p^n), choosing the smallest irreducible modulus when none is given."""
    p, n = int(p), int(n)
    if not is_prime(p):
        raise CompositeCharacteristic(f"p={p} is not prime")
    if n < 1:
        raise ConfigError(f"extension degree must be >= 1, got {n}")
    if modulus is None:
        mod = smallest_irreducible(p, n)
    else:
        mod = [int(c) for c in modulus]
        if len(mod) != n + 1 or mod[-1] != 1 or any(not 0 <= c < p for c in mod):
            raise ConfigError(f"modulus must be monic of degree {n} with coefficients in [0,{p})")
        if not is_irreducible(mod, p):
            raise ReducibleModulus(f"{FieldSpec(p, n, tuple(mod)).modulus_str()} is reducible over GF({p})")
    return FieldCtx(FieldSpec(p, n, tuple(mod)), logtable_cap=logtable_cap)


def field_from_json(obj, logtable_cap: int = DEFAULT_LOGTABLE_CAP) -> FieldCtx:
    """A missing ``modulus`` selects the default irreducible."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    if isinstance(obj, dict) and "modulus" not in obj:
        try:
            return make_field(int(obj["p"]), int(obj["n"]), logtable_cap=logtable_cap)
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"malformed field spec: {obj!r}") from exc
    spec = FieldSpec.from_json(obj)
    return make_field(spec.p, spec.n, spec.modulus, logtable_cap=logtable_cap)


class FieldElement:
    """An element bound to its field; arithmetic operators check the fields agree."""

    __slots__ = ("ctx", "index")

    def __init__(self, ctx: FieldCtx, index: int):
        if not 0 <= index < ctx.q:
            raise ValueError(f"index {index} out of range for {ctx}")
        self.ctx = ctx
        self.index = int(index)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.ctx.spec != self.ctx.spec:
                raise MixedFields(f"{self.ctx} vs {other.ctx}")
            return other.index
        if isinstance(other, (int, np.integer)):
            return int(other)
        return NotImplemented

    def _wrap(self, i):
        return FieldElement(self.ctx, int(i))

    def __add__(self, other):
        return self._wrap(self.ctx.add(self.index, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap(self.ctx.sub(self.index, self._other(other)))

    def __rsub__(self, other):
        return self._wrap(self.ctx.sub(self._other(other), self.index))

    def __neg__(self):
        return self._wrap(self.ctx.neg(self.index))

    def __mul__(self, other):
        return self._wrap(self.ctx.mul(self.index, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._wrap(self.ctx.div(self.index, self._other(other)))

    def __pow__(self, e):
        return self._wrap(self.ctx.pow(self.index, int(e)))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return other.ctx.spec == self.ctx.spec and other.index == self.index
        if isinstance(other, (int, np.integer)):
            return self.index == int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx.spec, self.index))

    def __int__(self):
        return self.index

    __index__ = __int__

    def __repr__(self):
        return f"FieldElement({self.index} in GF({self.ctx.p}^{self.ctx.n}))"


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def inv(a: FieldElement) -> FieldElement:
    return FieldElement(a.ctx, a.ctx.inv(a.index))


def power(a: FieldElement, e: int) -> FieldElement:
    return a**e


def frobenius(x: FieldElement, j: int) -> FieldElement:
    return FieldElement(x.ctx, x.ctx.frobenius(x.index, j))


def in_subfield(x: FieldElement, s: int) -> bool:
    return x.ctx.in_subfield(x.index, s)
