"""Finite fields GF(p^r) for p in {2, 3, 5, 7} and r <= 8.

Elements are plain integers: the coefficient vector ``(c_0, ..., c_{r-1})`` of
the polynomial representative, read as base-``p`` digits, i.e.
``value = c_0 + c_1 p + ... + c_{r-1} p^(r-1)``.  Every :class:`FieldCtx`
offers vectorised arithmetic on numpy integer arrays holding such values;
:class:`FieldElem` wraps a single value for scalar work.

The defining polynomial is always the Conway polynomial, so the class of
``X`` is a primitive element and subfields embed compatibly.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError, ConfigurationError, FieldMismatchError

# Conway polynomials, coefficients from X^0 up to the leading X^r.
CONWAY = {
    2: {
        1: (1, 1),
        2: (1, 1, 1),
        3: (1, 1, 0, 1),
        4: (1, 1, 0, 0, 1),
        5: (1, 0, 1, 0, 0, 1),
        6: (1, 1, 0, 1, 1, 0, 1),
        7: (1, 1, 0, 0, 0, 0, 0, 1),
        8: (1, 0, 1, 1, 1, 0, 0, 0, 1),
    },
    3: {
        1: (1, 1),
        2: (2, 2, 1),
        3: (1, 2, 0, 1),
        4: (2, 0, 0, 2, 1),
        5: (1, 2, 0, 0, 0, 1),
        6: (2, 2, 1, 0, 2, 0, 1),
        7: (1, 0, 2, 0, 0, 0, 0, 1),
        8: (2, 2, 2, 0, 1, 2, 0, 0, 1),
    },
    5: {
        1: (3, 1),
        2: (2, 4, 1),
        3: (3, 3, 0, 1),
        4: (2, 4, 4, 0, 1),
        5: (3, 4, 0, 0, 0, 1),
        6: (2, 0, 1, 4, 1, 0, 1),
        7: (3, 3, 0, 0, 0, 0, 0, 1),
        8: (2, 4, 3, 0, 1, 0, 0, 0, 1),
    },
    7: {
        1: (4, 1),
        2: (3, 6, 1),
        3: (4, 0, 6, 1),
        4: (3, 4, 5, 0, 1),
        5: (4, 1, 0, 0, 0, 1),
        6: (3, 6, 4, 5, 1, 0, 1),
        7: (4, 6, 0, 0, 0, 0, 0, 1),
        8: (3, 2, 6, 4, 0, 0, 0, 0, 1),
    },
}

# Full q x q addition tables are kept for odd-characteristic extension fields
# up to this size; larger fields add digit by digit.
_ADD_TABLE_MAX_Q = 2048


@functools.cache
def field_new(p, r):
    """Return the (cached, shared) context for GF(p^r)."""
    try:
        modulus = CONWAY[p][r]
    except KeyError:
        raise ConfigurationError(
            f"GF({p}^{r}) is not supported: need p in {{2,3,5,7}} and 1 <= r <= 8"
        ) from None
    return FieldCtx(p, r, modulus)


def _companion(p, modulus):
    # matrix of multiplication by X acting on coefficient column vectors
    r = len(modulus) - 1
    T = np.zeros((r, r), dtype=np.int64)
    for i in range(1, r):
        T[i, i - 1] = 1
    for i in range(r):
        T[i, r - 1] = (-modulus[i]) % p
    return T


class FieldCtx:
    """Arithmetic context for GF(p^r).

    Immutable once built; safe to share between threads and processes.
    """

    def __init__(self, p, r, modulus):
        self.p = p
        self.r = r
        self.q = p**r
        self.modulus = tuple(modulus)
        self._powers = p ** np.arange(r, dtype=np.int64)
        self._build_tables()

    def _build_tables(self):
        p, r, q = self.p, self.r, self.q
        order = q - 1
        T = _companion(p, self.modulus)
        digits = np.zeros((order, r), dtype=np.int64)
        digits[0, 0] = 1
        filled, step = 1, T.copy()
        while filled < order:
            take = min(filled, order - filled)
            digits[filled : filled + take] = (digits[:take] @ step.T) % p
            filled += take
            step = (step @ step) % p
        values = digits @ self._powers
        log = np.full(q, -1, dtype=np.int64)
        log[values] = np.arange(order)
        if (log[1:] < 0).any() or log[0] != -1:
            raise ConfigurationError(f"modulus of GF({p}^{r}) is not primitive")
        self.exp = np.concatenate([values, values]).astype(np.int64)
        self.log = log
        self._add_table = None
        if p != 2 and r > 1 and q <= _ADD_TABLE_MAX_Q:
            a = np.arange(q, dtype=np.int64)
            self._add_table = self._digit_add(a[:, None], a[None, :])

    def __repr__(self):
        return f"GF({self.p}^{self.r})"

    def __reduce__(self):
        return (field_new, (self.p, self.r))

    # -- conversion -----------------------------------------------------
    def elem(self, value):
        """Wrap an integer (or an element of this field) as :class:`FieldElem`."""
        if isinstance(value, FieldElem):
            if value.ctx is not self:
                raise FieldMismatchError(f"element of {value.ctx} used in {self}")
            return value
        value = int(value)
        if not 0 <= value < self.q:
            raise ArgumentError(f"{value} is not an element encoding of {self}")
        return FieldElem(self, value)

    def from_int(self, n):
        """The image of the integer ``n`` under Z -> GF(p) -> GF(p^r)."""
        return FieldElem(self, int(n) % self.p)

    @property
    def zero(self):
        return FieldElem(self, 0)

    @property
    def one(self):
        return FieldElem(self, 1)

    @property
    def primitive(self):
        """The class of X, a primitive element."""
        return FieldElem(self, int(self.exp[1]))

    def digits(self, a):
        a = np.asarray(a, dtype=np.int64)
        return (a[..., None] // self._powers) % self.p

    def from_digits(self, d):
        return np.asarray(d, dtype=np.int64) @ self._powers

    def elements(self):
        """All elements ordered 0, 1, g, g^2, ..., g^(q-2)."""
        return np.concatenate([[0], self.exp[: self.q - 1]]).astype(np.int64)

    # -- vectorised arithmetic -----------------------------------------
    def _digit_add(self, a, b):
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        for w in self._powers:
            out += (((a // w) % self.p + (b // w) % self.p) % self.p) * w
        return out

    def add(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        if self.r == 1:
            return (a + b) % self.p
        if self._add_table is not None:
            return self._add_table[a, b]
        return self._digit_add(a, b)

    def neg(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return a.copy()
        if self.r == 1:
            return (-a) % self.p
        d = self.digits(a)
        return self.from_digits((-d) % self.p)

    def sub(self, a, b):
        if self.p == 2:
            return self.add(a, b)
        if self.r == 1:
            return (np.asarray(a, dtype=np.int64) - b) % self.p
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.r == 1:
            return (a * b) % self.p
        out = self.exp[self.log[a] + self.log[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if (a == 0).any():
            raise ZeroDivisionError(f"inverse of 0 in {self}")
        return self.exp[(self.q - 1 - self.log[a]) % (self.q - 1)]

    def power(self, a, e):
        """Elementwise ``a**e`` with the convention 0**0 = 1."""
        a = np.asarray(a, dtype=np.int64)
        e = np.asarray(e, dtype=np.int64)
        out = self.exp[(self.log[a] * e) % (self.q - 1)]
        out = np.where(a == 0, np.where(e == 0, 1, 0), out)
        return out

    def matmul(self, A, B):
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        if self.r == 1:
            if A.shape[1] * (self.p - 1) ** 2 < 2**52:
                # float matmul goes through BLAS and stays exact at this size
                prod = A.astype(np.float64) @ B.astype(np.float64)
                return np.rint(prod).astype(np.int64) % self.p
            return (A @ B) % self.p
        # expand to GF(p): each entry of A becomes its r x r multiplication matrix
        m, k = A.shape
        n = B.shape[1]
        r = self.r
        Bd = self.digits(B).transpose(0, 2, 1).reshape(k * r, n).astype(np.float64)
        out = np.empty((m, n), dtype=np.int64)
        step = max(1, 2_000_000 // max(1, k * r * r))
        for lo in range(0, m, step):
            blk = A[lo : lo + step]
            Mx = self._mul_matrices(blk)  # (b, k, r_out, r_in)
            Ap = Mx.transpose(0, 2, 1, 3).reshape(blk.shape[0] * r, k * r)
            prod = np.rint(Ap.astype(np.float64) @ Bd).astype(np.int64) % self.p
            out[lo : lo + step] = self.from_digits(
                prod.reshape(blk.shape[0], r, n).transpose(0, 2, 1)
            )
        return out

    def _mul_matrices(self, a):
        # column t of the matrix for x holds the digits of x * X^t
        basis = self._powers
        prods = self.mul(np.asarray(a)[..., None], basis)
        return self.digits(prods).swapaxes(-1, -2)

    def frobenius(self, a, times=1):
        """Apply x -> x^p ``times`` times."""
        return self.power(a, pow(self.p, times, self.q - 1) or (self.q - 1))

    def trace_values(self, a, s):
        """Componentwise trace from GF(p^r) onto GF(p^s), still encoded in GF(p^r)."""
        _check_divides(s, self.r)
        a = np.asarray(a, dtype=np.int64)
        acc = a.copy()
        cur = a
        for _ in range(self.r // s - 1):
            cur = self.frobenius(cur, s)
            acc = self.add(acc, cur)
        return acc

    def in_subfield(self, a, s):
        _check_divides(s, self.r)
        a = np.asarray(a, dtype=np.int64)
        return (a == 0) | (self.log[a] % self._subfield_step(s) == 0)

    def _subfield_step(self, s):
        return (self.q - 1) // (self.p**s - 1)

    def to_subfield(self, a, s):
        """Re-encode elements of the subfield GF(p^s) in that field's own context."""
        small = field_new(self.p, s)
        a = np.asarray(a, dtype=np.int64)
        if not self.in_subfield(a, s).all():
            raise ArgumentError(f"values do not all lie in GF({self.p}^{s})")
        out = small.exp[np.maximum(self.log[a], 0) // self._subfield_step(s)]
        return np.where(a == 0, 0, out)

    def from_subfield(self, b, s):
        """Embed values of GF(p^s) (encoded there) into this field."""
        small = field_new(self.p, s)
        _check_divides(s, self.r)
        b = np.asarray(b, dtype=np.int64)
        out = self.exp[np.maximum(small.log[b], 0) * self._subfield_step(s)]
        return np.where(b == 0, 0, out)


def _check_divides(s, r):
    if s < 1 or r % s:
        raise ArgumentError(f"subfield degree {s} does not divide {r}")


@dataclass(frozen=True)
class FieldElem:
    """A single element of a finite field."""

    ctx: FieldCtx
    value: int

    @property
    def coeffs(self):
        return tuple(int(c) for c in self.ctx.digits(self.value))

    def _other(self, other):
        if isinstance(other, FieldElem):
            if other.ctx is not self.ctx:
                raise FieldMismatchError(f"cannot combine {self.ctx} with {other.ctx}")
            return other.value
        if isinstance(other, (int, np.integer)):
            return int(other) % self.ctx.p
        return NotImplemented

    def _wrap(self, v):
        return FieldElem(self.ctx, int(v))

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.ctx.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.ctx.sub(self.value, o))

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.ctx.sub(o, self.value))

    def __neg__(self):
        return self._wrap(self.ctx.neg(self.value))

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.ctx.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.ctx.mul(self.value, self.ctx.inv(o)))

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        return self._wrap(self.ctx.power(self.value, e))

    def inverse(self):
        return self._wrap(self.ctx.inv(self.value))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        if self.value == 0:
            return f"{self.ctx}(0)"
        return f"{self.ctx}(g^{int(self.ctx.log[self.value])})"


def trace(x, s):
    """Trace of ``x`` from its field GF(p^r) down to GF(p^s).

    The result is returned as an element of the same context; it is fixed by
    x -> x^(p^s).
    """
    return FieldElem(x.ctx, int(x.ctx.trace_values(x.value, s)))


def element_of_order(ctx, N):
    """The element g^((q-1)/N) of multiplicative order exactly ``N``."""
    if N < 1 or (ctx.q - 1) % N:
        raise ArgumentError(f"{N} does not divide {ctx.q - 1}")
    return FieldElem(ctx, int(ctx.exp[(ctx.q - 1) // N]))


def subfield_test(x, s):
    """Return ``x`` as an element of GF(p^s) if it lies there, else None."""
    ctx = x.ctx
    if not bool(ctx.in_subfield(x.value, s)):
        return None
    small = field_new(ctx.p, s)
    return FieldElem(small, int(ctx.to_subfield(x.value, s)))


def subfield_embed(y, ctx):
    """Embed an element of a subfield into ``ctx``."""
    if y.ctx.p != ctx.p:
        raise FieldMismatchError(f"{y.ctx} is not a subfield of {ctx}")
    return FieldElem(ctx, int(ctx.from_subfield(y.value, y.ctx.r)))
