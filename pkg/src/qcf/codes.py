"""Linear codes over GF(q).

A :class:`LinearCode` may be given by generators, by parity checks, or by
both.  Whatever is missing is derived lazily, and the dual of a code is
linked back to it so neither side is computed twice.
"""

from __future__ import annotations

import logging
import os

import numpy as np

from . import linalg
from .errors import ArgumentError, BudgetExceededError, FieldMismatchError, UndefinedDistanceError
from .galois import field_new
from .weights import DEFAULT_BUDGET, macwilliams, min_nonzero_weight, weight_distribution

log = logging.getLogger(__name__)


def default_budget():
    env = os.environ.get("QCF_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


class LinearCode:
    """Row space of a generator matrix over ``ctx``.

    ``designed_distance`` is an optional proven lower bound on the minimum
    distance, and ``designed_source`` says where it came from.  Both are
    used when exact enumeration is out of budget.
    """

    def __init__(self, ctx, generators, n=None, designed_distance=None, designed_source=None):
        G = np.asarray(generators, dtype=np.int64)
        if G.ndim == 1:
            G = G.reshape(-1, n if n is not None else G.size) if G.size else G.reshape(0, n or 0)
        if n is not None and G.shape[1] != n:
            raise ArgumentError(f"generators have length {G.shape[1]}, expected {n}")
        if G.size and (G.min() < 0 or G.max() >= ctx.q):
            raise ArgumentError(f"generator entries out of range for {ctx}")
        self.ctx = ctx
        self.n = G.shape[1]
        self._gens = G
        self._rref = None
        self._dual = None
        self._dist = None
        self.designed_distance = designed_distance
        self.designed_source = designed_source

    @classmethod
    def from_parity(cls, ctx, H, n=None, **kw):
        """The code ``{x : H x^t = 0}``."""
        D = cls(ctx, H, n)
        C = cls.__new__(cls)
        C.ctx, C.n = ctx, D.n
        C._gens = None
        C._rref = None
        C._dist = None
        C.designed_distance = kw.get("designed_distance")
        C.designed_source = kw.get("designed_source")
        C._dual, D._dual = D, C
        return C

    @classmethod
    def zero(cls, ctx, n):
        return cls(ctx, np.zeros((0, n), dtype=np.int64))

    @classmethod
    def full(cls, ctx, n):
        return cls(ctx, np.eye(n, dtype=np.int64), designed_distance=1, designed_source="trivial")

    # -- structure ------------------------------------------------------
    def _echelon(self):
        if self._rref is None:
            if self._gens is None:
                H = self._dual.basis
                self._gens = linalg.nullspace_from_rref(self.ctx, H, self._dual.pivots, self.n)
            self._rref = linalg.rref(self.ctx, self._gens)
        return self._rref

    @property
    def basis(self):
        """Reduced row echelon basis (canonical for the row space)."""
        return self._echelon()[0]

    @property
    def pivots(self):
        return self._echelon()[1]

    @property
    def generator_matrix(self):
        return self.basis

    @property
    def k(self):
        if self._rref is None and self._gens is None:
            return self.n - self._dual.k
        return len(self.pivots)

    def dual(self):
        if self._dual is None:
            H = linalg.nullspace_from_rref(self.ctx, self.basis, self.pivots, self.n)
            D = LinearCode(self.ctx, H, self.n)
            D._rref = linalg.rref(self.ctx, H) if len(H) else (H, [])
            D._dual = self
            self._dual = D
        return self._dual

    def _compatible(self, other):
        if other.ctx is not self.ctx:
            raise FieldMismatchError(f"codes over {self.ctx} and {other.ctx}")
        if other.n != self.n:
            raise ArgumentError(f"codes of lengths {self.n} and {other.n}")

    def contains(self, other):
        """True iff every codeword of ``other`` lies in this code."""
        self._compatible(other)
        V = other._gens if other._gens is not None else other.basis
        if len(V) == 0:
            return True
        if self._dual is not None and (self._rref is None or self._dual.k < self.k):
            H = self._dual._gens if self._dual._gens is not None else self._dual.basis
            if len(H) == 0:
                return True
            return not self.ctx.matmul(V, H.T).any()
        return bool(linalg.in_rowspace(self.ctx, self.basis, self.pivots, V).all())

    def is_dual_containing(self):
        """Whether the dual of this code is contained in it."""
        return self.contains(self.dual())

    def __eq__(self, other):
        if not isinstance(other, LinearCode):
            return NotImplemented
        if other.ctx is not self.ctx or other.n != self.n or other.k != self.k:
            return False
        return self.contains(other)

    __hash__ = None

    def __repr__(self):
        return f"LinearCode[{self.n},{self.k}] over {self.ctx}"

    # -- distances -----------------------------------------------------
    def weight_distribution(self, budget=None, use_dual=True, jobs=1):
        """Exact ``[A_0, ..., A_n]``, directly or through the dual and MacWilliams."""
        if self._dist is not None:
            return self._dist
        budget = default_budget() if budget is None else budget
        q = self.ctx.q
        if q**self.k <= budget:
            self._dist = weight_distribution(self.ctx, self.basis, budget, jobs)
        elif use_dual and q ** (self.n - self.k) <= budget:
            D = self.dual()
            self._dist = macwilliams(D.weight_distribution(budget, use_dual=False, jobs=jobs), q)
        else:
            raise BudgetExceededError(
                f"{self!r}: neither {q}^{self.k} nor {q}^{self.n - self.k} fits the budget {budget}"
            )
        return self._dist

    def min_weight(self, budget=None, use_dual=True, jobs=1):
        """``(d, exact)``.  Falls back to the designed bound (or 1) when out of budget."""
        if self.k == 0:
            raise UndefinedDistanceError("the zero code has no minimum distance")
        try:
            return min_nonzero_weight(self.weight_distribution(budget, use_dual, jobs)), True
        except BudgetExceededError:
            return (self.designed_distance or 1), False

    def distance_bound(self, budget=None, jobs=1):
        return self.min_weight(budget, jobs=jobs)


def min_weight_difference(C, D, budget=None, jobs=1):
    """Minimum weight over codewords of ``C`` outside ``D`` (``D`` a subcode).

    Returns ``(w, exact)``.  Out of budget, ``w`` is the bound on ``C``.
    """
    C._compatible(D)
    if not C.contains(D):
        raise ArgumentError("the second code is not a subcode of the first")
    if D.k == C.k:
        raise ArgumentError("the set difference is empty")
    if D.k == 0:
        return C.min_weight(budget, jobs=jobs)
    try:
        a = C.weight_distribution(budget, jobs=jobs)
        b = D.weight_distribution(budget, jobs=jobs)
    except BudgetExceededError:
        return C.min_weight(budget, jobs=jobs)
    for w in range(1, C.n + 1):
        if a[w] > b[w]:
            return w, True
    raise AssertionError("weight distributions inconsistent with D < C")


def subfield_subcode(C, s):
    """``C`` intersected with GF(p^s)^n, as a code over GF(p^s)."""
    ctx = C.ctx
    small = field_new(ctx.p, s)
    if s == ctx.r:
        return C
    if ctx.r % s:
        raise ArgumentError(f"{s} does not divide {ctx.r}")
    n = C.n
    H = C.dual().basis
    if len(H) == 0:
        return LinearCode.full(small, n)
    # unknown c_j = sum_v y_{j,v} h^v, h the primitive element of GF(p^s)
    hv = ctx.from_subfield(small._powers, s)  # embedded polynomial basis of GF(p^s)
    coeff = ctx.mul(H[:, :, None], hv[None, None, :])  # (n-k, n, s)
    d = ctx.digits(coeff)  # (n-k, n, s, r)
    system = d.transpose(0, 3, 1, 2).reshape(len(H) * ctx.r, n * s)
    base = field_new(ctx.p, 1)
    Y = linalg.nullspace(base, system, n * s)
    if len(Y) == 0:
        return LinearCode.zero(small, n)
    words = small.from_digits(Y.reshape(len(Y), n, s))
    R, _ = linalg.rref(small, words)
    return LinearCode(small, R, n)


def trace_code(C, s):
    """GF(p^s)-span of the componentwise traces of the codewords of ``C``."""
    ctx = C.ctx
    small = field_new(ctx.p, s)
    if s == ctx.r:
        return C
    if ctx.r % s:
        raise ArgumentError(f"{s} does not divide {ctx.r}")
    G = C.basis
    if len(G) == 0:
        return LinearCode.zero(small, C.n)
    scal = ctx.exp[np.arange(ctx.r // s)]  # 1, g, ..., g^(r/s-1): a GF(p^s)-basis
    rows = ctx.mul(scal[:, None, None], G[None, :, :]).reshape(-1, C.n)
    T = ctx.to_subfield(ctx.trace_values(rows, s), s)
    R, _ = linalg.rref(small, T)
    return LinearCode(small, R, C.n)


