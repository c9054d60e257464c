"""Evaluation codes: generalized Reed-Muller, hyperbolic and affine variety codes.

A code is the span of ``ev(X^a)`` for ``a`` in a :class:`DefiningSet`.  GRID
domains evaluate at all of GF(q)^m with exponents reduced below ``q``; TORUS
domains evaluate at the points whose i-th coordinate is an ``N_i``-th root of
unity, with exponents taken modulo ``N_i``.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .codes import LinearCode
from .errors import ArgumentError
from .galois import field_new

log = logging.getLogger(__name__)

GRID = "grid"
TORUS = "torus"


@dataclass(frozen=True)
class EvaluationDomain:
    ctx: object
    m: int
    kind: str = GRID
    N: tuple = None

    def __post_init__(self):
        if self.m < 1:
            raise ArgumentError("need at least one variable")
        if self.kind == GRID:
            object.__setattr__(self, "N", (self.ctx.q,) * self.m)
        elif self.kind == TORUS:
            N = tuple(int(x) for x in self.N)
            if len(N) != self.m:
                raise ArgumentError(f"expected {self.m} orders, got {N}")
            for Ni in N:
                if Ni < 1 or (self.ctx.q - 1) % Ni:
                    raise ArgumentError(f"{Ni} does not divide {self.ctx.q - 1}")
            object.__setattr__(self, "N", N)
        else:
            raise ArgumentError(f"unknown domain kind {self.kind!r}")

    @classmethod
    def grid(cls, ctx, m):
        return cls(ctx, m, GRID)

    @classmethod
    def torus(cls, ctx, N):
        N = (N,) if isinstance(N, int) else tuple(N)
        return cls(ctx, len(N), TORUS, N)

    @property
    def box(self):
        """Exclusive upper bounds of the exponent box."""
        return self.N

    @property
    def n(self):
        return math.prod(self.N)

    @property
    def points(self):
        """``(n, m)`` array of point coordinates, lexicographic order."""
        idx = np.indices(self.N).reshape(self.m, -1).T
        if self.kind == GRID:
            return self.ctx.elements()[idx]
        step = np.array([(self.ctx.q - 1) // Ni for Ni in self.N])
        return self.ctx.exp[idx * step]

    def monomial_rows(self, exps):
        """Evaluation vectors of the monomials with exponent tuples ``exps``."""
        exps = np.asarray(exps, dtype=np.int64).reshape(-1, self.m)
        ctx = self.ctx
        if self.kind == TORUS:
            idx = np.indices(self.N).reshape(self.m, -1)
            step = np.array([(ctx.q - 1) // Ni for Ni in self.N])
            e = ((exps * step) @ idx) % (ctx.q - 1)
            return ctx.exp[e]
        pts = self.points
        rows = np.ones((len(exps), self.n), dtype=np.int64)
        for i in range(self.m):
            rows = ctx.mul(rows, ctx.power(pts[None, :, i], exps[:, i, None]))
        return rows

    def orbit_step(self, a, ps):
        """Image of exponent tuple ``a`` under multiplication by ``ps`` = p^s."""
        if self.kind == TORUS:
            return tuple((ai * ps) % Ni for ai, Ni in zip(a, self.N))
        qm1 = self.ctx.q - 1
        return tuple(0 if ai == 0 else (ai * ps - 1) % qm1 + 1 for ai in a)

    def to_json(self):
        out = {"p": self.ctx.p, "r": self.ctx.r, "m": self.m, "kind": self.kind}
        if self.kind == TORUS:
            out["N"] = list(self.N)
        return out

    @classmethod
    def from_json(cls, obj):
        ctx = field_new(int(obj["p"]), int(obj["r"]))
        kind = obj.get("kind", TORUS if "N" in obj else GRID)
        if kind == TORUS:
            return cls.torus(ctx, obj["N"])
        return cls.grid(ctx, int(obj["m"]))


def reduce_grid_exponent(e, q):
    """Reduce an exponent under X^q = X to the range 0..q-1."""
    return e if e < q else (e - 1) % (q - 1) + 1


@dataclass(frozen=True)
class DefiningSet:
    """A set of exponent tuples on an evaluation domain (sorted, deduplicated)."""

    domain: EvaluationDomain
    elements: tuple = ()
    s: int = None
    meta: dict = field(default=None, compare=False)

    def __post_init__(self):
        m = self.domain.m
        els = set()
        for a in self.elements:
            a = (int(a),) if isinstance(a, (int, np.integer)) else tuple(int(x) for x in a)
            if len(a) != m:
                raise ArgumentError(f"exponent {a} does not have {m} coordinates")
            for ai, Ni in zip(a, self.domain.box):
                if not 0 <= ai < Ni:
                    raise ArgumentError(f"exponent {a} is outside the box {self.domain.box}")
            els.add(a)
        object.__setattr__(self, "elements", tuple(sorted(els)))

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, a):
        return tuple(a) in set(self.elements)

    def with_elements(self, elements):
        return DefiningSet(self.domain, tuple(elements), self.s)

    def to_json(self):
        out = self.domain.to_json()
        if self.s is not None:
            out["s"] = self.s
        out["elements"] = [list(a) for a in self.elements]
        return out

    @classmethod
    def from_json(cls, obj):
        dom = EvaluationDomain.from_json(obj)
        return cls(dom, tuple(obj.get("elements", ())), obj.get("s"))


def evaluate(delta):
    """The evaluation code spanned by ``ev(X^a)``, ``a`` in ``delta``."""
    dom = delta.domain
    if len(delta) == 0:
        return LinearCode.zero(dom.ctx, dom.n)
    rows = dom.monomial_rows(delta.elements)
    return LinearCode(dom.ctx, rows, dom.n)


def delta_perp(delta):
    """Torus dual set: the box minus the negatives of ``delta``."""
    dom = delta.domain
    if dom.kind != TORUS:
        raise ArgumentError("delta_perp is defined for torus domains")
    neg = {tuple((-ai) % Ni for ai, Ni in zip(a, dom.N)) for a in delta}
    rest = [a for a in itertools.product(*(range(Ni) for Ni in dom.N)) if a not in neg]
    return delta.with_elements(rest)


def grid_dual_set(delta):
    """Grid dual set of a decreasing set: the complement of its image under a -> q-1-a."""
    dom = delta.domain
    if dom.kind != GRID:
        raise ArgumentError("grid_dual_set is defined for grid domains")
    q = dom.ctx.q
    flipped = {tuple(q - 1 - ai for ai in a) for a in delta}
    rest = [a for a in itertools.product(range(q), repeat=dom.m) if a not in flipped]
    return delta.with_elements(rest)


def is_decreasing(delta):
    """Closed under lowering any coordinate."""
    els = set(delta.elements)
    for a in els:
        for i, ai in enumerate(a):
            if ai and a[:i] + (ai - 1,) + a[i + 1 :] not in els:
                return False
    return True


# -- Reed-Muller ------------------------------------------------------------
def _check_order(r, m, q, strict=False):
    top = m * (q - 1)
    if not 0 <= r <= top or (strict and r == top):
        raise ArgumentError(f"order {r} outside 0..{top - strict} for m={m}, q={q}")


def rm_defining_set(r, m, ctx):
    _check_order(r, m, ctx.q)
    dom = EvaluationDomain.grid(ctx, m)
    els = [a for a in itertools.product(range(ctx.q), repeat=m) if sum(a) <= r]
    return DefiningSet(dom, tuple(els))


def rm_dimension(r, m, q):
    _check_order(r, m, q)
    total = 0
    for j in range(m + 1):
        if r - j * q < 0:
            break
        total += (-1) ** j * math.comb(m, j) * math.comb(m + r - j * q, r - j * q)
    return total


def rm_distance(r, m, q):
    _check_order(r, m, q)
    a, b = divmod((q - 1) * m - r, q - 1)
    return (b + 1) * q**a


def rm_dual_order(r, m, q):
    _check_order(r, m, q, strict=True)
    return m * (q - 1) - (r + 1)


def rm_dual_dimension(r, m, q):
    """Dimension of the dual of RM(r, m) by the closed alternating sum."""
    _check_order(r, m, q, strict=True)
    total = 0
    for j in range(m + 1):
        low = m * (q - 1) - j * q - (r + 1)
        if low < 0:
            break
        total += (-1) ** j * math.comb(m, j) * math.comb((m - j) * q - (r + 1), low)
    return total


def reed_muller_code(r, m, ctx):
    C = evaluate(rm_defining_set(r, m, ctx))
    C.designed_distance = rm_distance(r, m, ctx.q)
    C.designed_source = "reed_muller"
    return C


# -- hyperbolic -------------------------------------------------------------
def n_alpha(alpha, q):
    """Number of reduced monomials not divisible by X^alpha."""
    return q ** len(alpha) - math.prod(q - a for a in alpha)


def n_alpha_values(m, q):
    return sorted({n_alpha(a, q) for a in itertools.product(range(q), repeat=m)})


def normalize_t(s, m, q):
    """The value ``t = n_alpha`` with Hyp(s, m) = Hyp(t, m).

    Hyp(s, m) only depends on which ``n_alpha`` are at most ``s``, so the
    representative is the largest ``n_alpha <= s``.
    """
    if not 0 <= s <= q**m:
        raise ArgumentError(f"t={s} outside 0..{q**m}")
    t = max(v for v in n_alpha_values(m, q) if v <= s)
    if t != s:
        log.info("hyperbolic parameter %d normalized to %d", s, t)
    return t


def hyp_defining_sets(t, m, ctx):
    """``(Xi_set, Hyp_set)`` for the hyperbolic code Hyp(t, m) and its dual."""
    q = ctx.q
    t = normalize_t(t, m, q)
    dom = EvaluationDomain.grid(ctx, m)
    box = list(itertools.product(range(q), repeat=m))
    xi = [a for a in box if math.prod(ai + 1 for ai in a) < q**m - t]
    hyp = [a for a in box if math.prod(q - ai for ai in a) >= q**m - t]
    return DefiningSet(dom, tuple(xi)), DefiningSet(dom, tuple(hyp))


def hyperbolic_code(t, m, ctx):
    t = normalize_t(t, m, ctx.q)
    C = evaluate(hyp_defining_sets(t, m, ctx)[1])
    C.designed_distance = ctx.q**m - t
    C.designed_source = "hyperbolic"
    return C


def hyp_self_orthogonal_threshold(m, q):
    """Least ``T`` with Hyp(t, m) containing its dual exactly when ``t >= T``."""
    if m < 1:
        raise ArgumentError("m must be positive")
    if m % 2 == 0:
        return q**m - q ** (m // 2)
    if q % 2:
        return q**m - q ** ((m - 1) // 2) * (q + 1) // 2
    return q**m - q ** ((m - 1) // 2) * (q // 2 + 1)


def affine_variety_code(delta):
    return evaluate(delta)
