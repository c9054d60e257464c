"""Matrix-product codes [C_1, ..., C_s] * A and tooling for the matrices A."""

from __future__ import annotations

import itertools
import re
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import linalg
from .codes import LinearCode
from .errors import ArgumentError, BudgetExceededError, FieldMismatchError, PreconditionError
from .galois import field_new
from .weights import DEFAULT_BUDGET, min_nonzero_weight, weight_distribution


def parse_entry(ctx, e):
    """An entry as written in a matrix: an element encoding, or ``a``, ``a^k``."""
    if isinstance(e, (int, np.integer)):
        if not 0 <= int(e) < ctx.q:
            raise ArgumentError(f"entry {e} out of range for {ctx}")
        return int(e)
    m = re.fullmatch(r"\s*a\s*(?:\^\s*(\d+))?\s*", str(e))
    if m:
        return int(ctx.exp[int(m.group(1) or 1) % (ctx.q - 1)])
    try:
        return parse_entry(ctx, int(str(e)))
    except ValueError:
        raise ArgumentError(f"cannot parse matrix entry {e!r}") from None


class MPMatrix:
    """An s x l matrix over ``ctx`` with cached structural flags."""

    def __init__(self, ctx, entries, name=None):
        rows = [[parse_entry(ctx, e) for e in row] for row in entries]
        if not rows or len({len(r) for r in rows}) != 1:
            raise ArgumentError("matrix rows must be nonempty and of equal length")
        self.ctx = ctx
        self.A = np.array(rows, dtype=np.int64)
        self.s, self.l = self.A.shape
        self.name = name
        self._nsc = None
        self._delta = None

    def __repr__(self):
        return f"MPMatrix({self.name or ''} {self.s}x{self.l} over {self.ctx})"

    def __eq__(self, other):
        return isinstance(other, MPMatrix) and other.ctx is self.ctx and np.array_equal(other.A, self.A)

    __hash__ = None

    def key(self):
        return tuple(int(x) for x in self.A.ravel())

    @property
    def full_rank(self):
        return linalg.rank(self.ctx, self.A) == self.s

    @property
    def square(self):
        return self.s == self.l

    def gram(self):
        return self.ctx.matmul(self.A, self.A.T)

    @property
    def orthogonal(self):
        return self.square and np.array_equal(self.gram(), np.eye(self.s, dtype=np.int64))

    @property
    def diagonal_gram(self):
        """A A^t is diagonal with nonzero diagonal (orthogonal up to row scaling)."""
        G = self.gram()
        return self.square and not (G - np.diag(np.diag(G))).any() and np.diag(G).all()

    def is_nsc(self):
        if self._nsc is None:
            self._nsc = is_nsc(self)
        return self._nsc

    def prefix_distances(self):
        if self._delta is None:
            self._delta = prefix_distances(self)
        return self._delta

    def inverse_transpose(self):
        return MPMatrix(self.ctx, linalg.inverse(self.ctx, self.A).T)

    def to_json(self):
        return {"p": self.ctx.p, "r": self.ctx.r, "rows": self.A.tolist()}

    @classmethod
    def from_json(cls, obj, name=None):
        return cls(field_new(int(obj["p"]), int(obj["r"])), obj["rows"], name=name)


def is_nsc(A):
    """Every t x t minor from the first t rows is nonsingular, for all t."""
    ctx, M = A.ctx, A.A
    for t in range(1, A.s + 1):
        for cols in itertools.combinations(range(A.l), t):
            if not linalg.det_nonzero(ctx, M[:t, cols]):
                return False
    return True


def prefix_distances(A):
    """Minimum distances of the codes spanned by the first i rows, i = 1..s."""
    out = []
    for i in range(1, A.s + 1):
        if linalg.rank(A.ctx, A.A[:i]) < i:
            raise ArgumentError(f"the first {i} rows of the matrix are dependent")
        out.append(min_nonzero_weight(weight_distribution(A.ctx, A.A[:i])))
    return tuple(out)


def _check_constituents(codes, A):
    if len(codes) != A.s:
        raise ArgumentError(f"{len(codes)} constituents for a matrix with {A.s} rows")
    n = codes[0].n
    for C in codes:
        if C.ctx is not A.ctx:
            raise FieldMismatchError(f"constituent over {C.ctx}, matrix over {A.ctx}")
        if C.n != n:
            raise ArgumentError("constituents have different lengths")
    return n


def _block_generator(codes, A):
    ctx = A.ctx
    blocks = []
    for i, C in enumerate(codes):
        G = C.basis
        if len(G):
            blocks.append(np.concatenate([ctx.mul(A.A[i, j], G) for j in range(A.l)], axis=1))
    n = codes[0].n * A.l
    return np.concatenate(blocks) if blocks else np.zeros((0, n), dtype=np.int64)


def _nested(codes):
    return all(codes[i].contains(codes[i + 1]) for i in range(len(codes) - 1))


def mp_code(codes, A, budget=None):
    """[C_1, ..., C_s] * A with designed distance min_i d_i delta_i."""
    _check_constituents(codes, A)
    if not A.full_rank:
        raise ArgumentError("matrix-product needs a full-rank matrix")
    delta = A.prefix_distances()
    dists = []
    exact = True
    for C in codes:
        if C.k == 0:
            dists.append(None)
            continue
        d, ex = C.min_weight(budget)
        dists.append(d)
        exact &= ex
    terms = [d * dl for d, dl in zip(dists, delta) if d is not None]
    M = LinearCode(A.ctx, _block_generator(codes, A), codes[0].n * A.l)
    if terms:
        M.designed_distance = min(terms)
        tight = exact and A.is_nsc() and _nested(codes) and all(d is not None for d in dists)
        M.designed_source = "matrix_product_exact" if tight else "matrix_product"
    return M


def mp_dual(codes, A):
    """The dual of [C_1, ..., C_s] * A as [C_1^perp, ..., C_s^perp] * (A^-1)^t."""
    _check_constituents(codes, A)
    if not A.square:
        raise ArgumentError("the dual construction needs a square matrix")
    B = A.inverse_transpose()
    duals = [C.dual() for C in codes]
    return LinearCode(A.ctx, _block_generator(duals, B), codes[0].n * A.l)


def _norm_one_vectors(ctx, l):
    vecs = np.array(list(itertools.product(range(ctx.q), repeat=l)), dtype=np.int64)
    norms = ctx.matmul(vecs, vecs.T).diagonal() if len(vecs) <= 4096 else None
    if norms is None:
        sq = ctx.mul(vecs, vecs)
        norms = sq[:, 0]
        for j in range(1, l):
            norms = ctx.add(norms, sq[:, j])
    return vecs[norms == 1]


def _extend_rows(dots, s, prefix):
    found = []

    def extend(chosen):
        if len(chosen) == s:
            found.append(tuple(chosen))
            return
        ok = np.ones(len(dots), dtype=bool)
        for i in chosen:
            ok &= dots[i] == 0
        for j in np.flatnonzero(ok):
            chosen.append(int(j))
            extend(chosen)
            chosen.pop()

    extend(list(prefix))
    return found


def _extend_block(args):
    dots, s, firsts = args
    return [m for f in firsts for m in _extend_rows(dots, s, [f])]


def enumerate_orthogonal(ctx, s, require_nsc=False, budget=None, jobs=1):
    """All s x s matrices with A A^t = I, in lexicographic order of their entries.

    Rows are chosen among the norm-one vectors, each orthogonal to the rows
    before it.  ``budget`` bounds that search space, (number of norm-one
    vectors)^s.  With ``jobs > 1`` the first rows are split among processes.
    """
    budget = DEFAULT_BUDGET if budget is None else budget
    cand = _norm_one_vectors(ctx, s)
    if len(cand) ** s > budget:
        raise BudgetExceededError(f"{len(cand)}^{s} row choices exceed the budget {budget}")
    dots = ctx.matmul(cand, cand.T)
    firsts = list(range(len(cand)))
    if jobs > 1 and len(firsts) > 1:
        blocks = [firsts[i::jobs] for i in range(jobs)]
        with ProcessPoolExecutor(jobs) as pool:
            found = [m for part in pool.map(_extend_block, [(dots, s, b) for b in blocks]) for m in part]
    else:
        found = _extend_block((dots, s, firsts))
    out = []
    for idx in found:
        M = MPMatrix(ctx, cand[list(idx)].tolist())
        if not require_nsc or M.is_nsc():
            out.append(M)
    out.sort(key=MPMatrix.key)
    return out


# Matrices used by the constructions, stored as printed.
NAMED = {
    "f2_triple": (2, 1, [[1, 0, 1], [1, 1, 0], [1, 1, 1]]),
    "f3_pair": (3, 1, [[1, 1], [2, 1]]),
    "gf4_nsc3_1": (2, 2, [[1, "a^2", "a^2"], ["a", 0, "a^2"], ["a", "a", 1]]),
    "gf4_nsc3_2": (2, 2, [[1, "a", "a"], ["a^2", 0, "a"], ["a^2", "a^2", 1]]),
    "gf4_nsc3_3": (2, 2, [["a", "a", 1], ["a", 0, "a^2"], [1, "a^2", "a^2"]]),
    "gf4_nsc3_4": (2, 2, [["a^2", "a^2", 1], ["a^2", 0, "a"], [1, "a", "a"]]),
    "gf4_nsc2_1": (2, 2, [["a^2", "a"], ["a", "a^2"]]),
    "gf4_nsc2_2": (2, 2, [["a", "a^2"], ["a^2", "a"]]),
    "gf5_nsc3": (5, 1, [[1, 1, 2], [2, 1, 1], [1, 2, 1]]),
    # printed example over GF(7); its second row has norm 4, so it is not orthogonal
    "gf7_printed3": (7, 1, [[2, 3, 3], [1, 3, 1], [3, 3, 2]]),
    # the same matrix with the second row scaled by 3 (same codes, orthogonal)
    "gf7_nsc3": (7, 1, [[2, 3, 3], [3, 2, 3], [3, 3, 2]]),
    # no 2 x 2 NSC orthogonal matrix exists over GF(5); this one has A A^t = 2I
    "gf5_scaled2": (5, 1, [[1, 1], [1, 4]]),
    "gf7_nsc2": (7, 1, [[2, 2], [2, 5]]),
}


def named_matrix(name):
    try:
        p, r, rows = NAMED[name]
    except KeyError:
        raise ArgumentError(f"unknown matrix {name!r}") from None
    return MPMatrix(field_new(p, r), rows, name=name)


def _require_dual_containing(C, step):
    if not C.is_dual_containing():
        raise PreconditionError(f"{step}: constituent {C!r} does not contain its dual", step=step)


def mp_f2_triple(C1, C2, budget=None):
    """[C1, C1, C2] * A over GF(2) with the fixed non-orthogonal 3 x 3 matrix."""
    A = named_matrix("f2_triple")
    for C in (C1, C2):
        if C.ctx is not A.ctx:
            raise FieldMismatchError("the binary triple construction needs codes over GF(2)")
        _require_dual_containing(C, "f2_triple")
    return mp_code([C1, C1, C2], A, budget)


def mp_f3_pair(C1, C2, budget=None):
    """[C1, C2] * A over GF(3) with A = [[1, 1], [2, 1]]."""
    A = named_matrix("f3_pair")
    for C in (C1, C2):
        if C.ctx is not A.ctx:
            raise FieldMismatchError("the ternary pair construction needs codes over GF(3)")
        _require_dual_containing(C, "f3_pair")
    return mp_code([C1, C2], A, budget)
