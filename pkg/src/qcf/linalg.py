"""Dense Gaussian elimination over a :class:`~qcf.galois.FieldCtx`.

Matrices are 2-d int64 arrays of element encodings.
"""

import numba
import numpy as np


@numba.njit(cache=True)
def _rref_prime(A, p, inv):
    rows, cols = A.shape
    pivots = np.empty(min(rows, cols), dtype=np.int64)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        i = r
        while i < rows and A[i, c] == 0:
            i += 1
        if i == rows:
            continue
        if i != r:
            for j in range(c, cols):
                A[r, j], A[i, j] = A[i, j], A[r, j]
        f = inv[A[r, c]]
        if f != 1:
            for j in range(c, cols):
                A[r, j] = (A[r, j] * f) % p
        for i in range(rows):
            if i != r and A[i, c] != 0:
                f = p - A[i, c]
                for j in range(c, cols):
                    if A[r, j] != 0:
                        A[i, j] = (A[i, j] + f * A[r, j]) % p
        pivots[r] = c
        r += 1
    return r, pivots


def _as_matrix(M, n=None):
    A = np.array(M, dtype=np.int64, copy=True)
    if A.ndim == 1:
        A = A.reshape(1, -1) if A.size or n is None else A.reshape(0, n)
    if A.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    return A


def rref(ctx, M):
    """Reduced row echelon form.

    Returns ``(R, pivots)`` where ``R`` holds only the nonzero rows and
    ``pivots[i]`` is the pivot column of row ``i``.
    """
    A = _as_matrix(M)
    if ctx.r == 1:
        inv = np.array([0] + [pow(x, -1, ctx.p) for x in range(1, ctx.p)], dtype=np.int64)
        A %= ctx.p
        r, piv = _rref_prime(A, ctx.p, inv)
        return A[:r], [int(c) for c in piv[:r]]
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            A[[r, i]] = A[[i, r]]
        if A[r, c] != 1:
            A[r, c:] = ctx.mul(A[r, c:], ctx.inv(A[r, c]))
        col = A[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            # only columns from c on can change: the pivot row is zero before c
            A[hit, c:] = ctx.sub(A[hit, c:], ctx.mul(col[hit, None], A[r, c:][None, :]))
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(ctx, M):
    return len(rref(ctx, M)[1])


def nullspace_from_rref(ctx, R, pivots, n):
    """Basis of ``{x : R x^t = 0}`` given a reduced echelon ``R`` with ``n`` columns."""
    free = [c for c in range(n) if c not in set(pivots)]
    N = np.zeros((len(free), n), dtype=np.int64)
    if not free:
        return N
    N[np.arange(len(free)), free] = 1
    if pivots:
        N[:, pivots] = ctx.neg(R[:, free].T)
    return N


def nullspace(ctx, M, n=None):
    A = _as_matrix(M, n)
    R, piv = rref(ctx, A)
    return nullspace_from_rref(ctx, R, piv, A.shape[1])


def residual(ctx, R, pivots, V):
    """Reduce the rows of ``V`` against the echelon basis ``R``.

    A row lies in the row space exactly when its residual is zero.
    """
    V = _as_matrix(V)
    if not pivots or V.shape[0] == 0:
        return V
    return ctx.sub(V, ctx.matmul(V[:, pivots], R))


def in_rowspace(ctx, R, pivots, V):
    """Boolean per row of ``V``: is it in the row space of ``R``?"""
    return ~residual(ctx, R, pivots, V).any(axis=1)


def inverse(ctx, M):
    A = _as_matrix(M)
    s = A.shape[0]
    if A.shape != (s, s):
        raise ValueError("matrix is not square")
    aug = np.concatenate([A, np.eye(s, dtype=np.int64)], axis=1)
    R, piv = rref(ctx, aug)
    if piv != list(range(s)):
        raise ZeroDivisionError("matrix is singular")
    return R[:, s:]


def det_nonzero(ctx, M):
    A = _as_matrix(M)
    return A.shape[0] == A.shape[1] and rank(ctx, A) == A.shape[0]
