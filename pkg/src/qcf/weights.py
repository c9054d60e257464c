"""Exhaustive weight enumeration and the MacWilliams transform.

Codewords are enumerated through a meet-in-the-middle split of the message:
all combinations of the last rows form a table, and each projective choice
of the leading rows (first nonzero coefficient equal to one) is added to the
whole table at once.  Characteristic two uses bit-sliced uint64 planes with
popcount; odd characteristic keeps one uint8 per base-field digit.
"""

from concurrent.futures import ProcessPoolExecutor

import numba
import numpy as np

from .errors import BudgetExceededError

DEFAULT_BUDGET = 2**24
_TABLE_BYTES = 1 << 24


class _Packed:
    """Per-field codeword representation with XOR-like add and weight."""

    def __init__(self, ctx, n):
        self.ctx, self.n = ctx, n
        self.binary = ctx.p == 2
        self.words = (n + 63) // 64

    def encode(self, vecs):
        vecs = np.asarray(vecs, dtype=np.int64)
        d = self.ctx.digits(vecs)  # (N, n, r)
        if self.binary:
            pad = self.words * 64 - self.n
            bits = np.pad(d, ((0, 0), (0, pad), (0, 0))).astype(np.uint8)
            planes = np.packbits(bits.transpose(0, 2, 1), axis=2, bitorder="little")
            return np.ascontiguousarray(planes).view(np.uint64)  # (N, r, W)
        return d.reshape(len(vecs), self.n * self.ctx.r).astype(np.uint8)

    def add(self, a, b):
        if self.binary:
            return a ^ b
        s = a + b
        s[s >= self.ctx.p] -= np.uint8(self.ctx.p)
        return s

    def weights(self, block):
        if self.binary:
            support = np.bitwise_or.reduce(block, axis=1)
            return np.bitwise_count(support).sum(axis=1, dtype=np.int64)
        if self.ctx.r == 1:
            return np.count_nonzero(block, axis=1)
        return block.reshape(len(block), self.n, self.ctx.r).any(axis=2).sum(axis=1)

    def row_bytes(self):
        return self.words * 8 * self.ctx.r if self.binary else self.n * self.ctx.r


def _span_table(ctx, packed, rows):
    """All F_q-combinations of ``rows`` in packed form (first row varies slowest)."""
    table = packed.encode(np.zeros((1, packed.n), dtype=np.int64))
    scalars = np.arange(ctx.q, dtype=np.int64)
    for g in rows[::-1]:
        mults = packed.encode(ctx.mul(scalars[:, None], g[None, :]))
        table = np.concatenate([packed.add(table, mults[c][None]) for c in range(ctx.q)])
    return table


def _projective_heads(ctx, packed, rows):
    """Packed words of all combinations of ``rows`` whose first nonzero coefficient is 1."""
    out = []
    for lead in range(len(rows)):
        head = packed.encode(rows[lead][None, :])
        tail = _span_table(ctx, packed, rows[lead + 1 :])
        out.append(packed.add(tail, head))
    if not out:
        return packed.encode(np.zeros((0, packed.n), dtype=np.int64))
    return np.concatenate(out)


@numba.njit(cache=True)
def _count_prime(heads, table, p, n):
    counts = np.zeros(n + 1, dtype=np.int64)
    for h in range(heads.shape[0]):
        hd = heads[h]
        for t in range(table.shape[0]):
            row = table[t]
            w = 0
            for pos in range(n):
                s = row[pos] + hd[pos]
                w += (s != 0) & (s != p)
            counts[w] += 1
    return counts


@numba.njit(cache=True)
def _count_odd(heads, table, p, n, r):
    counts = np.zeros(n + 1, dtype=np.int64)
    for h in range(heads.shape[0]):
        for t in range(table.shape[0]):
            w = 0
            for pos in range(n):
                nz = False
                for u in range(r):
                    s = table[t, pos * r + u] + heads[h, pos * r + u]
                    nz |= (s != 0) & (s != p)
                w += nz
            counts[w] += 1
    return counts


def _count_block(args):
    packed, heads, table, n = args
    if not packed.binary and packed.ctx.r == 1:
        return _count_prime(heads, table, packed.ctx.p, n)
    if not packed.binary:
        return _count_odd(heads, table, packed.ctx.p, n, packed.ctx.r)
    counts = np.zeros(n + 1, dtype=np.int64)
    for h in heads:
        counts += np.bincount(packed.weights(packed.add(table, h[None])), minlength=n + 1)
    return counts


def weight_distribution(ctx, G, budget=DEFAULT_BUDGET, jobs=1):
    """Weight distribution ``[A_0, ..., A_n]`` of the row space of ``G``.

    ``G`` must have full row rank.  Raises :class:`BudgetExceededError` if
    the code has more than ``budget`` codewords.
    """
    G = np.asarray(G, dtype=np.int64)
    k, n = G.shape
    if ctx.q**k > budget:
        raise BudgetExceededError(f"{ctx.q}^{k} codewords exceed the budget {budget}")
    packed = _Packed(ctx, n)
    k2 = 0
    while k2 < k and ctx.q ** (k2 + 1) * packed.row_bytes() <= _TABLE_BYTES:
        k2 += 1
    k1 = k - k2
    table = _span_table(ctx, packed, G[k1:])
    counts = np.bincount(packed.weights(table), minlength=n + 1).astype(np.int64)
    heads = _projective_heads(ctx, packed, G[:k1])
    if len(heads):
        if jobs > 1 and len(heads) > 1:
            blocks = np.array_split(heads, jobs)
            with ProcessPoolExecutor(jobs) as pool:
                parts = pool.map(_count_block, [(packed, b, table, n) for b in blocks])
                proj = sum(parts)
        else:
            proj = _count_block((packed, heads, table, n))
        counts += (ctx.q - 1) * proj
    return [int(c) for c in counts]


def naive_weight_distribution(ctx, G):
    """Reference enumerator: every message, one at a time."""
    import itertools

    G = np.asarray(G, dtype=np.int64)
    k, n = G.shape
    counts = [0] * (n + 1)
    for msg in itertools.product(range(ctx.q), repeat=k):
        word = np.zeros(n, dtype=np.int64)
        for c, g in zip(msg, G):
            word = ctx.add(word, ctx.mul(c, g))
        counts[int(np.count_nonzero(word))] += 1
    return counts


def krawtchouk_rows(n, q, xs):
    """Yield ``[K_j(x) for x in xs]`` for j = 0, 1, ..., n."""
    prev = [0] * len(xs)
    cur = [1] * len(xs)
    yield cur
    for j in range(n):
        nxt = []
        for i, x in enumerate(xs):
            num = ((q - 1) * (n - j) + j - q * x) * cur[i] - (q - 1) * (n - j + 1) * prev[i]
            val, rem = divmod(num, j + 1)
            assert rem == 0
            nxt.append(val)
        prev, cur = cur, nxt
        yield cur


def macwilliams(dual_dist, q):
    """Weight distribution of C from that of its dual, in exact integers."""
    n = len(dual_dist) - 1
    size = sum(dual_dist)
    support = [(x, b) for x, b in enumerate(dual_dist) if b]
    xs = [x for x, _ in support]
    out = []
    for row in krawtchouk_rows(n, q, xs):
        total = sum(b * kv for (_, b), kv in zip(support, row))
        val, rem = divmod(total, size)
        assert rem == 0
        out.append(val)
    return out


def min_nonzero_weight(dist):
    for w in range(1, len(dist)):
        if dist[w]:
            return w
    return None
