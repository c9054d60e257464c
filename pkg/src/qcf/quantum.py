"""Stabilizer code parameters from classical codes.

Every result is a :class:`QuantumParams` whose ``provenance`` lists the
construction steps with the numbers they consumed, so :func:`replay` can
recompute the parameters from the record alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import ArgumentError, PreconditionError
from .matprod import mp_code


@dataclass(frozen=True)
class QuantumParams:
    q: int
    n: int
    k: int
    d_bound: int
    d_exact: bool = False
    purity: int | None = None
    provenance: tuple = field(default=(), compare=False)

    def __post_init__(self):
        if not 0 <= self.k <= self.n:
            raise ArgumentError(f"dimension {self.k} outside 0..{self.n}")
        if not 1 <= self.d_bound <= self.n:
            raise ArgumentError(f"distance bound {self.d_bound} outside 1..{self.n}")
        if not self.provenance:
            raise ArgumentError("quantum parameters need a provenance chain")
        object.__setattr__(self, "provenance", tuple(self.provenance))

    def __str__(self):
        rel = "" if self.d_exact else ">="
        return f"[[{self.n},{self.k},{rel}{self.d_bound}]]_{self.q}"

    def to_json(self):
        return {
            "q": self.q,
            "n": self.n,
            "k": self.k,
            "d_bound": self.d_bound,
            "d_exact": self.d_exact,
            "purity": self.purity,
            "provenance": [dict(s) for s in self.provenance],
        }

    @classmethod
    def from_json(cls, obj):
        return cls(
            int(obj["q"]),
            int(obj["n"]),
            int(obj["k"]),
            int(obj["d_bound"]),
            bool(obj["d_exact"]),
            obj.get("purity"),
            tuple(obj["provenance"]),
        )

    CSV_HEADER = ("n", "k", "d", "field")

    def csv_row(self):
        return (self.n, self.k, self.d_bound, f"GF({self.q})")


def _code_info(C, budget):
    if C.k == 0:
        return {"n": C.n, "k": 0, "d": None, "exact": True}
    d, exact = C.min_weight(budget)
    info = {"n": C.n, "k": C.k, "d": int(d), "exact": bool(exact)}
    if not exact:
        info["designed_source"] = C.designed_source
    return info


def _difference(C, D, budget):
    """Minimum weight of ``C`` outside its subcode ``D`` as ``(w, exact)``, None if empty."""
    from .codes import min_weight_difference

    if C.k == D.k:
        return None
    w, exact = min_weight_difference(C, D, budget)
    return int(w), bool(exact)


def _check_compatible(*codes):
    ctx, n = codes[0].ctx, codes[0].n
    for C in codes[1:]:
        if C.ctx is not ctx or C.n != n:
            raise ArgumentError("codes must share field and length")


# -- parameter arithmetic (shared by the constructions and by replay) -------
def _css_from_numbers(q, n, k1, k2, d1, d2, diffs):
    """``diffs`` holds ``(w, exact)`` for C1 minus C2^perp and C2 minus C1^perp."""
    k = k1 + k2 - n
    purity = min(d for d in (d1, d2) if d is not None)
    live = [w for w in diffs if w is not None]
    if not live:  # k = 0: the distance is the purity
        return k, purity, True, purity
    d = min(w for w, _ in live)
    exact = all(e for _, e in live)
    if not exact:
        d = max(d, purity)
    return k, d, exact, purity


def steane_bound(q, d1, d2):
    """``min(d1, ceil((q+1) d2 / q))`` in integers."""
    return min(d1, ((q + 1) * d2 + q - 1) // q)


# -- constructions ----------------------------------------------------------
def css_pair(C1, C2, budget=None):
    """Two-code CSS: needs C2^perp inside C1."""
    _check_compatible(C1, C2)
    if not C1.contains(C2.dual()):
        raise PreconditionError("css: the dual of the second code is not inside the first", step="css")
    q, n = C1.ctx.q, C1.n
    i1, i2 = _code_info(C1, budget), _code_info(C2, budget)
    diffs = [_difference(C1, C2.dual(), budget), _difference(C2, C1.dual(), budget)]
    k, d, exact, purity = _css_from_numbers(q, n, C1.k, C2.k, i1["d"], i2["d"], diffs)
    step = {
        "rule": "css",
        "q": q,
        "codes": [i1, i2],
        "differences": [list(x) if x else None for x in diffs],
        "result": [n, k, d],
    }
    return QuantumParams(q, n, k, d, exact, purity, (step,))


def css_self(C, budget=None):
    """CSS from one dual-containing code: [[n, 2k - n, >= d]], pure to d."""
    if not C.is_dual_containing():
        raise PreconditionError("css_self: the code does not contain its dual", step="css_self")
    q, n = C.ctx.q, C.n
    info = _code_info(C, budget)
    diff = _difference(C, C.dual(), budget)
    k, d, exact, purity = _css_from_numbers(q, n, C.k, C.k, info["d"], info["d"], [diff, diff])
    step = {
        "rule": "css_self",
        "q": q,
        "codes": [info],
        "differences": [list(diff) if diff else None],
        "result": [n, k, d],
    }
    return QuantumParams(q, n, k, d, exact, purity, (step,))


def steane(C, Cp, budget=None):
    """Steane enlargement of C^perp < C < Cp with dim Cp >= dim C + 2."""
    _check_compatible(C, Cp)
    if not C.is_dual_containing():
        raise PreconditionError("steane: C does not contain its dual", step="steane")
    if not Cp.contains(C):
        raise PreconditionError("steane: C is not contained in the larger code", step="steane")
    if Cp.k < C.k + 2:
        raise PreconditionError(f"steane: dim C' = {Cp.k} < dim C + 2 = {C.k + 2}", step="steane")
    q, n = C.ctx.q, C.n
    dp = _difference(C, Cp.dual(), budget)
    dpp = _difference(Cp, Cp.dual(), budget)
    k = C.k + Cp.k - n
    d = steane_bound(q, dp[0], dpp[0])
    step = {
        "rule": "steane",
        "q": q,
        "codes": [_code_info(C, budget), _code_info(Cp, budget)],
        "differences": [list(dp), list(dpp)],
        "result": [n, k, d],
    }
    return QuantumParams(q, n, k, d, False, None, (step,))


def steane_from_numbers(q, n, k, kp, d1, d2, prov=()):
    """Steane arithmetic alone, for rows whose classical inputs are given as numbers."""
    if kp < k + 2:
        raise PreconditionError(f"steane: dim C' = {kp} < dim C + 2 = {k + 2}", step="steane")
    kq = k + kp - n
    d = steane_bound(q, d1, d2)
    step = {
        "rule": "steane",
        "q": q,
        "codes": [{"n": n, "k": k, "d": None, "exact": False}, {"n": n, "k": kp, "d": None, "exact": False}],
        "differences": [[d1, False], [d2, False]],
        "result": [n, kq, d],
    }
    return QuantumParams(q, n, kq, d, False, None, tuple(prov) + (step,))


def extend(Q):
    """[[n, k, d]] -> [[n+1, k, >= d]]."""
    step = {
        "rule": "extend",
        "q": Q.q,
        "assumption": "length grows by one, dimension and distance bound kept",
        "result": [Q.n + 1, Q.k, Q.d_bound],
    }
    return QuantumParams(Q.q, Q.n + 1, Q.k, Q.d_bound, False, None, Q.provenance + (step,))


def subcode(Q, k_new):
    """[[n, k, d]] -> [[n, k_new, >= d]] for 0 <= k_new < k."""
    if not 0 <= k_new < Q.k:
        raise ArgumentError(f"subcode dimension {k_new} must lie in 0..{Q.k - 1}")
    step = {"rule": "subcode", "q": Q.q, "k_new": k_new, "result": [Q.n, k_new, Q.d_bound]}
    return QuantumParams(Q.q, Q.n, k_new, Q.d_bound, False, None, Q.provenance + (step,))


# -- Gilbert-Varshamov ------------------------------------------------------
def gv_guarantees(n, k, d, q):
    """Finite quantum GV inequality: an [[n, k, d]]_q code exists when

        (q^(n-k+2) - 1) / (q^2 - 1) > sum_{i=1}^{d-1} (q^2 - 1)^(i-1) C(n, i)

    (for n = k mod 2).  Evaluated in integers.
    """
    lhs = q ** (n - k + 2) - 1
    rhs = sum((q * q - 1) ** (i - 1) * math.comb(n, i) for i in range(1, d))
    return lhs > (q * q - 1) * rhs


def exceeds_gv(Q):
    """Whether ``Q`` lies outside the GV existence region.

    When n and k differ in parity the inequality is tested at k - 1.
    Codes with d < 2 never exceed it.
    """
    if Q.d_bound < 2:
        return False
    k = Q.k if (Q.n - Q.k) % 2 == 0 else Q.k - 1
    if k < 0:
        return False
    return not gv_guarantees(Q.n, k, Q.d_bound, Q.q)


# -- matrix-product pipelines -----------------------------------------------
def _mp_step(codes, A):
    return {
        "rule": "matrix_product",
        "q": A.ctx.q,
        "matrix": A.name or A.A.tolist(),
        "constituents": [[C.n, C.k] for C in codes],
    }


def _checked_mp(codes, A, budget, step):
    M = mp_code(codes, A, budget)
    if not M.is_dual_containing():
        raise PreconditionError(f"{step}: the matrix-product code does not contain its dual", step=step)
    return M


def quantum_from_mp(codes, A, budget=None, larger=None):
    """CSS (or, with ``larger = (codes', A')``, Steane) from [C_1..C_s] * A.

    The dual containment of every matrix-product code used is checked.
    """
    M = _checked_mp(codes, A, budget, "matrix_product")
    pre = (_mp_step(codes, A),)
    if larger is None:
        Q = css_self(M, budget)
    else:
        codes2, A2 = larger
        Mp = mp_code(codes2, A2, budget)
        pre += (_mp_step(codes2, A2),)
        Q = steane(M, Mp, budget)
    return QuantumParams(Q.q, Q.n, Q.k, Q.d_bound, Q.d_exact, Q.purity, pre + Q.provenance)


# -- replay -----------------------------------------------------------------
def replay(provenance):
    """Recompute parameters from a provenance chain."""
    Q = None
    for step in provenance:
        rule = step["rule"]
        if rule == "matrix_product":
            continue
        q = step["q"]
        if rule in ("css", "css_self"):
            infos = step["codes"] * (2 if rule == "css_self" else 1)
            diffs = [tuple(x) if x else None for x in step["differences"]]
            diffs = diffs * (2 if rule == "css_self" else 1)
            n = infos[0]["n"]
            k, d, exact, purity = _css_from_numbers(
                q, n, infos[0]["k"], infos[1]["k"], infos[0]["d"], infos[1]["d"], diffs
            )
            Q = QuantumParams(q, n, k, d, exact, purity, provenance)
        elif rule == "steane":
            c, cp = step["codes"]
            (d1, _), (d2, _) = step["differences"]
            n = c["n"]
            Q = QuantumParams(q, n, c["k"] + cp["k"] - n, steane_bound(q, d1, d2), False, None, provenance)
        elif rule == "extend":
            Q = QuantumParams(q, Q.n + 1, Q.k, Q.d_bound, False, None, provenance)
        elif rule == "subcode":
            Q = QuantumParams(q, Q.n, step["k_new"], Q.d_bound, False, None, provenance)
        else:
            raise ArgumentError(f"unknown provenance rule {rule!r}")
    if Q is None:
        raise ArgumentError("provenance has no parameter step")
    return Q
