"""Cyclotomic sets, trace bases and subfield-subcodes of evaluation codes.

For a defining set ``Delta`` that is a union of cyclotomic sets, the
subfield-subcode of ``E_Delta`` is spanned by the evaluated trace bases of
the cyclotomic sets contained in ``Delta``, and its dual by those of the
sets meeting the dual defining set.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass

import numpy as np

from .codes import LinearCode
from .errors import ArgumentError
from .evaluation import GRID, TORUS, EvaluationDomain, delta_perp, grid_dual_set, is_decreasing
from .galois import field_new

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class CyclotomicCoset:
    rep: tuple
    elements: tuple  # rep, p^s * rep, p^2s * rep, ...

    @property
    def size(self):
        return len(self.elements)

    def __contains__(self, a):
        return tuple(a) in self.elements


@dataclass(frozen=True)
class CosetPartition:
    cosets: tuple
    index: dict

    def coset_of(self, a):
        return self.cosets[self.index[tuple(a)]]

    def __iter__(self):
        return iter(self.cosets)

    def __len__(self):
        return len(self.cosets)


def _orbit(dom, a, ps):
    orbit = [a]
    b = dom.orbit_step(a, ps)
    while b != a:
        orbit.append(b)
        b = dom.orbit_step(b, ps)
    return orbit


def domain_cosets(dom, s):
    """Partition of the exponent box of ``dom`` into orbits under x -> p^s x."""
    if dom.ctx.r % s:
        raise ArgumentError(f"{s} does not divide {dom.ctx.r}")
    ps = dom.ctx.p**s
    index, cosets = {}, []
    for a in itertools.product(*(range(b) for b in dom.box)):
        if a in index:
            continue
        orbit = _orbit(dom, a, ps)
        for b in orbit:
            index[b] = len(cosets)
        cosets.append(CyclotomicCoset(min(orbit), tuple(_orbit(dom, min(orbit), ps))))
    return CosetPartition(tuple(cosets), index)


def cosets(N, p, s, r=None):
    """Cyclotomic sets of Z_N1 x ... x Z_Nm under multiplication by p^s.

    ``r`` (defaulting to the least valid degree) fixes the ambient field GF(p^r).
    """
    N = (N,) if isinstance(N, int) else tuple(N)
    if r is None:
        r = s
        while any((p**r - 1) % Ni for Ni in N):
            r += s
            if r > 8:
                raise ArgumentError(f"no supported GF({p}^r) has all of {N} dividing q-1")
    dom = EvaluationDomain.torus(field_new(p, r), N)
    return domain_cosets(dom, s)


def is_closed(delta, s):
    part = domain_cosets(delta.domain, s)
    els = set(delta.elements)
    return all(set(part.coset_of(a).elements) <= els for a in els)


def close_orbits(delta, s):
    part = domain_cosets(delta.domain, s)
    els = set()
    for a in delta:
        els.update(part.coset_of(a).elements)
    return delta.with_elements(els)


def _checked(delta, s, close):
    if is_closed(delta, s):
        return delta
    if not close:
        raise ArgumentError(
            "defining set is not a union of cyclotomic sets (use close_orbits / --close-orbits)"
        )
    closed = close_orbits(delta, s)
    log.warning("closed defining set under x -> p^%d x: %d -> %d elements", s, len(delta), len(closed))
    return closed


def beta(ctx, s, size):
    """Primitive element of GF(p^(s*size)) inside ``ctx``."""
    return int(ctx.exp[(ctx.q - 1) // (ctx.p ** (s * size) - 1)])


def trace_basis(coset, dom, s):
    """The trace-basis polynomials of ``coset`` as ``{exponent: coefficient}`` dicts.

    Element ``l`` is sum_j (beta^l X^a)^(p^(s j)) with a the representative.
    """
    ctx = dom.ctx
    size = coset.size
    b = beta(ctx, s, size)
    out = []
    for l in range(size):
        poly = {}
        for j, e in enumerate(coset.elements):
            coef = int(ctx.power(b, l * ctx.p ** (s * j)))
            poly[e] = int(ctx.add(poly.get(e, 0), coef))
        out.append(poly)
    return out


def evaluate_polys(dom, polys):
    """Evaluation vectors of polynomials given as ``{exponent: coefficient}`` dicts."""
    ctx = dom.ctx
    rows = np.zeros((len(polys), dom.n), dtype=np.int64)
    for i, poly in enumerate(polys):
        exps = list(poly)
        mono = dom.monomial_rows(exps)
        coefs = np.array([poly[e] for e in exps], dtype=np.int64)
        terms = ctx.mul(coefs[:, None], mono)
        acc = terms[0]
        for t in terms[1:]:
            acc = ctx.add(acc, t)
        rows[i] = acc
    return rows


def _code_from_cosets(dom, s, chosen):
    small = field_new(dom.ctx.p, s)
    if not chosen:
        return LinearCode.zero(small, dom.n)
    polys = [poly for c in chosen for poly in trace_basis(c, dom, s)]
    rows = evaluate_polys(dom, polys)
    return LinearCode(small, dom.ctx.to_subfield(rows, s), dom.n)


def subfield_code_from_delta(delta, s, close=False):
    """E^sigma: the subfield-subcode over GF(p^s) of the evaluation code of ``delta``."""
    delta = _checked(delta, s, close)
    part = domain_cosets(delta.domain, s)
    els = set(delta.elements)
    chosen = [c for c in part if set(c.elements) <= els]
    return _code_from_cosets(delta.domain, s, chosen)


def dual_defining_set(delta):
    """Defining set of the dual evaluation code, when it has a monomial one."""
    if delta.domain.kind == TORUS:
        return delta_perp(delta)
    if not is_decreasing(delta):
        raise ArgumentError("grid defining set is not decreasing; its dual has no monomial basis")
    return grid_dual_set(delta)


def dual_subfield_code(delta, s, close=False):
    """C^sigma, the dual of E^sigma, from the trace bases of sets meeting the dual set."""
    delta = _checked(delta, s, close)
    dom = delta.domain
    if dom.kind == GRID and not is_decreasing(delta):
        return subfield_code_from_delta(delta, s).dual()
    perp = set(dual_defining_set(delta).elements)
    part = domain_cosets(dom, s)
    chosen = [c for c in part if perp.intersection(c.elements)]
    return _code_from_cosets(dom, s, chosen)


def dual_subfield_dimension(delta, s, close=False):
    delta = _checked(delta, s, close)
    perp = set(dual_defining_set(delta).elements)
    return sum(c.size for c in domain_cosets(delta.domain, s) if perp.intersection(c.elements))


def css_containment(delta, s, close=False):
    """Coset criterion for E^sigma being contained in C^sigma."""
    delta = _checked(delta, s, close)
    dom = delta.domain
    if dom.kind == GRID and not is_decreasing(delta):
        E = subfield_code_from_delta(delta, s)
        return E.dual().contains(E)
    perp = set(dual_defining_set(delta).elements)
    els = set(delta.elements)
    part = domain_cosets(dom, s)
    return all(perp.intersection(c.elements) for c in part if set(c.elements) <= els)
