import itertools
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

import oracles
from qcf import evaluation as ev
from qcf.codes import LinearCode
from qcf.errors import ArgumentError
from qcf.evaluation import DefiningSet, EvaluationDomain
from qcf.galois import field_new

SMALL_RM = [(q, m) for q, m in [(2, 1), (2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (3, 1), (3, 2), (3, 3), (4, 1), (4, 2), (4, 3)]]
FIELD = {2: (2, 1), 3: (3, 1), 4: (2, 2), 5: (5, 1), 7: (7, 1), 9: (3, 2)}


def _rm_dim_by_count(r, m, q):
    return sum(1 for a in itertools.product(range(q), repeat=m) if sum(a) <= r)


@pytest.mark.parametrize("q,m", SMALL_RM)
def test_rm_dimension_formula(q, m):
    ctx = field_new(*FIELD[q])
    for r in range(m * (q - 1) + 1):
        C = ev.reed_muller_code(r, m, ctx)
        assert C.k == ev.rm_dimension(r, m, q) == _rm_dim_by_count(r, m, q)


@pytest.mark.parametrize("q,m", [(2, 3), (2, 4), (3, 2), (4, 2), (3, 3)])
def test_rm_distance_formula(q, m):
    ctx = field_new(*FIELD[q])
    for r in range(m * (q - 1) + 1):
        C = ev.reed_muller_code(r, m, ctx)
        d, exact = C.min_weight()
        if exact:
            assert d == ev.rm_distance(r, m, q)


@pytest.mark.parametrize("q,m", [(2, 3), (2, 4), (3, 2), (3, 3), (4, 2), (5, 2), (7, 2), (9, 2), (3, 4)])
def test_rm_duality(q, m):
    ctx = field_new(*FIELD[q])
    for r in range(m * (q - 1)):
        C = ev.reed_muller_code(r, m, ctx)
        D = ev.reed_muller_code(ev.rm_dual_order(r, m, q), m, ctx)
        assert C.dual() == D
        assert D.k == ev.rm_dual_dimension(r, m, q)


def test_rm_order_range():
    with pytest.raises(ArgumentError):
        ev.reed_muller_code(3, 1, field_new(3, 1))


def test_rm_hand_values():
    ctx = field_new(2, 1)
    C = ev.reed_muller_code(2, 4, ctx)
    assert (C.n, C.k, C.min_weight()) == (16, 11, (4, True))
    assert ev.rm_distance(1, 2, 3) == 6


def test_rm_against_textbook_rank():
    ctx = field_new(3, 1)
    F = oracles.SlowField(3, 1)
    C = ev.reed_muller_code(2, 2, ctx)
    assert oracles.rank(F, C.basis.tolist()) == 6
    assert oracles.min_distance(F, C.basis.tolist()) == 3


# -- hyperbolic -------------------------------------------------------------
def test_normalize_t():
    # n_alpha for q = 3, m = 2 over all alpha in {0,1,2}^2
    assert ev.n_alpha_values(2, 3) == [0, 3, 5, 6, 7, 8]
    assert ev.normalize_t(4, 2, 3) == 3
    assert ev.normalize_t(7, 2, 3) == 7
    with pytest.raises(ArgumentError):
        ev.normalize_t(10, 2, 3)


HYP_CASES = [(q, m) for q in (2, 3, 4, 5) for m in (1, 2)] + [(2, 3), (3, 3)]


@pytest.mark.parametrize("q,m", HYP_CASES)
def test_hyperbolic_distance(q, m):
    ctx = field_new(*FIELD[q])
    for t in ev.n_alpha_values(m, q):
        if t == q**m:
            continue
        C = ev.hyperbolic_code(t, m, ctx)
        if C.k:
            d, exact = C.min_weight()
            if exact or q**m <= 16:
                assert exact and d == q**m - t


@pytest.mark.parametrize("q,m", HYP_CASES)
def test_hyperbolic_self_orthogonality_threshold(q, m):
    ctx = field_new(*FIELD[q])
    T = ev.hyp_self_orthogonal_threshold(m, q)
    for t in ev.n_alpha_values(m, q):
        if t == q**m:
            continue
        assert ev.hyperbolic_code(t, m, ctx).is_dual_containing() == (t >= T)


# -- affine variety codes ---------------------------------------------------
TORI = [((2, 2), (3,)), ((2, 4), (15,)), ((2, 4), (5, 3)), ((3, 2), (8,)), ((3, 2), (4, 2)), ((5, 1), (4, 2)), ((7, 1), (6,))]


@given(st.sampled_from(TORI), st.data())
def test_torus_duality(torus, data):
    (p, r), N = torus
    dom = EvaluationDomain.torus(field_new(p, r), N)
    box = list(itertools.product(*(range(n) for n in N)))
    chosen = data.draw(st.lists(st.sampled_from(box), unique=True, max_size=len(box)))
    delta = DefiningSet(dom, tuple(chosen))
    C = ev.affine_variety_code(delta)
    assert C.k == len(delta)
    assert C.dual() == ev.evaluate(ev.delta_perp(delta))


@given(st.sampled_from([(2, 2), (3, 2), (2, 3), (3, 3)]), st.data())
def test_grid_dual_of_decreasing_set(qm, data):
    q, m = qm
    dom = EvaluationDomain.grid(field_new(*FIELD[q]), m)
    box = list(itertools.product(range(q), repeat=m))
    seeds = data.draw(st.lists(st.sampled_from(box), max_size=3))
    down = {a for a in box if any(all(x <= y for x, y in zip(a, s)) for s in seeds)}
    delta = DefiningSet(dom, tuple(down))
    assert ev.is_decreasing(delta)
    assert ev.evaluate(delta).dual() == ev.evaluate(ev.grid_dual_set(delta))


def test_monomials_are_independent_on_the_grid():
    dom = EvaluationDomain.grid(field_new(2, 2), 2)
    rows = dom.monomial_rows(list(itertools.product(range(4), repeat=2)))
    assert LinearCode(dom.ctx, rows).k == 16


def test_torus_points_are_roots_of_unity():
    ctx = field_new(3, 2)
    dom = EvaluationDomain.torus(ctx, [4, 2])
    pts = dom.points
    assert len({tuple(x) for x in pts.tolist()}) == 8
    assert (ctx.power(pts[:, 0], 4) == 1).all() and (ctx.power(pts[:, 1], 2) == 1).all()


def test_domain_validation():
    ctx = field_new(2, 2)
    with pytest.raises(ArgumentError):
        EvaluationDomain.torus(ctx, [2])
    with pytest.raises(ArgumentError):
        DefiningSet(EvaluationDomain.torus(ctx, [3]), ((3,),))
    with pytest.raises(ArgumentError):
        DefiningSet(EvaluationDomain.grid(ctx, 2), ((1,),))


def test_reduce_grid_exponent():
    assert ev.reduce_grid_exponent(9, 9) == 1
    assert ev.reduce_grid_exponent(8, 9) == 8
    assert ev.reduce_grid_exponent(17, 9) == 1
    # X^e and X^(reduced e) agree at every point
    ctx = field_new(3, 2)
    pts = ctx.elements()
    for e in range(9, 30):
        assert np.array_equal(ctx.power(pts, e), ctx.power(pts, ev.reduce_grid_exponent(e, 9)))


def test_defining_set_json_roundtrip():
    dom = EvaluationDomain.torus(field_new(2, 4), [5, 3])
    d = DefiningSet(dom, ((1, 2), (0, 0)), 1)
    assert DefiningSet.from_json(d.to_json()) == d
    assert math.prod(dom.N) == dom.n == 15
