import numpy as np
import pytest

from conftest import SYMBOLIC_PAIRS
from ysyslab.cluster.frame import build_frame, domain_points
from ysyslab.errors import BudgetExceeded, ParityError
from ysyslab.poly import Poly
from ysyslab.semifield import PosRational, random_assignment, rat_equal
from ysyslab.wedge import Atom, F_ATOM, FactorList, WedgeSum, Y_ATOM, factor_numeric, factor_value, \
    factorize_one_plus_y, factorize_y, validate_factorizations, verify_duality, wedge_blocks, \
    wedge_context, wedge_vanishing

Y0 = Atom(Y_ATOM, 0)


def _f_atom(ctx, p, u):
    return Atom(F_ATOM, ctx.family.atom(p, u))


def test_wedge_sum_antisymmetry():
    a, b = Atom(Y_ATOM, 0), Atom(F_ATOM, 0)
    w = WedgeSum()
    w.add(FactorList({a: 1}), FactorList({b: 1}))
    w.add(FactorList({b: 1}), FactorList({a: 1}))
    assert w.is_zero()
    w.add(FactorList({a: 2}), FactorList({a: 1, b: 3}))
    assert w.support() == {(a, b): 6}


def test_factorizations_a1_a1():
    ctx = wedge_context("A1xA1")
    y = Poly.variable(1, 0)
    assert ctx.family.F(0, 1) == 1 + y
    assert factorize_y(ctx, 0, 0) == {Y0: 1}
    assert factorize_y(ctx, 0, 2) == {Y0: -1}
    F1 = _f_atom(ctx, 0, 1)
    assert factorize_one_plus_y(ctx, 0, 0) == {F1: 1}
    assert factorize_one_plus_y(ctx, 0, 2) == {Y0: -1, F1: 1}
    assert rat_equal(factor_value(ctx, factorize_one_plus_y(ctx, 0, 2)), PosRational(1 + y, y))
    with pytest.raises(ParityError):
        factorize_y(ctx, 0, 1)


def test_factorization_a1_a2():
    ctx = wedge_context("A1xA2")
    pair = ctx.pair
    p, q = pair.position[(1, 1)], pair.position[(1, 2)]
    f = factorize_y(ctx, p, 0)
    # F_(1,2)(0) = 1, so only the tropical part survives at u = 0
    assert f == {Atom(Y_ATOM, p): 1}
    frame = build_frame(pair, "rational", None, 0, pair.period - 1)
    for v in range(pair.period):
        if pair.parity(q, v) > 0:
            assert rat_equal(factor_value(ctx, factorize_y(ctx, q, v)), frame[q, v])


@pytest.mark.parametrize("name", ["A2xA1", "A2xA2", "A3xA1", "D4xA1"])
def test_numeric_factorizations(name, rng):
    ctx = wedge_context(name)
    values = random_assignment(ctx.pair.n, rng).values
    assert validate_factorizations(ctx, symbolic=False, numeric_values=values) == []
    frame = build_frame(ctx.pair, "numeric", values, 0, ctx.pair.period - 1)
    p, u = domain_points(ctx.pair, "S+")[-1]
    assert factor_numeric(ctx, factorize_one_plus_y(ctx, p, u), values) == pytest.approx(1 + frame[p, u], rel=1e-10)


def test_a1_a1_by_hand():
    # 2 [y ^ F(1) + y^-1 ^ (y^-1 F(1))] = 0
    ctx = wedge_context("A1xA1")
    W = wedge_blocks(ctx)
    assert W["total"].is_zero()
    F1 = _f_atom(ctx, 0, 1)
    half = WedgeSum()
    half.add(FactorList({Y0: 1}), FactorList({F1: 1}))
    half.add(FactorList({Y0: -1}), FactorList({Y0: -1, F1: 1}))
    assert half.is_zero()


@pytest.mark.parametrize("name", SYMBOLIC_PAIRS)
def test_wedge_vanishing(name):
    rep = wedge_vanishing(name)
    assert rep.passed, rep.witnesses
    assert all(rep.data["blocks"].values())
    assert rep.data["surviving_pairs"] == []


def test_block_order_independence():
    ctx = wedge_context("A3xA2")
    base = wedge_blocks(ctx)
    for seed in (1, 2):
        other = wedge_blocks(ctx, order_seed=seed)
        for k in base:
            assert other[k] == base[k], k


def test_broken_factorization_is_caught(monkeypatch):
    import ysyslab.wedge as wedge

    real = wedge.factorize_one_plus_y

    def skewed(ctx, p, u):
        return real(ctx, p, u).times(FactorList({Atom(Y_ATOM, 0): 1}))

    monkeypatch.setattr(wedge, "factorize_one_plus_y", skewed)
    rep = wedge_vanishing("A2xA1", validate=True)
    assert not rep.passed and rep.witnesses


@pytest.mark.parametrize("name", ["A1xA2", "A3xA1", "A2xA3"])
def test_duality(name):
    rep = verify_duality(name, samples=3, max_rr=6)
    assert rep.passed, rep.witnesses


def test_budget():
    with pytest.raises(BudgetExceeded):
        wedge_vanishing("A3xA3")
    assert wedge_vanishing("A2xA1", max_rr=2).passed
