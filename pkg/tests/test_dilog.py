import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest

from conftest import ACCEPTANCE_PAIRS
from ysyslab.cluster.seed import make_pair
from ysyslab.dilog import PI2_6, L_of_ratio, dilog_sum, expected_value, rogers_L, verify_constancy, \
    verify_five_term, verify_identities, zero_infinity_limit
from ysyslab.errors import NumericRangeError
from ysyslab.semifield import random_assignment


def test_rogers_endpoints():
    assert rogers_L(0.0) == 0.0
    assert abs(rogers_L(1.0) - math.pi ** 2 / 6) < 1e-13
    assert abs(rogers_L(0.5) - math.pi ** 2 / 12) < 1e-15
    with pytest.raises(NumericRangeError):
        rogers_L(1.5)
    with pytest.raises(NumericRangeError):
        rogers_L(-0.1)


@pytest.mark.parametrize("x", [1e-9, 0.01, 0.3, 0.49, 0.5, 0.51, 0.9, 1 - 1e-9])
def test_rogers_against_mpmath(x):
    want = mpmath.polylog(2, x) + mpmath.log(x) * mpmath.log(1 - x) / 2
    assert rogers_L(x) == pytest.approx(float(want), abs=1e-14)


def test_reflection_and_ratio(rng):
    for x in rng.random(200):
        assert abs(rogers_L(x) + rogers_L(1 - x) - PI2_6) < 1e-13
    for y in (1e-12, 0.3, 1.0, 7.0, 1e12):
        assert L_of_ratio(y) + L_of_ratio(1 / y) == pytest.approx(PI2_6, abs=1e-13)


def test_five_term_examples(rng):
    assert verify_five_term(0.0, 0.0).passed
    assert verify_five_term(1.0, 0.3).passed
    assert verify_five_term(1.0, 1.0).passed
    worst = max(verify_five_term(x, y).data["error"] for x, y in rng.random((200, 2)))
    assert worst < 1e-12


@pytest.mark.parametrize("name,domain,value", [
    ("A1xA1", "S+", 2), ("A2xA1", "S+", 6), ("A1xA2", "H-", 3), ("A3xA2", "S-", 18),
])
def test_identity_examples(name, domain, value, rng):
    pair = make_pair(name)
    assert expected_value(pair, domain) == value
    for _ in range(3):
        assert dilog_sum(pair, random_assignment(pair.n, rng), domain) == pytest.approx(value, abs=1e-8)


def test_half_period_value_is_fractional():
    assert expected_value(make_pair("A2xA2"), "H+") == Fraction(6)
    assert expected_value(make_pair("A1xA2"), "H+") == Fraction(2)
    assert expected_value(make_pair("A2xA1"), "H-") == Fraction(2)


@pytest.mark.parametrize("name", ["A1xA1", "A2xA3", "D4xA1", "E6xA2"])
def test_identity_reports(name):
    reports, complement = verify_identities(name, 5, seed=7)
    assert [r.domain for r in reports] == ["S+", "S-", "H+", "H-"]
    for r in reports:
        assert r.samples == 5 and r.passed, r.to_report().to_dict()
    assert complement.passed


def test_identity_report_records_failures():
    reports, _ = verify_identities("A2xA1", 2, tol=1e-30)
    rep = reports[0].to_report()
    assert rep.data["status"] in ("pass", "fail")
    if not rep.passed:
        assert rep.witnesses


def test_constancy():
    rep = verify_constancy("A1xA1", 10)
    assert rep.passed and rep.data["range"] < 1e-13
    rep = verify_constancy("A3xA2", 10, extra_assignments=[(1e-3,) * 6, (1e3,) * 6])
    assert rep.passed and rep.data["samples"] == 12


def test_constancy_witness_on_tight_tolerance():
    rep = verify_constancy("D4xA2", 10, tol=1e-30)
    if not rep.passed:
        w = rep.witnesses[0]
        assert len(w["min_assignment"]) == 8 and w["max"] >= w["min"]


@pytest.mark.parametrize("name", ["A1xA1", "A2xA1", "A3xA2", "E6xA1", "A2xD4"])
def test_zero_infinity_limit_trend_and_sum(name):
    rep = zero_infinity_limit(name)
    pair = make_pair(name)
    assert rep.passed, rep.witnesses
    assert abs(rep.data["final_sum"] - pair.h * pair.r * pair.rp) < 1e-3 * rep.data["N_minus"]


def test_zero_infinity_limit_rejects_bad_sequence():
    with pytest.raises(ValueError):
        zero_infinity_limit("A1xA1", (0.01, 0.1))


def test_zero_infinity_limit_per_term_deviation():
    # every term within 1e-3 of its limit at t = 0.001; a term whose tropical
    # monomial has degree one sits at distance t (1 + O(t)), just over the bar
    failing = {}
    for name in ACCEPTANCE_PAIRS:
        rep = zero_infinity_limit(name)
        if not rep.data["deviation_ok"]:
            failing[name] = rep.data["max_deviation"]
    assert failing == {}
