import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import brentq

from orlicz.config import SATURATION
from orlicz.young import (
    ArgScale,
    ExpMinusOne,
    InverseError,
    Max,
    PiecewiseLinearConvex,
    Power,
    PowerLog,
    SchemaError,
    Sum,
    ValScale,
    as_power_law,
    compare_at_infinity,
    compare_at_zero,
    evaluate,
    generalized_inverse,
    inverse_product,
    is_positive,
    parse_shorthand,
    validate_young,
    young_from_json,
)

from conftest import young_zoo

VANISHING = PiecewiseLinearConvex(((0.0, 0.0), (1.0, 0.0), (3.0, 4.0)))


# -- evaluate ---------------------------------------------------------------


def test_evaluate_examples():
    assert evaluate(Power(2), 3) == 9.0
    assert evaluate(ExpMinusOne(), 0) == 0.0
    assert evaluate(Max((Power(1), Power(2))), 0.5) == 0.5


@pytest.mark.parametrize("bad", [-1.0, math.inf, math.nan])
def test_evaluate_rejects_bad_argument(bad):
    with pytest.raises(ValueError):
        evaluate(Power(2), bad)


def test_combinators_compose_pointwise():
    t = np.linspace(0, 5, 101)
    inner = PowerLog(1.5, 2)
    np.testing.assert_allclose(ArgScale(3.0, inner)(t), inner(3.0 * t), rtol=1e-15)
    np.testing.assert_allclose(ValScale(0.7, inner)(t), 0.7 * inner(t), rtol=1e-15)
    np.testing.assert_allclose(Sum((inner, Power(3)))(t), inner(t) + t**3, rtol=1e-15)
    np.testing.assert_allclose(Max((inner, ExpMinusOne()))(t), np.maximum(inner(t), np.expm1(t)), rtol=1e-15)


def test_pwl_interpolates_and_extends():
    phi = PiecewiseLinearConvex(((0.0, 0.0), (1.0, 0.0), (3.0, 4.0)))
    assert phi(0.5) == 0.0
    assert phi(2.0) == 2.0
    assert phi(5.0) == 8.0  # last slope 2 continues


def test_saturates_instead_of_overflowing():
    assert ExpMinusOne()(1e4) == SATURATION
    assert Power(3)(1e200) == SATURATION
    assert np.isfinite(Sum((ExpMinusOne(), ExpMinusOne()))(800.0))


def test_scalar_in_scalar_out():
    assert isinstance(Power(2)(2.0), float)
    assert Power(2)(np.array([[1.0, 2.0]])).shape == (1, 2)


# -- validation -------------------------------------------------------------


def test_zoo_validates(phi, small_cfg):
    rep = validate_young(phi, small_cfg)
    assert rep.ok, rep.to_json()


def test_concave_power_fails_convexity():
    rep = validate_young(Power(0.5))
    assert rep.failures() == ["midpoint_convex"]
    w = rep.checks["midpoint_convex"].witness
    assert w["phi_mid"] > w["chord_mid"]
    # the pair from the documented example also violates it
    assert Power(0.5)(5.0) > 0.5 * (Power(0.5)(1.0) + Power(0.5)(9.0))


def test_decreasing_pwl_slopes_fail_convexity():
    rep = validate_young(PiecewiseLinearConvex(((0.0, 0.0), (1.0, 2.0), (2.0, 3.0))))
    assert not rep.checks["midpoint_convex"].passed
    assert rep.checks["midpoint_convex"].witness["t"] == 1.0


def test_bounded_function_fails_unbounded_check():
    rep = validate_young(PiecewiseLinearConvex(((0.0, 0.0), (1.0, 1.0), (2.0, 1.0))))
    assert "unbounded" in rep.failures()


def test_combinators_of_valid_functions_stay_valid(small_cfg):
    zoo = young_zoo()
    for a, b in zip(zoo, zoo[1:]):
        for phi in (Sum((a, b)), Max((a, b)), ArgScale(0.3, a), ValScale(5.0, b)):
            assert validate_young(phi, small_cfg).ok, str(phi)


def test_validation_report_serializes():
    doc = validate_young(Power(0.5)).to_json()
    assert json.loads(json.dumps(doc)) == doc
    assert doc["ok"] is False


# -- generalized inverse ----------------------------------------------------


def test_inverse_examples():
    assert generalized_inverse(Power(2), 4.0) == pytest.approx(2.0, rel=1e-10)
    assert generalized_inverse(Power(2), 0.0) == 0.0


def test_inverse_of_vanishing_function_at_zero_is_edge_of_zero_set():
    # brute force: smallest grid r with phi(r) > 0
    r = np.linspace(0, 3, 300001)
    brute = r[np.argmax(VANISHING(r) > 0)]
    inv = generalized_inverse(VANISHING, 0.0)
    assert inv == pytest.approx(1.0, rel=1e-9)
    assert 0 <= brute - inv <= r[1] + 1e-12
    assert not is_positive(VANISHING)


def test_inverse_resolves_plateau_to_right_edge():
    # phi = 0 on [0,1]; for 0 < s the inverse solves 2(r-1) = s
    s = np.array([0.5, 2.0, 4.0])
    np.testing.assert_allclose(generalized_inverse(VANISHING, s), 1 + s / 2, rtol=1e-10)


def test_power_inverse_closed_form(rng):
    for p in (1.0, 1.5, 2.0, 3.7, 8.0):
        s = np.exp(rng.uniform(-18, 18, 500))
        np.testing.assert_allclose(generalized_inverse(Power(p), s), s ** (1 / p), rtol=2e-10)


@pytest.mark.parametrize("phi", [ExpMinusOne(), PowerLog(1, 1), PowerLog(2.5, 3), ArgScale(2, Sum((Power(1), ExpMinusOne())))],
                         ids=str)
def test_inverse_matches_brentq(phi, rng):
    for s in np.exp(rng.uniform(-15, 15, 40)):
        ref = brentq(lambda r: phi(r) - s, 0.0, 1e6, xtol=1e-300, rtol=1e-15, maxiter=500)
        assert generalized_inverse(phi, s) == pytest.approx(ref, rel=2e-10)


def test_inverse_array_shape_preserved():
    s = np.array([[1.0, 4.0], [9.0, 16.0]])
    np.testing.assert_allclose(generalized_inverse(Power(2), s), np.sqrt(s), rtol=1e-10)


def test_inverse_rejects_negative():
    with pytest.raises(ValueError):
        generalized_inverse(Power(2), -1.0)


def test_inverse_reports_bounded_function():
    bounded = PiecewiseLinearConvex(((0.0, 0.0), (1.0, 1.0), (2.0, 1.0)))
    with pytest.raises(InverseError):
        generalized_inverse(bounded, 5.0)


def test_inverse_product_examples():
    assert inverse_product(Power(2), Power(2), 9.0) == pytest.approx(9.0, rel=1e-9)
    assert inverse_product(Power(2), Power(2), 16.0) == pytest.approx(16.0, rel=1e-9)
    for phi in young_zoo():
        assert inverse_product(phi, Power(2), 0.0) == 0.0


# -- inverse properties on 1000 sampled points -------------------------------

LEMMA_FAMILIES = [Power(1), Power(2), Power(4.5), ExpMinusOne(), PowerLog(1, 1), PowerLog(2, 0.5)]


@pytest.fixture(scope="module")
def samples():
    r = np.random.default_rng(7)
    return np.exp(r.uniform(math.log(1e-8), math.log(1e8), 1000)), r


@pytest.mark.parametrize("phi", LEMMA_FAMILIES, ids=str)
def test_inverse_monotone(phi, samples):
    s1, r = samples
    s2 = s1 * np.exp(r.uniform(0, 5, s1.size))
    assert np.all(generalized_inverse(phi, s1) <= generalized_inverse(phi, s2) * (1 + 2e-10))


@pytest.mark.parametrize("phi", LEMMA_FAMILIES, ids=str)
def test_inverse_sandwich(phi, samples):
    s, _ = samples
    r = generalized_inverse(phi, s)
    # phi(inv(s)) <= s, with the slack moved onto the argument
    assert np.all(phi(r * (1 - 2e-10)) <= s)
    assert np.all(phi(r * (1 + 2e-10)) > s)
    fs = phi(s)
    ok = fs < SATURATION
    assert np.all(s[ok] <= generalized_inverse(phi, fs[ok]) * (1 + 2e-10))


@pytest.mark.parametrize("phi", LEMMA_FAMILIES, ids=str)
def test_inverse_at_zero_for_positive_functions(phi):
    assert is_positive(phi)
    assert generalized_inverse(phi, 0.0) == 0.0


def test_contraction(samples):
    t, r = samples
    alpha = r.uniform(0, 1, t.size)
    for phi in young_zoo():
        ft = phi(t)
        ok = ft < SATURATION
        assert np.all(phi(alpha * t)[ok] <= alpha[ok] * ft[ok] * (1 + 1e-12) + 1e-300)


# -- hypothesis ---------------------------------------------------------------

positive = st.floats(min_value=1e-6, max_value=1e6, allow_nan=False)
exponent = st.floats(min_value=1.0, max_value=6.0)


@st.composite
def young_trees(draw, depth=2):
    leaf = st.one_of(
        exponent.map(Power),
        st.just(ExpMinusOne()),
        st.tuples(exponent, st.floats(0, 3)).map(lambda pq: PowerLog(*pq)),
    )
    if depth == 0:
        return draw(leaf)
    sub = young_trees(depth=depth - 1)
    return draw(st.one_of(
        leaf,
        st.tuples(st.floats(0.1, 10), sub).map(lambda a: ArgScale(*a)),
        st.tuples(st.floats(0.1, 10), sub).map(lambda a: ValScale(*a)),
        st.lists(sub, min_size=1, max_size=3).map(lambda ts: Sum(tuple(ts))),
        st.lists(sub, min_size=1, max_size=3).map(lambda ts: Max(tuple(ts))),
    ))


@settings(max_examples=60, deadline=None)
@given(young_trees())
def test_json_round_trip(phi):
    doc = json.loads(json.dumps(phi.to_json()))
    back = young_from_json(doc)
    assert back == phi
    t = np.logspace(-3, 3, 17)
    np.testing.assert_array_equal(back(t), phi(t))


@settings(max_examples=60, deadline=None)
@given(young_trees(), positive)
def test_inverse_brackets_level(phi, s):
    r = generalized_inverse(phi, s)
    assert phi(r * (1 - 1e-9)) <= s
    assert phi(r * (1 + 1e-9)) > s or phi(r * (1 + 1e-9)) >= SATURATION


@settings(max_examples=40, deadline=None)
@given(young_trees(depth=1), st.floats(0.01, 0.99), positive)
def test_contraction_hypothesis(phi, alpha, t):
    ft = phi(t)
    if ft < SATURATION:
        assert phi(alpha * t) <= alpha * ft * (1 + 1e-12) + 1e-300


@settings(max_examples=40, deadline=None)
@given(exponent, st.floats(0.05, 20.0))
def test_power_law_detection(p, k):
    a, q = as_power_law(ArgScale(k, ValScale(3.0, Power(p))))
    assert q == p
    assert a == pytest.approx(3.0 * k**p, rel=1e-12)


# -- growth descriptors -------------------------------------------------------


def test_growth_ordering():
    g_exp, g_pow = ExpMinusOne().growth_at_infinity(), Power(9).growth_at_infinity()
    assert compare_at_infinity(g_exp, g_pow) == 1
    assert compare_at_infinity(PowerLog(2, 1).growth_at_infinity(), Power(2).growth_at_infinity()) == 1
    assert compare_at_zero(Power(2).growth_at_zero(), Power(3).growth_at_zero()) == 1
    assert compare_at_zero(PowerLog(2, 1).growth_at_zero(), Power(3).growth_at_zero()) == 0


def test_growth_of_scaled_power():
    g = ArgScale(2.0, ValScale(3.0, Power(2))).growth_at_infinity()
    assert (g.coef, g.power, g.rate) == (12.0, 2.0, 0.0)
    assert VANISHING.growth_at_zero().power == math.inf


# -- JSON schema --------------------------------------------------------------


def test_schema_examples_parse():
    docs = [
        {"kind": "power", "p": 2},
        {"kind": "exp_minus_one"},
        {"kind": "power_log", "p": 1, "q": 1},
        {"kind": "pwl", "points": [[0, 0], [1, 0], [3, 4]]},
        {"kind": "arg_scale", "k": 2, "inner": {"kind": "power", "p": 2}},
        {"kind": "val_scale", "c": 3, "inner": {"kind": "power", "p": 2}},
        {"kind": "sum", "terms": [{"kind": "power", "p": 1}, {"kind": "power", "p": 2}]},
        {"kind": "max", "terms": [{"kind": "power", "p": 1}, {"kind": "exp_minus_one"}]},
    ]
    for doc in docs:
        assert young_from_json(doc).to_json()["kind"] == doc["kind"]


@pytest.mark.parametrize("doc, path", [
    ({"kind": "power"}, "phi.p"),
    ({"kind": "power", "p": "two"}, "phi.p"),
    ({"kind": "power", "p": -2}, "phi.p"),
    ({"kind": "cosh"}, "phi.kind"),
    ({"kind": "sum", "terms": [{"kind": "power", "p": 2}, {"kind": "power", "p": 0}]}, "phi.terms[1].p"),
    ({"kind": "arg_scale", "k": 2, "inner": {"kind": "power", "p": 2, "q": 1}}, "phi.inner.q"),
    ({"kind": "pwl", "points": [[0, 0], [1]]}, "phi.points[1]"),
    ({"kind": "pwl", "points": [[0, 1], [1, 2]]}, "phi.points"),
    ([1, 2], "phi"),
])
def test_schema_errors_point_at_field(doc, path):
    with pytest.raises(SchemaError) as exc:
        young_from_json(doc)
    assert exc.value.path == path


def test_shorthand():
    assert parse_shorthand("power:2") == {"kind": "power", "p": 2.0}
    assert parse_shorthand("exp") == {"kind": "exp_minus_one"}
    assert parse_shorthand("power_log:1:2") == {"kind": "power_log", "p": 1.0, "q": 2.0}
    assert parse_shorthand("pwl:0,0;1,0;3,4")["points"] == [[0, 0], [1, 0], [3, 4]]
    with pytest.raises(SchemaError):
        parse_shorthand("power:x")
