import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from rabiwall import potential as pot
from rabiwall.errors import ParamsOutOfRange

from conftest import PARAM_SETS


def test_validate_alpha2_closed_form():
    P = pot.validate_params(2.0, 0.6)
    assert P.a == pytest.approx(1 / math.sqrt(10), abs=1e-15)
    assert P.b == pytest.approx(3 / math.sqrt(10), abs=1e-15)
    assert P.c == pytest.approx(math.sqrt(0.4), abs=1e-15)


@pytest.mark.parametrize("alpha,omega", [(2.0, 1.0), (2.0, 0.0), (2.0, -0.1), (0.0, 0.1), (-1.0, 0.1),
                                         (math.nan, 0.1), (2.0, math.inf)])
def test_validate_rejects(alpha, omega):
    with pytest.raises(ParamsOutOfRange):
        pot.validate_params(alpha, omega)


def test_boundary_message_names_constraint():
    with pytest.raises(ParamsOutOfRange, match="0 < omega < alpha/2"):
        pot.validate_params(2.0, 1.0)


@given(alpha=st.floats(0.1, 50.0), frac=st.floats(1e-6, 1 - 1e-6))
def test_params_invariants(alpha, frac):
    P = pot.validate_params(alpha, frac * alpha / 2)
    assert 0 < P.a < P.b
    assert abs(P.a**2 + P.b**2 - 1.0) <= 1e-14
    assert abs(P.a * P.b - P.omega / P.alpha) <= 1e-14
    assert abs(P.c - math.sqrt((1 + P.omega) / (2 + P.alpha))) <= 1e-14


def test_alpha4_quadratic_oracle():
    P = pot.validate_params(4.0, 1.0)
    assert P.a * P.b == pytest.approx(0.25, abs=1e-15)
    assert P.a**2 + P.b**2 == pytest.approx(1.0, abs=1e-15)


def test_small_ratio_limit():
    P = pot.validate_params(2.0, 1e-12)
    assert P.a == pytest.approx(5e-13, rel=1e-9)
    assert P.b == pytest.approx(1.0, abs=1e-12)


def test_potential_values(p2):
    assert pot.potential_value((p2.a, p2.b), p2) == pytest.approx(0.0, abs=1e-16)
    assert pot.potential_value((p2.b, p2.a), p2) == pytest.approx(0.0, abs=1e-16)
    assert pot.potential_value((0.0, 0.0), p2) == pytest.approx(0.34, abs=1e-15)


@pytest.mark.parametrize("alpha,omega", PARAM_SETS)
def test_steady_states(alpha, omega):
    P = pot.validate_params(alpha, omega)
    states = pot.steady_states(P)
    assert [tuple(s) for s in states] == [(P.a, P.b), (P.b, P.a), (P.c, P.c)]
    for s in states:
        assert np.hypot(*pot.potential_gradient(s, P)) <= 1e-12
        assert pot.in_admissible_region(s, P, 1e-12)
    assert pot.state_stability(states[0], P) == "stable"
    assert pot.state_stability(states[1], P) == "stable"
    assert pot.state_stability(states[2], P) == "unstable"


def test_steady_states_alpha2_values(p2):
    s = pot.steady_states(p2)
    np.testing.assert_allclose([s[0].u, s[0].v, s[2].u], [0.3162278, 0.9486833, 0.6324555], atol=5e-8)


def test_admissibility_examples(p2):
    assert pot.in_admissible_region((p2.a, p2.b), p2, 1e-12)
    assert not pot.in_admissible_region((1.0, 1.0), p2, 0.0)
    assert pot.in_admissible_region((p2.c, p2.c), p2, 0.0)
    with pytest.raises(ValueError):
        pot.in_admissible_region((0.5, 0.5), p2, -1.0)


@pytest.mark.parametrize("alpha,omega", PARAM_SETS)
def test_gradient_matches_fd(alpha, omega, rng):
    P = pot.validate_params(alpha, omega)
    u, v = pot.sample_admissible(P, 1000, rng)
    assert np.all(pot.in_admissible_region((u, v), P, 0.0))
    e = 1e-5
    W = lambda x, y: pot.potential_value((x, y), P)  # noqa: E731
    fu = (W(u + e, v) - W(u - e, v)) / (2 * e)
    fv = (W(u, v + e) - W(u, v - e)) / (2 * e)
    wu, wv = pot.potential_gradient((u, v), P)
    scale = np.maximum(np.abs(wu), 1e-3)
    assert np.max(np.abs(wu - fu) / scale) <= 1e-6
    assert np.max(np.abs(wv - fv) / np.maximum(np.abs(wv), 1e-3)) <= 1e-6


@pytest.mark.parametrize("alpha,omega", PARAM_SETS)
def test_hessian_matches_fd(alpha, omega, rng):
    P = pot.validate_params(alpha, omega)
    u, v = pot.sample_admissible(P, 1000, rng)
    e = 1e-5
    H = pot.potential_hessian((u, v), P)
    gpu, gmu = pot.gradient_arrays(u + e, v, P), pot.gradient_arrays(u - e, v, P)
    gpv, gmv = pot.gradient_arrays(u, v + e, P), pot.gradient_arrays(u, v - e, P)
    fd = {
        "w_uu": (gpu[0] - gmu[0]) / (2 * e),
        "w_uv": (gpv[0] - gmv[0]) / (2 * e),
        "w_vv": (gpv[1] - gmv[1]) / (2 * e),
    }
    fd_vu = (gpu[1] - gmu[1]) / (2 * e)
    for name, ref in fd.items():
        val = getattr(H, name)
        assert np.max(np.abs(val - ref) / np.maximum(np.abs(val), 1e-3)) <= 1e-6, name
    assert np.max(np.abs(H.w_vu - fd_vu) / np.maximum(np.abs(H.w_vu), 1e-3)) <= 1e-6


@pytest.mark.parametrize("alpha,omega", PARAM_SETS)
def test_wuv_formula_and_bound(alpha, omega, rng):
    P = pot.validate_params(alpha, omega)
    u, v = pot.sample_admissible(P, 1000, rng)
    w_uv = pot.potential_hessian((u, v), P).w_uv
    assert np.array_equal(w_uv, (2.0 + 2.0 * alpha) * u * v - omega)
    assert np.min(w_uv - pot.wuv_lower_bound(P)) >= -1e-12


def test_wuv_at_steady_state(p2):
    H = pot.potential_hessian((p2.a, p2.b), p2)
    assert H.w_uv == pytest.approx(1.2, abs=1e-14)
    assert H.w_uv == pytest.approx(pot.wuv_lower_bound(p2), abs=1e-14)
    m = H.matrix()
    assert m[0, 1] == m[1, 0]


@pytest.mark.parametrize("alpha,omega", PARAM_SETS)
def test_swap_symmetry(alpha, omega, rng):
    P = pot.validate_params(alpha, omega)
    u, v = rng.uniform(-1.5, 1.5, (2, 1000))
    np.testing.assert_allclose(pot.potential_value((u, v), P), pot.potential_value((v, u), P), rtol=1e-14, atol=1e-15)
    wu, wv = pot.gradient_arrays(u, v, P)
    su, sv = pot.gradient_arrays(v, u, P)
    np.testing.assert_allclose(wu, sv, rtol=0, atol=1e-14)
    np.testing.assert_allclose(wv, su, rtol=0, atol=1e-14)
    a = pot.hessian_arrays(u, v, P)
    b = pot.hessian_arrays(v, u, P)
    np.testing.assert_allclose(a[0], b[2], atol=1e-14)
    np.testing.assert_allclose(a[1], b[1], atol=1e-14)


@given(u=st.floats(-2, 2), v=st.floats(-2, 2))
def test_potential_nonnegative(u, v):
    P = pot.validate_params(2.5, 0.7)
    assert pot.potential_value((u, v), P) >= 0.0


def test_cc_admissibility_numerically():
    # checked over a sweep rather than assumed
    for alpha in np.linspace(0.2, 20, 40):
        for frac in np.linspace(0.01, 0.99, 25):
            P = pot.validate_params(alpha, frac * alpha / 2)
            assert pot.in_admissible_region((P.c, P.c), P, 0.0)


def test_max_hessian_eigenvalue_positive(p2):
    lam = pot.max_hessian_eigenvalue(p2)
    assert lam > 0
    H = pot.potential_hessian((p2.a, p2.b), p2)
    assert lam >= np.linalg.eigvalsh(H.matrix()).max() - 1e-12
