"""Truncated Taylor jets: arithmetic, differentiation, Wirtinger tables."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_jet, random_points
from hypdef import HPoint, Jet
from hypdef.jets import JetError, JetOrderError

P = HPoint.of(0.2, -0.3, 0.8)


# ---------------------------------------------------------------------------
# constructors and evaluation
# ---------------------------------------------------------------------------


def test_const_value_and_partials():
    f = Jet.const(P, 2.0 - 1.0j)
    assert f.value == 2.0 - 1.0j
    assert f.partial(1, 0, 0) == 0.0
    assert f.partial(0, 0, 1) == 0.0


def test_coordinate_jets_center_at_point():
    assert Jet.var_x(P).value == P.x
    assert Jet.var_y(P).value == P.y
    assert Jet.var_t(P).value == P.t
    assert Jet.var_x(P).partial(1, 0, 0) == 1.0
    assert Jet.var_t(P).partial(0, 0, 1) == 1.0


def test_var_z_combines_x_and_y():
    z = Jet.var_z(P)
    assert z.value == P.w
    assert z.partial(1, 0, 0) == 1.0
    assert z.partial(0, 1, 0) == 1.0j
    zbar = Jet.var_conj_z(P)
    assert zbar.value == P.w.conjugate()
    assert zbar.partial(0, 1, 0) == -1.0j


def test_t_power_handles_negative_exponents():
    f = Jet.t_power(P, -2)
    assert abs(f.value - P.t**-2) < 1e-15
    assert abs(f.partial(0, 0, 1) - (-2.0) * P.t**-3) < 1e-13


def test_from_partials_roundtrip():
    f = Jet.from_partials(P, {(1, 0, 0): 3.0, (0, 2, 1): -1.0j, (0, 0, 0): 5.0})
    assert f.value == 5.0
    assert f.partial(1, 0, 0) == 3.0
    assert f.partial(0, 2, 1) == -1.0j


# ---------------------------------------------------------------------------
# arithmetic
# ---------------------------------------------------------------------------


def test_polynomial_arithmetic_matches_closed_form():
    """(x + i y)^2 * t has known partial derivatives at the base point."""
    z = Jet.var_z(P)
    t = Jet.var_t(P)
    f = z * z * t
    w = P.w
    assert abs(f.value - w * w * P.t) < 1e-15
    assert abs(f.partial(1, 0, 0) - 2.0 * w * P.t) < 1e-15
    assert abs(f.partial(0, 0, 1) - w * w) < 1e-15
    assert abs(f.partial(2, 0, 1) - 2.0) < 1e-15


def test_scalar_division_only(rng):
    """General jet division is rejected; 1/t goes through t_power."""
    f = random_jet(rng, P)
    assert ((f / 2.0) * 2.0 - f).max_abs() < 1e-14 * max(1.0, f.max_abs())
    with pytest.raises(JetError):
        f / random_jet(rng, P)
    inv_t = Jet.t_power(P, -1)
    assert (inv_t * Jet.var_t(P) - 1.0).max_abs() < 1e-13


def test_power_matches_repeated_product(rng):
    f = random_jet(rng, P)
    assert (f**3 - f * f * f).max_abs() < 1e-10 * max(1.0, (f**3).max_abs())


def test_scalar_operations():
    f = Jet.var_x(P) * 2.0 + 1.0
    assert abs(f.value - (2.0 * P.x + 1.0)) < 1e-15
    g = 1.0 - Jet.var_x(P)
    assert abs(g.value - (1.0 - P.x)) < 1e-15


def test_mixing_basepoints_raises(rng):
    q = HPoint.of(0.5, 0.5, 1.0)
    with pytest.raises(JetError):
        Jet.var_x(P) + Jet.var_x(q)


# ---------------------------------------------------------------------------
# differentiation
# ---------------------------------------------------------------------------


def test_diff_shifts_partial_table(rng):
    f = random_jet(rng, P)
    assert abs(f.diff_x().value - f.partial(1, 0, 0)) < 1e-15
    assert abs(f.diff_t().partial(1, 1, 0) - f.partial(1, 1, 1)) < 1e-15


def test_product_rule_is_exact(rng):
    for _ in range(5):
        f = random_jet(rng, P)
        g = random_jet(rng, P)
        lhs = (f * g).diff_x()
        rhs = f.diff_x() * g + f * g.diff_x()
        scale = max(1.0, lhs.max_abs())
        assert (lhs - rhs).max_abs() < 1e-11 * scale


@settings(max_examples=40, deadline=None)
@given(
    a=st.floats(min_value=-3.0, max_value=3.0),
    b=st.floats(min_value=-3.0, max_value=3.0),
    c=st.floats(min_value=-3.0, max_value=3.0),
)
def test_product_rule_property(a, b, c):
    """d(fg) = df g + f dg for quadratics with arbitrary coefficients."""
    x, t = Jet.var_x(P), Jet.var_t(P)
    f = x * a + t * t * b + c
    g = t * c + x * x * a + b
    lhs = (f * g).diff_t()
    rhs = f.diff_t() * g + f * g.diff_t()
    assert (lhs - rhs).max_abs() < 1e-9 * max(1.0, lhs.max_abs())


def test_repeated_diff_exhausts_order():
    f = Jet.var_x(P)
    for _ in range(4):
        f = f.diff_x()
    with pytest.raises(JetOrderError):
        f.diff_x()


# ---------------------------------------------------------------------------
# conjugation and Wirtinger calculus
# ---------------------------------------------------------------------------


def test_conj_on_coordinates():
    z = Jet.var_z(P)
    assert (z.conj() - Jet.var_conj_z(P)).max_abs() < 1e-15


def test_real_imag_are_properties(rng):
    f = random_jet(rng, P)
    recon = f.real + f.imag * 1j
    assert (recon - f).max_abs() < 1e-12


def test_wirtinger_derivatives_of_powers():
    z = Jet.var_z(P)
    f = z * z * z
    assert abs(f.wirtinger_partial(1, 0) - 3.0 * P.w**2) < 1e-13
    assert abs(f.wirtinger_partial(2, 0) - 6.0 * P.w) < 1e-13
    assert abs(f.wirtinger_partial(3, 0) - 6.0) < 1e-12
    assert abs(f.wirtinger_partial(0, 1)) < 1e-13


def test_wirtinger_table_roundtrip(rng):
    f = random_jet(rng, P)
    g = Jet.from_wirtinger(P, f.to_wirtinger())
    assert (f - g).max_abs() < 1e-12 * max(1.0, f.max_abs())


def test_mixed_wirtinger_of_z_zbar():
    f = Jet.var_z(P) * Jet.var_conj_z(P)
    assert abs(f.wirtinger_partial(1, 1) - 1.0) < 1e-14
