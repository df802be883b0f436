"""Killing fields, their matrices, the flow, and the bundle fiber."""

import numpy as np
import pytest

from conftest import random_points
from hypdef import HPoint, KillingField, Mobius, eval_killing
from hypdef.killing import (
    adjoint_action,
    canonical_lift_point,
    inner_product,
    killing_flow,
)

P = HPoint.of(0.3, 0.1, 1.2)


def random_field(rng):
    c = rng.normal(size=3) + 1j * rng.normal(size=3)
    return KillingField(*c)


# ---------------------------------------------------------------------------
# polynomial form and the matrix correspondence
# ---------------------------------------------------------------------------


def test_call_is_quadratic_polynomial():
    K = KillingField(1.0, 2.0j, -0.5)
    w = 0.7 - 0.3j
    assert abs(K(w) - (1.0 + 2.0j * w - 0.5 * w * w)) < 1e-15


def test_matrix_is_traceless(rng):
    for _ in range(5):
        K = random_field(rng)
        assert abs(np.trace(K.to_matrix())) < 1e-15


def test_matrix_roundtrip(rng):
    for _ in range(5):
        K = random_field(rng)
        L = KillingField.from_matrix(K.to_matrix())
        assert np.max(np.abs(K.coeffs - L.coeffs)) < 1e-14


def test_flow_derivative_matches_polynomial(rng):
    """d/ds of the flowed boundary point at s = 0 recovers K(z)."""
    h = 1e-6
    for _ in range(6):
        K = random_field(rng)
        z = complex(rng.normal(), rng.normal())
        plus = killing_flow(K, h).act_boundary(z)
        minus = killing_flow(K, -h).act_boundary(z)
        slope = (plus - minus) / (2.0 * h)
        assert abs(slope - K(z)) < 1e-7 * (1.0 + abs(K(z)))


def test_bracket_is_negative_matrix_commutator(rng):
    """Vector fields to matrices is an anti-homomorphism for the left action."""
    for _ in range(5):
        K, L = random_field(rng), random_field(rng)
        lhs = K.bracket(L).to_matrix()
        mk, ml = K.to_matrix(), L.to_matrix()
        rhs = ml @ mk - mk @ ml
        assert np.max(np.abs(lhs - rhs)) < 1e-13


def test_adjoint_action_matches_conjugation(rng):
    m = Mobius(1.0, 0.5j, -0.25, 2.0 - 1.0j)
    for _ in range(4):
        K = random_field(rng)
        lhs = adjoint_action(m, K).to_matrix()
        rhs = m.matrix @ K.to_matrix() @ m.inverse().matrix
        assert np.max(np.abs(lhs - rhs)) < 1e-12


def test_linear_structure(rng):
    K, L = random_field(rng), random_field(rng)
    s = K + L * 2.0 - K * 0.5
    expect = K.coeffs + 2.0 * L.coeffs - 0.5 * K.coeffs
    assert np.max(np.abs(s.coeffs - expect)) < 1e-14


# ---------------------------------------------------------------------------
# the fiber and the canonical lift at a point
# ---------------------------------------------------------------------------


def test_eval_killing_vertical_field():
    """The scaling field 2z d/dz points straight up on the axis."""
    K = KillingField(0.0, 2.0, 0.0)
    v = eval_killing(K, HPoint.of(0.0, 0.0, 1.0))
    vec = v.value_vector
    assert abs(vec[0]) < 1e-14 and abs(vec[1]) < 1e-14
    assert abs(vec[2] - 2.0) < 1e-14


def test_fiber_norm_is_isometry_invariant(rng):
    """The fiber inner product matches the field norm at the moved point."""
    K = KillingField(0.5, -1.0j, 0.25)
    for p in random_points(rng, 4):
        n1 = inner_product(K, K, p)
        m = Mobius.translation(0.4 - 0.2j) @ Mobius.scaling(1.3)
        n2 = inner_product(adjoint_action(m, K), adjoint_action(m, K), m(p))
        assert abs(n1 - n2) < 1e-9 * (1.0 + abs(n1))


def test_canonical_lift_point_recovers_field(rng):
    for p in random_points(rng, 5):
        K = random_field(rng)
        v = eval_killing(K, p)
        L = canonical_lift_point(v.value_vector, v.curl_vector, p)
        assert np.max(np.abs(K.coeffs - L.coeffs)) < 1e-10 * (
            1.0 + np.max(np.abs(K.coeffs))
        )


def test_fiber_arithmetic_requires_same_point():
    K = KillingField(1.0, 0.0, 0.0)
    v = eval_killing(K, P)
    w = eval_killing(K, HPoint.of(0.0, 0.0, 2.0))
    with pytest.raises(ValueError):
        v + w


def test_norm_sq_positive(rng):
    for _ in range(5):
        K = random_field(rng)
        v = eval_killing(K, P)
        assert v.norm_sq >= 0.0
