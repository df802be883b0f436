"""Complex length, trace coordinates, and dimension counts."""

import cmath
import math

import numpy as np
import pytest
from scipy.linalg import expm

from hypdef import (
    Mobius,
    complex_length,
    expected_dimension,
    path_derivatives,
    trace_from_length,
)
from hypdef.repvar import BranchFlipError, IdentityLengthError, RepresentationError


def random_mobius(rng):
    while True:
        a, b, c, d = rng.normal(size=4) + 1j * rng.normal(size=4)
        if abs(a * d - b * c) > 1e-3:
            return Mobius(a, b, c, d)


# ---------------------------------------------------------------------------
# complex length
# ---------------------------------------------------------------------------


def test_axis_loxodromic_length():
    L = 1.2 + 0.7j
    m = Mobius.scaling(cmath.exp(L))
    got = complex_length(m)
    assert abs(got - L) < 1e-13


def test_length_of_parabolic_is_zero():
    assert complex_length(Mobius.translation(2.0 - 1.0j)) == 0j


def test_length_of_rotation_is_purely_imaginary():
    for theta in (0.4, 1.0, math.pi / 2.0):
        got = complex_length(Mobius.rotation(theta))
        assert got.real == 0.0
        assert abs(got.imag - theta) < 1e-13


def test_half_turn_lands_on_positive_branch():
    """theta = pi sits on the fold; the elliptic convention keeps Im >= 0."""
    got = complex_length(Mobius.rotation(math.pi))
    assert got.real == 0.0
    assert abs(got.imag - math.pi) < 1e-12


def test_identity_has_no_length():
    with pytest.raises(IdentityLengthError):
        complex_length(Mobius.identity())


def test_imaginary_part_is_folded(rng):
    for _ in range(10):
        m = random_mobius(rng)
        L = complex_length(m)
        assert -math.pi < L.imag <= math.pi
        assert L.real >= 0.0


def test_conjugation_invariance(rng):
    L = 0.9 - 0.4j
    m = Mobius.scaling(cmath.exp(L))
    for _ in range(6):
        g = random_mobius(rng)
        got = complex_length(g @ m @ g.inverse())
        assert abs(got - complex_length(m)) < 1e-10


def test_trace_length_roundtrip(rng):
    """trace_from_length inverts complex_length up to the sign lift."""
    for _ in range(8):
        m = random_mobius(rng)
        L = complex_length(m)
        tr = m.trace()
        lifted = trace_from_length(L)
        assert min(abs(lifted - tr), abs(lifted + tr)) < 1e-10 * (1.0 + abs(tr))


def test_length_trace_roundtrip_elliptic():
    theta = 0.8
    m = Mobius.rotation(theta)
    lifted = trace_from_length(complex_length(m))
    assert min(abs(lifted - m.trace()), abs(lifted + m.trace())) < 1e-12


# ---------------------------------------------------------------------------
# path derivatives
# ---------------------------------------------------------------------------


def test_length_derivative_along_scaling_path():
    L0, dL = 1.0 + 0.3j, 0.7 - 0.2j

    def path(s):
        return Mobius.scaling(cmath.exp(L0 + s * dL))

    got = path_derivatives(path, "length")
    assert abs(got - dL) < 1e-9


def test_trace_derivative_along_scaling_path():
    """d/ds of 2 cosh((L0 + s dL)/2) is sinh(L0/2) dL."""
    L0, dL = 0.8 - 0.5j, 0.4 + 0.1j

    def path(s):
        return Mobius.scaling(cmath.exp(L0 + s * dL))

    got = path_derivatives(path, "trace")
    want = cmath.sinh(L0 / 2.0) * dL
    assert abs(got - want) < 1e-9


def test_constant_path_has_zero_derivative():
    m = Mobius.scaling(3.0)
    assert abs(path_derivatives(lambda s: m, "trace")) < 1e-14
    assert abs(path_derivatives(lambda s: m, "length")) < 1e-14


def test_matrix_path_trace_derivative():
    """Flowing the quadratic field z^2/2 against the unit translation."""
    X = np.array([[0.0, 0.0], [-0.5, 0.0]], dtype=complex)
    g0 = np.array([[1.0, 1.0], [0.0, 1.0]], dtype=complex)

    def path(s):
        return Mobius.from_matrix(expm(s * X) @ g0)

    got = path_derivatives(path, "trace")
    assert abs(got - (-0.5)) < 1e-8


def test_branch_flip_detected():
    """A path jumping between distant conjugacy classes cannot be aligned."""

    def path(s):
        return Mobius.scaling(40.0) if s > 0 else Mobius.translation(1.0)

    with pytest.raises(BranchFlipError):
        path_derivatives(path, "trace")


def test_parabolic_base_rejected_for_length():
    def path(s):
        return Mobius.translation(1.0 + s)

    with pytest.raises(RepresentationError):
        path_derivatives(path, "length")


def test_step_validation():
    path = lambda s: Mobius.scaling(math.e)
    with pytest.raises(RepresentationError):
        path_derivatives(path, "trace", h=0.0)
    with pytest.raises(RepresentationError):
        path_derivatives(path, "trace", h=1e-18)
    with pytest.raises(ValueError):
        path_derivatives(path, "angle")


# ---------------------------------------------------------------------------
# dimension counts
# ---------------------------------------------------------------------------

DIMENSION_CASES = [
    # (n_cone, m_cusp, t_tori, chi, lower_bound, smooth)
    (1, 0, 1, 0, 4, 1),
    (0, 1, 1, 0, 4, 1),
    (2, 1, 3, 0, 6, 3),
    (0, 0, 0, -1, 6, 3),
    (1, 1, 2, -1, 8, 5),
    (3, 0, 3, -2, 12, 9),
    (0, 2, 2, -2, 11, 8),
    (4, 2, 6, -3, 18, 15),
    (0, 0, 1, 0, 4, 0),
    (5, 5, 10, -5, 28, 25),
]


def test_dimension_table():
    for n, m, t, chi, lower, smooth in DIMENSION_CASES:
        assert expected_dimension(n, m, t, chi, "lower_bound") == lower
        assert expected_dimension(n, m, t, chi, "smooth") == smooth


def test_dimension_validation():
    with pytest.raises(ValueError):
        expected_dimension(-1, 0, 0, 0, "smooth")
    with pytest.raises(ValueError):
        expected_dimension(0, 0.5, 0, 0, "smooth")
    with pytest.raises(ValueError):
        expected_dimension(0, 0, 0, 0.25, "smooth")
    with pytest.raises(ValueError):
        expected_dimension(0, 0, 0, 0, "generic")
