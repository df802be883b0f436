"""Cone-singularity metric: numeric curvature and tube geometry."""

import math

import numpy as np
import pytest

from hypdef import ConeTube, cone_curvature_check, cone_metric_eval
from hypdef.cone import (
    ConeError,
    sectional_curvatures,
    tube_area_quadrature,
    tube_boundary_geometry,
)


# ---------------------------------------------------------------------------
# the metric and its curvature
# ---------------------------------------------------------------------------


def test_metric_components():
    g = cone_metric_eval(0.7)
    assert np.allclose(
        g, np.diag([1.0, math.sinh(0.7) ** 2, math.cosh(0.7) ** 2])
    )


def test_metric_requires_positive_radius():
    with pytest.raises(ConeError):
        cone_metric_eval(0.0)
    with pytest.raises(ConeError):
        cone_metric_eval(-1.0)


def test_sectional_curvatures_are_minus_one():
    """All three coordinate sectional curvatures on a radius grid."""
    for r in (0.05, 0.1, 0.25, 0.5, 1.0, 2.0, 3.0):
        for k in sectional_curvatures(r):
            assert abs(k + 1.0) < 1e-6, f"r={r}"


def test_curvature_check_is_max_deviation():
    r = 1.3
    ks = sectional_curvatures(r)
    assert abs(cone_curvature_check(r) - max(abs(k + 1.0) for k in ks)) < 1e-15


def test_small_radius_accuracy():
    """Near the singular locus the stencil shrinks with r and stays accurate."""
    assert cone_curvature_check(0.05) < 1e-6


def test_stencil_must_fit_inside_the_radius():
    with pytest.raises(ConeError):
        sectional_curvatures(0.1, h=0.06)  # needs 2h < r


# ---------------------------------------------------------------------------
# tubes
# ---------------------------------------------------------------------------


def test_tube_boundary_geometry_closed_form():
    tube = ConeTube(alpha=math.pi, eps=1.0, longitude=2.0 + 0.5j)
    mer, lon, area = tube_boundary_geometry(tube)
    assert abs(mer - math.pi * math.sinh(1.0)) < 1e-14
    assert abs(lon - 2.0 * math.cosh(1.0)) < 1e-14
    assert abs(area - mer * lon) < 1e-12


def test_tube_area_matches_quadrature():
    tube = ConeTube(alpha=1.8, eps=0.6, longitude=1.5 + 0.25j)
    _, _, area = tube_boundary_geometry(tube)
    got = tube_area_quadrature(tube)
    assert abs(got - area) < 1e-8 * area


def test_meridian_linearizes_at_small_radius():
    """meridian / eps tends to the cone angle as the tube shrinks."""
    alpha = 2.0
    eps = 1e-6
    mer, _, _ = tube_boundary_geometry(ConeTube(alpha, eps, 1.0 + 0.0j))
    assert abs(mer / eps - alpha) < 1e-8


def test_tube_validation():
    with pytest.raises(ConeError):
        ConeTube(alpha=0.0, eps=1.0, longitude=1.0)
    with pytest.raises(ConeError):
        ConeTube(alpha=1.0, eps=-0.5, longitude=1.0)
    with pytest.raises(ConeError):
        ConeTube(alpha=1.0, eps=1.0, longitude=-2.0 + 1.0j)


def test_wide_cone_angle_warns_but_constructs():
    with pytest.warns(UserWarning):
        tube = ConeTube(alpha=3.0 * math.pi, eps=0.5, longitude=1.0 + 0.0j)
    assert tube.wide_angle
