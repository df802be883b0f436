"""Cone-singularity model metric and tube geometry.

Cylindrical coordinates (r, theta, zeta) about the singular axis, with theta
measured modulo the cone angle.  The metric is diag(1, sinh^2 r, cosh^2 r);
the curvature check below rebuilds its sectional curvatures from scratch by
finite-difference Christoffel and Riemann assembly, so it is an independent
oracle rather than a restatement of the closed form.
"""

from __future__ import annotations

import math
import warnings
from typing import Callable, Tuple

import numpy as np

from . import quadrature


class ConeError(ValueError):
    """Invalid cone or tube parameters."""


def cone_metric_eval(r: float) -> np.ndarray:
    """Metric matrix diag(1, sinh^2 r, cosh^2 r) at radius r > 0."""
    r = float(r)
    if not r > 0:
        raise ConeError("radius must be positive")
    return np.diag([1.0, math.sinh(r) ** 2, math.cosh(r) ** 2])


def _metric_at(x: np.ndarray) -> np.ndarray:
    # theta and zeta are killed directions; only r enters.
    return cone_metric_eval(x[0])


# 4th-order central first derivative: (-f(2h) + 8f(h) - 8f(-h) + f(-2h))/(12h).
_STENCIL = ((2, -1.0), (1, 8.0), (-1, -8.0), (-2, 1.0))


def _fd_partial(fn: Callable, x: np.ndarray, axis: int, h: float) -> np.ndarray:
    acc = None
    for step, weight in _STENCIL:
        y = np.array(x, dtype=float)
        y[axis] += step * h
        term = weight * np.asarray(fn(y))
        acc = term if acc is None else acc + term
    return acc / (12.0 * h)


def _christoffel(fn: Callable, x: np.ndarray, h: float) -> np.ndarray:
    """Gamma[i, j, k] = Gamma^i_{jk} from finite differences of the metric."""
    g = np.asarray(fn(x))
    ginv = np.linalg.inv(g)
    dg = np.stack([_fd_partial(fn, x, a, h) for a in range(3)])
    # W[j, l, k] = d_j g_{lk} + d_k g_{lj} - d_l g_{jk}
    W = dg + dg.transpose(2, 1, 0) - dg.transpose(1, 0, 2)
    return 0.5 * np.einsum("il,jlk->ijk", ginv, W)


def _riemann_lowered(fn: Callable, x: np.ndarray, h: float) -> np.ndarray:
    """R_{ijkl} with R^i_{jkl} = d_k G^i_{lj} - d_l G^i_{kj} + G G - G G."""
    gamma = _christoffel(fn, x, h)
    dgamma = np.stack(
        [_fd_partial(lambda y: _christoffel(fn, y, h), x, a, h) for a in range(3)]
    )
    term_k = np.einsum("kilj->ijkl", dgamma)
    term_l = np.einsum("likj->ijkl", dgamma)
    quad_k = np.einsum("ikm,mlj->ijkl", gamma, gamma)
    quad_l = np.einsum("ilm,mkj->ijkl", gamma, gamma)
    upper = term_k - term_l + quad_k - quad_l
    return np.einsum("im,mjkl->ijkl", np.asarray(fn(x)), upper)


def sectional_curvatures(r: float, h: float = None) -> Tuple[float, float, float]:
    """Sectional curvatures of the three coordinate 2-planes at radius r.

    The step defaults to a fraction of r so the Christoffel singularity at
    the axis stays well resolved for small radii.
    """
    r = float(r)
    if not r > 0:
        raise ConeError("radius must be positive")
    if h is None:
        h = min(1e-2, r / 20.0)
    if not 0 < 2 * h < r:
        raise ConeError("step too large for the given radius")
    x = np.array([r, 0.3, -0.2])
    g = _metric_at(x)
    R = _riemann_lowered(_metric_at, x, h)
    out = []
    for i, j in ((0, 1), (0, 2), (1, 2)):
        denom = g[i, i] * g[j, j] - g[i, j] ** 2
        out.append(R[i, j, i, j] / denom)
    return tuple(out)


def cone_curvature_check(r: float, h: float = None) -> float:
    """Max deviation |K + 1| over the three coordinate 2-planes at radius r."""
    return max(abs(K + 1.0) for K in sectional_curvatures(r, h))


class ConeTube:
    """Tube of radius eps about a singular axis with cone angle alpha.

    The meridian is the theta-circle (theta modulo alpha) and the core curve
    has complex length `longitude` with positive real part.  Angles above
    2*pi are accepted but flagged with a warning, since the comparison
    arguments downstream assume alpha <= 2*pi.
    """

    __slots__ = ("alpha", "eps", "longitude", "wide_angle")

    def __init__(self, alpha: float, eps: float, longitude: complex):
        if not alpha > 0:
            raise ConeError("cone angle must be positive")
        if not eps > 0:
            raise ConeError("tube radius must be positive")
        longitude = complex(longitude)
        if not longitude.real > 0:
            raise ConeError("longitude needs positive real part")
        self.alpha = float(alpha)
        self.eps = float(eps)
        self.longitude = longitude
        self.wide_angle = self.alpha > 2.0 * math.pi
        if self.wide_angle:
            warnings.warn(
                "cone angle exceeds 2*pi; the rigidity hypotheses do not apply",
                stacklevel=2,
            )

    def __repr__(self) -> str:
        return (
            f"ConeTube(alpha={self.alpha!r}, eps={self.eps!r}, "
            f"longitude={self.longitude!r})"
        )


def tube_boundary_geometry(tube: ConeTube) -> Tuple[float, float, float]:
    """(meridian length, longitude length, area) of the boundary torus.

    The induced metric at r = eps is flat, so the area is the product of the
    two side lengths alpha*sinh(eps) and Re(longitude)*cosh(eps).
    """
    meridian = tube.alpha * math.sinh(tube.eps)
    longitude = tube.longitude.real * math.cosh(tube.eps)
    return meridian, longitude, meridian * longitude


def tube_area_quadrature(tube: ConeTube, nodes: int = 16) -> float:
    """Boundary torus area by quadrature of the induced area form.

    The density is sqrt(det) of the (theta, zeta) block of the metric at
    r = eps, integrated over one period in each direction.
    """
    block = cone_metric_eval(tube.eps)[1:, 1:]
    density = math.sqrt(np.linalg.det(block))
    return quadrature.integrate_face(
        lambda u, v: density,
        (0.0, tube.alpha),
        (0.0, tube.longitude.real),
        nodes,
    )
