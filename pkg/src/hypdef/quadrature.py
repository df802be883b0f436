"""Gauss-Legendre quadrature helpers for box, face and end integrals.

Integrals of germ-valued quantities are computed by instantiating the germ
at tensor-product Gauss-Legendre nodes.  Summation runs in a fixed nested
index order so repeated runs produce bitwise-identical totals.  The infinite
end t in [t0, oo) is handled by the substitution u = 1/t, which turns the
integrands appearing here (decaying like 1/t^3 or faster) into smooth
integrands on (0, 1/t0].
"""
from __future__ import annotations

from typing import Callable, Sequence

import numpy as np

__all__ = [
    "gauss_rule",
    "integrate_1d",
    "integrate_box",
    "integrate_face",
    "integrate_t_tail",
]


def gauss_rule(a: float, b: float, n: int):
    """Nodes and weights for [a, b]."""
    x, w = np.polynomial.legendre.leggauss(n)
    half = 0.5 * (b - a)
    return 0.5 * (a + b) + half * x, half * w


def integrate_1d(f: Callable[[float], float], a: float, b: float, n: int = 24) -> float:
    x, w = gauss_rule(a, b, n)
    total = 0.0
    for xi, wi in zip(x, w):
        total += wi * f(xi)
    return total


def integrate_box(
    f: Callable[[float, float, float], float],
    bounds: Sequence,
    n: int = 24,
) -> float:
    """Integral of f(x, y, t) over an axis-aligned box (coordinate measure)."""
    (x0, x1), (y0, y1), (t0, t1) = bounds
    xs, wx = gauss_rule(x0, x1, n)
    ys, wy = gauss_rule(y0, y1, n)
    ts, wt = gauss_rule(t0, t1, n)
    total = 0.0
    for xi, wxi in zip(xs, wx):
        for yi, wyi in zip(ys, wy):
            for ti, wti in zip(ts, wt):
                total += wxi * wyi * wti * f(xi, yi, ti)
    return total


def integrate_face(
    f: Callable[[float, float], float],
    ubounds: Sequence,
    vbounds: Sequence,
    n: int = 24,
) -> float:
    """Integral of f(u, v) over a coordinate rectangle."""
    us, wu = gauss_rule(ubounds[0], ubounds[1], n)
    vs, wv = gauss_rule(vbounds[0], vbounds[1], n)
    total = 0.0
    for ui, wui in zip(us, wu):
        for vi, wvi in zip(vs, wv):
            total += wui * wvi * f(ui, vi)
    return total


def integrate_t_tail(g: Callable[[float], float], t0: float, n: int = 48) -> float:
    """Integral of g(t) dt over [t0, oo) via u = 1/t.

    The substitution gives the proper integral of g(1/u)/u^2 over (0, 1/t0];
    Gauss-Legendre nodes never touch u = 0, so integrands bounded by a power
    of t^-2 at the end are handled without special casing.
    """
    if t0 <= 0:
        raise ValueError("tail integration needs t0 > 0")
    us, wu = gauss_rule(0.0, 1.0 / t0, n)
    total = 0.0
    for ui, wui in zip(us, wu):
        total += wui * g(1.0 / ui) / (ui * ui)
    return total
