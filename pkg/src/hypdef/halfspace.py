"""Upper half-space model of hyperbolic 3-space and its Moebius isometries.

Points are (x, y, t) with t > 0 and the metric is the Euclidean one rescaled
by 1/t^2, so e1 = t*d/dx, e2 = t*d/dy, e3 = t*d/dt is an orthonormal frame.
Orientation-preserving isometries are represented by SL(2, C) matrices acting
on the boundary plane by fractional linear maps and on the interior by the
Poincare extension.
"""
from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

__all__ = [
    "HPoint",
    "INFINITY",
    "Mobius",
    "frame_at",
    "hyp_distance",
    "mobius_act_boundary",
    "mobius_act_halfspace",
]


class _Infinity:
    """The point at infinity of the boundary sphere. A singleton."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"


INFINITY = _Infinity()


class HPoint(NamedTuple):
    """A point of the open upper half space, t strictly positive."""

    x: float
    y: float
    t: float

    @property
    def w(self) -> complex:
        """Horizontal position as a boundary complex number x + iy."""
        return complex(self.x, self.y)

    @property
    def coords(self) -> np.ndarray:
        return np.array([self.x, self.y, self.t], dtype=float)

    @staticmethod
    def of(x: float, y: float, t: float) -> "HPoint":
        if not t > 0:
            raise ValueError(f"height must be positive, got t={t!r}")
        return HPoint(float(x), float(y), float(t))


def frame_at(p: HPoint) -> np.ndarray:
    """Coordinate components of the orthonormal frame (e1, e2, e3) at p.

    Row i holds the coordinate vector of e_{i+1}; the frame is orthonormal
    for the rescaled metric <u, v> = (u . v) / t^2.
    """
    return np.diag([p.t, p.t, p.t]).astype(float)


def hyp_distance(p: HPoint, q: HPoint) -> float:
    """Hyperbolic distance, via cosh d = 1 + |p - q|^2 / (2 t_p t_q)."""
    dx = p.x - q.x
    dy = p.y - q.y
    dt = p.t - q.t
    c = 1.0 + (dx * dx + dy * dy + dt * dt) / (2.0 * p.t * q.t)
    # Guard the c = 1 corner against roundoff below 1.
    return math.acosh(max(c, 1.0))


class Mobius:
    """A fractional linear map (az+b)/(cz+d), det-normalized in SL(2, C).

    The representative is deterministic: the matrix is divided by a square
    root of its determinant and the sign is fixed so that the entry of
    largest modulus (first of a, b, c, d on ties) has nonnegative real
    part; if that entry is purely imaginary, nonnegative imaginary part.
    Parabolic translations therefore carry trace +2.
    """

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a: complex, b: complex, c: complex, d: complex):
        det = a * d - b * c
        if det == 0:
            raise ValueError("matrix is singular")
        r = np.sqrt(complex(det))
        a, b, c, d = a / r, b / r, c / r, d / r
        entries = (a, b, c, d)
        lead = max(entries, key=abs)
        for e in entries:  # first of the ties, in (a, b, c, d) order
            if abs(e) == abs(lead):
                lead = e
                break
        flip = lead.real < 0 or (lead.real == 0 and lead.imag < 0)
        if flip:
            a, b, c, d = -a, -b, -c, -d
        self.a, self.b, self.c, self.d = (
            complex(a),
            complex(b),
            complex(c),
            complex(d),
        )

    # -- constructors ----------------------------------------------------

    @classmethod
    def identity(cls) -> "Mobius":
        return cls(1, 0, 0, 1)

    @classmethod
    def translation(cls, beta: complex) -> "Mobius":
        """z -> z + beta."""
        return cls(1, beta, 0, 1)

    @classmethod
    def scaling(cls, k: complex) -> "Mobius":
        """z -> k z, k nonzero."""
        if k == 0:
            raise ValueError("scaling factor must be nonzero")
        r = np.sqrt(complex(k))
        return cls(r, 0, 0, 1 / r)

    @classmethod
    def rotation(cls, theta: float) -> "Mobius":
        """Rotation by angle theta about the vertical axis over 0."""
        return cls.scaling(np.exp(1j * theta))

    @classmethod
    def from_matrix(cls, m) -> "Mobius":
        m = np.asarray(m, dtype=complex)
        return cls(m[0, 0], m[0, 1], m[1, 0], m[1, 1])

    # -- algebra ----------------------------------------------------------

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=complex)

    def compose(self, other: "Mobius") -> "Mobius":
        """self after other."""
        return Mobius.from_matrix(self.matrix @ other.matrix)

    def __matmul__(self, other: "Mobius") -> "Mobius":
        return self.compose(other)

    def inverse(self) -> "Mobius":
        return Mobius(self.d, -self.b, -self.c, self.a)

    def trace(self) -> complex:
        return self.a + self.d

    def __repr__(self):
        return f"Mobius({self.a:.6g}, {self.b:.6g}, {self.c:.6g}, {self.d:.6g})"

    # -- actions ----------------------------------------------------------

    def act_boundary(self, z):
        """Apply to a boundary point (complex number or INFINITY)."""
        if z is INFINITY:
            if self.c == 0:
                return INFINITY
            return self.a / self.c
        z = complex(z)
        den = self.c * z + self.d
        if den == 0:
            return INFINITY
        return (self.a * z + self.b) / den

    def act_point(self, p: HPoint) -> HPoint:
        """Poincare extension to the upper half space.

        Exact for the identity: the denominator is exactly 1 there, so no
        rounding is introduced.
        """
        z = complex(p.x, p.y)
        cz_d = self.c * z + self.d
        den = abs(cz_d) ** 2 + abs(self.c) ** 2 * p.t * p.t
        znew = ((self.a * z + self.b) * cz_d.conjugate()
                + self.a * self.c.conjugate() * p.t * p.t) / den
        return HPoint.of(znew.real, znew.imag, p.t / den)

    def __call__(self, arg):
        if isinstance(arg, HPoint):
            return self.act_point(arg)
        return self.act_boundary(arg)


def mobius_act_boundary(m: Mobius, z):
    return m.act_boundary(z)


def mobius_act_halfspace(m: Mobius, p: HPoint) -> HPoint:
    return m.act_point(p)
