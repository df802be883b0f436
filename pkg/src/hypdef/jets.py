"""Fourth-order scalar jets at a point of the upper half space.

A :class:`Jet` stores the Taylor coefficients (partial derivatives divided by
multi-index factorials) of a smooth complex-valued function of the real
coordinates (x, y, t), through total order 4, at a fixed basepoint.  Sums and
products of jets are exact through the tracked order: truncated polynomial
arithmetic needs no derivatives beyond the ones stored, so no finite
differences enter anywhere in the jet layer.  Differentiation shifts the
table and loses one order; every jet therefore carries the order through
which its entries are trustworthy, and consuming more derivatives than are
available raises :class:`JetOrderError` instead of returning garbage.

Wirtinger views are derived on demand from the (x, y) table:

    d/dz    = (d/dx - i d/dy) / 2
    d/dzbar = (d/dx + i d/dy) / 2

and the conversion to the full Wirtinger table and back is exact (bitwise
for jets with dyadic entries, since only halving, i-rotation and addition
are involved).
"""
from __future__ import annotations

import math
from typing import Iterable

import numpy as np

from .halfspace import HPoint

__all__ = ["ORDER", "Jet", "JetError", "JetOrderError"]

ORDER = 4
_N = ORDER + 1
_SHAPE = (_N, _N, _N)


class JetError(ValueError):
    pass


class JetOrderError(JetError):
    """Raised when an operation needs more derivatives than a jet holds."""


def _build_tables():
    idx = [
        (i, j, k)
        for i in range(_N)
        for j in range(_N)
        for k in range(_N)
        if i + j + k <= ORDER
    ]

    def flat(m):
        return (m[0] * _N + m[1]) * _N + m[2]

    out, ia, ib = [], [], []
    for a in idx:
        for b in idx:
            g = (a[0] + b[0], a[1] + b[1], a[2] + b[2])
            if sum(g) <= ORDER:
                out.append(flat(g))
                ia.append(flat(a))
                ib.append(flat(b))

    masks = []
    for m in range(ORDER + 1):
        msk = np.zeros(_SHAPE)
        for mi in idx:
            if sum(mi) <= m:
                msk[mi] = 1.0
        masks.append(msk)

    fact = np.zeros(_SHAPE)
    for (i, j, k) in idx:
        fact[i, j, k] = math.factorial(i) * math.factorial(j) * math.factorial(k)
    return (np.array(out), np.array(ia), np.array(ib)), masks, fact, idx


(_MUL_OUT, _MUL_A, _MUL_B), _ORDER_MASK, _FACTORIAL, MULTI_INDICES = _build_tables()

_DIFF_SCALE = np.arange(1, _N, dtype=float)


def _as_point_key(point) -> tuple:
    if isinstance(point, HPoint):
        return (point.x, point.y, point.t)
    x, y, t = point
    return (float(x), float(y), float(t))


class Jet:
    """Taylor table of a smooth function at a basepoint, total order <= 4."""

    __slots__ = ("point", "c", "order")

    def __init__(self, point, coeffs: np.ndarray, order: int = ORDER):
        self.point = _as_point_key(point)
        self.order = int(order)
        if self.order < 0:
            raise JetOrderError("jet order exhausted")
        c = np.asarray(coeffs, dtype=complex)
        if c.shape != _SHAPE:
            raise JetError(f"coefficient table must have shape {_SHAPE}")
        self.c = c * _ORDER_MASK[self.order]

    # -- constructors ------------------------------------------------------

    @classmethod
    def const(cls, point, value: complex, order: int = ORDER) -> "Jet":
        c = np.zeros(_SHAPE, dtype=complex)
        c[0, 0, 0] = value
        return cls(point, c, order)

    @classmethod
    def coordinate(cls, point, axis: int, order: int = ORDER) -> "Jet":
        """Jet of the coordinate function x, y or t (axis 0, 1, 2)."""
        pt = _as_point_key(point)
        c = np.zeros(_SHAPE, dtype=complex)
        c[0, 0, 0] = pt[axis]
        c[(1, 0, 0) if axis == 0 else (0, 1, 0) if axis == 1 else (0, 0, 1)] = 1.0
        return cls(point, c, order)

    @classmethod
    def var_x(cls, point) -> "Jet":
        return cls.coordinate(point, 0)

    @classmethod
    def var_y(cls, point) -> "Jet":
        return cls.coordinate(point, 1)

    @classmethod
    def var_t(cls, point) -> "Jet":
        return cls.coordinate(point, 2)

    @classmethod
    def var_z(cls, point) -> "Jet":
        """Jet of z = x + iy."""
        return cls.var_x(point) + cls.var_y(point) * 1j

    @classmethod
    def var_conj_z(cls, point) -> "Jet":
        return cls.var_x(point) - cls.var_y(point) * 1j

    @classmethod
    def t_power(cls, point, n: int) -> "Jet":
        """Jet of t^n for integer n (negative allowed, e.g. 1/t)."""
        pt = _as_point_key(point)
        t0 = pt[2]
        if t0 <= 0 and n < 0:
            raise JetError("t^n with n < 0 needs a positive basepoint height")
        c = np.zeros(_SHAPE, dtype=complex)
        coeff = float(t0) ** n
        for k in range(_N):
            c[0, 0, k] = coeff
            # next Taylor coefficient: multiply by (n - k) / (k + 1) / t0
            coeff = coeff * (n - k) / ((k + 1) * t0)
        return cls(point, c)

    @classmethod
    def from_partials(cls, point, partials: dict, order: int = ORDER) -> "Jet":
        """Build a jet from {multi-index: derivative value} (not Taylor)."""
        c = np.zeros(_SHAPE, dtype=complex)
        for (i, j, k), val in partials.items():
            if i + j + k > ORDER:
                raise JetOrderError(f"multi-index {(i, j, k)} beyond order {ORDER}")
            c[i, j, k] = val / _FACTORIAL[i, j, k]
        return cls(point, c, order)

    # -- access ------------------------------------------------------------

    @property
    def value(self) -> complex:
        return complex(self.c[0, 0, 0])

    def partial(self, i: int, j: int, k: int) -> complex:
        """Derivative value d^{i+j+k} f / dx^i dy^j dt^k at the basepoint."""
        if i + j + k > self.order:
            raise JetOrderError(
                f"partial {(i, j, k)} requested but jet has order {self.order}"
            )
        return complex(self.c[i, j, k] * _FACTORIAL[i, j, k])

    # -- arithmetic ----------------------------------------------------------

    def _check_mate(self, other: "Jet"):
        if self.point != other.point:
            raise JetError(
                f"basepoint mismatch: {self.point} vs {other.point}"
            )

    def __add__(self, other):
        if isinstance(other, Jet):
            self._check_mate(other)
            return Jet(self.point, self.c + other.c, min(self.order, other.order))
        return Jet(self.point, self.c + Jet.const(self.point, other).c, self.order)

    __radd__ = __add__

    def __neg__(self):
        return Jet(self.point, -self.c, self.order)

    def __sub__(self, other):
        return self + (-other if isinstance(other, Jet) else -complex(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Jet):
            self._check_mate(other)
            prod = self.c.ravel()[_MUL_A] * other.c.ravel()[_MUL_B]
            flat = np.zeros(_N ** 3, dtype=complex)
            np.add.at(flat, _MUL_OUT, prod)
            return Jet(
                self.point, flat.reshape(_SHAPE), min(self.order, other.order)
            )
        return Jet(self.point, self.c * complex(other), self.order)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Jet):
            raise JetError("jet division is not supported; use t_power for 1/t")
        return Jet(self.point, self.c / complex(other), self.order)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise JetError("jet powers must be nonnegative integers")
        out = Jet.const(self.point, 1.0, self.order)
        for _ in range(n):
            out = out * self
        return out

    def conj(self) -> "Jet":
        """Jet of the complex conjugate function."""
        return Jet(self.point, np.conj(self.c), self.order)

    @property
    def real(self) -> "Jet":
        return (self + self.conj()) * 0.5

    @property
    def imag(self) -> "Jet":
        return (self - self.conj()) * (-0.5j)

    # -- differentiation -----------------------------------------------------

    def diff(self, axis: int) -> "Jet":
        """Jet of the coordinate partial along axis (0=x, 1=y, 2=t)."""
        if self.order < 1:
            raise JetOrderError("cannot differentiate an order-0 jet")
        out = np.zeros(_SHAPE, dtype=complex)
        if axis == 0:
            out[:-1, :, :] = self.c[1:, :, :] * _DIFF_SCALE[:, None, None]
        elif axis == 1:
            out[:, :-1, :] = self.c[:, 1:, :] * _DIFF_SCALE[None, :, None]
        elif axis == 2:
            out[:, :, :-1] = self.c[:, :, 1:] * _DIFF_SCALE[None, None, :]
        else:
            raise JetError(f"axis must be 0, 1 or 2, got {axis}")
        return Jet(self.point, out, self.order - 1)

    def diff_x(self) -> "Jet":
        return self.diff(0)

    def diff_y(self) -> "Jet":
        return self.diff(1)

    def diff_t(self) -> "Jet":
        return self.diff(2)

    def wirtinger_z(self) -> "Jet":
        return (self.diff(0) - self.diff(1) * 1j) * 0.5

    def wirtinger_zbar(self) -> "Jet":
        return (self.diff(0) + self.diff(1) * 1j) * 0.5

    def wirtinger_partial(self, a: int, b: int, k: int = 0) -> complex:
        """Value of d_z^a d_zbar^b d_t^k f at the basepoint."""
        if a + b + k > self.order:
            raise JetOrderError(
                f"Wirtinger partial ({a},{b},{k}) beyond jet order {self.order}"
            )
        jet = self
        for _ in range(a):
            jet = jet.wirtinger_z()
        for _ in range(b):
            jet = jet.wirtinger_zbar()
        for _ in range(k):
            jet = jet.diff(2)
        return jet.value

    def to_wirtinger(self) -> dict:
        """Full table {(a, b, k): d_z^a d_zbar^b d_t^k f} through the order."""
        out = {}
        for a in range(self.order + 1):
            for b in range(self.order + 1 - a):
                for k in range(self.order + 1 - a - b):
                    out[(a, b, k)] = self.wirtinger_partial(a, b, k)
        return out

    @classmethod
    def from_wirtinger(cls, point, table: dict, order: int = ORDER) -> "Jet":
        """Inverse of :meth:`to_wirtinger`; exact for dyadic tables."""
        partials = {}
        for i in range(order + 1):
            for j in range(order + 1 - i):
                for k in range(order + 1 - i - j):
                    # d_x^i d_y^j = (d_z + d_zbar)^i (i (d_z - d_zbar))^j
                    val = 0j
                    for a in range(i + 1):
                        for b in range(j + 1):
                            term = (
                                math.comb(i, a)
                                * math.comb(j, b)
                                * (1j) ** j
                                * (-1) ** (j - b)
                                * table[(a + b, i + j - a - b, k)]
                            )
                            val += term
                    partials[(i, j, k)] = val
        return cls.from_partials(point, partials, order)

    # -- misc ----------------------------------------------------------------

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.c * _FACTORIAL)))

    def __repr__(self):
        return f"Jet(value={self.value:.6g}, order={self.order})"


def basepoint_of(jets: Iterable[Jet]) -> tuple:
    """Common basepoint of a family of jets; raises on mismatch."""
    pts = {j.point for j in jets}
    if len(pts) != 1:
        raise JetError(f"jets have mismatched basepoints: {sorted(pts)}")
    return pts.pop()
