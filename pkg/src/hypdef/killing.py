"""Infinitesimal isometries of the upper half space.

A Killing field is stored as the quadratic polynomial vector field

    (p0 + p1 z + p2 z^2) d/dz

on the boundary plane.  Evaluated at an interior point (w, t) it becomes a
fiber element with complex coefficients on the orthonormal fiber basis
(E1, E2, E3):

    a1 = p(w)/t - t p_zz(w)/2
    a2 = -i p(w)/t - i t p_zz(w)/2
    a3 = p_z(w)

The real part of the coefficient vector is the tangent-vector value of the
field in the orthonormal frame; multiplication of the coefficients by i is
the curl, so the curl vector is minus the imaginary part.  The fiber inner
product is Re sum(a_i conj(b_i)), which by construction equals the
definitional sum of the two tangent-space inner products (values and curls).

The matrix picture X = [[p1/2, p0], [-p2, -p1/2]] appears only inside the
adjoint action (conjugation) and the one-parameter flow; everything else
stays in the polynomial picture.
"""
from __future__ import annotations

import warnings

import numpy as np
import scipy.linalg

from .halfspace import HPoint, Mobius
from .jets import Jet

__all__ = [
    "KillingField",
    "FiberElement",
    "eval_killing",
    "eval_killing_jets",
    "curl_fiber",
    "adjoint_action",
    "inner_product",
    "canonical_lift_point",
    "killing_flow",
]


def _point_key(p) -> tuple:
    if isinstance(p, HPoint):
        return (p.x, p.y, p.t)
    x, y, t = p
    return (float(x), float(y), float(t))


class KillingField:
    """The quadratic boundary vector field (p0 + p1 z + p2 z^2) d/dz."""

    __slots__ = ("p0", "p1", "p2")

    def __init__(self, p0: complex = 0, p1: complex = 0, p2: complex = 0):
        self.p0 = complex(p0)
        self.p1 = complex(p1)
        self.p2 = complex(p2)

    @property
    def coeffs(self) -> np.ndarray:
        return np.array([self.p0, self.p1, self.p2])

    def __call__(self, w: complex) -> complex:
        return self.p0 + self.p1 * w + self.p2 * w * w

    def deriv(self, w: complex) -> complex:
        return self.p1 + 2.0 * self.p2 * w

    @property
    def second_deriv(self) -> complex:
        return 2.0 * self.p2

    # -- linear structure ----------------------------------------------------

    def __add__(self, other: "KillingField") -> "KillingField":
        return KillingField(self.p0 + other.p0, self.p1 + other.p1, self.p2 + other.p2)

    def __sub__(self, other: "KillingField") -> "KillingField":
        return KillingField(self.p0 - other.p0, self.p1 - other.p1, self.p2 - other.p2)

    def __neg__(self) -> "KillingField":
        return KillingField(-self.p0, -self.p1, -self.p2)

    def __mul__(self, c: complex) -> "KillingField":
        c = complex(c)
        return KillingField(c * self.p0, c * self.p1, c * self.p2)

    __rmul__ = __mul__

    def bracket(self, other: "KillingField") -> "KillingField":
        """Vector-field bracket [p dz, q dz] = (p q' - q p') dz (quadratic)."""
        p0, p1, p2 = self.p0, self.p1, self.p2
        q0, q1, q2 = other.p0, other.p1, other.p2
        return KillingField(
            p0 * q1 - q0 * p1,
            2.0 * (p0 * q2 - q0 * p2),
            p1 * q2 - q1 * p2,
        )

    # -- matrix picture --------------------------------------------------------

    def to_matrix(self) -> np.ndarray:
        """Traceless 2x2 generator whose Mobius flow integrates the field."""
        return np.array(
            [[self.p1 / 2.0, self.p0], [-self.p2, -self.p1 / 2.0]], dtype=complex
        )

    @classmethod
    def from_matrix(cls, X: np.ndarray) -> "KillingField":
        X = np.asarray(X, dtype=complex)
        tr = (X[0, 0] + X[1, 1]) / 2.0
        return cls(X[0, 1], 2.0 * (X[0, 0] - tr), -X[1, 0])

    def __repr__(self) -> str:
        return f"KillingField({self.p0:.6g}, {self.p1:.6g}, {self.p2:.6g})"


class FiberElement:
    """Complex coefficients on (E1, E2, E3) at a tagged basepoint."""

    __slots__ = ("point", "a")

    def __init__(self, point, a):
        self.point = _point_key(point)
        self.a = np.asarray(a, dtype=complex)
        if self.a.shape != (3,):
            raise ValueError("fiber element needs exactly three coefficients")

    def _check_mate(self, other: "FiberElement"):
        if self.point != other.point:
            raise ValueError(
                f"fiber basepoint mismatch: {self.point} vs {other.point}"
            )

    def __add__(self, other: "FiberElement") -> "FiberElement":
        self._check_mate(other)
        return FiberElement(self.point, self.a + other.a)

    def __sub__(self, other: "FiberElement") -> "FiberElement":
        self._check_mate(other)
        return FiberElement(self.point, self.a - other.a)

    def __neg__(self) -> "FiberElement":
        return FiberElement(self.point, -self.a)

    def __mul__(self, c: complex) -> "FiberElement":
        return FiberElement(self.point, self.a * complex(c))

    __rmul__ = __mul__

    @property
    def curl(self) -> "FiberElement":
        return FiberElement(self.point, 1j * self.a)

    @property
    def value_vector(self) -> np.ndarray:
        """Tangent-vector value in the orthonormal frame (real 3-vector)."""
        return self.a.real.copy()

    @property
    def curl_vector(self) -> np.ndarray:
        """Value of the curl: Re(i a) = -Im(a)."""
        return -self.a.imag.copy()

    def inner(self, other: "FiberElement") -> float:
        self._check_mate(other)
        return float(np.real(np.sum(self.a * np.conj(other.a))))

    @property
    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.a) ** 2))

    def __repr__(self) -> str:
        return f"FiberElement(point={self.point}, a={self.a})"


def eval_killing(K: KillingField, p) -> FiberElement:
    """Fiber coefficients of the Killing field at an interior point."""
    key = _point_key(p)
    w = complex(key[0], key[1])
    t = key[2]
    pw = K(w)
    half = t * K.second_deriv / 2.0
    return FiberElement(
        key,
        [pw / t - half, -1j * pw / t - 1j * half, K.deriv(w)],
    )


def eval_killing_jets(K: KillingField, point) -> tuple:
    """The three fiber coefficients of the constant section as order-4 jets."""
    Z = Jet.var_z(point)
    pz = Jet.const(point, K.p0) + K.p1 * Z + K.p2 * (Z * Z)
    dpz = Jet.const(point, K.p1) + 2.0 * K.p2 * Z
    inv_t = Jet.t_power(point, -1)
    tj = Jet.var_t(point)
    over_t = pz * inv_t
    half = tj * K.p2
    return (over_t - half, -1j * over_t - 1j * half, dpz)


def curl_fiber(v: FiberElement) -> FiberElement:
    return v.curl


def adjoint_action(M: Mobius, K: KillingField) -> KillingField:
    """Push-forward of the field by the Mobius map (matrix conjugation)."""
    A = M.matrix
    Ainv = np.array([[A[1, 1], -A[0, 1]], [-A[1, 0], A[0, 0]]], dtype=complex)
    return KillingField.from_matrix(A @ K.to_matrix() @ Ainv)


def inner_product(v: KillingField, w: KillingField, x) -> float:
    """Fiber inner product <v, w>_x: values-plus-curls pairing, in closed form."""
    return eval_killing(v, x).inner(eval_killing(w, x))


_COND_WARN = 1e8


def canonical_lift_point(v_value, v_curl, p) -> KillingField:
    """The unique Killing field with the given value and curl vectors at p.

    Solves the 3x3 complex system a(K) = v_value - i v_curl coming from the
    fiber evaluation; the map is a linear isomorphism, so the system never
    degenerates, but near the boundary it becomes ill conditioned and a
    warning reports the condition number.
    """
    key = _point_key(p)
    w = complex(key[0], key[1])
    t = key[2]
    A = np.array(
        [
            [1.0 / t, w / t, w * w / t - t],
            [-1j / t, -1j * w / t, -1j * w * w / t - 1j * t],
            [0.0, 1.0, 2.0 * w],
        ],
        dtype=complex,
    )
    target = np.asarray(v_value, dtype=float) - 1j * np.asarray(v_curl, dtype=float)
    cond = np.linalg.cond(A)
    if cond > _COND_WARN:
        warnings.warn(
            f"canonical lift system condition number {cond:.3g} at t={t:.3g}",
            stacklevel=2,
        )
    sol = np.linalg.solve(A, target)
    return KillingField(*sol)


def killing_flow(K: KillingField, s: float) -> Mobius:
    """The time-s Mobius flow of the field (matrix exponential)."""
    return Mobius.from_matrix(scipy.linalg.expm(s * K.to_matrix()))
