"""Rank-two cusp model: basis deformations, their forms, and L2 behavior.

The cusp cross-section is the flat torus C/(Z + tau*Z) sitting at heights
t >= cutoff in the upper half-space.  The two basis deformations are the
horosphere-style extensions of the boundary fields (z - conj z)/2 and
(z^3 - z)/6; their exterior derivatives and norms all have closed forms,
so quadrature only enters through the L2 integral and its cross-checks.
"""

from __future__ import annotations

import math
from typing import Callable, NamedTuple, Optional, Tuple

from . import quadrature
from .deformations import (
    BoundaryField,
    _as_hpoint,
    horosphere_extend,
    horosphere_section,
)
from .forms import EForm
from .halfspace import HPoint, Mobius
from .jets import Jet
from .killing import FiberElement, KillingField


class CuspError(ValueError):
    """Invalid cusp parameters."""


# Boundary fields of the two basis deformations.  The field grammar has no
# division, so the 1/6 coefficient is spelled as its exact float repr.
_SIXTH = repr(1.0 / 6.0)
FIELD_ONE = BoundaryField("0.5*z - 0.5*conj(z)")
FIELD_TWO = BoundaryField(f"{_SIXTH}*z^3 - {_SIXTH}*z")


class CuspTorus:
    """Flat torus C/(Z + tau Z) with a horoball cutoff height."""

    __slots__ = ("tau", "cutoff")

    def __init__(self, tau: complex, cutoff: float = 1.0):
        tau = complex(tau)
        if not tau.imag > 0:
            raise CuspError("torus parameter needs positive imaginary part")
        if not cutoff > 0:
            raise CuspError("cutoff height must be positive")
        self.tau = tau
        self.cutoff = float(cutoff)

    def area_at(self, t: float) -> float:
        """Cross-section area of the torus on the horosphere at height t."""
        if not t > 0:
            raise CuspError("height must be positive")
        return self.tau.imag / (t * t)

    @property
    def boundary_area(self) -> float:
        return self.area_at(self.cutoff)

    def generators(self) -> Tuple[Mobius, Mobius]:
        """The two parabolic translations generating the cusp group."""
        return Mobius.translation(1.0), Mobius.translation(self.tau)

    def __repr__(self) -> str:
        return f"CuspTorus(tau={self.tau!r}, cutoff={self.cutoff!r})"


class CuspDeformation(NamedTuple):
    """Coefficients of the combination b1 * (basis one) + b2 * (basis two)."""

    b1: complex
    b2: complex


def cusp_basis_sections(tau: complex) -> Tuple[Callable, Callable]:
    """Germ factories (point -> degree-0 form with jets) for the two bases.

    tau is validated but only enters through the automorphy of the fields;
    the local germs themselves are tau-independent.
    """
    tau = complex(tau)
    if not tau.imag > 0:
        raise CuspError("torus parameter needs positive imaginary part")

    def section_one(p) -> EForm:
        return horosphere_section(FIELD_ONE, p)

    def section_two(p) -> EForm:
        return horosphere_section(FIELD_TWO, p)

    return section_one, section_two


def cusp_fiber(index: int, p) -> FiberElement:
    """Pointwise fiber of basis deformation 1 or 2 at p (no jets)."""
    if index == 1:
        return horosphere_extend(FIELD_ONE, p)
    if index == 2:
        return horosphere_extend(FIELD_TWO, p)
    raise CuspError("basis index must be 1 or 2")


def cusp_form(c: CuspDeformation, p) -> EForm:
    """The degree-1 form b1*ds1 + b2*ds2 in closed form, with exact jets.

    Coefficient layout (coframe index -> fiber combination):
      omega^1: -(b1/2)(E1 - R2) - (b2 t^2/2)(E1 + R2)
      omega^2: (i b1/2)(E1 - R2) - (i b2 t^2/2)(E1 + R2)
      omega^3: 0
    The E3 components vanish, so the pointwise square norm collapses to
    |b1|^2 + t^4 |b2|^2 with no cross terms.
    """
    c = c if isinstance(c, CuspDeformation) else CuspDeformation(*c)
    point = _as_hpoint(p)
    tj = Jet.var_t(point)
    zero = Jet.const(point, 0.0)
    b1 = complex(c.b1)
    b2 = complex(c.b2)

    def pair(alpha_c: complex, gamma_c: complex) -> tuple:
        alpha = Jet.const(point, alpha_c)
        gamma = tj * tj * gamma_c
        return (alpha + gamma, (gamma - alpha) * 1j, zero)

    coeffs = {
        (1,): pair(-0.5 * b1, -0.5 * b2),
        (2,): pair(0.5j * b1, -0.5j * b2),
        (3,): (zero, zero, zero),
    }
    return EForm(1, point, coeffs)


def cusp_ds_closed(index: int, p) -> EForm:
    """Closed-form exterior derivative of basis section 1 or 2."""
    if index == 1:
        return cusp_form(CuspDeformation(1.0, 0.0), p)
    if index == 2:
        return cusp_form(CuspDeformation(0.0, 1.0), p)
    raise CuspError("basis index must be 1 or 2")


def cusp_norm_sq(c: CuspDeformation, t: float) -> float:
    """Pointwise squared norm |b1|^2 + t^4 |b2|^2 of the combined form."""
    c = c if isinstance(c, CuspDeformation) else CuspDeformation(*c)
    return abs(c.b1) ** 2 + t**4 * abs(c.b2) ** 2


def cusp_slab_integral(c, torus: "CuspTorus", t0: float, t1: float) -> float:
    """Closed-form integral of the squared norm over the slab t0 <= t <= t1.

    The volume element contributes area_at(t) * dt/t, so the b1 term
    integrates t^-3 and the b2 term integrates t.
    """
    c = c if isinstance(c, CuspDeformation) else CuspDeformation(*c)
    if not (t1 > t0 > 0):
        raise CuspError("slab heights must satisfy 0 < t0 < t1")
    im = torus.tau.imag
    term1 = abs(c.b1) ** 2 * (t0**-2 - t1**-2) / 2.0
    term2 = abs(c.b2) ** 2 * (t1**2 - t0**2) / 2.0
    return im * (term1 + term2)


class L2Result(NamedTuple):
    """Outcome of the cusp L2 integral.

    value is None exactly when diverges is set; growth_exponent is the
    doubling exponent of the partial integrals (None for a finite ceiling,
    where convergence is not in question).
    """

    value: Optional[float]
    diverges: bool
    growth_exponent: Optional[float]


def cusp_l2_integral(
    c,
    torus,
    t_max: float = math.inf,
    doubling_steps: int = 6,
) -> L2Result:
    """Integral of the squared norm over the cusp up to height t_max.

    The integrand per unit height is cusp_norm_sq(t) * area_at(t) / t.  With
    an infinite ceiling the b2 term makes the partial integrals grow like
    t^2; divergence is decided by the doubling exponent of the partials over
    [cutoff, cutoff * 2^k] exceeding 1.  Convergent tails are integrated
    exactly under the u = 1/t substitution.
    """
    c = c if isinstance(c, CuspDeformation) else CuspDeformation(*c)
    torus = torus if isinstance(torus, CuspTorus) else CuspTorus(torus)
    cut = torus.cutoff

    def slab_density(t: float) -> float:
        return cusp_norm_sq(c, t) * torus.area_at(t) / t

    if not t_max > cut:
        raise CuspError("t_max must exceed the cutoff height")
    if math.isfinite(t_max):
        value = quadrature.integrate_1d(slab_density, cut, t_max)
        return L2Result(value, False, None)

    partials = [
        quadrature.integrate_1d(slab_density, cut, cut * 2.0**k)
        for k in range(1, doubling_steps + 1)
    ]
    if partials[-1] <= 0.0:
        return L2Result(0.0, False, 0.0)
    if partials[-2] <= 0.0:
        return L2Result(None, True, math.inf)
    exponent = math.log2(partials[-1] / partials[-2])
    if exponent > 1.0:
        return L2Result(None, True, exponent)
    return L2Result(quadrature.integrate_t_tail(slab_density, cut), False, exponent)


def automorphy_residual(index: int, beta: complex) -> KillingField:
    """Exact residual v - (pushforward by z -> z + beta) v for basis index.

    The pushforward of a boundary field f under the translation evaluates f
    at z - beta, so the residual is f(z) - f(z - beta).  Both basis fields
    give polynomial residuals that are again Killing:
      index 1: the constant field i Im(beta)
      index 2: (beta^3 - beta)/6 - (beta^2/2) z + (beta/2) z^2
    """
    beta = complex(beta)
    if index == 1:
        return KillingField(1j * beta.imag, 0.0, 0.0)
    if index == 2:
        return KillingField((beta**3 - beta) / 6.0, -beta * beta / 2.0, beta / 2.0)
    raise CuspError("basis index must be 1 or 2")


def trace_derivative_parabolic(beta: complex, field: KillingField) -> complex:
    """First-order change of the trace of z -> z + beta along the field.

    Conjugation-free form: the derivative of tr(exp(s X) gamma0) at s = 0 is
    tr(X @ gamma0) = -beta * p2, so only the quadratic part of the field
    moves the trace of a parabolic.
    """
    return -complex(beta) * field.p2


def teichmuller_derivative(tau: complex) -> Tuple[complex, float]:
    """Tangent vector to the torus parameter induced by basis field one.

    The vector has magnitude Im(tau) (the automorphy residual of field one
    under the tau generator, read in the parameter direction), and its
    length in the hyperbolic metric of the parameter half-plane,
    |vector|/Im(tau), is 1 for every tau.
    """
    tau = complex(tau)
    if not tau.imag > 0:
        raise CuspError("torus parameter needs positive imaginary part")
    vector = complex(tau.imag)
    return vector, abs(vector) / tau.imag
