"""Complex length and trace coordinates of Mobius elements, with derivatives.

Lengths live on a branched double cover (eigenvalue choice and a 2*pi*i
ambiguity in the rotational part), so this module fixes one deterministic
branch and aligns finite-difference samples to it rather than trusting raw
principal values.
"""

from __future__ import annotations

import cmath
import math
from typing import Callable, Iterable

from .halfspace import Mobius


class RepresentationError(ValueError):
    """Base for representation-coordinate failures."""


class IdentityLengthError(RepresentationError):
    """Complex length is undefined at the identity."""


class BranchFlipError(RepresentationError):
    """Samples along a path landed on inconsistent branches."""


_IDENTITY_TOL = 1e-14
_PARABOLIC_TOL = 1e-14


def complex_length(M: Mobius) -> complex:
    """Complex translation length with Re >= 0 and Im in (-pi, pi].

    Parabolic elements (trace pinned to +2 by the normalized sign) get
    length 0.  Elliptic lengths are purely imaginary with the branch fixed
    to Im >= 0.  Loxodromic lengths are 2 log(mu) for the larger-modulus
    eigenvalue mu, with the imaginary part folded into (-pi, pi].
    """
    tr = M.trace()
    near_diag = abs(M.b) + abs(M.c) < _IDENTITY_TOL and abs(M.a - M.d) < _IDENTITY_TOL
    if near_diag and abs(tr - 2.0) < _IDENTITY_TOL:
        raise IdentityLengthError("length is undefined at the identity")
    disc = tr * tr - 4.0
    if abs(disc) < _PARABOLIC_TOL:
        return 0j
    mu = (tr + cmath.sqrt(disc)) / 2.0
    if abs(mu) < 1.0:
        mu = (tr - cmath.sqrt(disc)) / 2.0
    L = 2.0 * cmath.log(mu)
    re = L.real
    im = L.imag % (2.0 * math.pi)
    if im > math.pi:
        im -= 2.0 * math.pi
    if abs(re) < 1e-12:
        re = 0.0
        if im < 0.0:
            im = -im
    return complex(re, im)


def trace_from_length(L: complex) -> complex:
    """Trace representative 2 cosh(L/2); the other sign lift is its negative."""
    return 2.0 * cmath.cosh(complex(L) / 2.0)


def _align(candidates: Iterable[complex], ref: complex) -> complex:
    best = min(candidates, key=lambda c: abs(c - ref))
    if abs(best - ref) > 0.5 * (1.0 + abs(ref)):
        raise BranchFlipError("path sample is too far from the base branch")
    return best


def path_derivatives(path: Callable, kind: str, h: float = 1e-3) -> complex:
    """Richardson-extrapolated central derivative of trace or length at 0.

    path maps a real parameter to Mobius elements.  Samples at +/-h and
    +/-h/2 are aligned to the branch of the value at parameter 0: traces up
    to sign (the projective ambiguity), lengths up to sign and 2*pi*i shifts
    of the rotational part.  A sample that no aligned candidate brings close
    to the base value raises BranchFlipError.
    """
    if kind not in ("trace", "length"):
        raise ValueError("kind must be 'trace' or 'length'")
    if not h > 0:
        raise RepresentationError("step must be positive")
    if 1.0 + h == 1.0:
        raise RepresentationError("step underflow")

    if kind == "trace":
        ref = path(0.0).trace()

        def sample(s: float) -> complex:
            tr = path(s).trace()
            return _align((tr, -tr), ref)

    else:
        ref = complex_length(path(0.0))
        if ref == 0j:
            raise RepresentationError("length derivative needs a non-parabolic base")

        def sample(s: float) -> complex:
            L = complex_length(path(s))
            shifts = (0.0, 2.0 * math.pi, -2.0 * math.pi)
            cands = [sgn * L + 1j * shift for sgn in (1.0, -1.0) for shift in shifts]
            return _align(cands, ref)

    def central(step: float) -> complex:
        return (sample(step) - sample(-step)) / (2.0 * step)

    return (4.0 * central(h / 2.0) - central(h)) / 3.0


def expected_dimension(
    n_cone: int, m_cusp: int, t_tori: int, chi: int, mode: str
) -> int:
    """Dimension count for the deformation space of a cusped cone-manifold.

    mode 'lower_bound': t_tori - 3*chi + 3, a floor coming from the torus
    boundary count.  mode 'smooth': n_cone + m_cusp - 3*chi, the expected
    dimension when the tube and cusp coordinate functionals cut the variety
    transversally.  chi may be negative; the counts must not be.
    """
    for name, v in (("n_cone", n_cone), ("m_cusp", m_cusp), ("t_tori", t_tori)):
        if int(v) != v or v < 0:
            raise ValueError(f"{name} must be a nonnegative integer")
    if int(chi) != chi:
        raise ValueError("chi must be an integer")
    if mode == "lower_bound":
        return int(t_tori) - 3 * int(chi) + 3
    if mode == "smooth":
        return int(n_cone) + int(m_cusp) - 3 * int(chi)
    raise ValueError("mode must be 'lower_bound' or 'smooth'")
