"""Shared fixtures and helpers for the test suite.

Random test data is built here from scratch, out of the coordinate jet
generators, rather than through the library's own sampling helpers: the
checks module is itself under test, so the tests must not lean on it.
"""

import numpy as np
import pytest

from hypdef import HPoint, Jet


@pytest.fixture
def rng():
    return np.random.default_rng(20250811)


def random_points(rng, n, t_low=0.05, t_high=2.0):
    """Points with log-uniform heights over the natural working range."""
    pts = []
    for _ in range(n):
        x, y = rng.uniform(-1.0, 1.0, size=2)
        t = float(np.exp(rng.uniform(np.log(t_low), np.log(t_high))))
        pts.append(HPoint.of(x, y, t))
    return pts


def random_jet(rng, point, real=False, terms=10):
    """Random polynomial jet of degree at most two in (x, y, t).

    Real jets must be built from real coefficients on the coordinate
    generators; complex monomials like z^2 would smuggle in imaginary
    parts that break Re/Im splits.
    """
    gens = (Jet.var_x(point), Jet.var_y(point), Jet.var_t(point))
    total = Jet.const(point, 0.0)
    for _ in range(terms):
        if real:
            c = Jet.const(point, float(rng.normal()))
        else:
            c = Jet.const(point, complex(rng.normal(), rng.normal()))
        term = c
        for _ in range(int(rng.integers(0, 3))):
            term = term * gens[int(rng.integers(0, 3))]
        total = total + term
    return total


def random_jets(rng, point, n=3, real=False):
    return tuple(random_jet(rng, point, real=real) for _ in range(n))
