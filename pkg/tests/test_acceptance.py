"""Acceptance gate: one test and one printed pass/fail line per criterion.

Every criterion is exercised at its stated tolerance against the library
code paths plus independent oracles where the criterion names a value.
The printed lines bypass capture so a plain `pytest -v` run shows them.
"""

import cmath
import math

import numpy as np
import pytest
from scipy.linalg import expm

from conftest import random_jet, random_jets, random_points
from hypdef import (
    CuspDeformation,
    CuspTorus,
    EForm,
    HOROSPHERE_GERM,
    HPoint,
    Jet,
    KillingField,
    Mobius,
    SuiteConfig,
    SurfaceGerm,
    automorphy_residual,
    complex_length,
    cone_curvature_check,
    cusp_form,
    cusp_l2_integral,
    decay_bounded,
    decay_probe,
    expected_dimension,
    horosphere_laplacian_closed,
    horosphere_section,
    parallel_curvature,
    run_suite,
    teichmuller_derivative,
    trace_derivative_parabolic,
    trace_from_length,
)
from hypdef.cone import ConeTube, tube_area_quadrature, tube_boundary_geometry
from hypdef.cusp import cusp_norm_sq, cusp_slab_integral
from hypdef.deformations import chain_rule_residual, horosphere_ds_norm
from hypdef.forms import (
    boundary_norm_identity,
    mm_residual,
    real_weitzenbock_residual,
    weitzenbock_residual,
)

TAU = 0.3 + 1.2j


def emit(capsys, num, label, ok, detail):
    line = f"[acceptance {num:02d}] {label}: {'PASS' if ok else 'FAIL'} ({detail})"
    with capsys.disabled():
        print(line)
    assert ok, line


def oneform(rng, point):
    return EForm(1, point, {(j,): random_jets(rng, point) for j in (1, 2, 3)})


# ---------------------------------------------------------------------------


def test_criterion_01_frame_derivative_tables(rng, capsys):
    """d and the connection part reproduce the frame tables at 20 points."""
    tol = 1e-10
    reports = run_suite("frame-tables", SuiteConfig(samples=20))
    worst = max(r.max_error for r in reports)
    # spot check the first row of the full-derivative table directly
    p = random_points(rng, 1)[0]
    d = EForm.section(p, (Jet.const(p, 1.0), Jet.const(p, 0.0), Jet.const(p, 0.0))).d()
    row = max(
        np.max(np.abs(np.array(d.value((1,))) - (0.0, 0.0, 1.0))),
        np.max(np.abs(np.array(d.value((2,))) - (0.0, 0.0, 1.0j))),
        np.max(np.abs(np.array(d.value((3,))) - (0.0, -1.0j, 0.0))),
    )
    worst = max(worst, float(row))
    emit(capsys, 1, "frame derivative tables", worst < tol, f"max residual {worst:.3e} < {tol:g}")


def test_criterion_02_weitzenbock_identities(rng, capsys):
    """Two-Laplacian and anticommutator identities on random data."""
    tol = 1e-9
    worst = 0.0
    for p in random_points(rng, 20):
        w = oneform(rng, p)
        scale = max(1.0, w.max_abs_value())
        worst = max(worst, weitzenbock_residual(w) / scale, mm_residual(w) / scale)
    for p in random_points(rng, 10):
        v = random_jets(rng, p, real=True)
        scale = max(1.0, max(a.max_abs() for a in v))
        worst = max(worst, real_weitzenbock_residual(v) / scale)
    emit(capsys, 2, "weitzenbock identities", worst < tol, f"max residual {worst:.3e} < {tol:g}")


def test_criterion_03_horosphere_extension(rng, capsys):
    """Operator route vs closed forms; holomorphic fields are harmonic."""
    tol_op = 1e-9
    tol_norm = 1e-10
    worst_op = 0.0
    for expr in ("z*conj(z)", "z^2*conj(z)", "z + z^2*conj(z)^2"):
        for p in random_points(rng, 4):
            got = np.array(horosphere_section(expr, p).laplacian().value(()))
            want = horosphere_laplacian_closed(expr, p).a
            scale = 1.0 + float(np.max(np.abs(want)))
            worst_op = max(worst_op, float(np.max(np.abs(got - want))) / scale)
    for expr in ("z", "z^2", "z^3", "z^3 - 2i*z^2 + z", "0.3i*z^3 + z^2"):
        p = random_points(rng, 1)[0]
        fiber = horosphere_laplacian_closed(expr, p)
        worst_op = max(worst_op, math.sqrt(fiber.norm_sq))
    worst_norm = 0.0
    for p in random_points(rng, 10):
        want = 6.0 * p.t * p.t
        worst_norm = max(worst_norm, abs(horosphere_ds_norm("z^3", p) - want) / want)
    ok = worst_op < tol_op and worst_norm < tol_norm
    emit(
        capsys, 3, "horosphere extension", ok,
        f"operator residual {worst_op:.3e} < {tol_op:g}, cubic norm rel {worst_norm:.3e} < {tol_norm:g}",
    )


def test_criterion_04_parallel_surfaces_and_decay(rng, capsys):
    """Curvature flow fixed point, chain rule, and bounded decay ratios."""
    tol = 1e-12
    worst = 0.0
    for t in (0.1, 0.4, 0.9):
        worst = max(worst, abs(parallel_curvature(1.0, t) - 1.0))
    for k0 in (-0.5, 0.3, 2.0):
        worst = max(worst, abs(parallel_curvature(k0, 1.0) - k0))
    for _ in range(5):
        germ = SurfaceGerm(float(rng.uniform(0.1, 0.9)), float(rng.uniform(0.1, 0.9)))
        worst = max(worst, chain_rule_residual(germ, float(rng.uniform(0.1, 1.0))))
    germ = SurfaceGerm(0.5, 0.25)
    grid = (0.5, 0.2, 0.1, 0.05)
    bounded = all(
        decay_bounded(decay_probe(q, "z^3", germ, grid))
        for q in ("ds", "laplacian", "div", "d_div")
    )
    ok = worst < tol and bounded
    emit(
        capsys, 4, "parallel surfaces and decay", ok,
        f"flow residual {worst:.3e} < {tol:g}, decay ratios bounded: {bounded}",
    )


def test_criterion_05_cusp_l2_model(rng, capsys):
    """Pointwise norm, the L2 value, and divergence detection."""
    tol_norm = 1e-10
    tol_l2 = 1e-6
    c = CuspDeformation(0.8 - 0.3j, 0.5j)
    worst_norm = 0.0
    for _ in range(20):
        p = HPoint.of(rng.uniform(0, 1), rng.uniform(0, 1), rng.uniform(1, 2))
        w = cusp_form(c, p)
        want = cusp_norm_sq(c, p.t)
        worst_norm = max(worst_norm, abs(w.norm_sq_value() - want) / (1.0 + want))
        worst_norm = max(
            worst_norm,
            w.d().max_abs_value(),
            w.delta().max_abs_value(),
            abs(sum(w.coeffs[(i,)][i - 1].value for i in (1, 2, 3))),
        )
    b1 = 0.7 + 0.4j
    result = cusp_l2_integral(CuspDeformation(b1, 0.0), CuspTorus(TAU))
    want = abs(b1) ** 2 * TAU.imag / 2.0
    l2_rel = abs(result.value - want) / want
    detected = (
        not result.diverges
        and cusp_l2_integral(CuspDeformation(0.0, 1.0), CuspTorus(TAU)).diverges
        and cusp_l2_integral(CuspDeformation(1.0, 0.5), CuspTorus(TAU)).diverges
    )
    ok = worst_norm < tol_norm and l2_rel < tol_l2 and detected
    emit(
        capsys, 5, "cusp L2 model", ok,
        f"pointwise residual {worst_norm:.3e} < {tol_norm:g}, L2 rel {l2_rel:.3e} < {tol_l2:g}, "
        f"divergence iff b2 != 0: {detected}",
    )


def test_criterion_06_slab_boundary_identity(capsys):
    """Interior norm over the slab 1 <= t <= 2 vs half the boundary pairing."""
    tol = 1e-4
    b1 = 1.0
    c = CuspDeformation(b1, 0.0)

    def germ(coords):
        return cusp_form(c, coords)

    bounds = [(0.0, 1.0), (0.0, TAU.imag), (1.0, 2.0)]
    lhs, rhs = boundary_norm_identity(germ, bounds, nodes=12)
    want = abs(b1) ** 2 * TAU.imag * (1.0 - 0.25) / 2.0
    closed_rel = abs(lhs - want) / want
    pair_rel = abs(lhs - rhs) / abs(lhs)
    slab = cusp_slab_integral(c, CuspTorus(TAU), 1.0, 2.0)
    closed_rel = max(closed_rel, abs(slab - want) / want)
    ok = closed_rel < tol and pair_rel < tol
    emit(
        capsys, 6, "slab boundary identity", ok,
        f"interior vs closed form rel {closed_rel:.3e}, vs half boundary rel {pair_rel:.3e} < {tol:g}",
    )


def matrix_trace_slope(K, beta, h=1e-4):
    g0 = np.array([[1.0, beta], [0.0, 1.0]], dtype=complex)
    X = K.to_matrix()

    def tr(s):
        return complex(np.trace(expm(s * X) @ g0))

    def central(step):
        return (tr(step) - tr(-step)) / (2.0 * step)

    return (4.0 * central(h / 2.0) - central(h)) / 3.0


def test_criterion_07_trace_derivatives(rng, capsys):
    """Closed-form trace slopes vs the matrix-path oracle; unit tangent."""
    tol = 1e-8
    cases = [
        (1.0, automorphy_residual(2, 1.0), -0.5),
        (TAU, automorphy_residual(2, TAU), -TAU * TAU / 2.0),
        (1.0, automorphy_residual(1, 1.0), 0.0),
        (TAU, automorphy_residual(1, TAU), 0.0),
    ]
    worst = 0.0
    for beta, K, want in cases:
        got = trace_derivative_parabolic(beta, K)
        worst = max(worst, abs(got - want))
        worst = max(worst, abs(got - matrix_trace_slope(K, beta)))
    unit = 0.0
    for _ in range(5):
        tau = complex(rng.normal(), abs(rng.normal()) + 0.1)
        _, length = teichmuller_derivative(tau)
        unit = max(unit, abs(length - 1.0))
    ok = worst < tol and unit < 1e-12
    emit(
        capsys, 7, "trace derivatives", ok,
        f"slope residual {worst:.3e} < {tol:g}, unit-length residual {unit:.3e}",
    )


def test_criterion_08_cone_metric_and_tubes(capsys):
    """Numeric curvature -1 on the radius range; tube area quadrature."""
    tol_curv = 1e-6
    tol_area = 1e-8
    worst_curv = max(
        cone_curvature_check(r)
        for r in (0.05, 0.1, 0.2, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0)
    )
    tube = ConeTube(alpha=math.pi, eps=1.0, longitude=2.0 + 0.5j)
    _, _, area = tube_boundary_geometry(tube)
    area_rel = abs(tube_area_quadrature(tube) - area) / area
    ok = worst_curv < tol_curv and area_rel < tol_area
    emit(
        capsys, 8, "cone metric and tubes", ok,
        f"curvature deviation {worst_curv:.3e} < {tol_curv:g}, tube area rel {area_rel:.3e} < {tol_area:g}",
    )


def test_criterion_09_length_functionals(rng, capsys):
    """Length/trace round trips and the two dimension counts."""
    tol = 1e-10
    worst = 0.0
    for _ in range(20):
        a, b, c, d = rng.normal(size=4) + 1j * rng.normal(size=4)
        if abs(a * d - b * c) < 1e-3:
            continue
        m = Mobius(a, b, c, d)
        try:
            L = complex_length(m)
        except ValueError:
            continue
        lifted = trace_from_length(L)
        tr = m.trace()
        worst = max(worst, min(abs(lifted - tr), abs(lifted + tr)) / (1.0 + abs(tr)))
    table_ok = all(
        expected_dimension(n, m, t, chi, "lower_bound") == t - 3 * chi + 3
        and expected_dimension(n, m, t, chi, "smooth") == n + m - 3 * chi
        for (n, m, t, chi) in [
            (1, 0, 1, 0), (0, 1, 1, 0), (2, 1, 3, 0), (0, 0, 0, -1),
            (1, 1, 2, -1), (3, 0, 3, -2), (0, 2, 2, -2), (4, 2, 6, -3),
            (0, 0, 1, 0), (5, 5, 10, -5),
        ]
    )
    ok = worst < tol and table_ok
    emit(
        capsys, 9, "length functionals", ok,
        f"roundtrip rel {worst:.3e} < {tol:g}, dimension table: {table_ok}",
    )


def test_criterion_10_laplacian_leading_constant(capsys):
    """The measured leading constant is reported, never asserted."""
    from hypdef.deformations import measured_laplacian_constant

    values = [measured_laplacian_constant("z*conj(z)", 0.0, t) for t in (1e-2, 1e-3)]
    emit(
        capsys, 10, "laplacian leading constant", True,
        f"measured {values[0]:.10f} at t=1e-2, {values[1]:.10f} at t=1e-3; reported only",
    )
