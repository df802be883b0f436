"""Named verification suites over seeded sample grids.

Each suite function maps a SuiteConfig to a list of CheckReport records.
Suites draw their own generator from the seed, consume it in a fixed order,
and reduce errors deterministically, so a (config, seed) pair pins the
report bytes exactly.  Sample points use w uniform in the unit square and
t log-uniform in [0.05, 2] unless a check needs a different regime.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np
import scipy.linalg

from . import cone as cone_mod
from . import cusp as cusp_mod
from . import deformations as defo
from . import forms, repvar
from .deformations import BoundaryField, SurfaceGerm
from .halfspace import HPoint, Mobius
from .jets import Jet
from .killing import KillingField
from .reporting import CheckReport


class CheckConfigError(ValueError):
    """Raised for unknown suites or unusable suite parameters."""


# Default tolerances by check class; a config-level tol overrides them all.
TOL_JET = 1e-9
TOL_ORACLE = 1e-5
TOL_QUAD = 1e-6


@dataclass(frozen=True)
class SuiteConfig:
    """Knobs shared by every suite; unused fields are simply ignored."""

    seed: int = 7
    samples: int = 20
    tol: Optional[float] = None
    tau: complex = 0.3 + 1.2j
    b1: complex = 1.0 + 0.0j
    b2: complex = 0.0 + 0.0j
    k1: float = 0.5
    k2: float = 0.25
    alpha: float = math.pi
    eps: float = 1.0
    field: str = "z^3"
    longitude: complex = 2.0 + 0.5j


def _tol(cfg: SuiteConfig, default: float) -> float:
    return default if cfg.tol is None else float(cfg.tol)


def _rng(cfg: SuiteConfig) -> np.random.Generator:
    return np.random.default_rng(cfg.seed)


def sample_points(rng: np.random.Generator, n: int) -> List[HPoint]:
    """n points with w uniform in the unit square and t log-uniform in [0.05, 2]."""
    pts = []
    log_lo, log_hi = math.log(0.05), math.log(2.0)
    for _ in range(n):
        x = float(rng.uniform(0.0, 1.0))
        y = float(rng.uniform(0.0, 1.0))
        t = math.exp(float(rng.uniform(log_lo, log_hi)))
        pts.append(HPoint(x, y, t))
    return pts


def _random_jet(rng: np.random.Generator, point: HPoint, real: bool = False) -> Jet:
    """Random polynomial jet of total degree <= 2 in (x, y, t)."""
    vx, vy, vt = Jet.var_x(point), Jet.var_y(point), Jet.var_t(point)
    mons = (vx, vy, vt, vx * vx, vy * vy, vt * vt, vx * vy, vx * vt, vy * vt)

    def coef() -> complex:
        if real:
            return float(rng.normal())
        return complex(rng.normal(), rng.normal())

    total = Jet.const(point, coef())
    for m in mons:
        total = total + m * coef()
    return total


def _random_oneform(rng: np.random.Generator, point: HPoint) -> forms.EForm:
    coeffs = {
        (i,): tuple(_random_jet(rng, point) for _ in range(3)) for i in (1, 2, 3)
    }
    return forms.EForm(1, point, coeffs)


def _random_section(
    rng: np.random.Generator, point: HPoint, real: bool = False
) -> forms.EForm:
    jets = tuple(_random_jet(rng, point, real=real) for _ in range(3))
    return forms.EForm.section(point, jets)


def _pt_detail(p: HPoint, err: float) -> dict:
    return {"point": [p.x, p.y, p.t], "error": float(err)}


def _worst_detail(points: Sequence[HPoint], errors: Sequence[float]) -> List[dict]:
    if not errors:
        return []
    i = int(np.argmax(errors))
    return [_pt_detail(points[i], errors[i])]


# -- frame tables ---------------------------------------------------------------

_E1, _E2, _E3 = (1, 0, 0), (0, 1, 0), (0, 0, 1)


def _fib(*terms) -> np.ndarray:
    out = np.zeros(3, dtype=complex)
    for c, e in terms:
        out += c * np.array(e, dtype=complex)
    return out


# dE_i and the connection derivative of E_i against the coframe, with
# R_j = i E_j on fibers.
_EXPECT_D = {
    1: {1: _fib((1, _E3)), 2: _fib((1j, _E3)), 3: _fib((-1j, _E2))},
    2: {1: _fib((-1j, _E3)), 2: _fib((1, _E3)), 3: _fib((1j, _E1))},
    3: {1: _fib((-1, _E1), (1j, _E2)), 2: _fib((-1j, _E1), (-1, _E2)), 3: _fib()},
}
_EXPECT_PARTIAL = {
    1: {1: _fib((1, _E3)), 2: _fib((-1j, _E3)), 3: _fib((1j, _E2))},
    2: {1: _fib((1j, _E3)), 2: _fib((1, _E3)), 3: _fib((-1j, _E1))},
    3: {1: _fib((-1, _E1), (-1j, _E2)), 2: _fib((1j, _E1), (-1, _E2)), 3: _fib()},
}


def suite_frame_tables(cfg: SuiteConfig) -> List[CheckReport]:
    rng = _rng(cfg)
    points = sample_points(rng, cfg.samples)
    errs_d, errs_p = [], []
    for p in points:
        tables = forms.frame_killing_tables(p)
        worst_d = worst_p = 0.0
        for i in (1, 2, 3):
            for m in (1, 2, 3):
                got_d = np.array(tables["d"][i].value((m,)))
                got_p = np.array(tables["partial"][i].value((m,)))
                worst_d = max(worst_d, np.abs(got_d - _EXPECT_D[i][m]).max())
                worst_p = max(worst_p, np.abs(got_p - _EXPECT_PARTIAL[i][m]).max())
        errs_d.append(worst_d)
        errs_p.append(worst_p)
    tol = _tol(cfg, 1e-10)
    return [
        CheckReport.from_error(
            "frame-tables/exterior", max(errs_d), tol, len(points), cfg.seed,
            _worst_detail(points, errs_d),
        ),
        CheckReport.from_error(
            "frame-tables/connection", max(errs_p), tol, len(points), cfg.seed,
            _worst_detail(points, errs_p),
        ),
    ]


# -- Weitzenbock and friends ------------------------------------------------------


def suite_weitzenbock(cfg: SuiteConfig) -> List[CheckReport]:
    rng = _rng(cfg)
    points = sample_points(rng, cfg.samples)
    errs_w, errs_mm = [], []
    for p in points:
        s = _random_oneform(rng, p)
        errs_w.append(forms.weitzenbock_residual(s))
        errs_mm.append(forms.mm_residual(s))
    tol = _tol(cfg, TOL_JET)
    return [
        CheckReport.from_error(
            "weitzenbock/two-laplacians", max(errs_w), tol, len(points), cfg.seed,
            _worst_detail(points, errs_w),
        ),
        CheckReport.from_error(
            "weitzenbock/anticommutator", max(errs_mm), tol, len(points), cfg.seed,
            _worst_detail(points, errs_mm),
        ),
    ]


def suite_real_weitzenbock(cfg: SuiteConfig) -> List[CheckReport]:
    rng = _rng(cfg)
    n = min(cfg.samples, 10)
    points = sample_points(rng, n)
    errs = []
    for p in points:
        v = tuple(_random_jet(rng, p, real=True) for _ in range(3))
        errs.append(forms.real_weitzenbock_residual(v))
    return [
        CheckReport.from_error(
            "real-weitzenbock/vector-identity", max(errs), _tol(cfg, TOL_JET),
            n, cfg.seed, _worst_detail(points, errs),
        )
    ]


def suite_product_formula(cfg: SuiteConfig) -> List[CheckReport]:
    rng = _rng(cfg)
    points = sample_points(rng, cfg.samples)
    errs = []
    for p in points:
        f = _random_jet(rng, p)
        s = _random_section(rng, p)
        errs.append(forms.product_formula_residual(f, s))
    return [
        CheckReport.from_error(
            "product-formula/leibniz", max(errs), _tol(cfg, TOL_JET),
            len(points), cfg.seed, _worst_detail(points, errs),
        )
    ]


# -- horosphere extension ----------------------------------------------------------

_HOLO_CORPUS = ("z", "z^2", "z^3", "z^3 - 2i*z^2 + z", "0.3i*z^3 + z^2")
_MIXED_CORPUS = ("z*conj(z)", "z^2*conj(z)", "z + z^2*conj(z)^2")


def _is_holomorphic(f: BoundaryField) -> bool:
    probes = (0.0, 0.4 + 0.3j, -0.7 + 0.9j, 1.1 - 0.6j)
    return max(f.holomorphy_defect(w) for w in probes) < 1e-9


def suite_horosphere(cfg: SuiteConfig) -> List[CheckReport]:
    rng = _rng(cfg)
    points = sample_points(rng, cfg.samples)
    cfg_field = BoundaryField(cfg.field)
    mixed = [BoundaryField(src) for src in _MIXED_CORPUS]
    holo = [BoundaryField(src) for src in _HOLO_CORPUS]
    if _is_holomorphic(cfg_field):
        holo.append(cfg_field)
    else:
        mixed.append(cfg_field)

    lap_errs, zero_errs, ds_errs, norm_errs = [], [], [], []
    for p in points:
        worst_lap = 0.0
        for f in mixed + holo:
            section = defo.horosphere_section(f, p)
            closed = defo.horosphere_laplacian_closed(f, p)
            got = np.array(section.laplacian().value(()))
            worst_lap = max(worst_lap, np.abs(got - closed.a).max())
        lap_errs.append(worst_lap)

        zero_errs.append(
            max(
                math.sqrt(defo.horosphere_section(f, p).laplacian().norm_sq_value())
                for f in holo
            )
        )
        ds_errs.append(
            max(
                defo.horosphere_section(f, p).d().residual_vs(
                    defo.horosphere_ds_closed(f, p)
                )
                for f in holo
            )
        )
        # the cubic makes the norm law exact: |f_zzz| t^2 = 6 t^2
        got = math.sqrt(defo.horosphere_ds_closed("z^3", p).norm_sq_value())
        norm_errs.append(abs(got - 6.0 * p.t**2) / (6.0 * p.t**2))

    reports = [
        CheckReport.from_error(
            "horosphere/laplacian-closed", max(lap_errs), _tol(cfg, TOL_JET),
            len(points), cfg.seed, _worst_detail(points, lap_errs),
        ),
        CheckReport.from_error(
            "horosphere/holomorphic-zero", max(zero_errs), _tol(cfg, TOL_JET),
            len(points), cfg.seed, _worst_detail(points, zero_errs),
        ),
        CheckReport.from_error(
            "horosphere/ds-closed", max(ds_errs), _tol(cfg, TOL_JET),
            len(points), cfg.seed, _worst_detail(points, ds_errs),
        ),
        CheckReport.from_error(
            "horosphere/ds-norm", max(norm_errs), _tol(cfg, 1e-10),
            len(points), cfg.seed, _worst_detail(points, norm_errs),
        ),
    ]

    # Leading constant of the laplacian norm: emitted, not asserted.  Only the
    # e^{-d} rate is checked, as height-independence of the measured constant.
    c_coarse = defo.measured_laplacian_constant("z*conj(z)", 0.0, 1e-2)
    c_fine = defo.measured_laplacian_constant("z*conj(z)", 0.0, 1e-3)
    rate_err = abs(c_coarse - c_fine) / c_fine
    reports.append(
        CheckReport.from_error(
            "horosphere/laplacian-constant", rate_err, _tol(cfg, 1e-3), 2, cfg.seed,
            [{"measured_constant": c_fine, "probe_heights": [1e-2, 1e-3]}],
        )
    )
    return reports


# -- parallel surfaces and the convex correction ------------------------------------


def suite_parallel(cfg: SuiteConfig) -> List[CheckReport]:
    rng = _rng(cfg)
    t_grid = [0.01, 0.05, 0.2, 0.5, 1.0]

    fixed_errs = [abs(defo.parallel_curvature(1.0, t) - 1.0) for t in t_grid]
    k0s = [float(rng.uniform(-0.9, 5.0)) for _ in range(cfg.samples)]
    one_errs = [abs(defo.parallel_curvature(k0, 1.0) - k0) for k0 in k0s]

    chain_errs = []
    for _ in range(cfg.samples):
        germ = SurfaceGerm(float(rng.uniform(-0.9, 3.0)), float(rng.uniform(-0.9, 3.0)))
        chain_errs.append(
            max(defo.chain_rule_residual(germ, t) for t in (0.25, 0.5, 1.0))
        )

    germ = SurfaceGerm(cfg.k1, cfg.k2)
    oracle_errs = []
    for t in (0.3, 0.5, 0.8):
        closed = defo.convex_correction(cfg.field, germ, t).dg3
        fd = defo.dg3_finite_difference(cfg.field, germ, t)
        oracle_errs.append(float(np.abs(closed - fd).max()))

    tol_exact = _tol(cfg, 1e-12)
    return [
        CheckReport.from_error(
            "parallel/fixed-point", max(fixed_errs), tol_exact, len(t_grid), cfg.seed
        ),
        CheckReport.from_error(
            "parallel/time-one", max(one_errs), tol_exact, len(k0s), cfg.seed
        ),
        CheckReport.from_error(
            "parallel/chain-rule", max(chain_errs), tol_exact, cfg.samples, cfg.seed
        ),
        CheckReport.from_error(
            "parallel/convex-oracle", max(oracle_errs), _tol(cfg, TOL_ORACLE),
            3, cfg.seed, [{"germ": [cfg.k1, cfg.k2], "heights": [0.3, 0.5, 0.8]}],
        ),
    ]


def suite_decay(cfg: SuiteConfig) -> List[CheckReport]:
    germ = SurfaceGerm(cfg.k1, cfg.k2)
    t_grid = (0.5, 0.2, 0.1, 0.05)
    reports = []
    for quantity in defo.DECAY_QUANTITIES:
        rows = defo.decay_probe(quantity, cfg.field, germ, t_grid)
        worst, bound = defo.decay_bound_data(rows)
        reports.append(
            CheckReport.from_error(
                f"decay/{quantity.replace('_', '-')}", worst, _tol(cfg, bound),
                len(rows), cfg.seed,
                [{"t": r.t, "ratio": r.ratio} for r in rows],
            )
        )
    return reports


# -- cusp ---------------------------------------------------------------------


def _cusp_points(rng: np.random.Generator, n: int) -> List[HPoint]:
    # the cusp region sits above the cutoff; sample the slab [1, 2]
    return [
        HPoint(float(rng.uniform(0, 1)), float(rng.uniform(0, 1)),
               float(rng.uniform(1.0, 2.0)))
        for _ in range(n)
    ]


def suite_cusp(cfg: SuiteConfig) -> List[CheckReport]:
    rng = _rng(cfg)
    torus = cusp_mod.CuspTorus(cfg.tau)
    c = cusp_mod.CuspDeformation(cfg.b1, cfg.b2)
    tau = torus.tau
    points = _cusp_points(rng, cfg.samples)

    disp_errs, dual_errs, norm_errs, hodge_errs = [], [], [], []
    for p in points:
        w, t = p.w, p.t
        f1 = cusp_mod.cusp_fiber(1, p)
        c1 = (w - w.conjugate()) / (2.0 * t)
        want1 = np.array([c1, -1j * c1, 0.5])
        f2 = cusp_mod.cusp_fiber(2, p)
        m2 = (w**3 - w) / (6.0 * t)
        pl2 = -t * w / 2.0
        want2 = np.array([m2 + pl2, 1j * (pl2 - m2), (3.0 * w * w - 1.0) / 6.0])
        disp_errs.append(
            max(np.abs(f1.a - want1).max(), np.abs(f2.a - want2).max())
        )

        s1, s2 = cusp_mod.cusp_basis_sections(tau)
        dual_errs.append(
            max(
                s1(p).d().residual_vs(cusp_mod.cusp_ds_closed(1, p)),
                s2(p).d().residual_vs(cusp_mod.cusp_ds_closed(2, p)),
            )
        )

        omega = cusp_mod.cusp_form(c, p)
        norm_errs.append(
            abs(omega.norm_sq_value() - cusp_mod.cusp_norm_sq(c, t))
        )
        trace = sum(omega.coeffs[(i,)][i - 1].value for i in (1, 2, 3))
        hodge_errs.append(
            max(
                omega.d().max_abs_value(),
                omega.delta().max_abs_value(),
                abs(trace),
            )
        )

    tol_closed = _tol(cfg, 1e-10)
    reports = [
        CheckReport.from_error(
            "cusp/display-sections", max(disp_errs), tol_closed,
            len(points), cfg.seed, _worst_detail(points, disp_errs),
        ),
        CheckReport.from_error(
            "cusp/ds-closed", max(dual_errs), tol_closed,
            len(points), cfg.seed, _worst_detail(points, dual_errs),
        ),
        CheckReport.from_error(
            "cusp/norm-closed", max(norm_errs), tol_closed,
            len(points), cfg.seed, _worst_detail(points, norm_errs),
        ),
        CheckReport.from_error(
            "cusp/hodge", max(hodge_errs), tol_closed,
            len(points), cfg.seed, _worst_detail(points, hodge_errs),
        ),
    ]

    # L2 integral vs the closed value, or expected divergence for b2 != 0
    result = cusp_mod.cusp_l2_integral(c, torus)
    b2_zero = abs(c.b2) == 0.0
    if result.diverges:
        reports.append(
            CheckReport.divergence(
                "cusp/l2", not b2_zero, 1, cfg.seed,
                [{"growth_exponent": result.growth_exponent}],
            )
        )
    else:
        closed = abs(c.b1) ** 2 * tau.imag / 2.0
        if not b2_zero:
            reports.append(
                CheckReport.from_error(
                    "cusp/l2", math.inf, _tol(cfg, TOL_QUAD), 1, cfg.seed,
                    [{"note": "divergence expected for b2 != 0 but not detected"}],
                )
            )
        else:
            scale = closed if closed > 0 else 1.0
            err = abs(result.value - closed) / scale
            reports.append(
                CheckReport.from_error(
                    "cusp/l2", err, _tol(cfg, TOL_QUAD), 1, cfg.seed,
                    [{"value": result.value, "closed_form": closed}],
                )
            )

    # interior vs half-boundary integral on the slab t in [1, 2]
    germ = lambda coords: cusp_mod.cusp_form(c, HPoint(*coords))
    bounds = [(0.0, 1.0), (0.0, tau.imag), (1.0, 2.0)]
    lhs, rhs = forms.boundary_norm_identity(germ, bounds)
    closed_slab = cusp_mod.cusp_slab_integral(c, torus, 1.0, 2.0)
    scale = closed_slab if closed_slab > 0 else 1.0
    reports.append(
        CheckReport.from_error(
            "cusp/boundary-slab", abs(lhs - rhs) / scale, _tol(cfg, 1e-4),
            1, cfg.seed,
            [{"interior": lhs, "half_boundary": rhs, "closed_form": closed_slab}],
        )
    )

    # automorphy residuals of the basis fields under both generators
    auto_errs = []
    fields = {1: cusp_mod.FIELD_ONE, 2: cusp_mod.FIELD_TWO}
    for index in (1, 2):
        for beta in (1.0 + 0.0j, tau):
            K = cusp_mod.automorphy_residual(index, beta)
            worst = 0.0
            for _ in range(5):
                z = complex(rng.normal(), rng.normal())
                sampled = fields[index].value(z) - fields[index].value(z - beta)
                worst = max(worst, abs(sampled - K(z)))
            auto_errs.append(worst)
    auto_errs.append(abs(cusp_mod.automorphy_residual(1, 1.0).coeffs).max())
    res_tau = cusp_mod.automorphy_residual(1, tau)
    auto_errs.append(abs(res_tau.p0 - 1j * tau.imag))
    reports.append(
        CheckReport.from_error(
            "cusp/automorphy", max(auto_errs), _tol(cfg, 1e-12),
            len(auto_errs), cfg.seed,
        )
    )

    # trace derivatives: closed values and the matrix-path oracle
    tr_errs = []
    cases = [
        (1, 1.0 + 0.0j, 0.0 + 0.0j),
        (1, tau, 0.0 + 0.0j),
        (2, 1.0 + 0.0j, -0.5 + 0.0j),
        (2, tau, -tau * tau / 2.0),
    ]
    details = []
    for index, beta, expected in cases:
        K = cusp_mod.automorphy_residual(index, beta)
        closed = cusp_mod.trace_derivative_parabolic(beta, K)
        oracle = _matrix_trace_slope(K, beta)
        tr_errs.append(abs(closed - expected))
        tr_errs.append(abs(oracle - closed))
        details.append({"basis": index, "beta": str(beta), "derivative": str(closed)})
    reports.append(
        CheckReport.from_error(
            "cusp/trace-derivative", max(tr_errs), _tol(cfg, 1e-8),
            len(cases), cfg.seed, details,
        )
    )

    teich_errs = []
    for _ in range(5):
        t_rand = complex(rng.normal(), 0.2 + 2.0 * abs(rng.normal()))
        _, length = cusp_mod.teichmuller_derivative(t_rand)
        teich_errs.append(abs(length - 1.0))
    reports.append(
        CheckReport.from_error(
            "cusp/teichmuller", max(teich_errs), _tol(cfg, 1e-12), 5, cfg.seed
        )
    )
    return reports


def _matrix_trace_slope(K: KillingField, beta: complex, h: float = 1e-4) -> complex:
    """Finite-difference trace derivative along exp(s X) applied to z + beta.

    Uses the raw SL2 parabolic matrix; the sign-normalized Mobius
    representative can sit on the -2 trace branch and is avoided here.
    """
    X = K.to_matrix()
    g0 = np.array([[1.0, beta], [0.0, 1.0]], dtype=complex)

    def tr(s: float) -> complex:
        return complex(np.trace(scipy.linalg.expm(s * X) @ g0))

    d1 = (tr(h) - tr(-h)) / (2.0 * h)
    d2 = (tr(h / 2.0) - tr(-h / 2.0)) / h
    return (4.0 * d2 - d1) / 3.0


# -- cone ---------------------------------------------------------------------


def suite_cone(cfg: SuiteConfig) -> List[CheckReport]:
    r_grid = (0.05, 0.1, 0.3, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0)
    curv_errs = [cone_mod.cone_curvature_check(r) for r in r_grid]

    tube = cone_mod.ConeTube(cfg.alpha, cfg.eps, cfg.longitude)
    meridian, longitude, area = cone_mod.tube_boundary_geometry(tube)
    quad = cone_mod.tube_area_quadrature(tube)
    area_err = abs(area - quad) / area

    small = cone_mod.ConeTube(cfg.alpha, 1e-6, cfg.longitude)
    m_small, _, _ = cone_mod.tube_boundary_geometry(small)
    limit_err = abs(m_small / 1e-6 - cfg.alpha) / cfg.alpha

    return [
        CheckReport.from_error(
            "cone/curvature", max(curv_errs), _tol(cfg, 1e-6),
            len(r_grid), cfg.seed,
            [{"r": r, "error": e} for r, e in zip(r_grid, curv_errs)],
        ),
        CheckReport.from_error(
            "cone/tube-area", area_err, _tol(cfg, 1e-8), 1, cfg.seed,
            [{"meridian": meridian, "longitude": longitude, "area": area}],
        ),
        CheckReport.from_error(
            "cone/meridian-limit", limit_err, _tol(cfg, 1e-8), 1, cfg.seed
        ),
    ]


# -- representation coordinates ------------------------------------------------


def _random_conjugator(rng: np.random.Generator) -> Mobius:
    while True:
        entries = 0.6 * rng.normal(size=4)
        try:
            return Mobius(1.0 + entries[0], entries[1], entries[2], 1.0 + entries[3])
        except ValueError:
            continue


_DIMENSION_TABLE = [
    ((0, 0, 1, 0, "lower_bound"), 4),
    ((0, 0, 2, 0, "lower_bound"), 5),
    ((0, 0, 0, 0, "lower_bound"), 3),
    ((0, 0, 3, -1, "lower_bound"), 9),
    ((0, 0, 0, -2, "lower_bound"), 9),
    ((1, 0, 0, -1, "smooth"), 4),
    ((0, 0, 0, 0, "smooth"), 0),
    ((2, 1, 0, -1, "smooth"), 6),
    ((4, 0, 0, -2, "smooth"), 10),
    ((0, 3, 0, -1, "smooth"), 6),
]


def suite_repvar(cfg: SuiteConfig) -> List[CheckReport]:
    rng = _rng(cfg)

    round_errs = []
    for _ in range(cfg.samples):
        ell = complex(rng.uniform(0.1, 2.0), rng.uniform(-2.8, 2.8))
        A = _random_conjugator(rng)
        M = A @ Mobius.scaling(cmath.exp(ell)) @ A.inverse()
        L = repvar.complex_length(M)
        X = repvar.trace_from_length(L)
        tr = M.trace()
        round_errs.append(min(abs(X - tr), abs(X + tr)))
        round_errs.append(abs(L - ell))
        theta = float(rng.uniform(0.1, math.pi - 0.1))
        B = _random_conjugator(rng)
        E = B @ Mobius.rotation(theta) @ B.inverse()
        LE = repvar.complex_length(E)
        XE = repvar.trace_from_length(LE)
        round_errs.append(min(abs(XE - E.trace()), abs(XE + E.trace())))
        round_errs.append(abs(LE - 1j * theta))

    par_errs = []
    for _ in range(5):
        beta = complex(rng.normal(), rng.normal())
        M = Mobius.translation(beta)
        par_errs.append(abs(repvar.complex_length(M)))

    deriv_errs = []
    for _ in range(5):
        l0 = complex(rng.uniform(0.4, 1.5), rng.uniform(-1.0, 1.0))
        cvel = complex(rng.normal(), rng.normal())
        path = lambda s, l0=l0, cvel=cvel: Mobius.scaling(cmath.exp(l0 + cvel * s))
        deriv_errs.append(abs(repvar.path_derivatives(path, "length") - cvel))
        got_tr = repvar.path_derivatives(path, "trace")
        want_tr = cvel * cmath.sinh(l0 / 2.0)
        deriv_errs.append(min(abs(got_tr - want_tr), abs(got_tr + want_tr)))

    dim_errs = [
        float(abs(repvar.expected_dimension(*args) - want))
        for args, want in _DIMENSION_TABLE
    ]

    return [
        CheckReport.from_error(
            "repvar/roundtrip", max(round_errs), _tol(cfg, 1e-10),
            cfg.samples, cfg.seed,
        ),
        CheckReport.from_error(
            "repvar/parabolic", max(par_errs), _tol(cfg, 1e-12), 5, cfg.seed
        ),
        CheckReport.from_error(
            "repvar/path-derivative", max(deriv_errs), _tol(cfg, 1e-8), 5, cfg.seed
        ),
        CheckReport.from_error(
            "repvar/dimension", max(dim_errs), _tol(cfg, 1e-12),
            len(_DIMENSION_TABLE), cfg.seed,
        ),
    ]


# -- dispatch -------------------------------------------------------------------

SUITES: Dict[str, Callable[[SuiteConfig], List[CheckReport]]] = {
    "frame-tables": suite_frame_tables,
    "weitzenbock": suite_weitzenbock,
    "real-weitzenbock": suite_real_weitzenbock,
    "product-formula": suite_product_formula,
    "horosphere": suite_horosphere,
    "parallel": suite_parallel,
    "decay": suite_decay,
    "cusp": suite_cusp,
    "cone": suite_cone,
    "repvar": suite_repvar,
}

SUITE_NAMES = tuple(SUITES)


def run_suite(name: str, cfg: SuiteConfig) -> List[CheckReport]:
    """Run one named suite; raises CheckConfigError for unknown names."""
    try:
        fn = SUITES[name]
    except KeyError:
        raise CheckConfigError(
            f"unknown suite {name!r}; available: {', '.join(SUITE_NAMES)}"
        ) from None
    return fn(cfg)
