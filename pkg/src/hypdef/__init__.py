"""Verification-grade calculus for deformations of hyperbolic 3-manifolds.

Layout:
  halfspace     upper half-space model, Mobius action, frames
  jets          truncated Taylor jets in (x, y, t)
  fields        boundary/field expression parsing and flat-metric operators
  killing       Killing fields, the bundle fiber, canonical lifts
  quadrature    Gauss-Legendre rules, boxes, improper tails
  forms         bundle-valued forms: d, codifferential, Hodge star, Laplacians
  deformations  horosphere extensions, parallel surfaces, decay, Epstein map
  cusp          rank-two cusp deformations and their L2 theory
  cone          cone-singularity metric and tube geometry
  repvar        complex length, trace coordinates, dimension counts
  checks        named verification suites over seeded grids
  reporting     check reports and serialization
  cli           `hypdef verify` entry point
"""

from .cone import ConeTube, cone_curvature_check, cone_metric_eval
from .cusp import (
    CuspDeformation,
    CuspTorus,
    automorphy_residual,
    cusp_basis_sections,
    cusp_form,
    cusp_l2_integral,
    teichmuller_derivative,
    trace_derivative_parabolic,
)
from .deformations import (
    HOROSPHERE_GERM,
    BoundaryField,
    SurfaceGerm,
    boundary_projection,
    canonical_lift_boundary,
    convex_correction,
    decay_bounded,
    decay_probe,
    epstein_map,
    horosphere_ds_closed,
    horosphere_extend,
    horosphere_laplacian_closed,
    horosphere_section,
    l2_end_estimate,
    osculating_mobius,
    parallel_curvature,
)
from .fields import FieldExpr
from .forms import EForm, RealForm
from .halfspace import INFINITY, HPoint, Mobius, frame_at, hyp_distance
from .jets import Jet
from .killing import FiberElement, KillingField, canonical_lift_point, eval_killing
from .repvar import (
    complex_length,
    expected_dimension,
    path_derivatives,
    trace_from_length,
)
from .checks import SuiteConfig, run_suite
from .reporting import CheckReport, exit_code, report_emit

__version__ = "0.1.0"

__all__ = [
    "BoundaryField",
    "CheckReport",
    "ConeTube",
    "CuspDeformation",
    "CuspTorus",
    "EForm",
    "FiberElement",
    "FieldExpr",
    "HOROSPHERE_GERM",
    "HPoint",
    "INFINITY",
    "Jet",
    "KillingField",
    "Mobius",
    "RealForm",
    "SuiteConfig",
    "SurfaceGerm",
    "automorphy_residual",
    "boundary_projection",
    "canonical_lift_boundary",
    "canonical_lift_point",
    "complex_length",
    "cone_curvature_check",
    "cone_metric_eval",
    "convex_correction",
    "cusp_basis_sections",
    "cusp_form",
    "cusp_l2_integral",
    "decay_bounded",
    "decay_probe",
    "epstein_map",
    "eval_killing",
    "exit_code",
    "expected_dimension",
    "frame_at",
    "horosphere_ds_closed",
    "horosphere_extend",
    "horosphere_laplacian_closed",
    "horosphere_section",
    "hyp_distance",
    "l2_end_estimate",
    "osculating_mobius",
    "parallel_curvature",
    "path_derivatives",
    "report_emit",
    "run_suite",
    "teichmuller_derivative",
    "trace_derivative_parabolic",
    "trace_from_length",
    "__version__",
]
