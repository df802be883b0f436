"""Differential forms with jet coefficients over the upper half space.

Two form families share one calculus:

* :class:`EForm` - forms valued in the bundle of Killing-field germs.  A
  degree-k form holds, for every increasing coframe multi-index of length k,
  a triple of complex jets: the coefficients on the fiber basis (E1, E2, E3)
  (with R_i = i E_i absorbed into the complex coefficients).
* :class:`RealForm` - ordinary real-valued forms, used for the scalar
  coframe calculus (d-hat, delta-hat), the vector-field div/strain/curl
  decomposition, and the boundary pairing 2-form.

All first-order operators are assembled from one covariant derivative per
frame direction.  For the coefficient triple a = (a1, a2, a3) of a fiber
slot and direction j:

    nabla_j a = e_j(a) + ROT_j(a),   e_j = t d/dx_j  (frame derivative)

where ROT is the Levi-Civita rotation (ROT_1 a = (-a3, 0, a1), ROT_2 a =
(0, -a3, a2), ROT_3 = 0), applied both to fiber slots and, through coframe
transfer terms, to the form indices (nabla_1 w1 = w3, nabla_1 w3 = -w1,
nabla_2 w2 = w3, nabla_2 w3 = -w2).  The flat-bundle correction is the
algebraic action

    AD_1 a = (0, i a3, -i a2),  AD_2 a = (-i a3, 0, i a1),
    AD_3 a = (i a2, -i a1, 0),

and the exterior operators are

    d        = sum_j w^j ^ (nabla_j + AD_j)
    partial  = sum_j w^j ^ (nabla_j - AD_j)      (so partial = D - T)
    delta    = -sum_j i(e_j) (nabla_j - AD_j)
    D / T    = the nabla-only / AD-only parts of d
    D* / T*  = the nabla-only / AD-only parts of delta

With these conventions the constant sections (Killing fields evaluated
along the space) are d-flat, the frame tables dE_i and partial E_i come out
as rigid identities, and delta agrees with the dual route (-1)^k * partial *
on every degree.  The Hodge star uses the orientation w1 ^ w2 ^ w3 > 0,
which is the orientation that makes curl = -1/2 * d-hat match the complex
structure on Killing fields.
"""
from __future__ import annotations

from typing import Callable, Dict, Iterable, Tuple

import numpy as np

from .jets import Jet, JetError
from . import quadrature

__all__ = [
    "EForm",
    "RealForm",
    "FormError",
    "HodgePreconditionError",
    "INDEX_SETS",
    "pairing_wedge",
    "scalar_wedge",
    "frame_killing_tables",
    "vector_oneform",
    "grad_matrix",
    "grad_decompose",
    "divergence",
    "curl_vector_field",
    "strain",
    "hom_sym",
    "hom_skew",
    "hom_trace",
    "skew_to_vector",
    "vector_to_skew",
    "hom_values",
    "canonical_section",
    "structure_checks",
    "weitzenbock_residual",
    "mm_residual",
    "real_weitzenbock_residual",
    "product_formula_residual",
    "boundary_norm_identity",
]


class FormError(ValueError):
    pass


class HodgePreconditionError(FormError):
    """A boundary-identity input failed closed/co-closed/traceless checks."""

    def __init__(self, message: str, violation: float):
        super().__init__(f"{message} (max pointwise violation {violation:.3e})")
        self.violation = violation


INDEX_SETS: Dict[int, tuple] = {
    0: ((),),
    1: ((1,), (2,), (3,)),
    2: ((1, 2), (1, 3), (2, 3)),
    3: ((1, 2, 3),),
}

# Hodge star on increasing multi-indices, orientation w1^w2^w3 > 0.
_STAR = {
    (): ((1, 2, 3), 1.0),
    (1,): ((2, 3), 1.0),
    (2,): ((1, 3), -1.0),
    (3,): ((1, 2), 1.0),
    (1, 2): ((3,), 1.0),
    (1, 3): ((2,), -1.0),
    (2, 3): ((1,), 1.0),
    (1, 2, 3): ((), 1.0),
}

# Coframe transfer: nabla_j w^src = coef * w^tgt, listed per direction j.
_CONN = {
    1: ((1, 3, 1.0), (3, 1, -1.0)),
    2: ((2, 3, 1.0), (3, 2, -1.0)),
    3: (),
}


def _merge_sign(I: tuple, J: tuple) -> float:
    """Sign of sorting the concatenation of two increasing disjoint tuples."""
    inversions = sum(1 for i in I for j in J if i > j)
    return -1.0 if inversions % 2 else 1.0


def _replace_sorted(I: tuple, pos: int, new: int):
    """Replace I[pos] by new; return (sorted tuple, sign) or None if repeated."""
    rest = I[:pos] + I[pos + 1 :]
    if new in rest:
        return None
    out = tuple(sorted(rest + (new,)))
    # sign of the permutation taking (new, rest-order unchanged) into sorted order
    seq = I[:pos] + (new,) + I[pos + 1 :]
    inversions = sum(
        1 for a in range(len(seq)) for b in range(a + 1, len(seq)) if seq[a] > seq[b]
    )
    return out, (-1.0 if inversions % 2 else 1.0)


class _FormBase:
    """Shared machinery; subclasses fix the fiber dimension and AD action."""

    FIBER = 1
    __slots__ = ("degree", "point", "coeffs")

    def __init__(self, degree: int, point, coeffs: Dict[tuple, tuple] = None):
        if degree not in INDEX_SETS:
            raise FormError(f"degree must be 0..3, got {degree}")
        self.degree = degree
        self.point = point
        zero = Jet.const(point, 0.0)
        blank = (zero,) * self.FIBER
        table = {}
        coeffs = coeffs or {}
        for idx in INDEX_SETS[degree]:
            c = coeffs.get(idx, blank)
            c = tuple(c) if isinstance(c, (tuple, list, np.ndarray)) else (c,)
            if len(c) != self.FIBER:
                raise FormError(
                    f"coefficient at {idx} needs {self.FIBER} jets, got {len(c)}"
                )
            table[idx] = c
        self.coeffs = table

    # -- fiber hooks (overridden by EForm) ----------------------------------

    @staticmethod
    def _fiber_rot(a: tuple, j: int) -> tuple:
        return None  # no fiber rotation for scalar coefficients

    @staticmethod
    def _fiber_ad(a: tuple, j: int) -> tuple:
        return None

    # -- linear structure ----------------------------------------------------

    def _like(self, degree: int, coeffs: dict):
        return type(self)(degree, self.point, coeffs)

    def __add__(self, other):
        if type(other) is not type(self) or other.degree != self.degree:
            raise FormError("can only add forms of the same kind and degree")
        out = {
            idx: tuple(a + b for a, b in zip(self.coeffs[idx], other.coeffs[idx]))
            for idx in self.coeffs
        }
        return self._like(self.degree, out)

    def __sub__(self, other):
        return self + (other * -1.0)

    def __mul__(self, c):
        out = {idx: tuple(a * c for a in self.coeffs[idx]) for idx in self.coeffs}
        return self._like(self.degree, out)

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1.0

    def mul_jet(self, f: Jet):
        """Multiply every coefficient by a scalar jet."""
        out = {idx: tuple(a * f for a in self.coeffs[idx]) for idx in self.coeffs}
        return self._like(self.degree, out)

    # -- first-order pieces ----------------------------------------------------

    def _covariant(self, j: int) -> dict:
        """Coefficients of nabla_j applied to the whole form (same degree)."""
        tj = Jet.var_t(self.point)
        out = {idx: [Jet.const(self.point, 0.0)] * self.FIBER for idx in self.coeffs}
        for idx, a in self.coeffs.items():
            for m in range(self.FIBER):
                out[idx][m] = out[idx][m] + tj * a[m].diff(j - 1)
            rot = self._fiber_rot(a, j)
            if rot is not None:
                for m in range(self.FIBER):
                    out[idx][m] = out[idx][m] + rot[m]
            for src, tgt, coef in _CONN[j]:
                for pos, val in enumerate(idx):
                    if val != src:
                        continue
                    repl = _replace_sorted(idx, pos, tgt)
                    if repl is None:
                        continue
                    J, sign = repl
                    for m in range(self.FIBER):
                        out[J][m] = out[J][m] + (coef * sign) * a[m]
        return {idx: tuple(v) for idx, v in out.items()}

    def _ad_coeffs(self, j: int) -> dict:
        out = {}
        for idx, a in self.coeffs.items():
            ad = self._fiber_ad(a, j)
            if ad is None:
                ad = tuple(Jet.const(self.point, 0.0) for _ in range(self.FIBER))
            out[idx] = ad
        return out

    def _wedge_up(self, j: int, coeffs: dict, acc: dict):
        for idx, a in coeffs.items():
            if j in idx:
                continue
            below = sum(1 for v in idx if v < j)
            sign = -1.0 if below % 2 else 1.0
            J = tuple(sorted(idx + (j,)))
            cur = acc.get(J)
            if cur is None:
                acc[J] = tuple(sign * x for x in a)
            else:
                acc[J] = tuple(c + sign * x for c, x in zip(cur, a))

    def _contract_down(self, j: int, coeffs: dict, acc: dict, scale: float):
        for idx, a in coeffs.items():
            if j not in idx:
                continue
            pos = idx.index(j)
            sign = scale * (-1.0 if pos % 2 else 1.0)
            J = idx[:pos] + idx[pos + 1 :]
            cur = acc.get(J)
            if cur is None:
                acc[J] = tuple(sign * x for x in a)
            else:
                acc[J] = tuple(c + sign * x for c, x in zip(cur, a))

    def _first_order_up(self, nabla_scale: float, ad_scale: float):
        if self.degree >= 3:
            raise FormError("no 4-forms on a 3-manifold")
        acc: dict = {}
        for j in (1, 2, 3):
            if nabla_scale:
                cov = self._covariant(j)
                if nabla_scale != 1.0:
                    cov = {
                        idx: tuple(nabla_scale * x for x in a)
                        for idx, a in cov.items()
                    }
                self._wedge_up(j, cov, acc)
            if ad_scale:
                adc = self._ad_coeffs(j)
                if ad_scale != 1.0:
                    adc = {
                        idx: tuple(ad_scale * x for x in a) for idx, a in adc.items()
                    }
                self._wedge_up(j, adc, acc)
        return self._like(self.degree + 1, acc)

    def _first_order_down(self, nabla_scale: float, ad_scale: float):
        if self.degree == 0:
            raise FormError("codifferential-type operators need degree >= 1")
        acc: dict = {}
        for j in (1, 2, 3):
            if nabla_scale:
                self._contract_down(j, self._covariant(j), acc, nabla_scale)
            if ad_scale:
                self._contract_down(j, self._ad_coeffs(j), acc, ad_scale)
        return self._like(self.degree - 1, acc)

    # -- exterior operators -----------------------------------------------------

    def d(self):
        return self._first_order_up(1.0, 1.0)

    def partial(self):
        """The operator D - T (d with the algebraic action reversed)."""
        return self._first_order_up(1.0, -1.0)

    def D(self):
        return self._first_order_up(1.0, 0.0)

    def T(self):
        return self._first_order_up(0.0, 1.0)

    def delta(self):
        return self._first_order_down(-1.0, 1.0)

    def Dstar(self):
        return self._first_order_down(-1.0, 0.0)

    def Tstar(self):
        return self._first_order_down(0.0, 1.0)

    def delta_star_route(self):
        """(-1)^k * partial * - must agree with delta on every degree."""
        sign = -1.0 if self.degree % 2 else 1.0
        return self.star().partial().star() * sign

    def star(self):
        out = {}
        for idx, a in self.coeffs.items():
            J, sign = _STAR[idx]
            out[J] = tuple(sign * x for x in a)
        return self._like(3 - self.degree, out)

    def laplacian(self):
        """d delta + delta d with the degree-boundary terms dropped."""
        total = None
        if self.degree < 3:
            total = self.d().delta()
        if self.degree > 0:
            down = self.delta().d()
            total = down if total is None else total + down
        return total

    def laplacian_D(self):
        """Connection Laplacian D D* + D* D."""
        total = None
        if self.degree < 3:
            total = self.D().Dstar()
        if self.degree > 0:
            down = self.Dstar().D()
            total = down if total is None else total + down
        return total

    def H(self):
        """The algebraic operator T T* + T* T."""
        total = None
        if self.degree < 3:
            total = self.T().Tstar()
        if self.degree > 0:
            down = self.Tstar().T()
            total = down if total is None else total + down
        return total

    # -- values ------------------------------------------------------------------

    def value(self, idx: tuple) -> tuple:
        return tuple(a.value for a in self.coeffs[idx])

    def max_abs_value(self) -> float:
        worst = 0.0
        for a in self.coeffs.values():
            for x in a:
                worst = max(worst, abs(x.value))
        return worst

    def norm_sq_value(self) -> float:
        """Sum of squared moduli of all coefficient values at the basepoint."""
        total = 0.0
        for a in self.coeffs.values():
            for x in a:
                total += abs(x.value) ** 2
        return total

    def residual_vs(self, other) -> float:
        return (self - other).max_abs_value()


class EForm(_FormBase):
    """Killing-bundle-valued form: three complex jets per coframe index."""

    FIBER = 3
    __slots__ = ()

    @staticmethod
    def _fiber_rot(a: tuple, j: int):
        if j == 1:
            return (-a[2], a[0] * 0.0, a[0])
        if j == 2:
            return (a[0] * 0.0, -a[2], a[1])
        return None

    @staticmethod
    def _fiber_ad(a: tuple, j: int):
        if j == 1:
            return (a[0] * 0.0, 1j * a[2], -1j * a[1])
        if j == 2:
            return (-1j * a[2], a[0] * 0.0, 1j * a[0])
        return (1j * a[1], -1j * a[0], a[0] * 0.0)

    @classmethod
    def section(cls, point, jets: Iterable[Jet]) -> "EForm":
        return cls(0, point, {(): tuple(jets)})

    def sharp(self) -> "EForm":
        out = {idx: tuple(a.conj() for a in c) for idx, c in self.coeffs.items()}
        return EForm(self.degree, self.point, out)

    def real_part_values(self, idx: tuple) -> np.ndarray:
        return np.array([a.value.real for a in self.coeffs[idx]])


class RealForm(_FormBase):
    """Ordinary real-valued form with one jet per coframe index."""

    FIBER = 1
    __slots__ = ()

    @classmethod
    def from_function(cls, f: Jet) -> "RealForm":
        return cls(0, f.point, {(): (f,)})

    def scalar_value(self, idx: tuple) -> complex:
        return self.coeffs[idx][0].value


def pairing_wedge(alpha: EForm, beta: EForm) -> RealForm:
    """Wedge of two bundle-valued forms against the real fiber pairing.

    The fiber pairing is the real bilinear form Re(sum_m u_m v_m); the
    conjugation that makes it an inner product is expected to have been
    applied already via sharp() on one argument.
    """
    if alpha.point != beta.point:
        raise FormError("pairing_wedge needs a shared basepoint")
    deg = alpha.degree + beta.degree
    if deg > 3:
        raise FormError("pairing_wedge output degree exceeds 3")
    out = RealForm(deg, alpha.point)
    acc = {idx: out.coeffs[idx][0] for idx in out.coeffs}
    for I, a in alpha.coeffs.items():
        for J, b in beta.coeffs.items():
            if set(I) & set(J):
                continue
            sign = _merge_sign(I, J)
            K = tuple(sorted(I + J))
            prod = a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
            acc[K] = acc[K] + sign * prod.real
    return RealForm(deg, alpha.point, {k: (v,) for k, v in acc.items()})


def scalar_wedge(rho: RealForm, alpha: EForm) -> EForm:
    """Wedge of a real form with a bundle-valued form."""
    if rho.point != alpha.point:
        raise FormError("scalar_wedge needs a shared basepoint")
    deg = rho.degree + alpha.degree
    if deg > 3:
        raise FormError("scalar_wedge output degree exceeds 3")
    out = EForm(deg, alpha.point)
    acc = {idx: list(out.coeffs[idx]) for idx in out.coeffs}
    for I, c in rho.coeffs.items():
        for J, a in alpha.coeffs.items():
            if set(I) & set(J):
                continue
            sign = _merge_sign(I, J)
            K = tuple(sorted(I + J))
            for m in range(3):
                acc[K][m] = acc[K][m] + (sign * c[0]) * a[m]
    return EForm(deg, alpha.point, {k: tuple(v) for k, v in acc.items()})


# -- frame tables ------------------------------------------------------------


def frame_killing_tables(point) -> dict:
    """The nine 1-forms d E_i and partial E_i computed by the generic operators."""
    out = {"d": {}, "partial": {}}
    for i in range(3):
        jets = [Jet.const(point, 1.0 if m == i else 0.0) for m in range(3)]
        s = EForm.section(point, jets)
        out["d"][i + 1] = s.d()
        out["partial"][i + 1] = s.partial()
    return out


# -- vector-field calculus -----------------------------------------------------


def vector_oneform(v_jets: Iterable[Jet]) -> RealForm:
    """The 1-form with orthonormal-coframe coefficients equal to v's components."""
    v = tuple(v_jets)
    return RealForm(1, v[0].point, {(1,): (v[0],), (2,): (v[1],), (3,): (v[2],)})


def _rot_vec(v: tuple, j: int) -> tuple:
    zero = v[0] * 0.0
    if j == 1:
        return (-v[2], zero, v[0])
    if j == 2:
        return (zero, -v[2], v[1])
    return (zero, zero, zero)


def grad_matrix(v_jets: Iterable[Jet]) -> np.ndarray:
    """Hom(TM, TM) matrix of nabla v: G[i][j] = component of nabla_{e_j} v on e_i."""
    v = tuple(v_jets)
    tj = Jet.var_t(v[0].point)
    G = np.empty((3, 3), dtype=object)
    for j in range(1, 4):
        rot = _rot_vec(v, j)
        for i in range(3):
            G[i, j - 1] = tj * v[i].diff(j - 1) + rot[i]
    return G


def divergence(v_jets: Iterable[Jet]) -> Jet:
    """div v = trace of nabla v (equals minus the 1-form codifferential)."""
    G = grad_matrix(v_jets)
    return G[0, 0] + G[1, 1] + G[2, 2]


def curl_vector_field(v_jets: Iterable[Jet]) -> tuple:
    """curl v = -1/2 * d-hat of the associated 1-form, as component jets."""
    two_form = vector_oneform(v_jets).d()
    one_form = two_form.star() * (-0.5)
    return tuple(one_form.coeffs[(i,)][0] for i in (1, 2, 3))


def hom_sym(G: np.ndarray) -> np.ndarray:
    return (G + G.T) * 0.5


def hom_skew(G: np.ndarray) -> np.ndarray:
    return (G - G.T) * 0.5


def hom_trace(G: np.ndarray):
    return G[0, 0] + G[1, 1] + G[2, 2]


def strain(v_jets: Iterable[Jet]) -> np.ndarray:
    """Traceless symmetric part of nabla v."""
    G = grad_matrix(v_jets)
    S = hom_sym(G)
    third = hom_trace(G) * (1.0 / 3.0)
    for i in range(3):
        S[i, i] = S[i, i] - third
    return S


def skew_to_vector(A: np.ndarray) -> tuple:
    """Inverse of vector_to_skew on the skew part of A."""
    S = hom_skew(A)
    return (S[1, 2], S[2, 0], S[0, 1])


def vector_to_skew(u) -> np.ndarray:
    u = tuple(u)
    zero = u[0] * 0.0
    A = np.empty((3, 3), dtype=object)
    fill = [
        (0, 0, zero), (1, 1, zero), (2, 2, zero),
        (1, 2, u[0]), (2, 1, -u[0]),
        (2, 0, u[1]), (0, 2, -u[1]),
        (0, 1, u[2]), (1, 0, -u[2]),
    ]
    for i, j, val in fill:
        A[i, j] = val
    return A


def hom_values(G: np.ndarray) -> np.ndarray:
    """Evaluate a matrix of jets at the basepoint (complex values)."""
    out = np.zeros((3, 3), dtype=complex)
    for i in range(3):
        for j in range(3):
            out[i, j] = G[i, j].value
    return out


def grad_decompose(v_jets: Iterable[Jet]) -> tuple:
    """(div jet, strain matrix of jets, curl component jets) of a vector field."""
    v = tuple(v_jets)
    return divergence(v), strain(v), curl_vector_field(v)


# -- sections built from vector fields ---------------------------------------


def canonical_section(v_jets: Iterable[Jet]) -> EForm:
    """Section whose value is v and whose curl value is curl v at every point."""
    v = tuple(v_jets)
    w = curl_vector_field(v)
    return EForm.section(v[0].point, tuple(a - 1j * b for a, b in zip(v, w)))


def structure_checks(v_jets: Iterable[Jet], w_jets: Iterable[Jet] = None) -> dict:
    """Residuals of the pointwise structure identities for s = V - i curl V + i W.

    Returns a dict with:
      sym   - |sym(Re ds) - sym(nabla v)|
      skew  - |skew(Re ds) - skew-matrix of w|
      re_strain - |Re ds - strain(v)|            (meaningful when div v = 0, w = 0)
      im_strain - |Im ds + strain(curl v)|       (same proviso)
      div   - |div v| at the basepoint (diagnostic)
    """
    v = tuple(v_jets)
    point = v[0].point
    if w_jets is None:
        w = tuple(Jet.const(point, 0.0) for _ in range(3))
    else:
        w = tuple(w_jets)
    s = canonical_section(v)
    s = EForm.section(point, tuple(a + 1j * b for a, b in zip(s.coeffs[()], w)))
    ds = s.d()
    re_ds = np.empty((3, 3), dtype=object)
    im_ds = np.empty((3, 3), dtype=object)
    for j in (1, 2, 3):
        for i in range(3):
            re_ds[i, j - 1] = ds.coeffs[(j,)][i].real
            im_ds[i, j - 1] = ds.coeffs[(j,)][i].imag
    G = grad_matrix(v)
    sym_res = np.max(np.abs(hom_values(hom_sym(re_ds)) - hom_values(hom_sym(G))))
    skew_res = np.max(
        np.abs(hom_values(hom_skew(re_ds)) - hom_values(vector_to_skew(w)))
    )
    re_strain_res = np.max(np.abs(hom_values(re_ds) - hom_values(strain(v))))
    curl_v = curl_vector_field(v)
    im_strain_res = np.max(np.abs(hom_values(im_ds) + hom_values(strain(curl_v))))
    return {
        "sym": float(sym_res),
        "skew": float(skew_res),
        "re_strain": float(re_strain_res),
        "im_strain": float(im_strain_res),
        "div": abs(divergence(v).value),
    }


# -- composite residuals --------------------------------------------------------


def weitzenbock_residual(s) -> float:
    """Max coefficient of (laplacian - laplacian_D - H) applied to the form."""
    lap = s.laplacian()
    rhs = s.laplacian_D() + s.H()
    return lap.residual_vs(rhs)


def mm_residual(s) -> float:
    """Residual of T*D + D*T + TD* + DT* = 0."""
    terms = []
    if s.degree < 3:
        terms.append(s.D().Tstar())
        terms.append(s.T().Dstar())
    if s.degree > 0:
        terms.append(s.Dstar().T())
        terms.append(s.Tstar().D())
    total = terms[0]
    for extra in terms[1:]:
        total = total + extra
    return total.max_abs_value()


def real_weitzenbock_residual(v_jets: Iterable[Jet]) -> float:
    """Residual of the two-Laplacian identity on the real lift of v.

    Compares the fiber-real part of the bundle Laplacian of the section with
    real coefficients v against the 1-form Laplacian of v-hat plus 4 v-hat.
    """
    v = tuple(v_jets)
    point = v[0].point
    V = EForm.section(point, v)
    lhs = V.laplacian()
    rhs = vector_oneform(v).laplacian() + vector_oneform(v) * 4.0
    worst = 0.0
    for i in (1, 2, 3):
        lhs_i = lhs.coeffs[()][i - 1].value.real
        rhs_i = rhs.coeffs[(i,)][0].value
        worst = max(worst, abs(lhs_i - complex(rhs_i).real))
    return worst


def product_formula_residual(f: Jet, s: EForm) -> float:
    """Residual of Delta(f s) = (Delta-hat f) s - 2 *( *d-hat f ^ D s ) + f Delta s."""
    if s.degree != 0:
        raise FormError("the product formula applies to sections")
    from .fields import laplacian_hat_jet, dhat_jets

    if f.point != s.point:
        raise FormError("product formula needs a shared basepoint")
    lhs = s.mul_jet(f).laplacian()
    term1 = s.mul_jet(laplacian_hat_jet(f))
    df = RealForm(
        1,
        s.point,
        {(i,): (c,) for i, c in zip((1, 2, 3), dhat_jets(f))},
    )
    middle = scalar_wedge(df.star(), s.D()).star() * 2.0
    term3 = s.laplacian().mul_jet(f)
    return lhs.residual_vs(term1 - middle + term3)


# -- boundary identity ------------------------------------------------------------


_FACE_AXES = {0: (1, 2), 1: (0, 2), 2: (0, 1)}
_FACE_PERM_SIGN = {0: 1.0, 1: -1.0, 2: 1.0}
_COMPLEMENT = {0: (2, 3), 1: (1, 3), 2: (1, 2)}


def hodge_precheck(germ: Callable, bounds, tol: float, per_axis: int = 3) -> float:
    """Max closed/co-closed/traceless violation on a coarse node subsample."""
    import itertools

    axes = [np.linspace(b[0], b[1], per_axis + 2)[1:-1] for b in bounds]
    worst = 0.0
    for x, y, t in itertools.product(*axes):
        w = germ((x, y, t))
        worst = max(worst, w.d().max_abs_value())
        worst = max(worst, w.delta().max_abs_value())
        tr = sum(w.coeffs[(i,)][i - 1].value for i in (1, 2, 3))
        worst = max(worst, abs(tr))
        if worst > tol:
            break
    return worst


def boundary_norm_identity(
    germ: Callable,
    bounds,
    nodes: int = 16,
    precheck_tol: float = 1e-8,
) -> tuple:
    """Volume integral of the squared norm vs half the boundary pairing integral.

    germ maps a coordinate triple to a degree-1 EForm (with jets).  The form
    must be closed, co-closed and traceless on the region; this is spot
    checked first and a HodgePreconditionError reports the violation
    otherwise.  The boundary term integrates the 2-form obtained by pairing
    i*omega against omega-sharp over the six faces with the outward-induced
    orientation.
    """
    violation = hodge_precheck(germ, bounds, precheck_tol)
    if violation > precheck_tol:
        raise HodgePreconditionError(
            "form is not closed/co-closed/traceless on the region", violation
        )

    def interior(x, y, t):
        return germ((x, y, t)).norm_sq_value() / t**3

    lhs = quadrature.integrate_box(interior, bounds, nodes)

    rhs = 0.0
    for axis in range(3):
        u_ax, v_ax = _FACE_AXES[axis]
        comp = _COMPLEMENT[axis]
        for side in (0, 1):
            fixed = bounds[axis][side]
            outer = 1.0 if side == 1 else -1.0
            sign = outer * _FACE_PERM_SIGN[axis]

            def face_fn(u, v, _axis=axis, _u=u_ax, _v=v_ax, _fixed=fixed):
                coords = [0.0, 0.0, 0.0]
                coords[_axis] = _fixed
                coords[_u] = u
                coords[_v] = v
                w = germ(tuple(coords))
                eta = pairing_wedge(w * 1j, w.sharp())
                t = coords[2]
                return complex(eta.scalar_value(comp)).real / (t * t)

            rhs += sign * quadrature.integrate_face(
                face_fn, bounds[u_ax], bounds[v_ax], nodes
            )
    return lhs, 0.5 * rhs
