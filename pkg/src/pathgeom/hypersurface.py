"""Parametrized hypersurfaces of ℝ⁴ ≅ ℂ² and the structures they inherit.

A map u : ℝ³ → ℝ⁴ with polynomial (or rational-function) components and
rank-3 Jacobian pulls the canonical spanning pair (ω₀, φ₀) back to two
2-forms β₁, β₂ on parameter space, encoded as β = b·⋆dx with
⋆dx = (dx²∧dx³, dx³∧dx¹, dx¹∧dx²).  Everything downstream is cross-product
arithmetic on the coefficient vectors b₁, b₂:

* adapted coframe  η₁ = (b₁×e)·dx, η₂ = e·dx, η₃ = (b₂×e)·dx with
  e = (b₁×b₂)/|b₁×b₂|, so that β₁ = η₂∧η₁ and β₂ = η₂∧η₃;
* line fields      P₁ ∥ b₁, P₂ ∥ b₂ (the kernels of {η₁,η₂} and {η₂,η₃});
* contact test     μ = (b₁×b₂)·dx, nondegenerate iff μ∧dμ ≠ 0, computed
  exactly as (b₁×b₂)·curl(b₁×b₂);
* CR structure     D = T ∩ J₀T with I the restriction of J₀, computed by
  exact intersection of column spans.

The line fields and the contact predicate are exact rational computations;
only the coframe normalization needs floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple, Union

from . import linalg
from .exterior import J0_MATRIX
from .polynomials import Poly, RatFunc

Coefficient = Union[Poly, RatFunc]
NVARS = 3


def _cross(a: Sequence, b: Sequence):
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def _dot(a: Sequence, b: Sequence):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


class _ParamMap:
    """Shared behaviour of polynomial and rational parametrizations."""

    components: Tuple[Coefficient, ...]

    def jacobian(self):
        """4×3 matrix of coefficient functions ∂uⁱ/∂xʲ."""
        return [[comp.diff(j) for j in range(NVARS)] for comp in self.components]

    def jacobian_at(self, point: Sequence) -> list:
        """Exact Jacobian at a rational point; raises on rank drop."""
        pt = [Fraction(x) for x in point]
        jac = [[entry(pt) for entry in row] for row in self.jacobian()]
        if linalg.rank(jac) != 3:
            raise ValueError(f"map is not an immersion at {point}: Jacobian rank < 3")
        return jac

    def value_at(self, point: Sequence) -> list:
        pt = [Fraction(x) for x in point]
        return [comp(pt) for comp in self.components]


@dataclass(frozen=True)
class PolyMap(_ParamMap):
    """Hypersurface parametrization with four polynomial components."""

    components: Tuple[Poly, Poly, Poly, Poly]
    domain_note: Optional[str] = None

    def __post_init__(self):
        if len(self.components) != 4 or any(not isinstance(c, Poly) for c in self.components):
            raise ValueError("PolyMap needs exactly four polynomial components")
        if any(c.nvars != NVARS for c in self.components):
            raise ValueError("components must be polynomials in three variables")

    def to_json(self) -> dict:
        return {
            "vars": ["x1", "x2", "x3"],
            "components": [c.to_json() for c in self.components],
        }

    @classmethod
    def from_json(cls, data) -> "PolyMap":
        comps = tuple(Poly.from_json(c, NVARS) for c in data["components"])
        return cls(comps)


@dataclass(frozen=True)
class RationalMap(_ParamMap):
    """Parametrization with rational-function components (e.g. sphere charts)."""

    components: Tuple[RatFunc, RatFunc, RatFunc, RatFunc]
    domain_note: Optional[str] = None

    def __post_init__(self):
        if len(self.components) != 4 or any(not isinstance(c, RatFunc) for c in self.components):
            raise ValueError("RationalMap needs exactly four rational-function components")
        if any(c.nvars != NVARS for c in self.components):
            raise ValueError("components must be rational functions in three variables")

    def to_json(self) -> dict:
        return {
            "vars": ["x1", "x2", "x3"],
            "type": "rational",
            "components": [{"num": c.num.to_json(), "den": c.den.to_json()} for c in self.components],
        }

    @classmethod
    def from_json(cls, data) -> "RationalMap":
        comps = tuple(
            RatFunc(Poly.from_json(c["num"], NVARS), Poly.from_json(c["den"], NVARS)) for c in data["components"]
        )
        return cls(comps)


ParamMap = Union[PolyMap, RationalMap]


def map_from_json(data) -> ParamMap:
    if data.get("type") == "rational":
        return RationalMap.from_json(data)
    return PolyMap.from_json(data)


@dataclass(frozen=True)
class PolyForm3:
    """2-form on ℝ³ with function coefficients, stored as β = b·⋆dx."""

    b: Tuple[Coefficient, Coefficient, Coefficient]

    @classmethod
    def from_wedge_coefficients(cls, coeffs) -> "PolyForm3":
        """Build from coefficients on dx¹∧dx², dx¹∧dx³, dx²∧dx³ (keys (i,j), i<j)."""
        def get(i, j):
            if (i, j) in coeffs:
                return coeffs[(i, j)]
            if (j, i) in coeffs:
                return -coeffs[(j, i)]
            return Poly.zero(NVARS)

        return cls((get(2, 3), -get(1, 3), get(1, 2)))

    def b_at(self, point: Sequence) -> Tuple[Fraction, Fraction, Fraction]:
        pt = [Fraction(x) for x in point]
        return tuple(c(pt) for c in self.b)

    def scaled(self, factor) -> "PolyForm3":
        return PolyForm3(tuple(c * factor for c in self.b))

    def to_json(self) -> dict:
        def enc(c):
            if isinstance(c, RatFunc):
                return {"num": c.num.to_json(), "den": c.den.to_json()}
            return c.to_json()

        return {"star_coefficients": [enc(c) for c in self.b]}


def star_coefficients(beta) -> tuple:
    """Coefficient vector b of β = b·⋆dx.

    Accepts a :class:`PolyForm3` or a mapping from index pairs (i,j) to
    coefficients (numbers or coefficient functions).
    """
    if isinstance(beta, PolyForm3):
        return beta.b
    coeffs = dict(beta)
    vals = list(coeffs.values())
    numeric = all(isinstance(v, (int, Fraction)) for v in vals)

    def get(i, j):
        if (i, j) in coeffs:
            return coeffs[(i, j)]
        if (j, i) in coeffs:
            return -coeffs[(j, i)]
        return Fraction(0) if numeric else Poly.zero(NVARS)

    b = (get(2, 3), -get(1, 3), get(1, 2))
    if numeric:
        return tuple(Fraction(x) for x in b)
    return b


def pullback_splitting(u: ParamMap) -> Tuple[PolyForm3, PolyForm3]:
    """β₁ = u*ω₀, β₂ = u*φ₀ by formal differentiation (exact)."""
    jac = u.jacobian()

    def minor(i1, i2, j1, j2):
        return jac[i1][j1] * jac[i2][j2] - jac[i1][j2] * jac[i2][j1]

    pairs = [(1, 2), (1, 3), (2, 3)]
    beta1 = {(j, k): minor(0, 2, j - 1, k - 1) - minor(1, 3, j - 1, k - 1) for j, k in pairs}
    beta2 = {(j, k): minor(0, 3, j - 1, k - 1) + minor(1, 2, j - 1, k - 1) for j, k in pairs}
    return PolyForm3.from_wedge_coefficients(beta1), PolyForm3.from_wedge_coefficients(beta2)


@dataclass(frozen=True)
class AdaptedCoframe:
    """Pointwise coframe (η₁, η₂, η₃) with β₁ = η₂∧η₁ and β₂ = η₂∧η₃."""

    point: Tuple[Fraction, ...]
    eta1: Tuple[float, float, float]
    eta2: Tuple[float, float, float]
    eta3: Tuple[float, float, float]

    def volume(self) -> float:
        """η₁∧η₂∧η₃ coefficient: det of the three covectors."""
        m = [self.eta1, self.eta2, self.eta3]
        return (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )


def adapted_coframe_at(beta1: PolyForm3, beta2: PolyForm3, point: Sequence, tol: float = 1e-10) -> AdaptedCoframe:
    """Cross-product coframe at a point where β₁, β₂ are independent."""
    pt = tuple(Fraction(x) for x in point)
    b1 = beta1.b_at(pt)
    b2 = beta2.b_at(pt)
    c = _cross(b1, b2)
    if all(x == 0 for x in c):
        raise ValueError(f"beta forms are dependent at {point}")
    b1f = tuple(float(x) for x in b1)
    b2f = tuple(float(x) for x in b2)
    cf = tuple(float(x) for x in c)
    norm = math.sqrt(_dot(cf, cf))
    e = tuple(x / norm for x in cf)
    eta1 = _cross(b1f, e)
    eta2 = e
    eta3 = _cross(b2f, e)
    frame = AdaptedCoframe(pt, eta1, eta2, eta3)
    scale = max(1.0, max(abs(x) for x in b1f + b2f))
    res = coframe_residual(frame, b1, b2)
    if res > tol * scale:
        raise ValueError(f"adapted coframe reconstruction residual {res:.3e}")
    if abs(frame.volume()) <= tol:
        raise ValueError("adapted coframe is degenerate")
    return frame


def coframe_residual(frame: AdaptedCoframe, b1: Sequence, b2: Sequence) -> float:
    """max |η₂∧η₁ − β₁|, |η₂∧η₃ − β₂| componentwise, in ⋆dx coordinates."""
    rec1 = _cross(frame.eta2, frame.eta1)
    rec2 = _cross(frame.eta2, frame.eta3)
    return max(
        max(abs(r - float(x)) for r, x in zip(rec1, b1)),
        max(abs(r - float(x)) for r, x in zip(rec2, b2)),
    )


@dataclass(frozen=True)
class PathGeometrySample:
    """The two line-field directions at a point, plus the contact flag."""

    point: Tuple[Fraction, ...]
    p1: Tuple[Fraction, Fraction, Fraction]
    p2: Tuple[Fraction, Fraction, Fraction]
    contact: bool


def contact_scalar(beta1: PolyForm3, beta2: PolyForm3) -> Coefficient:
    """The function (b₁×b₂)·curl(b₁×b₂); μ∧dμ = (that)·dx¹∧dx²∧dx³.

    Symbolic; fine for polynomial coefficients, can be large for rational
    ones (the per-point test below differentiates pointwise instead).
    """
    m = _cross(beta1.b, beta2.b)
    curl = (
        m[2].diff(1) - m[1].diff(2),
        m[0].diff(2) - m[2].diff(0),
        m[1].diff(0) - m[0].diff(1),
    )
    return _dot(m, curl)


def _value_and_gradient(f: Coefficient, pt) -> Tuple[Fraction, Tuple[Fraction, ...]]:
    """(f(pt), ∇f(pt)) exactly; quotient rule pointwise for rational f."""
    if isinstance(f, RatFunc):
        nv, dv = f.num(pt), f.den(pt)
        if dv == 0:
            raise ZeroDivisionError("denominator vanishes at the query point")
        grad = tuple((f.num.diff(i)(pt) * dv - nv * f.den.diff(i)(pt)) / (dv * dv) for i in range(NVARS))
        return nv / dv, grad
    return f(pt), tuple(f.diff(i)(pt) for i in range(NVARS))


def contact_value_at(beta1: PolyForm3, beta2: PolyForm3, point: Sequence) -> Fraction:
    """(μ∧dμ)/(dx¹∧dx²∧dx³) at the point, μ = (b₁×b₂)·dx; exact.

    Built from values and first derivatives of b₁, b₂ at the point only:
    ∂ᵢ(b₁×b₂) = ∂ᵢb₁×b₂ + b₁×∂ᵢb₂, then m·curl(m).
    """
    pt = [Fraction(x) for x in point]
    v1, g1 = zip(*(_value_and_gradient(c, pt) for c in beta1.b))
    v2, g2 = zip(*(_value_and_gradient(c, pt) for c in beta2.b))
    m = _cross(v1, v2)
    if all(x == 0 for x in m):
        raise ValueError(f"beta forms are dependent at {point}")
    dm = []
    for i in range(NVARS):
        d1 = tuple(g[i] for g in g1)
        d2 = tuple(g[i] for g in g2)
        a = _cross(d1, v2)
        b = _cross(v1, d2)
        dm.append(tuple(x + y for x, y in zip(a, b)))
    curl = (dm[1][2] - dm[2][1], dm[2][0] - dm[0][2], dm[0][1] - dm[1][0])
    return _dot(m, curl)


def is_nondegenerate_at(beta1: PolyForm3, beta2: PolyForm3, point: Sequence) -> bool:
    """Exact contact test: μ∧dμ ≠ 0 at the point, μ = (b₁×b₂)·dx.

    Invariant under rescaling β₁, β₂ by nonvanishing functions (the contact
    scalar picks up an even power of the factor).
    """
    return contact_value_at(beta1, beta2, point) != 0


def line_fields_at(beta1: PolyForm3, beta2: PolyForm3, point: Sequence) -> PathGeometrySample:
    """P₁ ∥ b₁(point), P₂ ∥ b₂(point); exact on rational inputs."""
    pt = tuple(Fraction(x) for x in point)
    p1 = beta1.b_at(pt)
    p2 = beta2.b_at(pt)
    if all(x == 0 for x in _cross(p1, p2)):
        raise ValueError(f"line fields are dependent at {point}")
    contact = is_nondegenerate_at(beta1, beta2, pt)
    return PathGeometrySample(pt, p1, p2, contact)


@dataclass(frozen=True)
class CRSample:
    """D = T ∩ J₀T with the restriction I of J₀ in the stored basis of D."""

    point: Tuple[Fraction, ...]
    d_basis: Tuple[Tuple[Fraction, ...], Tuple[Fraction, ...]]
    param_basis: Tuple[Tuple[Fraction, ...], Tuple[Fraction, ...]]
    i_matrix: Tuple[Tuple[Fraction, Fraction], Tuple[Fraction, Fraction]]


def _j0_apply(v: Sequence[Fraction]) -> list:
    return linalg.matvec([[Fraction(x) for x in row] for row in J0_MATRIX], list(v))


def cr_structure_at(u: ParamMap, point: Sequence) -> CRSample:
    """Exact CR data of the parametrized hypersurface at a rational point."""
    pt = tuple(Fraction(x) for x in point)
    jac = u.jacobian_at(pt)
    cols = [[jac[i][j] for i in range(4)] for j in range(3)]
    j0_cols = [_j0_apply(c) for c in cols]
    d_basis = linalg.intersect_spans(cols, j0_cols)
    if len(d_basis) != 2:
        raise ValueError(
            f"complex tangent point at {point}: dim(T ∩ J0·T) = {len(d_basis)}, expected 2"
        )
    d1, d2 = d_basis
    # express the restriction of J0 in the basis (d1, d2)
    basis_cols = linalg.transpose([d1, d2])
    i_cols = []
    for d in (d1, d2):
        sol = linalg.solve(basis_cols, _j0_apply(d))
        if sol is None:
            raise ValueError("D is not J0-invariant; inconsistent intersection")
        i_cols.append(sol)
    i_matrix = ((i_cols[0][0], i_cols[1][0]), (i_cols[0][1], i_cols[1][1]))
    sq = linalg.matmul([list(r) for r in i_matrix], [list(r) for r in i_matrix])
    if sq != [[Fraction(-1), Fraction(0)], [Fraction(0), Fraction(-1)]]:
        raise ValueError("restriction of J0 to D does not square to -Id")
    # pull the basis of D back to parameter space (du is injective)
    jac_cols = linalg.transpose(cols)  # 4x3 matrix with columns du/dx^j
    param_basis = []
    for d in (d1, d2):
        w = linalg.solve(jac_cols, list(d))
        if w is None:
            raise ValueError("D does not lie in the image of du; inconsistent data")
        param_basis.append(tuple(w))
    return CRSample(pt, (tuple(d1), tuple(d2)), tuple(param_basis), i_matrix)


def compatibility_check(u: ParamMap, point: Sequence, tol: float = 1e-9, betas=None) -> bool:
    """Whether the CR structure maps the P₁ line onto the P₂ line.

    Checks, exactly on rational inputs: J₀(du·P₁) spans du·P₂, and
    du·P₁ ⊕ du·P₂ = D.  The tolerance only matters for floating inputs
    (exact computations leave nothing to approximate).  ``betas`` can pass a
    precomputed pullback pair to avoid redoing the formal differentiation.
    """
    pt = tuple(Fraction(x) for x in point)
    beta1, beta2 = betas if betas is not None else pullback_splitting(u)
    sample = line_fields_at(beta1, beta2, pt)
    if not sample.contact:
        raise ValueError(f"hypersurface is degenerate (not contact) at {point}")
    jac = u.jacobian_at(pt)
    v1 = linalg.matvec(jac, list(sample.p1))
    v2 = linalg.matvec(jac, list(sample.p2))
    jv1 = _j0_apply(v1)
    if linalg.rank([jv1, v2]) != 1:
        return False
    cr = cr_structure_at(u, pt)
    return linalg.span_equal([v1, v2], [list(b) for b in cr.d_basis])


# -- per-point reports -------------------------------------------------------


def point_record(u: ParamMap, point: Sequence, tol: float = 1e-9, betas=None) -> dict:
    """One JSON-ready record per query point; degeneracies are flagged, not fatal."""
    pt = tuple(Fraction(x) for x in point)
    rec: dict = {"point": [f"{x.numerator}/{x.denominator}" for x in pt]}
    try:
        beta1, beta2 = betas if betas is not None else pullback_splitting(u)
        u.jacobian_at(pt)
        b1 = beta1.b_at(pt)
        b2 = beta2.b_at(pt)
        rec["b1"] = [f"{x.numerator}/{x.denominator}" for x in b1]
        rec["b2"] = [f"{x.numerator}/{x.denominator}" for x in b2]
        independent = any(x != 0 for x in _cross(b1, b2))
        rec["independent"] = independent
        if not independent:
            rec["error"] = "dependent pullbacks"
            return rec
        frame = adapted_coframe_at(beta1, beta2, pt, tol=max(tol, 1e-10))
        rec["coframe"] = {
            "eta1": list(frame.eta1),
            "eta2": list(frame.eta2),
            "eta3": list(frame.eta3),
        }
        sample = line_fields_at(beta1, beta2, pt)
        rec["P1"] = [f"{x.numerator}/{x.denominator}" for x in sample.p1]
        rec["P2"] = [f"{x.numerator}/{x.denominator}" for x in sample.p2]
        rec["contact"] = sample.contact
        cr = cr_structure_at(u, pt)
        rec["cr"] = {
            "D": [[f"{x.numerator}/{x.denominator}" for x in b] for b in cr.d_basis],
            "I": [[f"{x.numerator}/{x.denominator}" for x in row] for row in cr.i_matrix],
        }
        rec["compatible"] = compatibility_check(u, pt, tol, betas=(beta1, beta2)) if sample.contact else None
    except (ValueError, ZeroDivisionError) as exc:
        rec["error"] = str(exc)
    return rec


def sample_report(u: ParamMap, points: Sequence[Sequence], tol: float = 1e-9) -> list:
    betas = pullback_splitting(u)
    return [point_record(u, p, tol, betas=betas) for p in points]


# -- named models ------------------------------------------------------------


def heisenberg_model() -> PolyMap:
    """u(t,w₁,w₂) = (w₁, w₂, t, w₁²+w₂²) with variables ordered (t,w₁,w₂)."""
    t = Poly.variable(0, NVARS)
    w1 = Poly.variable(1, NVARS)
    w2 = Poly.variable(2, NVARS)
    return PolyMap((w1, w2, t, w1 * w1 + w2 * w2), domain_note="all of R^3")


def affine_plane_model() -> PolyMap:
    """u(x) = (x¹, x², x³, 0): everywhere contact-degenerate."""
    x1 = Poly.variable(0, NVARS)
    x2 = Poly.variable(1, NVARS)
    x3 = Poly.variable(2, NVARS)
    return PolyMap((x1, x2, x3, Poly.zero(NVARS)), domain_note="all of R^3")


def sphere_chart_model() -> RationalMap:
    """Rational chart of the unit sphere S³ ⊂ ℝ⁴ via the Cayley transform.

    u = ((1−q)/(1+q), 2x¹/(1+q), 2x²/(1+q), 2x³/(1+q)) with q = |x|²;
    |u| = 1 identically and the chart covers S³ minus one point.
    """
    xs = [Poly.variable(i, NVARS) for i in range(NVARS)]
    q = sum((x * x for x in xs), Poly.zero(NVARS))
    den = Poly.constant(1, NVARS) + q
    num0 = Poly.constant(1, NVARS) - q
    comps = (RatFunc(num0, den),) + tuple(RatFunc(2 * x, den) for x in xs)
    return RationalMap(comps, domain_note="all of R^3 (chart misses one point of S^3)")
