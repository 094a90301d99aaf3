"""Exact Cartan-test verification on the 12-dimensional model space.

The model space carries a coframe made of eight independent connection
1-forms θⁱⱼ of an sl(3)-valued connection (the trace relation eliminates
θ²₂ = −θ⁰₀ − θ¹₁) together with the coordinate forms dx¹..dx⁴.  The
structure equations are dθ = Θ − θ∧θ with curvature

    Θ = [[0, W₁ θ¹₀∧θ²₀, (W₂θ¹₀ + F₂θ²₁)∧θ²₀],
         [0, 0,          F₁ θ²₁∧θ²₀],
         [0, 0,          0]]

for four free scalars (W₁, W₂, F₁, F₂).  The differential ideal is generated
by χ₁ = θ²₀∧θ¹₀ − ω₀ and χ₂ = θ²₀∧θ²₁ − φ₀ with independence 3-form
ζ = θ¹₀∧θ²₀∧θ²₁.  This module computes, in exact rational arithmetic:
integral elements, polar spaces, Cartan characters, the codimension of the
conditions cut out near the reference flag, and the involutivity verdict.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .exterior import MultiVector, evaluate, wedge
from .scalars import scalar_to_json

DIM = 12

#: coframe slot order: eight connection components, then the coordinates
COFRAME_LABELS: Tuple[str, ...] = (
    "t00", "t01", "t02", "t10", "t11", "t12", "t20", "t21",
    "dx1", "dx2", "dx3", "dx4",
)

_SLOT: Dict[str, int] = {label: i + 1 for i, label in enumerate(COFRAME_LABELS)}
_THETA_SLOT: Dict[Tuple[int, int], int] = {
    (0, 0): 1, (0, 1): 2, (0, 2): 3,
    (1, 0): 4, (1, 1): 5, (1, 2): 6,
    (2, 0): 7, (2, 1): 8,
}


def slot_of(label: str) -> int:
    return _SLOT[label]


def frame_vector(slot: int) -> Tuple[Fraction, ...]:
    """Dual frame vector for a coframe slot (1-based)."""
    return tuple(Fraction(1 if i == slot else 0) for i in range(1, DIM + 1))


def theta(i: int, j: int) -> MultiVector:
    """Connection component θⁱⱼ as a 1-form; θ²₂ is the trace elimination."""
    if (i, j) == (2, 2):
        return MultiVector(DIM, 1, {(_THETA_SLOT[(0, 0)],): Fraction(-1), (_THETA_SLOT[(1, 1)],): Fraction(-1)})
    if (i, j) not in _THETA_SLOT:
        raise ValueError(f"no connection component ({i},{j})")
    return MultiVector.basis(DIM, (_THETA_SLOT[(i, j)],))


@dataclass(frozen=True)
class CurvatureSample:
    """Values of the four free curvature functions at the base point."""

    w1: Fraction
    w2: Fraction
    f1: Fraction
    f2: Fraction

    def __post_init__(self):
        for name in ("w1", "w2", "f1", "f2"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    def to_json(self) -> dict:
        return {
            "W1": scalar_to_json(self.w1),
            "W2": scalar_to_json(self.w2),
            "F1": scalar_to_json(self.f1),
            "F2": scalar_to_json(self.f2),
        }

    @classmethod
    def from_json(cls, data) -> "CurvatureSample":
        return cls(
            Fraction(str(data["W1"])), Fraction(str(data["W2"])),
            Fraction(str(data["F1"])), Fraction(str(data["F2"])),
        )


def sample_curvatures(n: int, seed: int = 0, bound: int = 10, denominator: int = 100) -> List[CurvatureSample]:
    """n deterministic pseudo-random rational samples in [-bound, bound]^4."""
    rng = random.Random(seed)
    out = []
    for _ in range(n):
        vals = [Fraction(rng.randint(-bound * denominator, bound * denominator), denominator) for _ in range(4)]
        out.append(CurvatureSample(*vals))
    return out


def _curvature_form(i: int, j: int, c: CurvatureSample) -> MultiVector:
    t10, t20, t21 = theta(1, 0), theta(2, 0), theta(2, 1)
    if (i, j) == (0, 1):
        return wedge(t10, t20) * c.w1
    if (i, j) == (0, 2):
        return wedge(t10, t20) * c.w2 + wedge(t21, t20) * c.f2
    if (i, j) == (1, 2):
        return wedge(t21, t20) * c.f1
    return MultiVector.zero(DIM, 2)


def structure_d(component: str, curvature: CurvatureSample) -> MultiVector:
    """dθⁱⱼ = Θⁱⱼ − θⁱₖ∧θᵏⱼ for connection components; d(dxˡ) = 0."""
    if component.startswith("dx"):
        if component not in _SLOT:
            raise ValueError(f"unknown coframe component {component!r}")
        return MultiVector.zero(DIM, 2)
    if component not in _SLOT or not component.startswith("t"):
        raise ValueError(f"unknown coframe component {component!r}")
    i, j = int(component[1]), int(component[2])
    acc = _curvature_form(i, j, curvature)
    for k in range(3):
        acc = acc - wedge(theta(i, k), theta(k, j))
    return acc


def omega0_model() -> MultiVector:
    """ω₀ = dx¹∧dx³ − dx²∧dx⁴ in the 12-dimensional coframe."""
    return MultiVector(DIM, 2, {(9, 11): Fraction(1), (10, 12): Fraction(-1)})


def phi0_model() -> MultiVector:
    """φ₀ = dx¹∧dx⁴ + dx²∧dx³ in the 12-dimensional coframe."""
    return MultiVector(DIM, 2, {(9, 12): Fraction(1), (10, 11): Fraction(1)})


@dataclass(frozen=True)
class ConstantIdeal:
    """Generators and their differentials frozen at a point."""

    generators: Tuple[MultiVector, ...]
    differentials: Tuple[MultiVector, ...]
    curvature: CurvatureSample

    @property
    def chi1(self) -> MultiVector:
        return self.generators[0]

    @property
    def chi2(self) -> MultiVector:
        return self.generators[1]

    @property
    def dchi1(self) -> MultiVector:
        return self.differentials[0]

    @property
    def dchi2(self) -> MultiVector:
        return self.differentials[1]


def ideal_at(curvature: CurvatureSample) -> ConstantIdeal:
    """χ₁ = θ²₀∧θ¹₀ − ω₀, χ₂ = θ²₀∧θ²₁ − φ₀ and their differentials."""
    t10, t20, t21 = theta(1, 0), theta(2, 0), theta(2, 1)
    chi1 = wedge(t20, t10) - omega0_model()
    chi2 = wedge(t20, t21) - phi0_model()
    dt20 = structure_d("t20", curvature)
    dt10 = structure_d("t10", curvature)
    dt21 = structure_d("t21", curvature)
    dchi1 = wedge(dt20, t10) - wedge(t20, dt10)
    dchi2 = wedge(dt20, t21) - wedge(t20, dt21)
    return ConstantIdeal((chi1, chi2), (dchi1, dchi2), curvature)


@dataclass(frozen=True)
class Flag:
    """Nested integral elements E¹ ⊂ E² ⊂ E³ given by up to three vectors."""

    vectors: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        vecs = tuple(tuple(Fraction(x) for x in v) for v in self.vectors)
        if any(len(v) != DIM for v in vecs):
            raise ValueError("flag vectors must have dimension 12")
        if len(vecs) > 3:
            raise ValueError("flags here go up to dimension 3")
        if vecs and linalg.rank([list(v) for v in vecs]) != len(vecs):
            raise ValueError("flag vectors are linearly dependent")
        object.__setattr__(self, "vectors", vecs)


def _named_vector(**components) -> Tuple[Fraction, ...]:
    v = [Fraction(0)] * DIM
    for label, value in components.items():
        v[_SLOT[label] - 1] = Fraction(value)
    return tuple(v)


def reference_flag() -> Flag:
    """The explicit flag used by the involutivity verification.

    v₁ = T¹₀+T²₀+T²₁+∂ₓ⁴, v₂ = T⁰₀+T¹₀−T²₁+∂ₓ¹+∂ₓ², v₃ = T¹₁−T²₁+∂ₓ¹.
    """
    return Flag((
        _named_vector(t10=1, t20=1, t21=1, dx4=1),
        _named_vector(t00=1, t10=1, t21=-1, dx1=1, dx2=1),
        _named_vector(t11=1, t21=-1, dx1=1),
    ))


def zeta_forms() -> Tuple[MultiVector, MultiVector, MultiVector]:
    """The independence covectors ζ¹ = θ¹₀, ζ² = θ²₀, ζ³ = θ²₁."""
    return theta(1, 0), theta(2, 0), theta(2, 1)


def independence_check(vectors: Sequence[Sequence[Fraction]]) -> bool:
    """ζ = ζ¹∧ζ²∧ζ³ nonzero on the span (exact determinant test)."""
    if len(vectors) != 3:
        raise ValueError("independence condition applies to 3-dimensional elements")
    z1, z2, z3 = zeta_forms()
    return evaluate(wedge(wedge(z1, z2), z3), vectors) != 0


def is_integral_element(vectors: Sequence[Sequence[Fraction]], ideal: ConstantIdeal) -> bool:
    """All generators vanish on pairs, all differentials on triples."""
    vecs = [list(v) for v in vectors]
    if vecs and linalg.rank(vecs) != len(vecs):
        raise ValueError("vectors are linearly dependent")
    n = len(vecs)
    for a in range(n):
        for b in range(a + 1, n):
            for chi in ideal.generators:
                if evaluate(chi, [vecs[a], vecs[b]]) != 0:
                    return False
    for a in range(n):
        for b in range(a + 1, n):
            for c in range(b + 1, n):
                for dchi in ideal.differentials:
                    if evaluate(dchi, [vecs[a], vecs[b], vecs[c]]) != 0:
                        return False
    return True


def _contract_two_form(form: MultiVector, v: Sequence[Fraction]) -> List[Fraction]:
    """Row of the covector w ↦ form(v, w)."""
    row = [Fraction(0)] * DIM
    for (a, b), c in form.terms.items():
        row[b - 1] += c * v[a - 1]
        row[a - 1] -= c * v[b - 1]
    return row


def _contract_three_form(form: MultiVector, va: Sequence[Fraction], vb: Sequence[Fraction]) -> List[Fraction]:
    """Row of the covector w ↦ form(va, vb, w)."""
    row = [Fraction(0)] * DIM
    for (a, b, c), coeff in form.terms.items():
        # expand det[[va_a, vb_a, w_a], [va_b, vb_b, w_b], [va_c, vb_c, w_c]]
        minors = (
            va[b - 1] * vb[c - 1] - va[c - 1] * vb[b - 1],
            -(va[a - 1] * vb[c - 1] - va[c - 1] * vb[a - 1]),
            va[a - 1] * vb[b - 1] - va[b - 1] * vb[a - 1],
        )
        row[a - 1] += coeff * minors[0]
        row[b - 1] += coeff * minors[1]
        row[c - 1] += coeff * minors[2]
    return row


def polar_space(vectors: Sequence[Sequence[Fraction]], ideal: ConstantIdeal) -> Tuple[List[List[Fraction]], int]:
    """Polar space H(E) of an integral element E and its codimension.

    H(E) = {v : χ(w, v) = 0 and dχ(w, w′, v) = 0 for all w, w′ ∈ E}; with no
    1-forms in the ideal, H(E⁰) is the whole tangent space.
    """
    vecs = [list(v) for v in vectors]
    if not is_integral_element(vecs, ideal):
        raise ValueError("polar space of a non-integral element")
    rows: List[List[Fraction]] = []
    for v in vecs:
        for chi in ideal.generators:
            rows.append(_contract_two_form(chi, v))
    for a in range(len(vecs)):
        for b in range(a + 1, len(vecs)):
            for dchi in ideal.differentials:
                rows.append(_contract_three_form(dchi, vecs[a], vecs[b]))
    if not rows:
        basis = [list(frame_vector(s)) for s in range(1, DIM + 1)]
        return basis, 0
    codim = linalg.rank(rows)
    return linalg.nullspace(rows), codim


@dataclass(frozen=True)
class Characters:
    """Cartan characters with the codimension bound and the test verdict."""

    s0: int
    s1: int
    s2: int
    s3: int
    codim_bound: int
    codim_actual: int
    involutive: bool

    def as_tuple(self) -> Tuple[int, int, int, int]:
        return (self.s0, self.s1, self.s2, self.s3)


def characters(flag: Flag, ideal: ConstantIdeal) -> Characters:
    """Characters s₀..s₃ from polar-space codimensions, plus Cartan's test.

    cₖ = codim H(Eᵏ); s₀ = c₀, s₁ = c₁−c₀, s₂ = c₂−c₁, s₃ = 9−c₂; the bound
    is c₀+c₁+c₂ and the ideal is involutive at the flag iff the actual
    codimension equals the bound.
    """
    if len(flag.vectors) != 3:
        raise ValueError("need a full flag (three vectors)")
    vecs = flag.vectors
    _, c0 = polar_space([], ideal)
    _, c1 = polar_space([vecs[0]], ideal)
    _, c2 = polar_space([vecs[0], vecs[1]], ideal)
    bound = c0 + c1 + c2
    actual = codim_at(flag, ideal).rank
    return Characters(
        s0=c0,
        s1=c1 - c0,
        s2=c2 - c1,
        s3=(DIM - 3) - c2,
        codim_bound=bound,
        codim_actual=actual,
        involutive=(actual == bound),
    )


def condition_forms(ideal: ConstantIdeal) -> List[MultiVector]:
    """The eight 3-forms dχᵢ, χᵢ∧ζᵏ imposing conditions on graph-like 3-planes."""
    out = list(ideal.differentials)
    for chi in ideal.generators:
        for z in zeta_forms():
            out.append(wedge(chi, z))
    return out


def complement_frame(flag: Flag) -> List[int]:
    """Deterministic 9-slot complement of span(flag) among the frame vectors.

    Greedy in slot order with incremental elimination: a frame vector is
    kept iff it is independent of the flag and the vectors kept so far.
    """
    rows: List[List[Fraction]] = []
    pivots: List[int] = []

    def try_add(vec: List[Fraction]) -> bool:
        v = list(vec)
        for row, p in zip(rows, pivots):
            if v[p] != 0:
                f = v[p]
                v = [a - f * b for a, b in zip(v, row)]
        piv = next((i for i, x in enumerate(v) if x != 0), None)
        if piv is None:
            return False
        inv = 1 / v[piv]
        rows.append([x * inv for x in v])
        pivots.append(piv)
        return True

    for v in flag.vectors:
        try_add(list(v))
    chosen: List[int] = []
    for slot in range(1, DIM + 1):
        if try_add(list(frame_vector(slot))):
            chosen.append(slot)
    return chosen


@dataclass(frozen=True)
class CodimResult:
    """Rank of the linearized conditions at the flag, with chart bookkeeping."""

    rank: int
    free_parameters: int
    pivot_columns: Tuple[int, ...]
    complement_slots: Tuple[int, ...]


def linearized_conditions(flag: Flag, forms: Sequence[MultiVector], complement_slots: Optional[Sequence[int]] = None) -> List[List[Fraction]]:
    """Jacobian of p ↦ (forms on (v₁+Σp·u, v₂+Σp·u, v₃+Σp·u)) at p = 0.

    Entry for (form, slot a, direction u): the form on the flag triple with
    vₐ replaced by u; computed through the three contracted covectors
    form(v_b, v_c, ·) instead of one evaluation per entry.
    """
    v1, v2, v3 = (list(v) for v in flag.vectors)
    slots = list(complement_slots) if complement_slots is not None else complement_frame(flag)
    jac: List[List[Fraction]] = []
    for form in forms:
        c23 = _contract_three_form(form, v2, v3)
        c13 = _contract_three_form(form, v1, v3)
        c12 = _contract_three_form(form, v1, v2)
        row = [c23[s - 1] for s in slots]          # form(u, v2, v3)
        row += [-c13[s - 1] for s in slots]        # form(v1, u, v3)
        row += [c12[s - 1] for s in slots]         # form(v1, v2, u)
        jac.append(row)
    return jac


def codim_at(flag: Flag, ideal: ConstantIdeal) -> CodimResult:
    """Codimension of the integral 3-planes near the flag, via the chart rank.

    Parametrizes nearby 3-planes as wₐ = vₐ + Σ pₐ^μ u_μ over the fixed
    9-vector complement, imposes the eight 3-forms and returns the exact rank
    of the linearization at p = 0; the solution set is a first-order graph
    over the remaining 27 − rank parameters.
    """
    if len(flag.vectors) != 3:
        raise ValueError("codimension is computed at a 3-dimensional element")
    if not is_integral_element(flag.vectors, ideal):
        raise ValueError("flag is not integral")
    if not independence_check(flag.vectors):
        raise ValueError("independence condition fails on the flag")
    forms = condition_forms(ideal)
    comp_slots = complement_frame(flag)
    jac = linearized_conditions(flag, forms, comp_slots)
    red, pivots = linalg.rref(jac)
    return CodimResult(
        rank=len(pivots),
        free_parameters=3 * len(comp_slots) - len(pivots),
        pivot_columns=tuple(pivots),
        complement_slots=tuple(comp_slots),
    )


def second_order_probe(flag: Flag, ideal: ConstantIdeal, seed: int = 0, step: float = 1e-3, newton_steps: int = 30) -> dict:
    """Floating evidence that the solution set is smooth near the flag.

    Perturbs along a random kernel direction of the linearization, Newton-
    projects back onto the solution set of the eight polynomial conditions
    and reports the numerical Jacobian rank at the projected point.
    """
    import numpy as np

    forms = condition_forms(ideal)
    jac0 = np.array([[float(x) for x in row] for row in linearized_conditions(flag, forms)])
    comp_slots = complement_frame(flag)
    comp = [np.array([float(x) for x in frame_vector(s)]) for s in comp_slots]
    vecs = [np.array([float(x) for x in v]) for v in flag.vectors]
    nparams = 3 * len(comp)

    def residual(p):
        triple = []
        for a in range(3):
            w = vecs[a].copy()
            for m, u in enumerate(comp):
                w = w + p[a * len(comp) + m] * u
            triple.append(w)
        return np.array([float(evaluate(f, [list(map(float, t)) for t in triple])) for f in forms])

    def num_jac(p, h=1e-6):
        base = residual(p)
        cols = []
        for k in range(nparams):
            dp = p.copy()
            dp[k] += h
            cols.append((residual(dp) - base) / h)
        return np.column_stack(cols)

    rng = np.random.default_rng(seed)
    _, _, vt = np.linalg.svd(jac0)
    kernel = vt[8:]
    direction = kernel.T @ rng.standard_normal(kernel.shape[0])
    direction /= np.linalg.norm(direction)
    p = step * direction
    for _ in range(newton_steps):
        r = residual(p)
        if np.max(np.abs(r)) < 1e-13:
            break
        j = num_jac(p)
        delta, *_ = np.linalg.lstsq(j, -r, rcond=None)
        p = p + delta
    final = residual(p)
    svals = np.linalg.svd(num_jac(p), compute_uv=False)
    rank = int((svals > 1e-7 * svals[0]).sum())
    return {
        "converged": bool(np.max(np.abs(final)) < 1e-10),
        "residual": float(np.max(np.abs(final))),
        "rank_at_solution": rank,
        "distance": float(np.linalg.norm(p)),
    }


# -- aggregate verification ---------------------------------------------------


EXPECTED_CHARACTERS = (0, 2, 4, 3)
EXPECTED_CODIM = 8


@dataclass(frozen=True)
class InvolutivityReport:
    entries: Tuple[dict, ...]
    all_pass: bool

    def to_json(self) -> dict:
        return {"samples": list(self.entries), "all_pass": self.all_pass}


def verify_sample(curvature: CurvatureSample) -> dict:
    """Full exact pipeline for one curvature sample."""
    ideal = ideal_at(curvature)
    flag = reference_flag()
    integral = is_integral_element(flag.vectors, ideal)
    zeta_ok = independence_check(flag.vectors)
    entry = dict(curvature.to_json())
    entry["integral"] = integral
    entry["zeta_nonzero"] = zeta_ok
    if integral and zeta_ok:
        ch = characters(flag, ideal)
        entry["characters"] = list(ch.as_tuple())
        entry["codim"] = ch.codim_actual
        entry["codim_bound"] = ch.codim_bound
        entry["involutive"] = ch.involutive
        entry["pass"] = (
            ch.as_tuple() == EXPECTED_CHARACTERS
            and ch.codim_actual == EXPECTED_CODIM
            and ch.codim_bound == EXPECTED_CODIM
            and ch.involutive
        )
    else:
        entry["pass"] = False
    return entry


def verify_involutivity(samples: Sequence[CurvatureSample]) -> InvolutivityReport:
    """Per-sample verification; failures are report entries, never raises."""
    entries = tuple(verify_sample(s) for s in samples)
    return InvolutivityReport(entries, all(e["pass"] for e in entries))
