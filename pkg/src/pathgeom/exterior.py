"""Graded exterior algebra over finite-dimensional real spaces.

The central object is :class:`MultiVector`, a homogeneous element of
Λᵏ(ℝⁿ)* stored sparsely: a map from strictly increasing 1-based index
tuples to scalars.  Index tuples are sign-normalized at construction, so
equality of values is plain dictionary equality.  Coefficients are either
exact rationals or floats (see :mod:`pathgeom.scalars`); every operation
stays exact when all of its inputs are exact.

The dimension-4 specifics live at the bottom: the wedge pairing
⟨ω,φ⟩ defined by ω∧φ = ⟨ω,φ⟩ε for a chosen volume form ε, and its split
(3,3) signature on Λ²(ℝ⁴)*.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from . import linalg
from .scalars import Scalar, is_exact, scalar_from_json, scalar_to_json, to_scalar

MIN_DIM = 3
MAX_DIM = 12

IndexTuple = Tuple[int, ...]


def _normalize_indices(indices: Sequence[int]) -> Tuple[IndexTuple, int]:
    """Sort an index tuple, returning (sorted tuple, permutation sign).

    Sign 0 flags a repeated index (the monomial vanishes).
    """
    idx = list(indices)
    sign = 1
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] >= idx[j]:
            if idx[j - 1] == idx[j]:
                return tuple(idx), 0
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    return tuple(idx), sign


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _det(rows) -> Scalar:
    """Determinant of a small square matrix of scalars (exact if inputs are)."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    if n == 3:
        return (
            rows[0][0] * (rows[1][1] * rows[2][2] - rows[1][2] * rows[2][1])
            - rows[0][1] * (rows[1][0] * rows[2][2] - rows[1][2] * rows[2][0])
            + rows[0][2] * (rows[1][0] * rows[2][1] - rows[1][1] * rows[2][0])
        )
    total = None
    for perm in permutations(range(n)):
        term = _perm_sign(perm)
        for i, j in enumerate(perm):
            term = term * rows[i][j]
        total = term if total is None else total + term
    return total


class MultiVector:
    """Homogeneous degree-k element of the exterior algebra on (ℝⁿ)*."""

    __slots__ = ("dim", "degree", "terms")

    def __init__(self, dim: int, degree: int, terms: Mapping[IndexTuple, Scalar]):
        if not MIN_DIM <= dim <= MAX_DIM:
            raise ValueError(f"dimension must be between {MIN_DIM} and {MAX_DIM}, got {dim}")
        if not 0 <= degree <= dim:
            raise ValueError(f"degree must be between 0 and {dim}, got {degree}")
        clean: Dict[IndexTuple, Scalar] = {}
        for idx, coeff in terms.items():
            idx = tuple(idx)
            if len(idx) != degree:
                raise ValueError(f"index tuple {idx} does not have degree {degree}")
            if any(idx[i] >= idx[i + 1] for i in range(len(idx) - 1)):
                raise ValueError(f"index tuple {idx} is not strictly increasing")
            if idx and not (1 <= idx[0] and idx[-1] <= dim):
                raise ValueError(f"index tuple {idx} out of range for dim {dim}")
            c = to_scalar(coeff)
            if c != 0:
                clean[idx] = c
        self.dim = dim
        self.degree = degree
        self.terms = clean

    # -- construction -----------------------------------------------------

    @classmethod
    def from_terms(cls, dim: int, terms: Iterable[Tuple[Sequence[int], Scalar]], degree: int | None = None) -> "MultiVector":
        """Build from (indices, coefficient) pairs; indices may be unsorted."""
        acc: Dict[IndexTuple, Scalar] = {}
        deg = degree
        for indices, coeff in terms:
            idx, sign = _normalize_indices(indices)
            if deg is None:
                deg = len(idx)
            if len(idx) != deg:
                raise ValueError("mixed degrees in term list")
            if sign == 0:
                continue
            c = sign * to_scalar(coeff)
            acc[idx] = acc.get(idx, Fraction(0)) + c
        if deg is None:
            raise ValueError("cannot infer degree from an empty term list; pass degree=")
        return cls(dim, deg, acc)

    @classmethod
    def zero(cls, dim: int, degree: int) -> "MultiVector":
        return cls(dim, degree, {})

    @classmethod
    def basis(cls, dim: int, indices: Sequence[int]) -> "MultiVector":
        """The basis monomial e^{i₁}∧…∧e^{iₖ}."""
        return cls.from_terms(dim, [(tuple(indices), Fraction(1))], degree=len(indices))

    @classmethod
    def one_form(cls, components: Sequence[Scalar]) -> "MultiVector":
        """Covector with the given components in the dual basis."""
        return cls(len(components), 1, {(i + 1,): to_scalar(c) for i, c in enumerate(components) if to_scalar(c) != 0})

    # -- basic queries -----------------------------------------------------

    def coefficient(self, indices: Sequence[int]) -> Scalar:
        """Coefficient on an index tuple, sign-normalizing unsorted input."""
        idx, sign = _normalize_indices(indices)
        if sign == 0:
            return Fraction(0)
        return sign * self.terms.get(idx, Fraction(0))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_exact(self) -> bool:
        return all(is_exact(c) for c in self.terms.values())

    def norm_inf(self) -> float:
        return max((abs(float(c)) for c in self.terms.values()), default=0.0)

    def components(self) -> list:
        """Coefficient vector over all increasing tuples, in lexicographic order."""
        return [self.terms.get(idx, Fraction(0)) for idx in combinations(range(1, self.dim + 1), self.degree)]

    # -- arithmetic --------------------------------------------------------

    def _check_compatible(self, other: "MultiVector"):
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
        if self.degree != other.degree:
            raise ValueError(f"degree mismatch: {self.degree} vs {other.degree}")

    def __add__(self, other: "MultiVector") -> "MultiVector":
        self._check_compatible(other)
        acc = dict(self.terms)
        for idx, c in other.terms.items():
            acc[idx] = acc.get(idx, Fraction(0)) + c
        return MultiVector(self.dim, self.degree, acc)

    def __sub__(self, other: "MultiVector") -> "MultiVector":
        return self + (-other)

    def __neg__(self) -> "MultiVector":
        return MultiVector(self.dim, self.degree, {i: -c for i, c in self.terms.items()})

    def __mul__(self, scalar) -> "MultiVector":
        s = to_scalar(scalar)
        return MultiVector(self.dim, self.degree, {i: s * c for i, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiVector):
            return NotImplemented
        return self.dim == other.dim and self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        return hash((self.dim, self.degree, tuple(sorted(self.terms.items()))))

    def __repr__(self) -> str:
        if self.is_zero:
            return f"MultiVector(dim={self.dim}, degree={self.degree}, 0)"
        parts = []
        for idx in sorted(self.terms):
            mono = "∧".join(f"e{i}" for i in idx) if idx else "1"
            parts.append(f"{self.terms[idx]}·{mono}")
        return f"MultiVector({' + '.join(parts)})"

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "degree": self.degree,
            "terms": [{"idx": list(idx), "c": scalar_to_json(c)} for idx, c in sorted(self.terms.items())],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "MultiVector":
        return cls.from_terms(
            int(data["dim"]),
            [(tuple(t["idx"]), scalar_from_json(t["c"])) for t in data["terms"]],
            degree=int(data["degree"]),
        )


@dataclass(frozen=True)
class VolumeForm:
    """Volume form on ℝ⁴: ε = c·e¹∧e²∧e³∧e⁴ with c ≠ 0."""

    coefficient: Scalar = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "coefficient", to_scalar(self.coefficient))
        if self.coefficient == 0:
            raise ValueError("volume form must be nonzero")

    def as_form(self) -> MultiVector:
        return MultiVector(4, 4, {(1, 2, 3, 4): self.coefficient})

    def flipped(self) -> "VolumeForm":
        return VolumeForm(-self.coefficient)

    @classmethod
    def from_form(cls, form: MultiVector) -> "VolumeForm":
        if form.dim != 4 or form.degree != 4:
            raise ValueError("volume form must be a 4-form on a 4-space")
        return cls(form.coefficient((1, 2, 3, 4)))


DEFAULT_VOLUME = VolumeForm(Fraction(1))


@dataclass(frozen=True)
class LinearMap:
    """Linear map ℝᵐ → ℝⁿ given by an n×m scalar matrix."""

    matrix: Tuple[Tuple[Scalar, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(to_scalar(x) for x in row) for row in self.matrix)
        if not rows or any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("matrix must be rectangular and nonempty")
        object.__setattr__(self, "matrix", rows)

    @property
    def target_dim(self) -> int:
        return len(self.matrix)

    @property
    def source_dim(self) -> int:
        return len(self.matrix[0])

    @property
    def is_exact(self) -> bool:
        return all(is_exact(x) for row in self.matrix for x in row)

    @classmethod
    def identity(cls, n: int) -> "LinearMap":
        return cls(tuple(tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n)))

    def apply(self, v: Sequence[Scalar]) -> list:
        if len(v) != self.source_dim:
            raise ValueError("vector has wrong dimension")
        return [sum(a * to_scalar(x) for a, x in zip(row, v)) for row in self.matrix]

    def compose(self, other: "LinearMap") -> "LinearMap":
        """self ∘ other (apply ``other`` first)."""
        if other.target_dim != self.source_dim:
            raise ValueError("composition dimension mismatch")
        rows = [
            [sum(self.matrix[i][k] * other.matrix[k][j] for k in range(self.source_dim)) for j in range(other.source_dim)]
            for i in range(self.target_dim)
        ]
        return LinearMap(tuple(tuple(r) for r in rows))

    def rank(self) -> int:
        if self.is_exact:
            return linalg.rank([[Fraction(x) for x in row] for row in self.matrix])
        import numpy as np

        return int(np.linalg.matrix_rank(np.array(self.matrix, dtype=float)))

    def det(self) -> Scalar:
        if self.source_dim != self.target_dim:
            raise ValueError("determinant of a non-square map")
        return _det([list(r) for r in self.matrix])

    def is_injective(self) -> bool:
        return self.rank() == self.source_dim

    def inverse(self) -> "LinearMap":
        if self.source_dim != self.target_dim:
            raise ValueError("inverse of a non-square map")
        if self.is_exact:
            inv = linalg.inverse([[Fraction(x) for x in row] for row in self.matrix])
            return LinearMap(tuple(tuple(r) for r in inv))
        import numpy as np

        inv = np.linalg.inv(np.array(self.matrix, dtype=float))
        return LinearMap(tuple(tuple(float(x) for x in row) for row in inv))


# -- operations -----------------------------------------------------------


def wedge(a: MultiVector, b: MultiVector) -> MultiVector:
    """Wedge product a∧b.

    Degree adds; a degree sum exceeding the ambient dimension is rejected
    rather than silently returning zero.
    """
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    deg = a.degree + b.degree
    if deg > a.dim:
        raise ValueError(f"degree overflow: {a.degree}+{b.degree} exceeds dim {a.dim}")
    acc: Dict[IndexTuple, Scalar] = {}
    for ia, ca in a.terms.items():
        for ib, cb in b.terms.items():
            idx, sign = _normalize_indices(ia + ib)
            if sign == 0:
                continue
            c = sign * ca * cb
            acc[idx] = acc.get(idx, Fraction(0)) + c
    return MultiVector(a.dim, deg, acc)


def evaluate(form: MultiVector, vectors: Sequence[Sequence[Scalar]]) -> Scalar:
    """Evaluate a degree-k form on k vectors (fully antisymmetric, multilinear)."""
    if len(vectors) != form.degree:
        raise ValueError(f"form of degree {form.degree} needs {form.degree} vectors, got {len(vectors)}")
    vecs = [[to_scalar(x) for x in v] for v in vectors]
    for v in vecs:
        if len(v) != form.dim:
            raise ValueError("vector has wrong dimension")
    if form.degree == 0:
        return form.terms.get((), Fraction(0))
    total: Scalar = Fraction(0)
    for idx, c in form.terms.items():
        rows = [[v[i - 1] for v in vecs] for i in idx]
        total = total + c * _det(rows)
    return total


def pullback(form: MultiVector, a: LinearMap) -> MultiVector:
    """Pullback a*form: (a*form)(v₁,…,vₖ) = form(av₁,…,avₖ)."""
    if form.dim != a.target_dim:
        raise ValueError(f"form lives on dim {form.dim}, map targets dim {a.target_dim}")
    m = a.source_dim
    k = form.degree
    if k == 0:
        return MultiVector(m, 0, dict(form.terms))
    acc: Dict[IndexTuple, Scalar] = {}
    for jdx in combinations(range(1, m + 1), k):
        total: Scalar = Fraction(0)
        for idx, c in form.terms.items():
            minor = [[a.matrix[i - 1][j - 1] for j in jdx] for i in idx]
            total = total + c * _det(minor)
        if total != 0:
            acc[jdx] = total
    return MultiVector(m, k, acc)


def conformal_pairing(omega: MultiVector, phi: MultiVector, eps: VolumeForm = DEFAULT_VOLUME) -> Scalar:
    """The scalar ⟨ω,φ⟩ with ω∧φ = ⟨ω,φ⟩ε, for 2-forms on ℝ⁴."""
    if omega.dim != 4 or phi.dim != 4 or omega.degree != 2 or phi.degree != 2:
        raise ValueError("conformal pairing is defined for 2-forms on a 4-space")
    top = wedge(omega, phi)
    return top.coefficient((1, 2, 3, 4)) / eps.coefficient


def gram_matrix(omega: MultiVector, phi: MultiVector, eps: VolumeForm = DEFAULT_VOLUME):
    """2×2 wedge Gram matrix [[⟨ω,ω⟩,⟨ω,φ⟩],[⟨ω,φ⟩,⟨φ,φ⟩]]."""
    ww = conformal_pairing(omega, omega, eps)
    wp = conformal_pairing(omega, phi, eps)
    pp = conformal_pairing(phi, phi, eps)
    return [[ww, wp], [wp, pp]]


def pairing_signature(eps: VolumeForm = DEFAULT_VOLUME) -> Tuple[int, int]:
    """Signature (p, q) of the wedge pairing on Λ²(ℝ⁴)*: always (3, 3).

    Computed, not asserted: the 6×6 Gram matrix on the basis monomials
    e^i∧e^j is built and its inertia taken exactly.
    """
    basis = [MultiVector.basis(4, idx) for idx in combinations(range(1, 5), 2)]
    eps_exact = VolumeForm(Fraction(eps.coefficient) if is_exact(eps.coefficient) else eps.coefficient)
    gram = [[conformal_pairing(x, y, eps_exact) for y in basis] for x in basis]
    if all(is_exact(v) for row in gram for v in row):
        pos, neg, zero = linalg.inertia([[Fraction(v) for v in row] for row in gram])
    else:
        import numpy as np

        eigs = np.linalg.eigvalsh(np.array(gram, dtype=float))
        pos = int((eigs > 1e-12).sum())
        neg = int((eigs < -1e-12).sum())
        zero = 6 - pos - neg
    if zero != 0:
        raise ValueError("wedge pairing degenerated; volume form invalid")
    return pos, neg


# -- dimension-4 model data ------------------------------------------------

#: ω₀ = e¹∧e³ − e²∧e⁴ (real part of dz¹∧dz² on ℂ² ≅ ℝ⁴)
OMEGA0 = MultiVector(4, 2, {(1, 3): Fraction(1), (2, 4): Fraction(-1)})

#: φ₀ = e¹∧e⁴ + e²∧e³ (imaginary part of dz¹∧dz²)
PHI0 = MultiVector(4, 2, {(1, 4): Fraction(1), (2, 3): Fraction(1)})

#: Standard complex structure on ℝ⁴ ≅ ℂ²: J₀e₁=e₂, J₀e₂=−e₁, J₀e₃=e₄, J₀e₄=−e₃.
J0_MATRIX: Tuple[Tuple[Fraction, ...], ...] = (
    (Fraction(0), Fraction(-1), Fraction(0), Fraction(0)),
    (Fraction(1), Fraction(0), Fraction(0), Fraction(0)),
    (Fraction(0), Fraction(0), Fraction(0), Fraction(-1)),
    (Fraction(0), Fraction(0), Fraction(1), Fraction(0)),
)
