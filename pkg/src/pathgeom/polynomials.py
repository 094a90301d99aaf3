"""Sparse multivariate polynomials and rational functions over ℚ.

Exact derivative oracle for the hypersurface pipeline: polynomials carry
Fraction coefficients keyed by exponent tuples, differentiate formally and
evaluate exactly at rational points.  :class:`RatFunc` extends the same
protocol (arithmetic, ``diff``, call) to quotients, which is what makes
rational parametrizations like the Cayley sphere chart computable without
floating point.  Quotients are not reduced to lowest terms; evaluation only
requires a nonvanishing denominator at the query point.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Mapping, Sequence, Tuple

Exponent = Tuple[int, ...]


class Poly:
    """Polynomial in ``nvars`` variables with Fraction coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Exponent, Fraction] | None = None):
        if nvars < 1:
            raise ValueError("need at least one variable")
        clean: Dict[Exponent, Fraction] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent tuple {exp}")
            c = Fraction(c)
            if c != 0:
                clean[exp] = clean.get(exp, Fraction(0)) + c
                if clean[exp] == 0:
                    del clean[exp]
        self.nvars = nvars
        self.terms = clean

    # -- constructors ---------------------------------------------------

    @classmethod
    def constant(cls, value, nvars: int) -> "Poly":
        return cls(nvars, {(0,) * nvars: Fraction(value)})

    @classmethod
    def variable(cls, index: int, nvars: int) -> "Poly":
        """The variable x_{index}, 0-based."""
        if not 0 <= index < nvars:
            raise ValueError("variable index out of range")
        exp = tuple(1 if i == index else 0 for i in range(nvars))
        return cls(nvars, {exp: Fraction(1)})

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls(nvars, {})

    # -- ring operations -------------------------------------------------

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        return Poly.constant(Fraction(other), self.nvars)

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        acc = dict(self.terms)
        for e, c in other.terms.items():
            acc[e] = acc.get(e, Fraction(0)) + c
        return Poly(self.nvars, acc)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Poly":
        other = self._coerce(other)
        acc: Dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, Fraction(0)) + c1 * c2
        return Poly(self.nvars, acc)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Poly.constant(1, self.nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- calculus ---------------------------------------------------------

    def diff(self, var: int) -> "Poly":
        """Formal partial derivative with respect to x_{var} (0-based)."""
        if not 0 <= var < self.nvars:
            raise ValueError("variable index out of range")
        acc: Dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            if e[var] == 0:
                continue
            ne = tuple(x - 1 if i == var else x for i, x in enumerate(e))
            acc[ne] = acc.get(ne, Fraction(0)) + c * e[var]
        return Poly(self.nvars, acc)

    def __call__(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise ValueError("point has wrong dimension")
        pt = [Fraction(x) for x in point]
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(pt, e):
                for _ in range(k):
                    v *= x
            total += v
        return total

    # -- queries -----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.constant(other, self.nvars)
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, tuple(sorted(self.terms.items()))))

    def __repr__(self) -> str:
        if self.is_zero:
            return "Poly(0)"
        def mono(e):
            parts = [f"x{i+1}^{k}" if k > 1 else f"x{i+1}" for i, k in enumerate(e) if k]
            return "*".join(parts) or "1"
        return "Poly(" + " + ".join(f"{c}*{mono(e)}" for e, c in sorted(self.terms.items())) + ")"

    # -- serialization -----------------------------------------------------

    def to_json(self) -> list:
        return [{"exp": list(e), "c": f"{c.numerator}/{c.denominator}"} for e, c in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, data, nvars: int) -> "Poly":
        return cls(nvars, {tuple(t["exp"]): Fraction(t["c"]) for t in data})


class RatFunc:
    """Quotient of two polynomials; exact arithmetic, quotient-rule derivative."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        if den is None:
            den = Poly.constant(1, num.nvars)
        if num.nvars != den.nvars:
            raise ValueError("variable count mismatch")
        if den.is_zero:
            raise ZeroDivisionError("zero denominator polynomial")
        if num.is_zero:
            den = Poly.constant(1, num.nvars)
        self.num = num
        self.den = den

    @property
    def nvars(self) -> int:
        return self.num.nvars

    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        if isinstance(other, Poly):
            return RatFunc(other)
        return RatFunc(Poly.constant(Fraction(other), self.nvars))

    def __add__(self, other) -> "RatFunc":
        o = self._coerce(other)
        # shared denominators are the common case in pullback pipelines;
        # skipping the cross-multiplication keeps degrees from exploding
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __sub__(self, other) -> "RatFunc":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "RatFunc":
        return self._coerce(other) - self

    def __mul__(self, other) -> "RatFunc":
        o = self._coerce(other)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def diff(self, var: int) -> "RatFunc":
        return RatFunc(self.num.diff(var) * self.den - self.num * self.den.diff(var), self.den * self.den)

    def __call__(self, point: Sequence) -> Fraction:
        d = self.den(point)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at the query point")
        return self.num(point) / d

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def __eq__(self, other) -> bool:
        if isinstance(other, (RatFunc, Poly, int, Fraction)):
            o = self._coerce(other)
            return (self.num * o.den - o.num * self.den).is_zero
        return NotImplemented

    def __hash__(self):
        raise TypeError("RatFunc is unhashable (no canonical form)")

    def __repr__(self) -> str:
        return f"RatFunc({self.num!r} / {self.den!r})"
