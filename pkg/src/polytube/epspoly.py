"""Polynomials in an infinitesimal perturbation, with lexicographic sign tests.

The pivoting tableau's right-hand side holds polynomials
``c_0 + c_1*eps + ... + c_D*eps**D`` in an infinitesimally small ``eps > 0``.
The sign of such a value is the sign of its first nonzero coefficient;
with float coefficients, "nonzero" means exceeding a small tolerance.

Coefficients may be floats (default) or exact ``fractions.Fraction`` values,
in which case sign tests ignore the tolerance entirely.  The exact flavour is
the ground-truth oracle for the float one.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

Coeff = Union[float, Fraction, int]

#: Threshold below which a float coefficient is treated as zero in sign tests.
DEFAULT_SIGN_TOL = 1e-14


class DegreeMismatch(ValueError):
    """Operands carry different degree bounds."""


class EpsPoly:
    """Fixed-length coefficient vector ``(c_0, c_1, ..., c_D)``.

    Supports the linear operations the pivot update rules need: addition,
    subtraction, scaling by a plain scalar, and ``axpy``.  Polynomial
    multiplication and division are deliberately absent; pivot elements are
    always plain reals, so they are never required.
    """

    __slots__ = ("coeffs", "is_exact")

    def __init__(self, coeffs: Iterable[Coeff]):
        self.coeffs = tuple(coeffs)
        if not self.coeffs:
            raise ValueError("EpsPoly needs at least the constant coefficient")
        self.is_exact = all(isinstance(c, Rational) for c in self.coeffs)

    @classmethod
    def constant(cls, value: Coeff, degree_bound: int) -> "EpsPoly":
        zero = Fraction(0) if isinstance(value, Rational) else 0.0
        return cls((value,) + (zero,) * degree_bound)

    @classmethod
    def monomial(cls, k: int, degree_bound: int, coeff: Coeff = 1.0) -> "EpsPoly":
        """The polynomial ``coeff * eps**k``."""
        if not 0 <= k <= degree_bound:
            raise ValueError(f"exponent {k} outside [0, {degree_bound}]")
        zero = Fraction(0) if isinstance(coeff, Rational) else 0.0
        coeffs = [zero] * (degree_bound + 1)
        coeffs[k] = coeff
        return cls(coeffs)

    @property
    def degree_bound(self) -> int:
        return len(self.coeffs) - 1

    def _check(self, other: "EpsPoly") -> None:
        if len(self.coeffs) != len(other.coeffs):
            raise DegreeMismatch(
                f"degree bounds differ: {self.degree_bound} vs {other.degree_bound}"
            )

    def __add__(self, other: "EpsPoly") -> "EpsPoly":
        self._check(other)
        return EpsPoly(a + b for a, b in zip(self.coeffs, other.coeffs))

    def __sub__(self, other: "EpsPoly") -> "EpsPoly":
        self._check(other)
        return EpsPoly(a - b for a, b in zip(self.coeffs, other.coeffs))

    def __neg__(self) -> "EpsPoly":
        return EpsPoly(-a for a in self.coeffs)

    def scale(self, factor: Coeff) -> "EpsPoly":
        return EpsPoly(factor * a for a in self.coeffs)

    __mul__ = scale

    def __rmul__(self, factor: Coeff) -> "EpsPoly":
        return self.scale(factor)

    def axpy(self, alpha: Coeff, other: "EpsPoly") -> "EpsPoly":
        """``self + alpha * other`` in one pass."""
        self._check(other)
        return EpsPoly(a + alpha * b for a, b in zip(self.coeffs, other.coeffs))

    def evaluate(self, eps: Coeff) -> Coeff:
        """Value of the polynomial at a concrete ``eps`` (Horner)."""
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * eps + c
        return acc

    def sign(self, tol: float = DEFAULT_SIGN_TOL) -> int:
        return eps_sign(self, tol)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, EpsPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"EpsPoly({list(self.coeffs)!r})"


def eps_sign(p: EpsPoly, tol: float = DEFAULT_SIGN_TOL) -> int:
    """Sign of ``p`` for infinitesimally small positive eps.

    Returns the sign of the first coefficient of magnitude above ``tol``
    (smaller leading coefficients are skipped as numerical noise), or 0 when
    every coefficient is within tolerance of zero.  Exact coefficients ignore
    ``tol``: the first nonzero one decides.
    """
    if tol <= 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    if p.is_exact:
        for c in p.coeffs:
            if c != 0:
                return 1 if c > 0 else -1
        return 0
    for c in p.coeffs:
        if c > tol:
            return 1
        if c < -tol:
            return -1
    return 0


def to_exact(p: EpsPoly) -> EpsPoly:
    """Lift float coefficients to exact rationals (floats convert exactly)."""
    return EpsPoly(Fraction(c) for c in p.coeffs)


def as_eps_poly(coeffs: Union[EpsPoly, Sequence[Coeff]]) -> EpsPoly:
    return coeffs if isinstance(coeffs, EpsPoly) else EpsPoly(coeffs)
