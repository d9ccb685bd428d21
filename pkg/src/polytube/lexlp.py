"""Feasibility oracle for lexicographically perturbed inequality systems.

Decides whether ``{a_i^T x = b_i + eps^{w(i)} for i in J;
a_i^T x <= b_i + eps^{w(i)} for i not in J}`` has a solution for
infinitesimally small ``eps > 0``, where ``w`` is a permutation of ``1..m``
assigning perturbation exponents (identity by default).

The decision runs a pivoting scheme on an ``M x N`` tableau whose last column
holds polynomials in ``eps`` and whose remaining entries stay plain reals:
pivot columns never include the last one, so pivot elements are always real
and the polynomial entries only undergo linear updates.

Two interchangeable backends share the pivot code: ``"float"`` (numpy, sign
tests against a small tolerance) and ``"exact"`` (Fraction arithmetic, exact
sign tests).  The exact backend is the float backend's ground truth.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from .epspoly import DEFAULT_SIGN_TOL, EpsPoly
from .polyhedron import IndexOutOfRange, Polyhedron, validate
from .subsets import IndexSet, as_index_set


class ZeroPivot(ZeroDivisionError):
    """Attempted to pivot on an exactly zero tableau entry."""


class IterationLimitExceeded(RuntimeError):
    """Pivot count safeguard tripped; the query is numerically stalled.

    Distinct from both a feasible and an infeasible verdict.  The offending
    subset is attached as ``J`` when known.
    """

    def __init__(self, message: str, J: Optional[IndexSet] = None):
        super().__init__(message)
        self.J = J


def _normalize_order(order: Optional[Sequence[int]], m: int) -> tuple[int, ...]:
    if order is None:
        return tuple(range(1, m + 1))
    w = tuple(int(i) for i in order)
    if sorted(w) != list(range(1, m + 1)):
        raise ValueError(f"order must be a permutation of 1..{m}, got {w}")
    return w


@dataclass(eq=False)
class Tableau:
    """Pivoting tableau with a polynomial right-hand-side column.

    ``real`` is the M x (N-1) block of plain entries; ``rhs[i]`` holds the
    coefficient vector of the last-column polynomial of row ``i+1``.  Row and
    column labels track which variable is basic where, purely for inspection.
    """

    real: np.ndarray  # (M, N-1); float64 or object (Fraction)
    rhs: np.ndarray  # (M, D+1); same scalar kind as `real`
    row_labels: list[str]
    col_labels: list[str]
    exact: bool = False

    @property
    def M(self) -> int:
        return self.real.shape[0]

    @property
    def N(self) -> int:
        return self.real.shape[1] + 1

    def rhs_poly(self, i: int) -> EpsPoly:
        """Last-column entry of row ``i`` (1-based) as a polynomial."""
        if not 1 <= i <= self.M:
            raise IndexOutOfRange(f"row {i} outside 1..{self.M}")
        return EpsPoly(self.rhs[i - 1])

    def entry(self, i: int, j: int):
        """Plain entry at 1-based ``(i, j)``, ``j <= N-1``."""
        if not (1 <= i <= self.M and 1 <= j <= self.N - 1):
            raise IndexOutOfRange(f"({i}, {j}) outside the real block")
        return self.real[i - 1, j - 1]

    def copy(self) -> "Tableau":
        return Tableau(
            real=self.real.copy(),
            rhs=self.rhs.copy(),
            row_labels=list(self.row_labels),
            col_labels=list(self.col_labels),
            exact=self.exact,
        )


def build_tableau(
    p: Polyhedron,
    J: Iterable[int],
    order: Optional[Sequence[int]] = None,
    exact: bool = False,
) -> Tableau:
    """Initial tableau for the perturbed-system feasibility query on ``J``.

    Layout (M = m + |J| + 1 rows, N = 2n + 1 columns): the top block is
    ``(A^T, -A^T, -b(eps))``, the middle block repeats the rows of ``J`` as
    ``(-A_J^T, A_J^T, b_J(eps))``, and the bottom row is ``(1...1, 0)``.
    Right-hand-side polynomials have degree bound ``m`` since constraint ``i``
    is shifted by ``eps**order[i-1]``.
    """
    validate(p)
    J = as_index_set(J)
    if J[-1] > p.m:
        raise IndexOutOfRange(f"index {J[-1]} outside 1..{p.m}")
    n, m = p.n, p.m
    w = _normalize_order(order, m)

    At = p.A.T  # rows are a_i^T
    M = m + len(J) + 1
    real = np.zeros((M, 2 * n))
    real[:m, :n] = At
    real[:m, n:] = -At
    for k, j in enumerate(J):
        real[m + k, :n] = -At[j - 1]
        real[m + k, n:] = At[j - 1]
    real[M - 1, :] = 1.0

    rhs = np.zeros((M, m + 1))
    for i in range(m):
        rhs[i, 0] = -p.b[i]
        rhs[i, w[i]] -= 1.0
    for k, j in enumerate(J):
        rhs[m + k, 0] = p.b[j - 1]
        rhs[m + k, w[j - 1]] += 1.0

    row_labels = [f"u{i}" for i in range(1, m + 1)]
    row_labels += [f"v{j}" for j in J]
    row_labels.append("obj")
    col_labels = [f"x{i}" for i in range(1, n + 1)]
    col_labels += [f"y{i}" for i in range(1, n + 1)]

    if exact:
        real = np.array(
            [[Fraction(v) for v in row] for row in real], dtype=object
        )
        rhs = np.array([[Fraction(v) for v in row] for row in rhs], dtype=object)
    return Tableau(real, rhs, row_labels, col_labels, exact=exact)


def _pivot_arrays(real: np.ndarray, rhs: np.ndarray, i0: int, j0: int) -> None:
    """In-place exchange step at 0-based ``(i0, j0)`` of the real block."""
    piv = real[i0, j0]
    col = real[:, j0].copy()
    row = real[i0, :].copy()
    r0 = rhs[i0, :].copy()

    real -= np.outer(col, row) / piv
    real[i0, :] = -row / piv
    real[:, j0] = col / piv
    real[i0, j0] = 1 / piv

    rhs -= np.outer(col, r0) / piv
    rhs[i0, :] = -r0 / piv


def pivot(t: Tableau, i0: int, j0: int) -> Tableau:
    """Exchange step at 1-based ``(i0, j0)``; returns a new tableau.

    The pivot element must be a plain entry (``j0 <= N-1``) and nonzero.
    """
    if not (1 <= i0 <= t.M and 1 <= j0 <= t.N - 1):
        raise IndexOutOfRange(f"pivot ({i0}, {j0}) outside the real block")
    if t.real[i0 - 1, j0 - 1] == 0:
        raise ZeroPivot(f"tableau entry ({i0}, {j0}) is zero")
    out = t.copy()
    _pivot_arrays(out.real, out.rhs, i0 - 1, j0 - 1)
    out.row_labels[i0 - 1], out.col_labels[j0 - 1] = (
        out.col_labels[j0 - 1],
        out.row_labels[i0 - 1],
    )
    return out


def _rhs_signs_float(rhs: np.ndarray, tol: float) -> np.ndarray:
    """Lexicographic sign of every row's polynomial, vectorized."""
    big = np.abs(rhs) > tol
    lead = rhs[np.arange(rhs.shape[0]), np.argmax(big, axis=1)]
    return np.where(big.any(axis=1), np.sign(lead), 0.0)


def _rhs_sign_exact(row: Sequence[Fraction]) -> int:
    for c in row:
        if c != 0:
            return 1 if c > 0 else -1
    return 0


def _run(real: np.ndarray, rhs: np.ndarray, tol: float, exact: bool,
         max_pivots: int) -> bool:
    M = real.shape[0]
    ncols = real.shape[1]
    bottom = M - 1
    for _ in range(max_pivots):
        # Step 1: smallest violated row (positive rhs polynomial), bottom
        # row excluded.
        if exact:
            i0 = next(
                (i for i in range(bottom) if _rhs_sign_exact(rhs[i]) > 0), None
            )
        else:
            signs = _rhs_signs_float(rhs[:bottom], tol)
            pos = np.flatnonzero(signs > 0)
            i0 = int(pos[0]) if pos.size else None
        if i0 is None:
            return True

        # Step 2: among columns with a negative entry in the violated row,
        # maximize bottom_j / |entry_j|; compare by cross-multiplication
        # (denominators positive), ties to the smallest column.
        if exact:
            cands = [j for j in range(ncols) if real[i0, j] < 0]
        else:
            cands = list(np.flatnonzero(real[i0] < -tol))
        if not cands:
            return False
        j0 = cands[0]
        best_num = real[bottom, j0]
        best_den = -real[i0, j0]
        for j in cands[1:]:
            num = real[bottom, j]
            den = -real[i0, j]
            if num * best_den > best_num * den:
                j0, best_num, best_den = j, num, den

        _pivot_arrays(real, rhs, i0, j0)
    raise IterationLimitExceeded(
        f"no verdict after {max_pivots} pivots (tol={tol}, exact={exact})"
    )


def _feasible_prepared(
    p: Polyhedron,
    J: IndexSet,
    w: tuple[int, ...],
    tol: float,
    backend: str,
    max_pivots: Optional[int],
) -> bool:
    t = build_tableau(p, J, order=w, exact=(backend == "exact"))
    cap = max_pivots if max_pivots is not None else 10 * t.M * t.N
    try:
        return _run(t.real, t.rhs, tol, t.exact, cap)
    except IterationLimitExceeded as exc:
        exc.J = J
        raise


def feasible(
    p: Polyhedron,
    J: Iterable[int],
    tol: float = DEFAULT_SIGN_TOL,
    order: Optional[Sequence[int]] = None,
    backend: str = "float",
    max_pivots: Optional[int] = None,
) -> bool:
    """True iff the perturbed system with equalities on ``J`` is solvable.

    Deterministic for fixed inputs: the violated row is always the smallest
    qualifying index and column ties break toward the smallest index.
    """
    if backend not in ("float", "exact"):
        raise ValueError(f"unknown backend {backend!r}")
    validate(p)
    J = as_index_set(J)
    if J[-1] > p.m:
        raise IndexOutOfRange(f"index {J[-1]} outside 1..{p.m}")
    w = _normalize_order(order, p.m)
    return _feasible_prepared(p, J, w, tol, backend, max_pivots)
