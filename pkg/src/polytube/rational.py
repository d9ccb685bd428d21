"""Exact linear feasibility over the rationals.

Small-system routines used wherever floats would blur the open/closed
distinction: Gaussian elimination for equality constraints followed by
Fourier-Motzkin elimination for the inequalities.  Everything here is
``fractions.Fraction`` arithmetic; float inputs are lifted exactly.

These routines are deliberately independent of the pivoting tableau in
:mod:`polytube.lexlp`, so the two can cross-check each other.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

Row = tuple[list[Fraction], Fraction]  # (coeffs, rhs)


def _lift_rows(rows: Iterable[Sequence]) -> list[Row]:
    out = []
    for coeffs, rhs in rows:
        out.append(([Fraction(c) for c in coeffs], Fraction(rhs)))
    return out


def _eliminate_equalities(
    eqs: list[Row], ineqs: list[Row]
) -> Optional[list[Row]]:
    """Substitute equalities away; None if the equalities are inconsistent.

    Returns the inequality rows rewritten over the remaining free variables
    (pivot columns are zeroed everywhere).
    """
    eqs = [(
        list(c), r) for c, r in eqs]
    ineqs = [(list(c), r) for c, r in ineqs]
    used_rows: list[int] = []
    for row_i in range(len(eqs)):
        coeffs, rhs = eqs[row_i]
        pivot_col = next((k for k, c in enumerate(coeffs) if c != 0), None)
        if pivot_col is None:
            if rhs != 0:
                return None  # 0 == nonzero
            continue
        used_rows.append(row_i)
        piv = coeffs[pivot_col]
        for other in range(len(eqs)):
            if other == row_i:
                continue
            factor = eqs[other][0][pivot_col]
            if factor != 0:
                ratio = factor / piv
                ocoeffs, orhs = eqs[other]
                for k in range(len(ocoeffs)):
                    ocoeffs[k] -= ratio * coeffs[k]
                eqs[other] = (ocoeffs, orhs - ratio * rhs)
        for other in range(len(ineqs)):
            factor = ineqs[other][0][pivot_col]
            if factor != 0:
                ratio = factor / piv
                ocoeffs, orhs = ineqs[other]
                for k in range(len(ocoeffs)):
                    ocoeffs[k] -= ratio * coeffs[k]
                ineqs[other] = (ocoeffs, orhs - ratio * rhs)
    return ineqs


def feasible_rational(
    eqs: Iterable[Sequence], ineqs: Iterable[Sequence]
) -> bool:
    """Decide whether ``{eq . x == rhs} ∧ {ineq . x <= rhs}`` has a solution.

    Rows are ``(coefficients, rhs)`` pairs; entries may be ints, Fractions,
    or floats (lifted exactly).
    """
    eq_rows = _lift_rows(eqs)
    ineq_rows = _lift_rows(ineqs)
    reduced = _eliminate_equalities(eq_rows, ineq_rows)
    if reduced is None:
        return False

    nvars = len(reduced[0][0]) if reduced else 0
    rows = reduced
    for var in range(nvars):
        uppers = [r for r in rows if r[0][var] > 0]
        lowers = [r for r in rows if r[0][var] < 0]
        keep = [r for r in rows if r[0][var] == 0]
        new_rows = keep
        for ucoeffs, urhs in uppers:
            cu = ucoeffs[var]
            for lcoeffs, lrhs in lowers:
                cl = -lcoeffs[var]
                coeffs = [cl * u + cu * lo for u, lo in zip(ucoeffs, lcoeffs)]
                new_rows.append((coeffs, cl * urhs + cu * lrhs))
        rows = new_rows

    return all(rhs >= 0 for coeffs, rhs in rows)


def solve_affine(
    eqs: Iterable[Sequence], free_values: Sequence
) -> Optional[list[Fraction]]:
    """One exact solution of ``coeffs . x == rhs`` rows, or None if none exists.

    Free variables (columns without a pivot) are assigned from
    ``free_values`` in column order; values beyond the supplied ones are 0.
    """
    rows = _lift_rows(eqs)
    if not rows:
        return [Fraction(v) for v in free_values]
    nvars = len(rows[0][0])

    pivots: dict[int, int] = {}  # column -> row
    row_i = 0
    for col in range(nvars):
        sel = next(
            (r for r in range(row_i, len(rows)) if rows[r][0][col] != 0), None
        )
        if sel is None:
            continue
        rows[row_i], rows[sel] = rows[sel], rows[row_i]
        coeffs, rhs = rows[row_i]
        piv = coeffs[col]
        coeffs = [c / piv for c in coeffs]
        rhs = rhs / piv
        rows[row_i] = (coeffs, rhs)
        for r in range(len(rows)):
            if r != row_i and rows[r][0][col] != 0:
                f = rows[r][0][col]
                rcoeffs, rrhs = rows[r]
                rcoeffs = [a - f * b for a, b in zip(rcoeffs, coeffs)]
                rows[r] = (rcoeffs, rrhs - f * rhs)
        pivots[col] = row_i
        row_i += 1
        if row_i == len(rows):
            break

    for r in range(row_i, len(rows)):
        if all(c == 0 for c in rows[r][0]) and rows[r][1] != 0:
            return None

    free_iter = iter(free_values)
    x = [Fraction(0)] * nvars
    for col in range(nvars):
        if col not in pivots:
            x[col] = Fraction(next(free_iter, 0))
    for col, r in pivots.items():
        coeffs, rhs = rows[r]
        x[col] = rhs - sum(
            (coeffs[k] * x[k] for k in range(nvars) if k != col), Fraction(0)
        )
    return x
