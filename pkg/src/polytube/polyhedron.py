"""Inequality-system model: ``K = {x : A^T x <= b}`` with column normals.

``A`` is ``n x m`` whose columns are the inward-facing constraint normals
``a_1, ..., a_m``; half-space ``i`` is ``a_i^T x <= b_i``.  All user-facing
constraint indices are 1-based.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

import numpy as np

from .subsets import IndexSet, as_index_set


class ShapeMismatch(ValueError):
    """Array dimensions are inconsistent with the declared system size."""


class ZeroNormal(ValueError):
    """A constraint normal has zero Euclidean norm."""

    def __init__(self, index: int):
        self.index = index
        super().__init__(f"constraint {index} has a zero normal vector")


class IndexOutOfRange(IndexError):
    """A constraint index falls outside 1..m."""


#: Relative singular-value threshold for the numerical rank of A.  Rank only
#: bounds the enumeration depth, so over-estimating is harmless.
RANK_RTOL = 1e-10


@dataclass(frozen=True, eq=False)
class Polyhedron:
    """Half-space intersection ``{x in R^n : a_i^T x <= b_i, i=1..m}``."""

    A: np.ndarray  # (n, m), column i is the normal a_i
    b: np.ndarray  # (m,)

    def __post_init__(self):
        object.__setattr__(self, "A", np.atleast_2d(np.asarray(self.A, dtype=float)))
        object.__setattr__(self, "b", np.asarray(self.b, dtype=float).ravel())

    @property
    def n(self) -> int:
        return self.A.shape[0]

    @property
    def m(self) -> int:
        return self.A.shape[1]

    def normal(self, i: int) -> np.ndarray:
        """Column ``a_i`` (1-based)."""
        if not 1 <= i <= self.m:
            raise IndexOutOfRange(f"constraint index {i} outside 1..{self.m}")
        return self.A[:, i - 1]

    def __repr__(self) -> str:
        return f"Polyhedron(n={self.n}, m={self.m})"


@dataclass(frozen=True, eq=False)
class ConeTerm:
    """Sub-system for an index set J: columns ``A_J``, offsets ``b_J``, and
    the Gram matrix ``A_J^T A_J`` that alone determines its Gaussian mass."""

    J: IndexSet
    A_J: np.ndarray  # (n, |J|)
    b_J: np.ndarray  # (|J|,)
    gram: np.ndarray = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "gram", self.A_J.T @ self.A_J)


def validate(p: Polyhedron) -> None:
    """Raise unless ``p`` is a well-formed system with nonzero normals."""
    if p.A.ndim != 2:
        raise ShapeMismatch(f"A must be a matrix, got ndim={p.A.ndim}")
    n, m = p.A.shape
    if n < 1 or m < 1:
        raise ShapeMismatch(f"need n >= 1 and m >= 1, got n={n}, m={m}")
    if p.b.shape != (m,):
        raise ShapeMismatch(f"b has {p.b.shape[0]} entries for {m} constraints")
    if not (np.isfinite(p.A).all() and np.isfinite(p.b).all()):
        raise ShapeMismatch("A and b must be finite")
    norms = np.linalg.norm(p.A, axis=0)
    for i, nrm in enumerate(norms, start=1):
        if nrm == 0.0:
            raise ZeroNormal(i)


def rank(p: Polyhedron) -> int:
    """Numerical rank of A (singular values below RANK_RTOL * max are zero)."""
    validate(p)
    s = np.linalg.svd(p.A, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.sum(s > RANK_RTOL * s[0]))


def cone_term(p: Polyhedron, J: Iterable[int]) -> ConeTerm:
    """Extract ``(A_J, b_J)`` and its Gram matrix.

    Positive definiteness of the Gram matrix is not checked here; members of
    a perturbed-complex tube are guaranteed independent, arbitrary J is not.
    """
    J = as_index_set(J)
    if J[-1] > p.m:
        raise IndexOutOfRange(f"index {J[-1]} outside 1..{p.m}")
    cols = [i - 1 for i in J]
    return ConeTerm(J=J, A_J=p.A[:, cols].copy(), b_J=p.b[list(cols)].copy())


# ---------------------------------------------------------------------------
# JSON interchange: {"n": int, "m": int, "A": m rows of n entries (row i is
# a_i^T), "b": m floats}.  Note the transpose relative to the in-memory A.

def polyhedron_to_dict(p: Polyhedron) -> dict[str, Any]:
    return {
        "n": p.n,
        "m": p.m,
        "A": [list(map(float, p.A[:, i])) for i in range(p.m)],
        "b": [float(x) for x in p.b],
    }


def polyhedron_from_dict(d: dict[str, Any]) -> Polyhedron:
    try:
        n, m = int(d["n"]), int(d["m"])
        rows = np.asarray(d["A"], dtype=float)
        b = np.asarray(d["b"], dtype=float).ravel()
    except (KeyError, TypeError, ValueError) as exc:
        raise ShapeMismatch(f"malformed polyhedron record: {exc}") from exc
    if rows.shape != (m, n):
        raise ShapeMismatch(f'"A" has shape {rows.shape}, expected ({m}, {n})')
    if b.shape != (m,):
        raise ShapeMismatch(f'"b" has {b.shape[0]} entries, expected {m}')
    p = Polyhedron(A=rows.T, b=b)
    validate(p)
    return p


def save_polyhedron(p: Polyhedron, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(polyhedron_to_dict(p), fh, indent=2)
        fh.write("\n")


def load_polyhedron(path: str) -> Polyhedron:
    with open(path) as fh:
        return polyhedron_from_dict(json.load(fh))
