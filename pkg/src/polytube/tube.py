"""Construction of the abstract tube of a perturbed inequality system.

The tube is the simplicial complex of index sets ``J`` whose perturbed faces
are nonempty, swept in cardinality-then-lex order through the feasibility
oracle.  Infeasibility is anti-monotone (a superset of an infeasible set is
infeasible), so each level is pruned against the verdicts of the previous
one before any pivoting runs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from fractions import Fraction
from typing import Any, Iterable, Iterator, Optional, Sequence

import numpy as np

from .epspoly import DEFAULT_SIGN_TOL
from .lexlp import _feasible_prepared, _normalize_order
from .polyhedron import Polyhedron, rank, validate
from .rational import feasible_rational
from .subsets import IndexSet


class SizeLimitExceeded(ValueError):
    """Full-powerset enumeration was requested beyond the configured cap."""


def _member_sort_key(J: IndexSet) -> tuple[int, IndexSet]:
    return (len(J), J)


@dataclass(frozen=True)
class AbstractTube:
    """Simplicial complex of feasible index sets, with build provenance.

    ``members`` is sorted by cardinality then lexicographically.  ``order``
    records which perturbation exponent each constraint received; the complex
    generally depends on it.
    """

    members: tuple[IndexSet, ...]
    m: int
    n: int
    r: int
    order: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[IndexSet]:
        return iter(self.members)

    def __contains__(self, J: Iterable[int]) -> bool:
        return tuple(J) in set(self.members)

    def member_set(self) -> frozenset[IndexSet]:
        return frozenset(self.members)


@dataclass(frozen=True)
class TubeStats:
    total: int
    by_cardinality: dict[int, int]
    max_cardinality: int


def tube_stats(t: AbstractTube | Iterable[IndexSet]) -> TubeStats:
    """Member count, count per cardinality, and the largest cardinality."""
    members = list(t.members if isinstance(t, AbstractTube) else t)
    by_card: dict[int, int] = {}
    for J in members:
        by_card[len(J)] = by_card.get(len(J), 0) + 1
    return TubeStats(
        total=len(members),
        by_cardinality=dict(sorted(by_card.items())),
        max_cardinality=max(by_card) if by_card else 0,
    )


def build_tube(
    p: Polyhedron,
    order: Optional[Sequence[int]] = None,
    tol: float = DEFAULT_SIGN_TOL,
    backend: str = "float",
    prune: bool = True,
) -> AbstractTube:
    """Sweep all candidate subsets up to rank(A) through the oracle.

    Levels run in ascending cardinality; with ``prune`` enabled a candidate
    is skipped (as infeasible) when it contains an already-infeasible subset,
    which is exactly the case that some facet of the candidate is missing
    from the previous level.  The member set is independent of ``prune``.
    """
    validate(p)
    m = p.m
    w = _normalize_order(order, m)
    r = rank(p)

    members: list[IndexSet] = []
    prev_level: set[IndexSet] = set()
    for level in range(1, r + 1):
        current: set[IndexSet] = set()
        for J in combinations(range(1, m + 1), level):
            if prune and level > 1:
                if any(
                    J[:k] + J[k + 1:] not in prev_level for k in range(level)
                ):
                    continue
            if _feasible_prepared(p, J, w, tol, backend, None):
                current.add(J)
        members.extend(sorted(current))
        if not current and prune:
            break  # every deeper candidate contains an infeasible subset
        prev_level = current

    return AbstractTube(
        members=tuple(members), m=m, n=p.n, r=r, order=w
    )


def build_unperturbed_complex(
    p: Polyhedron, size_cap: int = 20
) -> frozenset[IndexSet]:
    """Index sets whose (unperturbed) faces of K are nonempty.

    Decided exactly: ``J`` is a member iff ``{a_i^T x = b_i for i in J}``
    together with the full system ``A^T x <= b`` is solvable in rational
    arithmetic.  No cardinality cap applies; membership can exceed rank(A).
    """
    validate(p)
    if p.m > size_cap:
        raise SizeLimitExceeded(
            f"2^{p.m} - 1 subsets exceed the cap (m <= {size_cap})"
        )
    A = [[Fraction(v) for v in p.A[:, i]] for i in range(p.m)]
    b = [Fraction(v) for v in p.b]
    ineqs = [(A[i], b[i]) for i in range(p.m)]

    members: set[IndexSet] = set()
    prev_level: set[IndexSet] = set()
    for level in range(1, p.m + 1):
        current: set[IndexSet] = set()
        for J in combinations(range(1, p.m + 1), level):
            if level > 1 and any(
                J[:k] + J[k + 1:] not in prev_level for k in range(level)
            ):
                continue
            eqs = [(A[i - 1], b[i - 1]) for i in J]
            if feasible_rational(eqs, ineqs):
                current.add(J)
        members |= current
        if not current:
            break
        prev_level = current
    return frozenset(members)


# ---------------------------------------------------------------------------
# JSON interchange: {"m", "n", "r", "order", "members": [[1], [2], ..]} with
# 1-based sorted index lists.

def tube_to_dict(t: AbstractTube) -> dict[str, Any]:
    return {
        "m": t.m,
        "n": t.n,
        "r": t.r,
        "order": list(t.order),
        "members": [list(J) for J in t.members],
    }


def tube_from_dict(d: dict[str, Any]) -> AbstractTube:
    members = tuple(
        sorted((tuple(int(i) for i in J) for J in d["members"]),
               key=_member_sort_key)
    )
    return AbstractTube(
        members=members,
        m=int(d["m"]),
        n=int(d["n"]),
        r=int(d["r"]),
        order=tuple(int(i) for i in d["order"]),
    )


def save_tube(t: AbstractTube, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(tube_to_dict(t), fh, indent=2)
        fh.write("\n")


def load_tube(path: str) -> AbstractTube:
    with open(path) as fh:
        return tube_from_dict(json.load(fh))
