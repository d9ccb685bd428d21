"""Pointwise ground truth for the signed inclusion-exclusion identity.

For any point x, the indicator of "x violates at least one constraint" must
equal the signed sum of indicators of joint strict violations over the
complex members.  Everything here runs in exact rational arithmetic: the
strict/non-strict distinction at boundary points is precisely what floats
cannot test.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from random import Random
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .polyhedron import Polyhedron, validate
from .rational import solve_affine
from .subsets import IndexSet
from .tube import AbstractTube

Complex = Union[AbstractTube, Iterable[IndexSet]]


def _members_of(t: Complex) -> list[IndexSet]:
    if isinstance(t, AbstractTube):
        return list(t.members)
    return [tuple(J) for J in t]


@dataclass(frozen=True)
class IdentityReport:
    point: tuple[Fraction, ...]
    lhs: int  # 1 iff some constraint is strictly violated
    rhs: int  # signed sum over complex members
    classification: str  # "interior-of-K" | "boundary-of-K" | "exterior"

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs


@dataclass(frozen=True)
class FuzzReport:
    samples: int
    violations: int
    interior: int
    boundary: int
    exterior: int
    failures: tuple[IdentityReport, ...]  # first few violating reports

    @property
    def ok(self) -> bool:
        return self.violations == 0


class _ExactSystem:
    """Constraint data lifted to Fractions, with mask helpers."""

    def __init__(self, p: Polyhedron):
        validate(p)
        self.m = p.m
        self.n = p.n
        self.cols = [
            [Fraction(v) for v in p.A[:, i]] for i in range(p.m)
        ]
        self.b = [Fraction(v) for v in p.b]

    def violation_mask(self, x: Sequence[Fraction]) -> tuple[int, bool]:
        """Bitmask of strictly violated constraints and an any-tight flag."""
        mask = 0
        tight = False
        for i in range(self.m):
            dot = sum(
                (c * xv for c, xv in zip(self.cols[i], x)), Fraction(0)
            )
            if dot > self.b[i]:
                mask |= 1 << i
            elif dot == self.b[i]:
                tight = True
        return mask, tight


def _signed_members(members: Iterable[IndexSet]) -> list[tuple[int, int]]:
    out = []
    for J in members:
        mask = 0
        for i in J:
            mask |= 1 << (i - 1)
        out.append((mask, 1 if len(J) % 2 == 1 else -1))
    return out


def check_identity(
    p: Polyhedron, t: Complex, x: Sequence
) -> IdentityReport:
    """Evaluate both sides of the identity at one exactly-lifted point."""
    sys = _ExactSystem(p)
    xs = tuple(Fraction(v) for v in x)
    if len(xs) != sys.n:
        raise ValueError(f"point has {len(xs)} coordinates, expected {sys.n}")
    vmask, tight = sys.violation_mask(xs)
    lhs = 1 if vmask else 0
    rhs = sum(
        sign for mask, sign in _signed_members(_members_of(t))
        if mask & vmask == mask
    )
    if vmask:
        classification = "exterior"
    elif tight:
        classification = "boundary-of-K"
    else:
        classification = "interior-of-K"
    return IdentityReport(point=xs, lhs=lhs, rhs=rhs,
                          classification=classification)


def _sample_box(rng: Random, n: int, radius: int) -> list[Fraction]:
    den = rng.randint(1, 8)
    return [
        Fraction(rng.randint(-radius * den, radius * den), den)
        for _ in range(n)
    ]


def _sample_on_facets(
    rng: Random,
    sys: _ExactSystem,
    J: Sequence[int],
    radius: int,
) -> Optional[list[Fraction]]:
    eqs = [(sys.cols[i - 1], sys.b[i - 1]) for i in J]
    free = _sample_box(rng, sys.n, radius)
    return solve_affine(eqs, free)


def fuzz_identity(
    p: Polyhedron,
    t: Complex,
    samples: int = 10_000,
    seed: int = 0,
    radius: Optional[int] = None,
    max_failures: int = 8,
) -> FuzzReport:
    """Exercise the identity on a seeded mix of random rational points.

    Roughly 40% generic box points, 30% points solved onto one constraint
    boundary, 30% onto intersections of several (the degenerate corners the
    perturbation argument exists for).  Returns the violation count, which
    a correct complex keeps at zero.
    """
    sys = _ExactSystem(p)
    members = _members_of(t)
    signed = _signed_members(members)
    multi = [J for J in members if 1 < len(J) <= sys.n]
    if radius is None:
        norms = np.linalg.norm(p.A, axis=0)
        radius = int(np.ceil(2 + 2 * np.max(np.abs(p.b) / norms)))

    rng = Random(seed)
    vmasks = np.empty(samples, dtype=np.int64)
    interior = boundary = exterior = 0
    points: list[tuple[Fraction, ...]] = []
    for s in range(samples):
        kind = rng.random()
        x: Optional[list[Fraction]] = None
        if kind >= 0.6:
            i = rng.randint(1, sys.m)
            x = _sample_on_facets(rng, sys, (i,), radius)
        elif kind >= 0.3 and multi:
            J = multi[rng.randrange(len(multi))]
            x = _sample_on_facets(rng, sys, J, radius)
        if x is None:
            x = _sample_box(rng, sys.n, radius)
        vmask, tight = sys.violation_mask(x)
        vmasks[s] = vmask
        if vmask:
            exterior += 1
        elif tight:
            boundary += 1
        else:
            interior += 1
        points.append(tuple(x))

    lhs = (vmasks != 0).astype(np.int64)
    rhs = np.zeros(samples, dtype=np.int64)
    for mask, sign in signed:
        rhs += sign * ((vmasks & mask) == mask)

    bad = np.flatnonzero(lhs != rhs)
    failures = tuple(
        check_identity(p, members, points[i]) for i in bad[:max_failures]
    )
    return FuzzReport(
        samples=samples,
        violations=int(bad.size),
        interior=interior,
        boundary=boundary,
        exterior=exterior,
        failures=failures,
    )
