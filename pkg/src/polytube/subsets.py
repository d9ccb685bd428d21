"""Ranking and unranking of bounded-cardinality index subsets.

The candidate family swept by the tube builder is the set of all nonempty
subsets ``J`` of ``{1, ..., m}`` with ``|J| <= r``, totally ordered first by
cardinality and then lexicographically on the sorted index tuple.  Ranks are
1-based and bijective, which makes ``[lo, hi)`` rank ranges a natural unit of
parallel work splitting.
"""

from __future__ import annotations

from math import comb
from typing import Iterable, Iterator, Sequence


class NotInFamily(ValueError):
    """The index set is not a member of the candidate family."""


class RankOutOfRange(ValueError):
    """The requested rank exceeds the size of the candidate family."""


IndexSet = tuple[int, ...]


def as_index_set(indices: Iterable[int]) -> IndexSet:
    """Return ``indices`` as a canonical tuple, strictly increasing, 1-based.

    Raises ValueError if the sequence is empty, unsorted, or has duplicates.
    """
    J = tuple(int(i) for i in indices)
    if not J:
        raise ValueError("index set must be nonempty")
    if any(b <= a for a, b in zip(J, J[1:])):
        raise ValueError(f"indices must be strictly increasing, got {J}")
    if J[0] < 1:
        raise ValueError(f"indices are 1-based, got {J}")
    return J


def family_size(m: int, r: int) -> int:
    """Number of nonempty subsets of {1..m} with cardinality at most r."""
    if not 0 <= r <= m:
        raise ValueError(f"need 0 <= r <= m, got r={r}, m={m}")
    return sum(comb(m, j) for j in range(1, r + 1))


def _lex_offset(J: Sequence[int], m: int) -> int:
    # Number of same-cardinality sets strictly preceding J in lex order.
    l = len(J)
    total = 0
    prev = 0
    for j, d in enumerate(J, start=1):
        for k in range(prev + 1, d):
            total += comb(m - k, l - j)
        prev = d
    return total


def rank(J: Iterable[int], m: int, r: int) -> int:
    """1-based position of ``J`` in the cardinality-then-lex total order."""
    J = as_index_set(J)
    l = len(J)
    if l > r or J[-1] > m:
        raise NotInFamily(f"{J} is not in the family for m={m}, r={r}")
    return 1 + family_size(m, l - 1) + _lex_offset(J, m)


def unrank(L: int, m: int, r: int) -> IndexSet:
    """Index set at 1-based position ``L``; inverse of :func:`rank`."""
    size = family_size(m, r)
    if not 1 <= L <= size:
        raise RankOutOfRange(f"rank {L} outside [1, {size}] for m={m}, r={r}")
    l = 1
    while l < r and family_size(m, l) < L:
        l += 1
    target = L - family_size(m, l - 1)

    # Greedily pick each d_j as the largest value keeping the count of
    # lexicographically smaller same-cardinality sets below `target`.
    J: list[int] = []
    prefix = 0
    prev = 0
    for j in range(1, l + 1):
        d = prev + 1
        inner = 0
        while d < m - (l - j) + 1:
            step = comb(m - d, l - j)
            if prefix + inner + step >= target:
                break
            inner += step
            d += 1
        prefix += inner
        J.append(d)
        prev = d
    return tuple(J)


def iter_family(m: int, r: int) -> Iterator[IndexSet]:
    """Yield the whole candidate family in rank order."""
    from itertools import combinations

    for l in range(1, r + 1):
        yield from combinations(range(1, m + 1), l)
