"""Counting abelian 2-groups and realizing all groups of a given order."""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator

from .construction import TwoGroup, build_for_group
from .homology import homology, torsion_signature

# beyond this the quadratic-time recurrence is too slow in pure Python
RECURRENCE_LIMIT = 1 << 14


class CensusError(RuntimeError):
    pass


_table = [1]


def _extend_table(n: int) -> None:
    p = _table
    for m in range(len(p), n + 1):
        total = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > m:
                break
            sign = 1 if k % 2 else -1
            total += sign * p[m - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= m:
                total += sign * p[m - g2]
            k += 1
        p.append(total)


def partition_count(n: int) -> int:
    """Number of partitions of n, by Euler's pentagonal-number recurrence.

    Above ``RECURRENCE_LIMIT`` the value comes from sympy's implementation
    of the Hardy-Ramanujan-Rademacher series instead.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > RECURRENCE_LIMIT:
        from sympy.functions.combinatorial.numbers import partition

        return int(partition(n))
    if n >= len(_table):
        _extend_table(n)
    return _table[n]


def partition_table(n: int) -> list:
    partition_count(min(n, RECURRENCE_LIMIT))
    return [partition_count(m) for m in range(n + 1)]


def partitions_of(n: int) -> Iterator[TwoGroup]:
    """Partitions of n as TwoGroups, in reverse lexicographic order."""
    if n < 1:
        raise ValueError("n must be positive")
    parts = [n]
    while True:
        yield TwoGroup(tuple(parts))
        # drop trailing 1s, decrement the last part > 1, refill greedily
        ones = 0
        while parts and parts[-1] == 1:
            parts.pop()
            ones += 1
        if not parts:
            return
        x = parts.pop() - 1
        rest = ones + 1
        parts.append(x)
        while rest > x:
            parts.append(x)
            rest -= x
        if rest:
            parts.append(rest)


def exponent_of_order(order: int) -> int:
    """log2 of a group order; anything but a power of two is rejected."""
    if order < 2 or order & (order - 1):
        raise CensusError(f"order {order} is not a power of two; only 2-groups are supported")
    return order.bit_length() - 1


@dataclass(frozen=True)
class CensusEntry:
    group: TwoGroup
    num_vertices: int
    torsion: tuple | None


@dataclass(frozen=True)
class CensusReport:
    d: int
    e: int
    group_count: int
    realized: tuple
    distinctness_certified: bool


def _realize(args):
    d, group, verify = args
    X = build_for_group(d, group)
    torsion = homology(X, dims=[d - 1]).torsion[d - 1] if verify else None
    return CensusEntry(group, X.num_vertices, torsion)


def run_census(d: int, e: int, verify: bool = True, workers: int | None = None) -> CensusReport:
    """Build one complex per abelian group of order 2^e.

    With ``verify`` every torsion subgroup is certified against the
    requested group and the certificates are checked pairwise distinct.
    ``workers`` > 1 spreads the builds over a process pool.
    """
    if d < 2 or e < 1:
        raise CensusError("need d >= 2 and e >= 1")
    jobs = [(d, G, verify) for G in partitions_of(e)]
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            entries = list(pool.map(_realize, jobs, chunksize=4))
    else:
        entries = [_realize(job) for job in jobs]
    if len(entries) != partition_count(e):
        raise CensusError(f"enumerated {len(entries)} groups, expected {partition_count(e)}")
    distinct = False
    if verify:
        for entry in entries:
            expected = torsion_signature(entry.group.invariant_factors())
            if entry.torsion != expected:
                raise CensusError(f"{entry.group}: certified torsion {entry.torsion} != {expected}")
        distinct = len({entry.torsion for entry in entries}) == len(entries)
    return CensusReport(d, e, len(entries), tuple(entries), distinct)


@dataclass(frozen=True)
class AsymptoticRow:
    d: int
    groups: int
    log2_groups: float
    ratio: float
    vertices: int

    @property
    def doubly_exponential(self) -> bool:
        """Whether there are at least 2^(2^(d/2)) groups of order 2^(2^d)."""
        return self.log2_groups >= 2 ** (self.d / 2)


def asymptotic_report(d_max: int, d_min: int = 1) -> list:
    """Rows of pi(2^d), its log2, the ratio log2 pi(2^d) / 2^(d/2), and the
    vertex count 25d at which those groups are claimed realizable."""
    rows = []
    for d in range(d_min, d_max + 1):
        p = partition_count(2 ** d)
        lg = _log2(p)
        rows.append(AsymptoticRow(d, p, lg, lg / 2 ** (d / 2), 25 * d))
    return rows


def _log2(x: int) -> float:
    # exact ints can exceed float range
    shift = max(x.bit_length() - 64, 0)
    return math.log2(x >> shift) + shift
