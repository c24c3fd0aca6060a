"""Counting, enumeration and random generation of antichains in finite grids.

The grid [ell]^d holds vectors with components in {0, ..., ell-1}.  In two
dimensions an antichain of size n is a strictly increasing sequence paired
with a strictly decreasing one, which gives the closed forms
``binom(ell, n)**2`` per size and ``binom(2*ell, ell)`` in total (the empty
antichain included).  Higher dimensions are handled by explicit enumeration
with dominance pruning, guarded by a grid-size limit.

The width of the grid (maximum antichain cardinality) is computed by branch
and bound seeded with the best constant-sum layer; vectors of equal
component sum are automatically pairwise incomparable, so every layer is an
antichain and the largest layer is a lower bound.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from math import comb
from typing import Iterator, Optional

from .core import Antichain, Vector

GRID_POINT_LIMIT = 2 ** 20


class GridTooLarge(ValueError):
    """Enumeration endpoints refuse grids beyond GRID_POINT_LIMIT points."""


def _check_grid(d: int, ell: int) -> None:
    if d < 1 or ell < 1:
        raise ValueError("need d >= 1 and ell >= 1")
    if ell ** d > GRID_POINT_LIMIT:
        raise GridTooLarge(f"grid [{ell}]^{d} has {ell ** d} points, limit is {GRID_POINT_LIMIT}")


def count_2d(ell: int, n: Optional[int] = None) -> int:
    """Number of antichains in [ell]^2: ``binom(ell, n)**2`` for a fixed
    size, ``binom(2*ell, ell)`` in total (empty antichain included)."""
    if ell < 1:
        raise ValueError("ell must be at least 1")
    if n is None:
        return comb(2 * ell, ell)
    if n < 0 or n > ell:
        raise ValueError(f"size {n} impossible in [{ell}]^2 (0 <= n <= ell)")
    return comb(ell, n) ** 2


def grid_points(d: int, ell: int) -> list:
    """Lattice points of [ell]^d in lexicographic order."""
    _check_grid(d, ell)
    return [tuple(p) for p in itertools.product(range(ell), repeat=d)]


def _incomparable(p: Vector, q: Vector) -> bool:
    less = greater = False
    for a, b in zip(p, q):
        if a < b:
            less = True
        elif a > b:
            greater = True
    return less and greater


def enumerate_antichains(d: int, ell: int) -> Iterator[tuple]:
    """Every antichain of [ell]^d exactly once, the empty one included.

    Emitted as tuples of points; points within an antichain appear in
    lexicographic order.  Order of emission is deterministic but otherwise
    unspecified.
    """
    points = grid_points(d, ell)
    chosen: list = []

    def extend(start: int) -> Iterator[tuple]:
        yield tuple(chosen)
        for idx in range(start, len(points)):
            p = points[idx]
            if all(_incomparable(p, c) for c in chosen):
                chosen.append(p)
                yield from extend(idx + 1)
                chosen.pop()

    return extend(0)


def count_antichains(d: int, ell: int, n: Optional[int] = None) -> int:
    """Exact antichain count by enumeration; any d, guarded grid size."""
    if n is None:
        return sum(1 for _ in enumerate_antichains(d, ell))
    return sum(1 for a in enumerate_antichains(d, ell) if len(a) == n)


def layer_size(d: int, ell: int, s: int) -> int:
    """Number of vectors in [ell]^d with component sum exactly ``s``."""
    if d < 1 or ell < 1:
        raise ValueError("need d >= 1 and ell >= 1")
    if s < 0 or s > (ell - 1) * d:
        return 0
    counts = [1] + [0] * s
    for _ in range(d):
        new = [0] * (s + 1)
        for total in range(s + 1):
            if counts[total]:
                for x in range(min(ell - 1, s - total) + 1):
                    new[total + x] += counts[total]
        counts = new
    return counts[s]


def width(d: int, ell: int) -> int:
    """Maximum antichain cardinality in [ell]^d.

    Branch and bound over lexicographically ordered points, seeded with the
    largest constant-sum layer; a branch dies once the chosen points plus
    all remaining candidates cannot beat the best antichain found.
    """
    _check_grid(d, ell)
    best = max(layer_size(d, ell, s) for s in range((ell - 1) * d + 1))
    points = grid_points(d, ell)

    def grow(cands: list, size: int) -> None:
        nonlocal best
        if size > best:
            best = size
        for i, p in enumerate(cands):
            if size + len(cands) - i <= best:
                return
            grow([q for q in cands[i + 1:] if _incomparable(p, q)], size + 1)

    grow(points, 0)
    return best


@dataclass(frozen=True)
class MiddleLayerReport:
    d: int
    ell: int
    width: int
    max_layer_size: int
    argmax_sums: tuple  # every sum value achieving the maximum layer size
    equal: bool
    stated_sum: int     # floor(ell*d/2)
    midpoint_sum: int   # floor((ell-1)*d/2), midpoint of the realizable sums


def check_middle_layer_conjecture(d: int, ell: int) -> MiddleLayerReport:
    """Does the largest constant-sum layer realize the grid width, and at
    which sums does the maximum occur?

    Reports both the conjectured index floor(ell*d/2) and the natural
    midpoint floor((ell-1)*d/2) of the realizable sum range; the true
    argmax is computed, not assumed.
    """
    w = width(d, ell)
    sizes = {s: layer_size(d, ell, s) for s in range((ell - 1) * d + 1)}
    max_size = max(sizes.values())
    argmax = tuple(sorted(s for s, v in sizes.items() if v == max_size))
    return MiddleLayerReport(
        d=d,
        ell=ell,
        width=w,
        max_layer_size=max_size,
        argmax_sums=argmax,
        equal=(w == max_size),
        stated_sum=(ell * d) // 2,
        midpoint_sum=((ell - 1) * d) // 2,
    )


@dataclass(frozen=True)
class GeneratedAntichain:
    antichain: Antichain
    target_reached: bool
    draws_used: int


def random_antichain(k: int, target_m: int, maxval: int, seed) -> GeneratedAntichain:
    """Deterministic random antichain of about ``target_m`` vectors.

    Draws vectors uniformly from [0..maxval]^k and keeps the running set of
    maximal elements; stops at the target size or after 100 * target_m
    draws.  Some (k, maxval) cannot reach the target (a 1-dimensional set
    never exceeds one vector); the result then carries target_reached=False.
    """
    if k < 1 or target_m < 1 or maxval < 0:
        raise ValueError("need k >= 1, target_m >= 1, maxval >= 0")
    rng = random.Random(seed)
    current: list = []
    budget = 100 * target_m
    draws = 0
    while draws < budget and len(current) < target_m:
        draws += 1
        v = tuple(rng.randint(0, maxval) for _ in range(k))
        dominated = False
        for w in current:
            below = True
            for a, b in zip(v, w):
                if a > b:
                    below = False
                    break
            if below:
                dominated = True  # v <= w (equality included)
                break
        if dominated:
            continue
        current = [w for w in current if not _dominates_strict(v, w)]
        current.append(v)
    ac = Antichain._from_maximal(k, sorted(current)) if current else Antichain((), dim=k)
    return GeneratedAntichain(ac, len(ac) >= target_m, draws)


def _dominates_strict(v: Vector, w: Vector) -> bool:
    """True iff w < v."""
    strict = False
    for a, b in zip(w, v):
        if a > b:
            return False
        if a < b:
            strict = True
    return strict


def random_good_antichain_2d(ell: int, n: int, seed) -> Antichain:
    """Random 2-d antichain with all per-dimension values distinct: an
    increasing first coordinate paired with a decreasing second one."""
    if n < 1 or n > ell:
        raise ValueError(f"size {n} impossible for a good antichain in [{ell}]^2")
    rng = random.Random(seed)
    ps = sorted(rng.sample(range(ell), n))
    qs = sorted(rng.sample(range(ell), n), reverse=True)
    return Antichain._from_maximal(2, sorted(zip(ps, qs)))
