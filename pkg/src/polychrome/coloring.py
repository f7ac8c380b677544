"""k-colorings built by repeatedly splitting every colour class in two.

Each round replaces a polychromatic k-coloring by a 2k-coloring: class
``i`` is 2-colored on its own as colours ``2i`` and ``2i + 1``.  If the
parent coloring is polychromatic at ``t`` and every split is bichromatic at
``c`` on its class, the result is polychromatic at ``c * c * t``.
The base 2-colorer is pluggable and its threshold is measured, never assumed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import _kernels
from .geometry import AffineMap, Point, Triangle, canonical_map, sweep_key
from .ranges import PointSet, RangeCatalog, enumerate_ranges, worst_missing

STRATEGIES = ("exact", "greedy-sweep")
EXACT_CUTOFF = 20
BASE_THRESHOLD = 12  # cited bound for two colours
DOUBLING_FACTOR = BASE_THRESHOLD * BASE_THRESHOLD


class UnknownStrategyError(ValueError):
    pass


@dataclass(frozen=True)
class Coloring:
    k: int
    colors: tuple[int, ...]

    def __init__(self, k: int, colors: Sequence[int]):
        colors = tuple(int(c) for c in colors)
        if k < 1:
            raise ValueError("a coloring needs at least one colour")
        bad = [c for c in colors if not 0 <= c < k]
        if bad:
            raise ValueError(f"colour {bad[0]} outside 0..{k - 1}")
        object.__setattr__(self, "k", int(k))
        object.__setattr__(self, "colors", colors)

    def __len__(self) -> int:
        return len(self.colors)

    def classes(self) -> list["ColorClass"]:
        masks = [0] * self.k
        for i, c in enumerate(self.colors):
            masks[c] |= 1 << i
        return [ColorClass(c, m) for c, m in enumerate(masks)]

    def refines(self, parent: "Coloring") -> bool:
        """True when colours ``2i`` and ``2i + 1`` lie inside parent class ``i``."""
        return (self.k == 2 * parent.k and len(self) == len(parent)
                and all(c // 2 == p for c, p in zip(self.colors, parent.colors)))

    @classmethod
    def uniform(cls, n: int, k: int = 1) -> "Coloring":
        return cls(k, [0] * n)


@dataclass(frozen=True)
class ColorClass:
    color: int
    members: int

    def indices(self) -> list[int]:
        return [i for i in range(self.members.bit_length()) if self.members >> i & 1]


@dataclass(frozen=True)
class ThresholdCert:
    k: int
    threshold: int
    kind: str  # "theoretical" or "empirical"


def theoretical_threshold(k: int) -> int:
    """Threshold guaranteed by doubling from the two-colour base bound.

    ``p(2^r) <= 12 * 144^(r - 1)``; other ``k`` round up to the next power
    of two, since merging colour classes never breaks polychromaticity.
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    if k == 1:
        return 1
    r = (k - 1).bit_length()  # ceil(log2 k)
    value = BASE_THRESHOLD * DOUBLING_FACTOR ** (r - 1)
    assert value <= DOUBLING_FACTOR ** r < DOUBLING_FACTOR * k ** 8
    return value


def _mono_max(local_masks: np.ndarray, local_sizes: np.ndarray, ones: int) -> int:
    if len(local_masks) == 0:
        return 0
    inter = local_masks & np.uint64(ones)
    mono = (inter == 0) | (inter == local_masks)
    return int(local_sizes[mono].max()) if mono.any() else 0


def restricted_mono_max(catalog: RangeCatalog, members: Sequence[int], ones: Sequence[int]) -> int:
    """Largest range restricted to ``members`` that is monochromatic.

    ``ones`` lists the members coloured 1; works for any class size.
    """
    words = catalog.masks.shape[1]
    sub = np.zeros(words, dtype=np.uint64)
    one = np.zeros(words, dtype=np.uint64)
    for i in members:
        sub[i // 64] |= np.uint64(1) << np.uint64(i % 64)
    for i in ones:
        one[i // 64] |= np.uint64(1) << np.uint64(i % 64)
    inter = catalog.masks & sub
    nonempty = inter.any(axis=1)
    has1 = (inter & one).any(axis=1)
    has0 = (inter & (sub & ~one)).any(axis=1)
    mono = nonempty & ~(has0 & has1)
    if not mono.any():
        return 0
    return int(np.bitwise_count(inter[mono]).sum(axis=1).max())


def _sweep_order(points: PointSet, members: Sequence[int]) -> list[int]:
    return sorted(members, key=lambda i: (sweep_key(points[i]), i))


def two_color(members: int | Sequence[int], catalog: RangeCatalog, points: PointSet,
              strategy: str = "exact", seed: int = 0) -> tuple[dict[int, int], int]:
    """2-color a subset of the points.

    Returns ``(colors, achieved)`` where ``colors`` maps each member index
    to 0 or 1 and ``achieved`` is the least ``m`` such that every range
    restricted to the subset with at least ``m`` points is bichromatic.
    ``exact`` returns an optimal split by branch and bound and refuses
    subsets larger than ``EXACT_CUTOFF``; ``greedy-sweep`` alternates colours
    along the sweep order.
    """
    if strategy not in STRATEGIES:
        raise UnknownStrategyError(f"unknown strategy {strategy!r}; choose from {STRATEGIES}")
    if isinstance(members, int):
        members = [i for i in range(members.bit_length()) if members >> i & 1]
    order = _sweep_order(points, members)
    if not order:
        raise ValueError("two_color needs a nonempty subset")
    greedy = [j % 2 for j in range(len(order))]
    if strategy == "greedy-sweep":
        ones = [i for i, c in zip(order, greedy) if c]
        return {i: c for i, c in zip(order, greedy)}, 1 + restricted_mono_max(catalog, order, ones)

    m = len(order)
    if m > EXACT_CUTOFF:
        raise ValueError(f"exact strategy supports at most {EXACT_CUTOFF} points, got {m}")
    local, sizes = catalog.restrict(order)
    start = sum(1 << j for j, c in enumerate(greedy) if c)
    rng = random.Random(seed)
    first = [rng.randrange(2) for _ in range(m)]
    best, bits = _kernels.bnb_two_color(m, local, sizes, first, start, _mono_max(local, sizes, start))
    colors = {i: (bits >> j) & 1 for j, i in enumerate(order)}
    return colors, 1 + best


@dataclass(frozen=True)
class Refinement:
    coloring: Coloring
    achieved: tuple[int, ...]    # per parent class; 1 for an empty class
    strategies: tuple[str, ...]  # strategy actually used per class

    @property
    def base_threshold(self) -> int:
        return max(self.achieved, default=1)


def refine(coloring: Coloring, catalog: RangeCatalog, points: PointSet,
           strategy: str = "exact", seed: int = 0) -> Refinement:
    """Split every class ``i`` into colours ``2i`` and ``2i + 1``.

    With ``strategy="exact"``, classes above ``EXACT_CUTOFF`` points are split
    with ``greedy-sweep`` instead.
    """
    if strategy not in STRATEGIES:
        raise UnknownStrategyError(f"unknown strategy {strategy!r}; choose from {STRATEGIES}")
    new = list(coloring.colors)
    achieved, used = [], []
    for cls in coloring.classes():
        idx = cls.indices()
        if not idx:
            achieved.append(1)
            used.append("none")
            continue
        strat = strategy
        if strat == "exact" and len(idx) > EXACT_CUTOFF:
            strat = "greedy-sweep"
        split, got = two_color(idx, catalog, points, strat, seed)
        for i, c in split.items():
            new[i] = 2 * cls.color + c
        achieved.append(got)
        used.append(strat)
    return Refinement(Coloring(2 * coloring.k, new), tuple(achieved), tuple(used))


def merge_colors(coloring: Coloring, k_target: int) -> Coloring:
    """Merge consecutive colour classes down to ``k_target`` colours.

    The ``K`` old colours are cut into ``k_target`` consecutive groups, the
    larger groups last: 4 -> 3 gives ``{0}, {1}, {2, 3}``.  When ``K`` is a
    power of two and ``k_target >= K / 2`` every merged group is a pair of
    sibling classes ``{2i, 2i + 1}``.
    """
    if k_target < 1:
        raise ValueError("k_target must be positive")
    K = coloring.k
    if k_target > K:
        raise ValueError(f"cannot merge {K} colours up to {k_target}")
    if k_target == K:
        return coloring
    q, r = divmod(K, k_target)
    small = k_target - r
    table = []
    for new in range(k_target):
        table.extend([new] * (q if new < small else q + 1))
    return Coloring(k_target, [table[c] for c in coloring.colors])


@dataclass(frozen=True)
class LevelStats:
    k: int
    threshold: int          # empirical threshold of the level-k coloring
    achieved: tuple[int, ...] = ()  # per-class split thresholds that produced it
    parent_threshold: int | None = None

    @property
    def base_threshold(self) -> int:
        return max(self.achieved, default=1)

    @property
    def sound(self) -> bool:
        """Doubling inequality with measured constants."""
        if self.parent_threshold is None:
            return True
        return self.threshold <= self.base_threshold ** 2 * self.parent_threshold


@dataclass
class KColorResult:
    coloring: Coloring
    empirical: ThresholdCert
    theoretical: ThresholdCert
    levels: list[LevelStats] = field(default_factory=list)
    catalog: RangeCatalog | None = None
    canonical: PointSet | None = None
    to_canonical: AffineMap | None = None


def canonicalize(P: Sequence[Point], T: Triangle) -> tuple[PointSet, AffineMap]:
    A = canonical_map(T)
    return PointSet(A.apply_all(P)), A


def k_color(P: Sequence[Point], T: Triangle | None = None, k: int = 2,
            strategy: str = "exact", seed: int = 0,
            catalog: RangeCatalog | None = None) -> KColorResult:
    """Color ``P`` with ``k`` colours by repeated refinement.

    Returns the coloring with a measured and a theoretical threshold
    certificate.  ``catalog`` may be passed to reuse an enumeration of the
    canonical point set.
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    if strategy not in STRATEGIES:
        raise UnknownStrategyError(f"unknown strategy {strategy!r}; choose from {STRATEGIES}")
    points, A = canonicalize(P, T or Triangle.unit())
    if catalog is None:
        catalog = enumerate_ranges(points)
    coloring = Coloring.uniform(len(points))
    levels = [LevelStats(1, empirical_from(catalog, coloring))]
    while coloring.k < k:
        ref = refine(coloring, catalog, points, strategy, seed)
        coloring = ref.coloring
        levels.append(LevelStats(coloring.k, empirical_from(catalog, coloring),
                                 ref.achieved, levels[-1].threshold))
    coloring = merge_colors(coloring, k)
    emp = empirical_from(catalog, coloring)
    return KColorResult(
        coloring,
        ThresholdCert(k, emp, "empirical"),
        ThresholdCert(k, theoretical_threshold(k), "theoretical"),
        levels, catalog, points, A,
    )


def empirical_from(catalog: RangeCatalog, coloring: Coloring) -> int:
    size, _, _ = worst_missing(catalog, coloring.colors, coloring.k)
    return size + 1
