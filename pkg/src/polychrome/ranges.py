"""Enumeration of the combinatorially distinct homothet ranges of a point set.

Point sets are assumed canonical: the reference triangle has already been
mapped to the unit right triangle, so a range is ``H ∩ P`` for some
``H = {x >= a, y >= b, x + y <= s}``.

Completeness: let ``S = H ∩ P`` be nonempty and let ``H'`` be its minimal
witness ``(min x, min y, max x+y)`` over ``S``.  Then ``H' ⊆ H`` so
``H' ∩ P ⊆ S``, and ``S ⊆ H'`` by construction, hence ``H' ∩ P = S``.  The
three parameters of ``H'`` are coordinates of points of ``P``, so trying
every ``a ∈ {p.x}``, ``b ∈ {p.y}``, ``s ∈ {p.x + p.y}`` reaches every range.
Only range membership is compared, so the kernels work on dense ranks.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import _kernels
from .geometry import Homothet, Point, format_scalar, parse_scalar

WORD = 64
_LOW = (1 << WORD) - 1


@dataclass(frozen=True)
class PointSet:
    """Ordered points; the index of a point is its identity everywhere."""

    points: tuple[Point, ...]

    def __init__(self, points: Iterable[Point] = ()):
        object.__setattr__(self, "points", tuple(points))

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[Point]:
        return iter(self.points)

    def __getitem__(self, i: int) -> Point:
        return self.points[i]

    def subset(self, mask: int) -> list[int]:
        return [i for i in range(len(self.points)) if mask >> i & 1]


@dataclass(frozen=True)
class Range:
    homothet: Homothet
    members: int

    @property
    def size(self) -> int:
        return self.members.bit_count()

    def indices(self) -> list[int]:
        m, out, i = self.members, [], 0
        while m:
            if m & 1:
                out.append(i)
            m >>= 1
            i += 1
        return out


def n_words(n: int) -> int:
    return max(1, (n + WORD - 1) // WORD)


def int_to_words(mask: int, words: int) -> np.ndarray:
    return np.array([(mask >> (WORD * w)) & _LOW for w in range(words)], dtype=np.uint64)


def words_to_int(row: Sequence[int]) -> int:
    value = 0
    for w, word in enumerate(row):
        value |= int(word) << (WORD * w)
    return value


def dense_ranks(values: Sequence[Fraction]) -> tuple[np.ndarray, tuple[Fraction, ...]]:
    table = tuple(sorted(set(values)))
    lookup = {v: r for r, v in enumerate(table)}
    return np.array([lookup[v] for v in values], dtype=np.int64), table


class RangeCatalog:
    """Deduplicated ranges, stored column-wise.

    ``masks`` is an ``(R, W)`` uint64 array of membership words and
    ``witness`` holds ranks into ``values = (xs, ys, ss)``, the sorted
    distinct coordinate tables.  Rows are sorted by membership bitset.
    """

    def __init__(self, n: int, masks: np.ndarray, witness: np.ndarray,
                 values: tuple[tuple[Fraction, ...], ...]):
        self.n = n
        masks = np.asarray(masks, dtype=np.uint64).reshape(-1, n_words(n))
        witness = np.asarray(witness, dtype=np.int64).reshape(-1, 3)
        if len(masks):
            order = np.lexsort(masks.T)  # last word is the primary key
            masks, witness = masks[order], witness[order]
        self.masks = np.ascontiguousarray(masks)
        self.witness = witness
        self.values = values
        self.sizes = np.bitwise_count(self.masks).sum(axis=1).astype(np.int64)

    def __len__(self) -> int:
        return len(self.masks)

    def homothet(self, r: int) -> Homothet:
        ia, ib, js = self.witness[r]
        xs, ys, ss = self.values
        return Homothet(xs[ia], ys[ib], ss[js])

    def members(self, r: int) -> int:
        return words_to_int(self.masks[r].tolist())

    def __getitem__(self, r: int) -> Range:
        return Range(self.homothet(r), self.members(r))

    def __iter__(self) -> Iterator[Range]:
        for r in range(len(self)):
            yield self[r]

    def bitsets(self) -> list[int]:
        return [words_to_int(row) for row in self.masks.tolist()]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RangeCatalog):
            return NotImplemented
        return self.n == other.n and list(self) == list(other)

    def restrict(self, indices: Sequence[int]) -> tuple[np.ndarray, np.ndarray]:
        """Ranges restricted to ``indices``, re-deduplicated, in local bits.

        Local bit ``j`` stands for point ``indices[j]``.  Returns
        ``(masks, sizes)`` with empty restrictions dropped.
        """
        if len(indices) > 63:
            raise ValueError("local restriction supports at most 63 points")
        local = np.zeros(len(self), dtype=np.uint64)
        for j, i in enumerate(indices):
            bit = (self.masks[:, i // WORD] >> np.uint64(i % WORD)) & np.uint64(1)
            local |= bit << np.uint64(j)
        local = np.unique(local[local != 0])
        return local, np.bitwise_count(local).astype(np.int64)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["a", "b", "s", "size", "members"])
        for r in range(len(self)):
            H = self.homothet(r)
            writer.writerow([format_scalar(H.a), format_scalar(H.b), format_scalar(H.s),
                             int(self.sizes[r]), format(self.members(r), "x")])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, n: int | None = None) -> "RangeCatalog":
        rows = list(csv.reader(io.StringIO(text)))
        if not rows or rows[0] != ["a", "b", "s", "size", "members"]:
            raise ValueError("range CSV must start with the header a,b,s,size,members")
        homs, bits = [], []
        for line_no, row in enumerate(rows[1:], start=2):
            if not row:
                continue
            if len(row) != 5:
                raise ValueError(f"line {line_no}: expected 5 fields")
            H = Homothet(*(parse_scalar(v) for v in row[:3]))
            member = int(row[4], 16)
            if member.bit_count() != int(row[3]):
                raise ValueError(f"line {line_no}: size does not match members")
            homs.append(H)
            bits.append(member)
        if n is None:
            n = max((b.bit_length() for b in bits), default=0)
        return catalog_from(n, homs, bits)


def catalog_from(n: int, homothets: Sequence[Homothet], bitsets: Sequence[int]) -> RangeCatalog:
    ar, xs = dense_ranks([H.a for H in homothets])
    br, ys = dense_ranks([H.b for H in homothets])
    sr, ss = dense_ranks([H.s for H in homothets])
    words = n_words(n)
    masks = np.array([int_to_words(b, words) for b in bitsets], dtype=np.uint64).reshape(-1, words)
    witness = np.stack([ar, br, sr], axis=1) if homothets else np.zeros((0, 3), dtype=np.int64)
    return RangeCatalog(n, masks, witness, (xs, ys, ss))


def enumerate_ranges(P: PointSet | Sequence[Point]) -> RangeCatalog:
    """Every distinct nonempty range of ``P`` with its minimal witness."""
    pts = list(P)
    xr, xs = dense_ranks([p.x for p in pts])
    yr, ys = dense_ranks([p.y for p in pts])
    sr, ss = dense_ranks([p.x + p.y for p in pts])
    witness, masks = _kernels.enumerate_ranks(xr, yr, sr)
    # witness ranks index the per-point tables, which coincide with xs/ys/ss
    return RangeCatalog(len(pts), masks, witness, (xs, ys, ss))


def enumerate_ranges_naive(P: PointSet | Sequence[Point]) -> RangeCatalog:
    """Reference O(n^4) enumeration straight from the candidate triples."""
    pts = list(P)
    xs = sorted({p.x for p in pts})
    ys = sorted({p.y for p in pts})
    ss = sorted({p.x + p.y for p in pts})
    found: dict[int, Homothet] = {}
    for a in xs:
        for b in ys:
            for s in ss:
                if a + b > s:
                    continue
                H = Homothet(a, b, s)
                mask = range_of(H, pts)
                if mask and mask not in found:
                    found[mask] = Homothet.minimal(pts[i] for i in range(len(pts)) if mask >> i & 1)
    keys = sorted(found)
    return catalog_from(len(pts), [found[k] for k in keys], keys)


def range_of(H: Homothet, P: PointSet | Sequence[Point]) -> int:
    mask = 0
    for i, p in enumerate(P):
        if p.x >= H.a and p.y >= H.b and p.x + p.y <= H.s:
            mask |= 1 << i
    return mask


def class_words(colors: Sequence[int], k: int, n: int) -> np.ndarray:
    """``(k, W)`` membership words of each colour class."""
    out = np.zeros((k, n_words(n)), dtype=np.uint64)
    for i, c in enumerate(colors):
        out[c, i // WORD] |= np.uint64(1) << np.uint64(i % WORD)
    return out


def worst_missing(catalog: RangeCatalog, colors: Sequence[int], k: int) -> tuple[int, int, int]:
    """``(size, row, missing colour)`` of the largest range missing a colour.

    Ties go to the smallest missing colour, then the smallest bitset.
    Returns ``(0, -1, -1)`` when every range sees all ``k`` colours.
    """
    if len(catalog) == 0:
        return 0, -1, -1
    cw = class_words(colors, k, catalog.n)
    present = np.empty((len(catalog), k), dtype=bool)
    for c in range(k):
        present[:, c] = (catalog.masks & cw[c]).any(axis=1)
    missing = ~present.all(axis=1)
    if not missing.any():
        return 0, -1, -1
    sized = np.where(missing, catalog.sizes, -1)
    best = int(sized.max())
    cand = np.flatnonzero(sized == best)
    first_missing = np.argmin(present[cand], axis=1)
    pick = int(np.argmin(first_missing))  # first minimal wins, i.e. smallest bitset
    return best, int(cand[pick]), int(first_missing[pick])


def max_nonpoly_range(catalog: RangeCatalog, coloring) -> tuple[int, Range | None]:
    """Largest range missing at least one colour of ``coloring``."""
    size, row, _ = worst_missing(catalog, coloring.colors, coloring.k)
    if row < 0:
        return 0, None
    return size, catalog[row]
