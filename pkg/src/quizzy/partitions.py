"""Set partitions, the categories of partitions, and their order structure.

Points are labelled ``1..m``.  A :class:`SetPartition` is stored in canonical
form: blocks sorted by their minimum, elements sorted inside each block.

Order convention: ``coarser_leq(sigma, pi)`` holds when every block of ``pi``
sits inside a block of ``sigma``, so the one-block partition is the minimum.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Callable, Iterable, Iterator, Sequence

from .errors import ExperimentalCategoryError

CATEGORIES = (
    "P", "NC", "P2", "NC2", "Peven", "NCeven", "P12", "NC12", "P2star", "Pevenstar",
)
EXPERIMENTAL = frozenset({"P2star", "Pevenstar"})

# quantum group each category parametrizes
GROUP_OF = {
    "P": "S_N", "NC": "S_N+", "P2": "O_N", "NC2": "O_N+", "Peven": "H_N",
    "NCeven": "H_N+", "P12": "B_N", "NC12": "B_N+", "P2star": "O_N*",
    "Pevenstar": "H_N*",
}


@dataclass(frozen=True)
class SetPartition:
    m: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.m < 0:
            raise ValueError("point count must be nonnegative")
        seen = sorted(p for b in self.blocks for p in b)
        if seen != list(range(1, self.m + 1)):
            raise ValueError(f"blocks {self.blocks} do not partition 1..{self.m}")
        if any(len(b) == 0 for b in self.blocks):
            raise ValueError("empty block")
        canon = tuple(sorted(tuple(sorted(b)) for b in self.blocks))
        object.__setattr__(self, "blocks", canon)

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]], m: int | None = None) -> SetPartition:
        blocks = [tuple(b) for b in blocks]
        if m is None:
            m = sum(len(b) for b in blocks)
        return cls(m, tuple(blocks))

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> SetPartition:
        """Partition whose blocks are the level sets of ``labels``."""
        groups: dict[int, list[int]] = {}
        for p, lab in enumerate(labels, start=1):
            groups.setdefault(lab, []).append(p)
        return cls(len(labels), tuple(tuple(g) for g in groups.values()))

    @classmethod
    def one_block(cls, m: int) -> SetPartition:
        return cls(m, (tuple(range(1, m + 1)),) if m else ())

    @classmethod
    def singletons(cls, m: int) -> SetPartition:
        return cls(m, tuple((p,) for p in range(1, m + 1)))

    @cached_property
    def labels(self) -> tuple[int, ...]:
        """Restricted growth string: 0-based block number of each point."""
        out = [0] * self.m
        for b, block in enumerate(self.blocks):
            for p in block:
                out[p - 1] = b
        return tuple(out)

    def __len__(self):
        return len(self.blocks)

    def __str__(self):
        return "{" + ",".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks) + "}"

    def compact(self) -> str:
        """Short form like ``12|34`` (only unambiguous for m < 10)."""
        return "|".join("".join(map(str, b)) for b in self.blocks) or "()"


def parse_partition(text: str) -> SetPartition:
    """Parse ``"{{1,3},{2,4}}"``, ``"{1,3}{2,4}"``, ``"13|24"`` or ``"1,3;2,4"``."""
    text = text.strip()
    if text in ("", "()", "{}", "{{}}"):
        return SetPartition(0, ())
    if "{" in text:
        groups = re.findall(r"\{([^{}]*)\}", text)
        return SetPartition.from_blocks([tuple(int(x) for x in g.split(",")) for g in groups])
    sep = ";" if ";" in text or "," in text else "|"
    blocks = []
    for chunk in text.split(sep):
        chunk = chunk.strip()
        if "," in chunk:
            blocks.append(tuple(int(x) for x in chunk.split(",")))
        else:
            blocks.append(tuple(int(c) for c in chunk))
    return SetPartition.from_blocks(blocks)


def _rgs(m: int) -> Iterator[tuple[int, ...]]:
    # restricted growth strings in lexicographic order
    if m == 0:
        yield ()
        return
    labels = [0] * m

    def rec(pos: int, top: int):
        if pos == m:
            yield tuple(labels)
            return
        for v in range(top + 2):
            labels[pos] = v
            yield from rec(pos + 1, max(top, v))

    labels[0] = 0
    yield from rec(1, 0)


def all_partitions(m: int) -> Iterator[SetPartition]:
    for lab in _rgs(m):
        yield SetPartition.from_labels(lab)


def crossing_count(pi: SetPartition) -> int:
    """Number of quadruples a<b<c<d with a,c in one block and b,d in another."""
    lab = pi.labels
    m = pi.m
    count = 0
    for a in range(m):
        for c in range(a + 2, m):
            if lab[a] != lab[c]:
                continue
            x = lab[a]
            # points b in (a, c) with block != x, points d > c in the same block as b
            for b in range(a + 1, c):
                y = lab[b]
                if y == x:
                    continue
                for d in range(c + 1, m):
                    if lab[d] == y:
                        count += 1
    return count


def is_noncrossing(pi: SetPartition) -> bool:
    # every point strictly between consecutive elements x<y of a block must
    # belong to a block living entirely inside (x, y)
    lab = pi.labels
    lo = {}
    hi = {}
    for i, x in enumerate(lab):
        lo.setdefault(x, i)
        hi[x] = i
    for block in pi.blocks:
        for x, y in zip(block, block[1:]):
            for z in range(x, y - 1):
                b = lab[z]
                if lo[b] < x - 1 or hi[b] > y - 1:
                    return False
    return True


def _balanced(pi: SetPartition) -> bool:
    return all(sum(1 if p % 2 else -1 for p in b) == 0 for b in pi.blocks)


_MEMBERSHIP: dict[str, Callable[[SetPartition], bool]] = {
    "P": lambda p: True,
    "NC": is_noncrossing,
    "P2": lambda p: all(len(b) == 2 for b in p.blocks),
    "NC2": lambda p: all(len(b) == 2 for b in p.blocks) and is_noncrossing(p),
    "Peven": lambda p: all(len(b) % 2 == 0 for b in p.blocks),
    "NCeven": lambda p: all(len(b) % 2 == 0 for b in p.blocks) and is_noncrossing(p),
    "P12": lambda p: all(len(b) <= 2 for b in p.blocks),
    "NC12": lambda p: all(len(b) <= 2 for b in p.blocks) and is_noncrossing(p),
    "P2star": lambda p: all(len(b) == 2 for b in p.blocks) and _balanced(p),
    "Pevenstar": lambda p: all(len(b) % 2 == 0 for b in p.blocks) and _balanced(p),
}


def check_category(cat: str, experimental: bool = False) -> str:
    if cat not in _MEMBERSHIP:
        raise ValueError(f"unknown category {cat!r}; expected one of {', '.join(CATEGORIES)}")
    if cat in EXPERIMENTAL and not experimental:
        raise ExperimentalCategoryError(
            f"category {cat} uses an unverified balanced-block definition; "
            "pass experimental=True (CLI: --experimental) to use it"
        )
    return cat


def is_member(cat: str, pi: SetPartition, experimental: bool = False) -> bool:
    return _MEMBERSHIP[check_category(cat, experimental)](pi)


def is_even_category(cat: str) -> bool:
    return cat in ("P2", "NC2", "Peven", "NCeven", "P2star", "Pevenstar")


@lru_cache(maxsize=None)
def _enumerate(cat: str, m: int) -> tuple[SetPartition, ...]:
    if is_even_category(cat) and m % 2:
        return ()
    pred = _MEMBERSHIP[cat]
    return tuple(p for p in all_partitions(m) if pred(p))


def enumerate_category(cat: str, m: int, experimental: bool = False) -> list[SetPartition]:
    """All partitions of ``1..m`` lying in category ``cat``, in canonical order."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    return list(_enumerate(check_category(cat, experimental), m))


def kernel(indices: Sequence[int]) -> SetPartition:
    """Partition of the positions of ``indices`` by equality of values."""
    return SetPartition.from_labels(indices)


def _same_m(a: SetPartition, b: SetPartition):
    if a.m != b.m:
        raise ValueError(f"partitions on different point counts ({a.m} vs {b.m})")


def coarser_leq(sigma: SetPartition, pi: SetPartition) -> bool:
    """True iff every block of ``pi`` lies inside a block of ``sigma``."""
    _same_m(sigma, pi)
    lab = sigma.labels
    return all(len({lab[p - 1] for p in b}) == 1 for b in pi.blocks)


def join_coarsen(pi: SetPartition, sigma: SetPartition) -> SetPartition:
    """Finest partition coarser than both arguments."""
    _same_m(pi, sigma)
    parent = list(range(pi.m + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for part in (pi, sigma):
        for b in part.blocks:
            r = find(b[0])
            for p in b[1:]:
                parent[find(p)] = r
    return SetPartition.from_labels([find(p) for p in range(1, pi.m + 1)])


def join_many(parts: Sequence[SetPartition]) -> SetPartition:
    out = parts[0]
    for p in parts[1:]:
        out = join_coarsen(out, p)
    return out


def signature(pi: SetPartition) -> int:
    """Sign of an even partition: parity of its crossing quadruples."""
    if any(len(b) % 2 for b in pi.blocks):
        raise ValueError(f"signature is only defined on even partitions, got {pi}")
    return _signature(pi)


@lru_cache(maxsize=1 << 16)
def _signature(pi: SetPartition) -> int:
    return -1 if crossing_count(pi) % 2 else 1


def coarsenings(pi: SetPartition) -> Iterator[SetPartition]:
    """Every partition coarser than or equal to ``pi``."""
    k = len(pi.blocks)
    for lab in _rgs(k):
        merged: dict[int, list[int]] = {}
        for b, x in zip(pi.blocks, lab):
            merged.setdefault(x, []).extend(b)
        yield SetPartition(pi.m, tuple(tuple(v) for v in merged.values()))


def two_row(upper: int, lower: int, blocks: Iterable[Iterable[tuple[str, int]]]) -> SetPartition:
    """Flatten a two-row diagram onto ``upper + lower`` points.

    Blocks are given as ``("u", i)`` / ``("l", j)`` points with 1-based
    positions.  Upper points keep their order; lower points are appended
    walking right to left, i.e. going around the boundary of the diagram,
    so that crossings of the planar picture are crossings of the line.
    """
    def pos(pt):
        row, i = pt
        return i if row == "u" else upper + lower - i + 1
    return SetPartition.from_blocks([[pos(pt) for pt in b] for b in blocks], upper + lower)


def permutation_pairing(rho: Sequence[int]) -> SetPartition:
    """Pairing joining upper point ``i`` to lower point ``rho[i-1]``."""
    k = len(rho)
    return two_row(k, k, [[("u", i), ("l", rho[i - 1])] for i in range(1, k + 1)])


def permutation_sign(rho: Sequence[int]) -> int:
    inv = sum(1 for a, b in combinations(range(len(rho)), 2) if rho[a] > rho[b])
    return -1 if inv % 2 else 1


class Mobius:
    """Möbius function of a category of partitions under ``coarser_leq``.

    Intervals are taken inside the category, so for ``NC`` this is the
    Möbius function of the noncrossing lattice, not of all partitions.
    Memoized per instance; build one per worker for concurrent use.
    """

    def __init__(self, lattice: str = "Peven", experimental: bool = False):
        self.lattice = check_category(lattice, experimental)
        self._pred = _MEMBERSHIP[self.lattice]
        self._memo: dict[tuple[SetPartition, SetPartition], int] = {}

    def interval(self, sigma: SetPartition, pi: SetPartition) -> list[SetPartition]:
        return [t for t in coarsenings(pi) if self._pred(t) and coarser_leq(sigma, t)]

    def __call__(self, sigma: SetPartition, pi: SetPartition) -> int:
        _same_m(sigma, pi)
        if sigma == pi:
            return 1
        if not coarser_leq(sigma, pi):
            return 0
        key = (sigma, pi)
        if key not in self._memo:
            self._memo[key] = -sum(
                self(sigma, tau) for tau in self.interval(sigma, pi) if tau != pi
            )
        return self._memo[key]


_DEFAULT_MOBIUS: dict[str, Mobius] = {}


def mobius(sigma: SetPartition, pi: SetPartition, lattice: str = "Peven") -> int:
    """μ(σ, π) on the given lattice; 0 unless σ is coarser than π."""
    if lattice not in _DEFAULT_MOBIUS:
        _DEFAULT_MOBIUS[lattice] = Mobius(lattice, experimental=lattice in EXPERIMENTAL)
    return _DEFAULT_MOBIUS[lattice](sigma, pi)
