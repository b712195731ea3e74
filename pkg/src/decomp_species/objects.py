"""Objects and morphisms of Set^r: tuples of finite label sets, ordered
bipartitions, set partitions and sort-wise bijections."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple


class LabeledSet(tuple):
    """An r-tuple of frozensets of integer labels (one per sort)."""

    __slots__ = ()

    def __new__(cls, sorts: Iterable[Iterable[int]] = ()):
        return super().__new__(cls, (frozenset(s) for s in sorts))

    @property
    def arity(self) -> int:
        return len(self)

    def norm(self) -> int:
        return sum(len(s) for s in self)

    def sizes(self) -> Tuple[int, ...]:
        return tuple(len(s) for s in self)

    def is_empty(self) -> bool:
        return not any(self)

    def union(self, other: "LabeledSet") -> "LabeledSet":
        return LabeledSet(a | b for a, b in zip(self, other))

    def minus(self, other: "LabeledSet") -> "LabeledSet":
        return LabeledSet(a - b for a, b in zip(self, other))

    def intersect(self, other: "LabeledSet") -> "LabeledSet":
        return LabeledSet(a & b for a, b in zip(self, other))

    def issubset(self, other: "LabeledSet") -> bool:
        return all(a <= b for a, b in zip(self, other))

    def isdisjoint(self, other: "LabeledSet") -> bool:
        return all(a.isdisjoint(b) for a, b in zip(self, other))

    def contains(self, point: "BasePoint") -> bool:
        return point.label in self[point.sort]

    def key(self) -> Tuple[Tuple[int, ...], ...]:
        """Sorted-tuple form, totally ordered."""
        return tuple(tuple(sorted(s)) for s in self)

    @classmethod
    def from_key(cls, key) -> "LabeledSet":
        return cls(key)

    @classmethod
    def empty(cls, arity: int) -> "LabeledSet":
        return cls(() for _ in range(arity))

    def points(self) -> List["BasePoint"]:
        return [BasePoint(label, rho) for rho, s in enumerate(self) for label in sorted(s)]

    def text(self) -> str:
        return "(" + ",".join("{" + ",".join(map(str, sorted(s))) + "}" for s in self) + ")"

    def __repr__(self) -> str:
        return f"LabeledSet{self.text()}"


@dataclass(frozen=True)
class BasePoint:
    label: int
    sort: int


@dataclass(frozen=True)
class OrderedBipartition:
    first: LabeledSet
    second: LabeledSet

    def __post_init__(self):
        if not self.first.isdisjoint(self.second):
            raise ValueError(f"parts {self.first.text()} and {self.second.text()} overlap")

    @property
    def whole(self) -> LabeledSet:
        return self.first.union(self.second)

    def is_proper(self) -> bool:
        return not self.first.is_empty() and not self.second.is_empty()

    def swapped(self) -> "OrderedBipartition":
        return OrderedBipartition(self.second, self.first)

    def text(self) -> str:
        return f"{self.first.text()}|{self.second.text()}"


def standard_object(n: Sequence[int]) -> LabeledSet:
    """([n_1], ..., [n_r]) with labels 1..n_j in sort j."""
    return LabeledSet(range(1, k + 1) for k in n)


def _subsets(s: frozenset) -> List[frozenset]:
    items = sorted(s)
    return [frozenset(c) for k in range(len(items) + 1) for c in itertools.combinations(items, k)]


def subobjects(omega: LabeledSet) -> Iterator[LabeledSet]:
    """All componentwise subsets of omega (2^norm of them)."""
    for parts in itertools.product(*(_subsets(s) for s in omega)):
        yield LabeledSet(parts)


def bipartitions(omega: LabeledSet, proper_only: bool = False) -> List[OrderedBipartition]:
    out = []
    for first in subobjects(omega):
        bp = OrderedBipartition(first, omega.minus(first))
        if proper_only and not bp.is_proper():
            continue
        out.append(bp)
    return out


def set_partitions(omega: LabeledSet, m: Optional[int] = None) -> Iterator[Tuple[LabeledSet, ...]]:
    """Unordered partitions of omega into nonempty blocks (as r-tuples).

    Blocks are listed in order of their smallest point; with ``m`` only
    partitions into exactly m blocks are produced.
    """
    pts = omega.points()
    arity = omega.arity

    def rec(i: int, blocks: List[List]):
        if i == len(pts):
            if m is None or len(blocks) == m:
                yield tuple(
                    LabeledSet([p.label for p in b if p.sort == rho] for rho in range(arity)) for b in blocks
                )
            return
        remaining = len(pts) - i
        if m is not None and len(blocks) + remaining < m:
            return
        p = pts[i]
        for b in blocks:
            b.append(p)
            yield from rec(i + 1, blocks)
            b.pop()
        if m is None or len(blocks) < m:
            blocks.append([p])
            yield from rec(i + 1, blocks)
            blocks.pop()

    yield from rec(0, [])


class SortedBijection:
    """Morphism of Set^r: one bijection per sort."""

    __slots__ = ("maps",)

    def __init__(self, maps: Sequence[Dict[int, int]]):
        self.maps = tuple(dict(m) for m in maps)
        for m in self.maps:
            if len(set(m.values())) != len(m):
                raise ValueError("component map is not injective")

    @property
    def arity(self) -> int:
        return len(self.maps)

    @property
    def source(self) -> LabeledSet:
        return LabeledSet(m.keys() for m in self.maps)

    @property
    def target(self) -> LabeledSet:
        return LabeledSet(m.values() for m in self.maps)

    def __call__(self, label: int, sort: int) -> int:
        return self.maps[sort][label]

    def image(self, omega: LabeledSet) -> LabeledSet:
        return LabeledSet({m[x] for x in s} for m, s in zip(self.maps, omega))

    def restrict(self, omega: LabeledSet) -> "SortedBijection":
        return SortedBijection([{x: m[x] for x in s} for m, s in zip(self.maps, omega)])

    def inverse(self) -> "SortedBijection":
        return SortedBijection([{v: k for k, v in m.items()} for m in self.maps])

    def compose(self, inner: "SortedBijection") -> "SortedBijection":
        """self o inner."""
        return SortedBijection([{k: outer[v] for k, v in m.items()} for outer, m in zip(self.maps, inner.maps)])

    @classmethod
    def identity(cls, omega: LabeledSet) -> "SortedBijection":
        return cls([{x: x for x in s} for s in omega])

    def text(self) -> str:
        return "(" + ";".join(",".join(f"{k}->{v}" for k, v in sorted(m.items())) for m in self.maps) + ")"

    def __repr__(self):
        return f"SortedBijection{self.text()}"

    def __eq__(self, other):
        return isinstance(other, SortedBijection) and self.maps == other.maps

    def __hash__(self):
        return hash(tuple(frozenset(m.items()) for m in self.maps))


def adjacent_transpositions(omega: LabeledSet) -> List[SortedBijection]:
    """Swap two consecutive labels within one sort (generators of Aut(omega))."""
    out = []
    for rho, s in enumerate(omega):
        items = sorted(s)
        for a, b in zip(items, items[1:]):
            maps = [{x: x for x in t} for t in omega]
            maps[rho][a], maps[rho][b] = b, a
            out.append(SortedBijection(maps))
    return out


def shifted_bijections(omega: LabeledSet, rng: random.Random, count: int = 2, offset: int = 100) -> List[SortedBijection]:
    """Random bijections from omega onto label sets shifted by ``offset``.

    The first one is order preserving; the rest permute labels randomly.
    """
    out = []
    for i in range(count):
        maps = []
        for s in omega:
            src = sorted(s)
            dst = [offset + x for x in src]
            if i:
                rng.shuffle(dst)
            maps.append(dict(zip(src, dst)))
        out.append(SortedBijection(maps))
    return out


def morphism_sample(omega: LabeledSet, rng: random.Random, shifted: int = 2) -> List[SortedBijection]:
    return [SortedBijection.identity(omega)] + adjacent_transpositions(omega) + shifted_bijections(omega, rng, shifted)


def objects_upto(cap: Sequence[int]) -> Iterator[LabeledSet]:
    for n in itertools.product(*(range(c + 1) for c in cap)):
        yield standard_object(n)
