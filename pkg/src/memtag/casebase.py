"""Deduplicated store of fixed-arity symbolic cases.

Identical feature vectors are collapsed into one pattern that keeps a count
per target class, so a pattern seen with several classes stays ambiguous
instead of being overwritten. Pattern iteration order is the insertion order
of first occurrence, which keeps everything built on top (gains, trees)
deterministic.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping

from .errors import StructureError
from .interning import Interner

Vector = tuple[int, ...]
ClassDistribution = dict[int, int]


def majority_class(counts: Mapping[int, int], interner: Interner) -> int:
    """Most frequent class; ties go to the lexicographically smaller text.

    This single tie rule is used by every component that picks a "most
    frequent" anything, so results are reproducible across runs.
    """
    if not counts:
        raise StructureError("majority_class of an empty distribution")
    text = interner.text
    return min(counts, key=lambda c: (-counts[c], text(c)))


class CaseBase:
    """Pattern -> class-count store for one case layout (fixed arity)."""

    __slots__ = ("arity", "patterns", "total_cases", "interner")

    def __init__(self, arity: int, interner: Interner):
        if arity < 1:
            raise StructureError(f"arity must be >= 1, got {arity}")
        self.arity = arity
        self.interner = interner
        self.patterns: dict[Vector, ClassDistribution] = {}
        self.total_cases = 0

    def add(self, features: Vector, target: int) -> None:
        if len(features) != self.arity:
            raise StructureError(
                f"case arity {len(features)} != base arity {self.arity}")
        dist = self.patterns.get(features)
        if dist is None:
            self.patterns[features] = {target: 1}
        else:
            dist[target] = dist.get(target, 0) + 1
        self.total_cases += 1

    def add_many(self, cases: Iterable[tuple[Vector, int]]) -> None:
        arity = self.arity
        patterns = self.patterns
        n = 0
        for features, target in cases:
            if len(features) != arity:
                raise StructureError(
                    f"case arity {len(features)} != base arity {arity}")
            dist = patterns.get(features)
            if dist is None:
                patterns[features] = {target: 1}
            else:
                dist[target] = dist.get(target, 0) + 1
            n += 1
        self.total_cases += n

    def class_counts(self) -> ClassDistribution:
        """Aggregate class distribution over all stored cases."""
        totals: ClassDistribution = {}
        for dist in self.patterns.values():
            for cls, n in dist.items():
                totals[cls] = totals.get(cls, 0) + n
        return totals

    def majority(self) -> int:
        return majority_class(self.class_counts(), self.interner)

    def items(self) -> Iterator[tuple[Vector, ClassDistribution]]:
        return iter(self.patterns.items())

    def __len__(self) -> int:
        return len(self.patterns)

    def __bool__(self) -> bool:
        return bool(self.patterns)
