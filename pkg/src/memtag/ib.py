"""Reference brute-force classifiers over a case base.

classify_ib1 uses the plain overlap distance, classify_ib1ig the
gain-weighted one. Both scan every stored pattern on every query: this module
is the deliberately unoptimized oracle the tree classifier is checked
against, so it stays O(patterns * arity) per query with no indexing.

Everything at the minimal distance forms the nearest set; its class
distributions are pooled before the majority vote, so an ambiguous stored
pattern contributes all of its counts, not just its own winner.
"""

from __future__ import annotations

from dataclasses import dataclass

from .casebase import CaseBase, ClassDistribution, Vector, majority_class
from .errors import StructureError
from .metrics import FeatureWeights


@dataclass
class NearestSet:
    distance: float
    members: list[tuple[Vector, ClassDistribution]]

    def pooled(self) -> ClassDistribution:
        pool: ClassDistribution = {}
        for _, dist in self.members:
            for cls, n in dist.items():
                pool[cls] = pool.get(cls, 0) + n
        return pool


def nearest_set(base: CaseBase, query: Vector,
                weights: FeatureWeights | None = None) -> NearestSet:
    """All stored patterns at minimal (weighted) overlap distance from query."""
    if not base.patterns:
        raise StructureError("nearest_set over an empty case base")
    if len(query) != base.arity:
        raise StructureError(
            f"query arity {len(query)} != base arity {base.arity}")
    if weights is None:
        weights = (1.0,) * base.arity
    elif len(weights) != base.arity:
        raise StructureError(
            f"{len(weights)} weights for base arity {base.arity}")
    best = float("inf")
    members: list[tuple[Vector, ClassDistribution]] = []
    for vec, dist in base.patterns.items():
        d = 0.0
        for a, b, w in zip(vec, query, weights):
            if a != b:
                d += w
                if d > best:
                    break
        else:
            if d < best:
                best = d
                members = [(vec, dist)]
            elif d == best:
                members.append((vec, dist))
    return NearestSet(best, members)


def classify_ib1(base: CaseBase, query: Vector) -> int:
    """Majority class of the pooled nearest set under unweighted overlap."""
    pool = nearest_set(base, query).pooled()
    return majority_class(pool, base.interner)


def classify_ib1ig(base: CaseBase, weights: FeatureWeights, query: Vector) -> int:
    """Majority class of the pooled nearest set under gain-weighted overlap."""
    pool = nearest_set(base, query, weights).pooled()
    return majority_class(pool, base.interner)
