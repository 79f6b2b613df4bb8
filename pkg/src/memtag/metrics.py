"""Class entropy, per-feature information gain, and the overlap distances.

Gains are computed Quinlan-style with log base 2 on raw frequencies: no
gain-ratio correction, no smoothing. The log base only scales all weights
uniformly, so it can never change a feature ordering or a nearest-neighbor
decision.
"""

from __future__ import annotations

from math import log2
from typing import Sequence

from .casebase import CaseBase, Vector
from .errors import ParameterError, StructureError

FeatureWeights = tuple[float, ...]


def _entropy(counts: Sequence[int], total: int) -> float:
    h = 0.0
    for n in counts:
        p = n / total
        h -= p * log2(p)
    return h


def class_entropy(base: CaseBase) -> float:
    """Entropy in bits of the target-class distribution over all cases."""
    if base.total_cases == 0:
        raise StructureError("entropy of an empty case base")
    return _entropy(list(base.class_counts().values()), base.total_cases)


def information_gain(base: CaseBase, feature_index: int) -> float:
    """Expected reduction of class entropy from knowing one feature's value."""
    if not 0 <= feature_index < base.arity:
        raise ParameterError(
            f"feature index {feature_index} out of range for arity {base.arity}")
    return information_gains(base)[feature_index]


def information_gains(base: CaseBase) -> FeatureWeights:
    """Per-feature gains G(f_i) for all features, in one pass over the base."""
    if base.total_cases == 0:
        raise StructureError("gains of an empty case base")
    total = base.total_cases
    h_class = class_entropy(base)
    arity = base.arity
    # Per feature: value -> class -> count, weighted by duplicate counts.
    tables: list[dict[int, dict[int, int]]] = [{} for _ in range(arity)]
    for vec, dist in base.patterns.items():
        for i in range(arity):
            by_class = tables[i].setdefault(vec[i], {})
            for cls, n in dist.items():
                by_class[cls] = by_class.get(cls, 0) + n
    gains = []
    for table in tables:
        remainder = 0.0
        for by_class in table.values():
            counts = list(by_class.values())
            n_value = sum(counts)
            remainder += (n_value / total) * _entropy(counts, n_value)
        gains.append(h_class - remainder)
    return tuple(gains)


def distance_overlap(x: Vector, y: Vector) -> int:
    """Number of positions where the two vectors disagree (Hamming)."""
    if len(x) != len(y):
        raise StructureError(f"arity mismatch: {len(x)} vs {len(y)}")
    return sum(a != b for a, b in zip(x, y))


def distance_weighted(x: Vector, y: Vector, weights: FeatureWeights) -> float:
    """Sum of the gains of the disagreeing positions."""
    if len(x) != len(y) or len(x) != len(weights):
        raise StructureError(
            f"arity mismatch: {len(x)} vs {len(y)} with {len(weights)} weights")
    d = 0.0
    for a, b, w in zip(x, y, weights):
        if a != b:
            d += w
    return d
