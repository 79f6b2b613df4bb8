"""Oblivious decision trie over a case base, ordered by information gain.

All nodes at one depth test the same feature (the next one in descending-gain
order), so a path is a gain-ranked prefix of a case. Construction stops a
path as soon as the remaining cases agree on a class; the lower-gain feature
values of those cases are never stored. Every node keeps the majority class
of the cases under it as its default, which is the answer whenever traversal
falls off the tree. Retrieval therefore costs at most arity+1 node visits no
matter how many cases were stored.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

from .casebase import CaseBase, ClassDistribution, Vector, majority_class
from .errors import ModelFormatError, StructureError
from .interning import Interner
from .metrics import FeatureWeights

_U32 = struct.Struct("<I")


class IGTreeNode:
    """One trie node: default class plus value-labeled arcs (None = leaf)."""

    __slots__ = ("default", "arcs")

    def __init__(self, default: int, arcs: dict[int, "IGTreeNode"] | None):
        self.default = default
        self.arcs = arcs


class IGTree:
    __slots__ = ("root", "feature_order", "arity", "case_count")

    def __init__(self, root: IGTreeNode, feature_order: tuple[int, ...],
                 arity: int, case_count: int):
        self.root = root
        self.feature_order = feature_order
        self.arity = arity
        self.case_count = case_count

    def classify(self, query: Vector) -> int:
        """Walk arcs in gain order; answer the last default on a miss."""
        node = self.root
        for i in self.feature_order:
            arcs = node.arcs
            if arcs is None:
                return node.default
            child = arcs.get(query[i])
            if child is None:
                return node.default
            node = child
        return node.default

    def trace(self, query: Vector) -> tuple[int, list[tuple[int, int, bool, int]]]:
        """classify plus the visited path.

        Returns (prediction, steps); each step is (feature_index, query_value,
        matched, default_at_node) for one internal node tested. A leaf hit or
        an arc miss ends the path.
        """
        steps: list[tuple[int, int, bool, int]] = []
        node = self.root
        for i in self.feature_order:
            if node.arcs is None:
                break
            child = node.arcs.get(query[i])
            steps.append((i, query[i], child is not None, node.default))
            if child is None:
                return node.default, steps
            node = child
        return node.default, steps


def feature_order(weights: FeatureWeights) -> tuple[int, ...]:
    """Feature indices by descending gain; equal gains by ascending index."""
    return tuple(sorted(range(len(weights)), key=lambda i: (-weights[i], i)))


def build(base: CaseBase, weights: FeatureWeights) -> IGTree:
    """Recursive construction: leaf on an unambiguous subset or exhausted
    features, otherwise an internal node with one arc per occurring value."""
    if not base.patterns:
        raise StructureError("cannot build a tree from an empty case base")
    if len(weights) != base.arity:
        raise StructureError(
            f"{len(weights)} weights for base arity {base.arity}")
    order = feature_order(weights)
    items = list(base.patterns.items())
    root = _build(items, order, 0, base.interner)
    return IGTree(root, order, base.arity, base.total_cases)


def _build(items: list[tuple[Vector, ClassDistribution]],
           order: tuple[int, ...], depth: int, interner: Interner) -> IGTreeNode:
    totals: ClassDistribution = {}
    for _, dist in items:
        for cls, n in dist.items():
            totals[cls] = totals.get(cls, 0) + n
    default = majority_class(totals, interner)
    # Ambiguity counts distinct classes, so two identical vectors with
    # different targets keep a subset ambiguous.
    if len(totals) == 1 or depth == len(order):
        return IGTreeNode(default, None)
    feat = order[depth]
    groups: dict[int, list[tuple[Vector, ClassDistribution]]] = {}
    for item in items:
        value = item[0][feat]
        group = groups.get(value)
        if group is None:
            groups[value] = [item]
        else:
            group.append(item)
    arcs = {value: _build(group, order, depth + 1, interner)
            for value, group in groups.items()}
    return IGTreeNode(default, arcs)


def prune(tree: IGTree) -> IGTree:
    """Drop leaf children that agree with their parent's default class.

    Works bottom-up, so a node whose children all disappear becomes a leaf
    and may be dropped by its own parent in turn. The classification function
    is unchanged: a query that used to reach a dropped leaf now misses the
    arc and gets the parent default, which is the same class. Returns a new
    tree; the input is untouched.
    """
    return IGTree(_prune(tree.root), tree.feature_order, tree.arity,
                  tree.case_count)


def _prune(node: IGTreeNode) -> IGTreeNode:
    if node.arcs is None:
        return IGTreeNode(node.default, None)
    arcs: dict[int, IGTreeNode] = {}
    for value, child in node.arcs.items():
        pruned = _prune(child)
        if pruned.arcs is None and pruned.default == node.default:
            continue
        arcs[value] = pruned
    return IGTreeNode(node.default, arcs or None)


@dataclass
class TreeStats:
    nodes: int
    leaves: int
    arcs: int
    max_depth: int
    depth_histogram: dict[int, int]
    serialized_bytes: int
    expanded_bytes: int

    @property
    def compression_ratio(self) -> float:
        return self.serialized_bytes / self.expanded_bytes

    def tsv(self) -> str:
        rows = [
            ("nodes", self.nodes),
            ("leaves", self.leaves),
            ("arcs", self.arcs),
            ("max_depth", self.max_depth),
            ("serialized_bytes", self.serialized_bytes),
            ("expanded_bytes", self.expanded_bytes),
            ("compression_ratio", f"{self.compression_ratio:.4f}"),
        ]
        return "\n".join(f"{k}\t{v}" for k, v in rows)


def stats(tree: IGTree) -> TreeStats:
    """Size report; the expanded baseline is the flat store of all trained
    cases at one u32 per feature-or-target slot, matching the tree's own
    u32-per-symbol serialization."""
    nodes = leaves = arcs = 0
    histogram: dict[int, int] = {}
    stack = [(tree.root, 0)]
    max_depth = 0
    while stack:
        node, depth = stack.pop()
        nodes += 1
        histogram[depth] = histogram.get(depth, 0) + 1
        max_depth = max(max_depth, depth)
        if node.arcs is None:
            leaves += 1
        else:
            arcs += len(node.arcs)
            for child in node.arcs.values():
                stack.append((child, depth + 1))
    expanded = tree.case_count * (tree.arity + 1) * 4
    return TreeStats(nodes, leaves, arcs, max_depth, histogram,
                     len(tree_to_bytes(tree)), expanded)


def tree_to_bytes(tree: IGTree) -> bytes:
    """Versionless binary section: header, then nodes preorder, all u32 LE."""
    out = bytearray()
    pack = _U32.pack
    out += pack(tree.arity)
    out += pack(tree.case_count)
    for i in tree.feature_order:
        out += pack(i)
    _write_node(tree.root, out, pack)
    return bytes(out)


def _write_node(node: IGTreeNode, out: bytearray, pack) -> None:
    out += pack(node.default)
    if node.arcs is None:
        out += pack(0)
        return
    out += pack(len(node.arcs))
    for value, child in node.arcs.items():
        out += pack(value)
        _write_node(child, out, pack)


def tree_from_bytes(buf: bytes, offset: int = 0) -> tuple[IGTree, int]:
    """Inverse of tree_to_bytes; returns the tree and the next offset."""
    try:
        arity, offset = _read_u32(buf, offset)
        case_count, offset = _read_u32(buf, offset)
        order = []
        for _ in range(arity):
            i, offset = _read_u32(buf, offset)
            order.append(i)
        root, offset = _read_node(buf, offset)
    except struct.error as exc:
        raise ModelFormatError(f"truncated tree section: {exc}") from exc
    return IGTree(root, tuple(order), arity, case_count), offset


def _read_u32(buf: bytes, offset: int) -> tuple[int, int]:
    return _U32.unpack_from(buf, offset)[0], offset + 4


def _read_node(buf: bytes, offset: int) -> tuple[IGTreeNode, int]:
    default, offset = _read_u32(buf, offset)
    n_arcs, offset = _read_u32(buf, offset)
    if n_arcs == 0:
        return IGTreeNode(default, None), offset
    arcs: dict[int, IGTreeNode] = {}
    for _ in range(n_arcs):
        value, offset = _read_u32(buf, offset)
        child, offset = _read_node(buf, offset)
        arcs[value] = child
    return IGTreeNode(default, arcs), offset
