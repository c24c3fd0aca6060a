"""Sharing trees: layered minimal acyclic DAGs encoding vector sets.

A set of k-dimensional vectors, read as words of length k, is a finite
language; its sharing tree is the minimal acyclic deterministic automaton
for that language, laid out in k + 1 layers with the values on the nodes.
Construction builds the trie implicitly and minimizes bottom-up by giving
every subtree a canonical identity (layer, value, successor identities) and
caching on it, so equivalent subtrees are created once.

Successors are kept in strictly decreasing value order, which gives the
membership DFS its early exits: once the largest remaining successor value
drops below the query component, no branch can dominate.

When the largest component exceeds the number of vectors, values are
compressed to their per-dimension ranks before building; rank encoding is
order-isomorphic within each dimension, so domination between stored
vectors is preserved, and queries translate each component with a binary
search over the per-dimension sorted value table.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from typing import Iterator, Optional

from .core import Antichain, DimensionMismatch, Stats, Vector

TOP = None  # root value


class STNode:
    __slots__ = ("layer", "value", "succs", "uid")

    def __init__(self, layer: int, value, succs, uid: int):
        self.layer = layer
        self.value = value
        self.succs = succs  # tuple, strictly decreasing by value
        self.uid = uid

    def __repr__(self) -> str:
        return f"STNode(layer={self.layer}, value={self.value}, uid={self.uid})"


class STree:
    """A built sharing tree plus its bookkeeping.

    ``table`` is None for uncompressed trees; otherwise it holds, per
    dimension, the sorted list of distinct original values, and node values
    are ranks into these lists.
    """

    __slots__ = ("root", "dim", "empty", "node_count", "edge_count", "table")

    def __init__(self, root: STNode, dim: int, empty: bool, node_count: int,
                 edge_count: int, table):
        self.root = root
        self.dim = dim
        self.empty = empty
        self.node_count = node_count
        self.edge_count = edge_count
        self.table = table


def _rank_table(vectors, dim: int):
    return [sorted({v[i] for v in vectors}) for i in range(dim)]


def _rank_encode(vectors, table):
    dim = len(table)
    return [tuple(bisect_left(table[i], v[i]) for i in range(dim)) for v in vectors]


def compress(ac: Antichain):
    """Rank-encode an antichain per dimension.

    Returns the compressed antichain and the recovery table (per dimension,
    the sorted distinct original values).  Ranks are order-isomorphic within
    each dimension, so all domination relations between stored vectors are
    preserved, and the encoding is invertible through the table.
    """
    if not ac.vectors:
        raise ValueError("cannot compress an empty antichain")
    table = _rank_table(ac.vectors, ac.dim)
    compressed = _rank_encode(ac.vectors, table)
    return Antichain._from_maximal(ac.dim, sorted(compressed)), table


def decompress(ac: Antichain, table) -> Antichain:
    originals = [tuple(table[i][v[i]] for i in range(ac.dim)) for v in ac.vectors]
    return Antichain._from_maximal(ac.dim, sorted(originals))


def build_sharingtree(ac: Antichain, compress_mode: str = "auto") -> STree:
    """Build the minimal layered DAG for an antichain.

    ``compress_mode``: "auto" compresses when the max norm exceeds the
    member count, "never" and "always" force the choice.
    """
    dim = ac.dim
    if not ac.vectors:
        root = STNode(0, TOP, (), 0)
        return STree(root, dim, True, 1, 0, None)
    table = None
    vectors = ac.vectors
    if compress_mode == "always" or (compress_mode == "auto" and ac.max_norm() > len(ac.vectors)):
        cac, table = compress(ac)
        vectors = cac.vectors
    return _build_tree(vectors, dim, table)


def _build_tree(vectors, dim: int, table) -> STree:
    caches = [dict() for _ in range(dim + 1)]
    counter = [0]

    def make(layer: int, value, succs) -> STNode:
        key = (value, tuple(s.uid for s in succs))
        node = caches[layer].get(key)
        if node is None:
            node = STNode(layer, value, tuple(succs), counter[0])
            counter[0] += 1
            caches[layer][key] = node
        return node

    def rec(layer: int, value, vecs) -> STNode:
        if layer == dim:
            return make(dim, value, ())
        buckets: dict = {}
        for v in vecs:
            buckets.setdefault(v[layer], []).append(v)
        succs = [rec(layer + 1, val, buckets[val]) for val in sorted(buckets, reverse=True)]
        return make(layer, value, succs)

    root = rec(0, TOP, list(vectors))
    node_count = sum(len(c) for c in caches)
    edge_count = sum(len(n.succs) for c in caches for n in c.values())
    return STree(root, dim, False, node_count, edge_count, table)


def _thresholds(tree: STree, u: Vector):
    """Per-dimension rank thresholds for non-strict and strict domination.

    A stored value (rank or raw) dominates component i iff it is >= geq[i];
    it strictly exceeds iff >= gt[i].
    """
    if tree.table is None:
        geq = list(u)
        gt = [x + 1 for x in u]
    else:
        geq = [bisect_left(tree.table[i], u[i]) for i in range(tree.dim)]
        gt = [bisect_right(tree.table[i], u[i]) for i in range(tree.dim)]
    return geq, gt


def member_st(tree: STree, u: Vector, stats: Optional[Stats] = None) -> bool:
    """DFS membership: is there a root-to-leaf path dominating ``u``?"""
    u = tuple(u)
    if len(u) != tree.dim:
        raise DimensionMismatch(f"query has length {len(u)}, tree has dimension {tree.dim}")
    if tree.empty:
        return False
    geq, _ = _thresholds(tree, u)
    k = tree.dim
    visits = 0
    comps = 0

    def dfs(node: STNode, layer: int) -> bool:
        nonlocal visits, comps
        visits += 1
        if layer == k - 1:
            # second-to-last layer: the first (largest) successor decides
            comps += 1
            return node.succs[0].value >= geq[layer]
        for s in node.succs:
            comps += 1
            if s.value < geq[layer]:
                break  # successors only get smaller
            if dfs(s, layer + 1):
                return True
        return False

    result = dfs(tree.root, 0)
    if stats is not None:
        stats.merge(comparisons=comps, node_visits=visits)
    return result


def strict_member_st(tree: STree, u: Vector, stats: Optional[Stats] = None) -> bool:
    """DFS with a strictness bit: some path dominates ``u`` and exceeds it
    in at least one component."""
    u = tuple(u)
    if len(u) != tree.dim:
        raise DimensionMismatch(f"query has length {len(u)}, tree has dimension {tree.dim}")
    if tree.empty:
        return False
    geq, gt = _thresholds(tree, u)
    k = tree.dim
    visits = 0
    comps = 0

    def dfs(node: STNode, layer: int, strict: bool) -> bool:
        nonlocal visits, comps
        visits += 1
        if layer == k:
            return strict
        for s in node.succs:
            comps += 2
            if s.value < geq[layer]:
                break
            if dfs(s, layer + 1, strict or s.value >= gt[layer]):
                return True
        return False

    result = dfs(tree.root, 0, False)
    if stats is not None:
        stats.merge(comparisons=comps, node_visits=visits)
    return result


def iter_vectors(tree: STree, original: bool = True) -> Iterator[Vector]:
    """All encoded vectors, in the DAG's depth-first order.

    With ``original`` set and a compressed tree, ranks are mapped back to
    the original values through the table.
    """
    if tree.empty:
        return
    table = tree.table if original else None
    k = tree.dim
    prefix: list = []

    def walk(node: STNode, layer: int):
        if layer == k:
            yield tuple(prefix)
            return
        for s in node.succs:
            prefix.append(s.value if table is None else table[layer][s.value])
            yield from walk(s, layer + 1)
            prefix.pop()

    yield from walk(tree.root, 0)


def union_st(a: Antichain, b: Antichain, stats: Optional[Stats] = None) -> Antichain:
    if a.dim != b.dim:
        raise DimensionMismatch(f"dimensions differ: {a.dim} vs {b.dim}")
    if not a.vectors:
        return Antichain._from_maximal(b.dim, b.vectors)
    if not b.vectors:
        return Antichain._from_maximal(a.dim, a.vectors)
    tree_a = build_sharingtree(a)
    tree_b = build_sharingtree(b)
    kept = set()
    for u in a.vectors:
        if not strict_member_st(tree_b, u, stats):
            kept.add(u)
    for v in b.vectors:
        if not strict_member_st(tree_a, v, stats):
            kept.add(v)
    return Antichain._from_maximal(a.dim, sorted(kept))


def intersect_st(a: Antichain, b: Antichain, stats: Optional[Stats] = None) -> Antichain:
    """Meets of member pairs, deduplicated by the tree build, then filtered
    by strict domination within the same tree."""
    if a.dim != b.dim:
        raise DimensionMismatch(f"dimensions differ: {a.dim} vs {b.dim}")
    if not a.vectors or not b.vectors:
        return Antichain((), dim=a.dim)
    meets = sorted({tuple(x if x < y else y for x, y in zip(u, v))
                    for u in a.vectors for v in b.vectors})
    max_norm = max(max(w) for w in meets)
    if max_norm > len(meets):
        table = _rank_table(meets, a.dim)
        tree = _build_tree(_rank_encode(meets, table), a.dim, table)
    else:
        tree = _build_tree(meets, a.dim, None)
    survivors = [w for w in iter_vectors(tree, original=True)
                 if not strict_member_st(tree, w, stats)]
    survivors.sort()
    return Antichain._from_maximal(a.dim, survivors)


def to_dot(tree) -> str:
    """DOT dump of a layered DAG (sharing tree or covering sharing tree);
    nodes are labeled ``layer:value``."""
    lines = ["digraph sharingtree {", "  rankdir=TB;"]
    seen = {}
    order: list = []

    def visit(node):
        if id(node) in seen:
            return
        seen[id(node)] = f"n{len(seen)}"
        order.append(node)
        for s in node.succs:
            visit(s)

    visit(tree.root)
    for node in order:
        value = "T" if node.value is TOP else str(node.value)
        lines.append(f'  {seen[id(node)]} [label="{node.layer}:{value}"];')
    for node in order:
        for s in node.succs:
            lines.append(f"  {seen[id(node)]} -> {seen[id(s)]};")
    lines.append("}")
    return "\n".join(lines) + "\n"
