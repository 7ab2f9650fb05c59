"""Stable n-marked genus-zero trees.

A :class:`MarkedTree` is a finite tree whose degree-1 vertices carry the labels
1..n and whose other vertices have degree >= 3.  Internal edges are in
bijection with :class:`Split` objects, and the set of splits determines the
tree up to label-preserving isomorphism; that sorted split set is the
canonical form used for equality and hashing.

A :class:`MarkedMetricTree` adds a strictly positive rational length to every
internal edge.  Leaf edges have length 0: this is the canonical representative
modulo the lineality space, which absorbs leaf-edge lengths.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Mapping

from .errors import IncompatibleSplits, InvalidArgument

MAX_N = 9

Edge = tuple[int, int]


def _edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def _check_n(n: int, lo: int = 3, hi: int = MAX_N) -> None:
    if not isinstance(n, int) or n < lo or n > hi:
        raise InvalidArgument(f"n must be an integer in [{lo}, {hi}], got {n!r}")


# ---------------------------------------------------------------------------
# splits


@dataclass(frozen=True)
class Split:
    """Unordered bipartition I | I^c of [n] with both sides of size >= 2.

    Stored by its canonical side, the one not containing n.
    """

    n: int
    side: frozenset

    def __post_init__(self):
        side = frozenset(self.side)
        full = frozenset(range(1, self.n + 1))
        if not side <= full:
            raise InvalidArgument(f"split side {sorted(side)} not inside [1..{self.n}]")
        if self.n in side:
            side = full - side
        if not 2 <= len(side) <= self.n - 2:
            raise InvalidArgument(f"split {sorted(side)} | rest of [{self.n}] has a side smaller than 2")
        object.__setattr__(self, "side", side)

    @classmethod
    def of(cls, n: int, leaves: Iterable[int]) -> "Split":
        return cls(n, frozenset(leaves))

    @property
    def other(self) -> frozenset:
        return frozenset(range(1, self.n + 1)) - self.side

    @property
    def key(self) -> tuple:
        return (len(self.side), tuple(sorted(self.side)))

    def __lt__(self, other: "Split") -> bool:
        return (self.n, self.key) < (other.n, other.key)

    @property
    def mask(self) -> int:
        m = 0
        for x in self.side:
            m |= 1 << (x - 1)
        return m

    def separates(self, k: int, l: int) -> bool:
        return (k in self.side) != (l in self.side)

    def compatible(self, other: "Split") -> bool:
        """Both canonical sides avoid n, so the complements always meet."""
        a, b = self.side, other.side
        return a <= b or b <= a or not (a & b)

    def forget(self, leaf: int) -> "Split | None":
        """Image under deleting ``leaf`` and relabelling [n] minus leaf onto [n-1]."""
        relabel = {x: (x if x < leaf else x - 1) for x in range(1, self.n + 1) if x != leaf}
        a = {relabel[x] for x in self.side if x != leaf}
        b = {relabel[x] for x in self.other if x != leaf}
        if len(a) < 2 or len(b) < 2:
            return None
        return Split(self.n - 1, frozenset(a))

    def label(self) -> str:
        """``d`` followed by the smaller side's leaves (the canonical side on ties)."""
        small = self.side if len(self.side) <= len(self.other) else self.other
        return "d" + "".join(str(x) for x in sorted(small))

    def __repr__(self) -> str:
        return f"Split({self.n}, {{{','.join(map(str, sorted(self.side)))}}})"


def all_splits(n: int) -> list[Split]:
    """Every split of [n], sorted canonically; there are 2^(n-1) - n - 1 of them."""
    out = []
    rest = range(1, n)
    for size in range(2, n - 1):
        for side in itertools.combinations(rest, size):
            out.append(Split(n, frozenset(side)))
    return out


def check_compatible(splits: Iterable[Split]) -> list[Split]:
    ss = sorted(set(splits))
    for a, b in itertools.combinations(ss, 2):
        if a.n != b.n:
            raise InvalidArgument(f"splits on different leaf sets: {a} and {b}")
        if not a.compatible(b):
            raise IncompatibleSplits(a, b)
    return ss


# ---------------------------------------------------------------------------
# trees


@dataclass(frozen=True, eq=False)
class MarkedTree:
    """Stable n-marked tree with all vertex weights 0.

    ``edges`` are vertex-id pairs; ``leaf_vertices[k-1]`` is the vertex carrying
    label k.  Equality and hashing are up to label-preserving isomorphism.
    """

    n: int
    edges: tuple[Edge, ...]
    leaf_vertices: tuple[int, ...]

    def __post_init__(self):
        n = self.n
        if not isinstance(n, int) or n < 3:
            raise InvalidArgument(f"a stable marked tree needs n >= 3, got {n!r}")
        edges = tuple(sorted(_edge(u, v) for u, v in self.edges))
        object.__setattr__(self, "edges", edges)
        if len(set(edges)) != len(edges) or any(u == v for u, v in edges):
            raise InvalidArgument("edges must be distinct and loop-free")
        if len(self.leaf_vertices) != n or len(set(self.leaf_vertices)) != n:
            raise InvalidArgument("leaf labels must be a bijection from [n] onto distinct vertices")
        adj = self.adjacency
        verts = set(adj)
        if len(edges) != len(verts) - 1 or not self._connected(adj):
            raise InvalidArgument("graph is not a tree")
        leaves = {v for v in verts if len(adj[v]) == 1}
        if leaves != set(self.leaf_vertices):
            raise InvalidArgument("leaf labels must be exactly the degree-1 vertices")
        bad = [v for v in verts - leaves if len(adj[v]) < 3]
        if bad:
            raise InvalidArgument(f"unstable vertices (degree < 3): {sorted(bad)}")

    @staticmethod
    def _connected(adj) -> bool:
        if not adj:
            return False
        start = next(iter(adj))
        seen = {start}
        todo = [start]
        while todo:
            v = todo.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        return len(seen) == len(adj)

    @cached_property
    def adjacency(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {}
        for u, v in self.edges:
            adj.setdefault(u, []).append(v)
            adj.setdefault(v, []).append(u)
        for nbrs in adj.values():
            nbrs.sort()
        return adj

    @cached_property
    def label_of(self) -> dict[int, int]:
        return {v: k for k, v in enumerate(self.leaf_vertices, start=1)}

    def is_leaf_vertex(self, v: int) -> bool:
        return v in self.label_of

    @cached_property
    def internal_edges(self) -> tuple[Edge, ...]:
        return tuple(e for e in self.edges if not (self.is_leaf_vertex(e[0]) or self.is_leaf_vertex(e[1])))

    def leaves_beyond(self, u: int, v: int) -> frozenset:
        """Labels of the leaves on v's side of the edge u-v."""
        out = set()
        seen = {u, v}
        todo = [v]
        while todo:
            w = todo.pop()
            if w in self.label_of:
                out.add(self.label_of[w])
            for x in self.adjacency[w]:
                if x not in seen:
                    seen.add(x)
                    todo.append(x)
        return frozenset(out)

    @cached_property
    def edge_splits(self) -> dict[Edge, Split]:
        return {(u, v): Split(self.n, self.leaves_beyond(u, v)) for u, v in self.internal_edges}

    @cached_property
    def canonical_form(self) -> tuple:
        return tuple(s.key for s in sorted(self.edge_splits.values()))

    def __eq__(self, other) -> bool:
        if not isinstance(other, MarkedTree):
            return NotImplemented
        return self.n == other.n and self.canonical_form == other.canonical_form

    def __hash__(self) -> int:
        return hash((self.n, self.canonical_form))

    @property
    def num_internal_edges(self) -> int:
        return len(self.internal_edges)

    def is_trivalent(self) -> bool:
        return self.num_internal_edges == self.n - 3

    def path(self, a: int, b: int) -> list[int]:
        """Vertex path between vertices a and b."""
        prev = {a: None}
        todo = deque([a])
        while todo:
            v = todo.popleft()
            if v == b:
                break
            for w in self.adjacency[v]:
                if w not in prev:
                    prev[w] = v
                    todo.append(w)
        out = [b]
        while out[-1] != a:
            out.append(prev[out[-1]])
        return out[::-1]

    def __repr__(self) -> str:
        body = ", ".join("".join(map(str, s[1])) for s in self.canonical_form) or "star"
        return f"MarkedTree(n={self.n}: {body})"


def splits_of_tree(t: MarkedTree) -> set[Split]:
    return set(t.edge_splits.values())


def canonical_form(t: MarkedTree) -> tuple:
    return t.canonical_form


def iso_equal(t: MarkedTree, u: MarkedTree) -> bool:
    return t.n == u.n and t.canonical_form == u.canonical_form


def _build_from_splits(n: int, splits: list[Split]) -> tuple[list[Edge], list[int], dict[Split, Edge]]:
    """Leaves get vertices 0..n-1, the vertex next to leaf n gets n, splits n+1.."""
    root = n
    clades = [(s.side, n + 1 + idx, s) for idx, s in enumerate(splits)]
    # parent of a clade (or of a leaf) is the smallest clade strictly containing it
    by_size = sorted(clades, key=lambda c: len(c[0]))
    edges: list[Edge] = []
    split_edge: dict[Split, Edge] = {}

    def parent_of(members: frozenset, exclude=None) -> int:
        for side, vid, s in by_size:
            if s is not exclude and members < side:
                return vid
        return root

    for side, vid, s in clades:
        p = parent_of(side, exclude=s)
        e = _edge(p, vid)
        edges.append(e)
        split_edge[s] = e
    for k in range(1, n):
        edges.append(_edge(parent_of(frozenset([k])), k - 1))
    edges.append(_edge(root, n - 1))
    return edges, list(range(n)), split_edge


def tree_from_splits(n: int, splits: Iterable[Split]) -> MarkedTree:
    """The unique stable tree whose internal-edge splits are exactly ``splits``."""
    _check_n(n, 3, 64)
    ss = list(splits)
    for s in ss:
        if s.n != n:
            raise InvalidArgument(f"split {s} is not a split of [{n}]")
    ss = check_compatible(ss)
    edges, leaf_vertices, _ = _build_from_splits(n, ss)
    return MarkedTree(n, tuple(edges), tuple(leaf_vertices))


def star(n: int) -> MarkedTree:
    return tree_from_splits(n, [])


# ---------------------------------------------------------------------------
# enumeration


def enumerate_types(n: int, trivalent_only: bool = False) -> Iterator[tuple[Split, ...]]:
    """Every pairwise-compatible split set of [n] (one per combinatorial type).

    Depth-first clique enumeration over the compatibility graph with candidate
    bitsets; each clique is produced once, with splits in canonical order.
    """
    _check_n(n)
    splits = all_splits(n)
    m = len(splits)
    masks = [s.mask for s in splits]
    later = [0] * m
    for a in range(m):
        bits = 0
        for b in range(a + 1, m):
            x, y = masks[a], masks[b]
            if x & y == 0 or x & y == x or x & y == y:
                bits |= 1 << b
        later[a] = bits
    top = n - 3

    def rec(chosen: list[int], cand: int) -> Iterator[tuple[Split, ...]]:
        if not trivalent_only or len(chosen) == top:
            yield tuple(splits[i] for i in chosen)
        if len(chosen) == top:
            return
        while cand:
            low = cand & -cand
            i = low.bit_length() - 1
            cand ^= low
            chosen.append(i)
            yield from rec(chosen, cand & later[i])
            chosen.pop()

    yield from rec([], (1 << m) - 1)


def enumerate_stable_trees(n: int, trivalent_only: bool = False) -> list[MarkedTree]:
    """One tree per combinatorial type, sorted by canonical form."""
    trees = [tree_from_splits(n, ss) for ss in enumerate_types(n, trivalent_only)]
    trees.sort(key=lambda t: (t.num_internal_edges, t.canonical_form))
    return trees


def double_factorial(k: int) -> int:
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


# ---------------------------------------------------------------------------
# metric trees


@dataclass(frozen=True, eq=False)
class MarkedMetricTree:
    """A stable tree with a positive rational length on each internal edge."""

    tree: MarkedTree
    lengths: Mapping[Edge, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        lengths = {_edge(*e): Fraction(v) for e, v in dict(self.lengths).items()}
        internal = set(self.tree.internal_edges)
        if set(lengths) != internal:
            extra = sorted(set(lengths) - internal)
            missing = sorted(internal - set(lengths))
            raise InvalidArgument(f"lengths must cover exactly the internal edges (extra {extra}, missing {missing})")
        bad = {e: v for e, v in lengths.items() if v <= 0}
        if bad:
            raise InvalidArgument(f"internal edge lengths must be > 0, got {bad}; contract the edge instead")
        object.__setattr__(self, "lengths", lengths)

    @property
    def n(self) -> int:
        return self.tree.n

    @classmethod
    def from_split_lengths(cls, n: int, lengths: Mapping[Split, Fraction]) -> "MarkedMetricTree":
        ss = check_compatible(lengths)
        edges, leaf_vertices, split_edge = _build_from_splits(n, ss)
        tree = MarkedTree(n, tuple(edges), tuple(leaf_vertices))
        return cls(tree, {split_edge[s]: Fraction(lengths[s]) for s in ss})

    def split_lengths(self) -> dict[Split, Fraction]:
        return {s: self.lengths[e] for e, s in self.tree.edge_splits.items()}

    def edge_length(self, u: int, v: int) -> Fraction:
        return self.lengths.get(_edge(u, v), Fraction(0))

    def key(self) -> tuple:
        return (self.n, tuple(sorted((s.key, v) for s, v in self.split_lengths().items())))

    def __eq__(self, other) -> bool:
        if not isinstance(other, MarkedMetricTree):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        body = ", ".join(f"{s.label()}:{v}" for s, v in sorted(self.split_lengths().items())) or "star"
        return f"MarkedMetricTree(n={self.n}: {body})"


class Distances(Mapping):
    """Symmetric leaf-distance table; ``d[k, l] == d[l, k]`` and ``d[k, k] == 0``."""

    def __init__(self, n: int, table: Mapping[tuple[int, int], Fraction]):
        self.n = n
        self._t = {(min(k, l), max(k, l)): Fraction(v) for (k, l), v in table.items()}

    def __getitem__(self, kl):
        k, l = kl
        if k == l:
            return Fraction(0)
        return self._t[(k, l) if k < l else (l, k)]

    def __iter__(self):
        return iter(self._t)

    def __len__(self):
        return len(self._t)

    def restrict(self, keep: Iterable[int]) -> "Distances":
        """Restrict to the leaves in ``keep``, relabelled order-preservingly onto 1..m."""
        keep = sorted(keep)
        new = {x: i for i, x in enumerate(keep, start=1)}
        return Distances(len(keep), {(new[k], new[l]): self[k, l] for k, l in itertools.combinations(keep, 2)})

    def __repr__(self) -> str:
        return f"Distances(n={self.n}, {dict(self._t)})"


def distance_matrix(t: MarkedMetricTree) -> Distances:
    """Sum of internal-edge lengths along each leaf-to-leaf path (graph traversal)."""
    tree = t.tree
    table = {}
    for k in range(1, tree.n + 1):
        src = tree.leaf_vertices[k - 1]
        dist = {src: Fraction(0)}
        todo = [src]
        while todo:
            v = todo.pop()
            for w in tree.adjacency[v]:
                if w not in dist:
                    dist[w] = dist[v] + t.edge_length(v, w)
                    todo.append(w)
        for l in range(k + 1, tree.n + 1):
            table[(k, l)] = dist[tree.leaf_vertices[l - 1]]
    return Distances(tree.n, table)


def four_point_check(d: Mapping, n: int | None = None) -> bool:
    """Max of the three pair-sums is attained at least twice on every 4-subset."""
    n = n if n is not None else d.n
    for i, j, k, l in itertools.combinations(range(1, n + 1), 4):
        a = d[i, j] + d[k, l]
        b = d[i, k] + d[j, l]
        c = d[i, l] + d[j, k]
        top = max(a, b, c)
        if (a == top) + (b == top) + (c == top) < 2:
            return False
    return True


# ---------------------------------------------------------------------------
# forgetful map


def forget_leaf(t: MarkedMetricTree, leaf: int) -> MarkedMetricTree:
    """Delete ``leaf``, suppress a resulting degree-2 vertex, relabel onto [n-1].

    When two edges merge, lengths add; if one of them was a leaf edge the
    merged edge is a leaf edge and its length is renormalized to 0.
    """
    tree = t.tree
    n = tree.n
    if n < 4:
        raise InvalidArgument(f"forgetting a leaf needs n >= 4, got n={n}")
    if not isinstance(leaf, int) or not 1 <= leaf <= n:
        raise InvalidArgument(f"leaf {leaf!r} out of range 1..{n}")
    lv = tree.leaf_vertices[leaf - 1]
    (p,) = tree.adjacency[lv]
    adj = {v: set(ws) for v, ws in tree.adjacency.items()}
    lengths = dict(t.lengths)
    adj[p].discard(lv)
    del adj[lv]
    if len(adj[p]) == 2:
        a, b = sorted(adj[p])
        merged = t.edge_length(a, p) + t.edge_length(p, b)
        lengths.pop(_edge(a, p), None)
        lengths.pop(_edge(p, b), None)
        del adj[p]
        adj[a].discard(p)
        adj[b].discard(p)
        adj[a].add(b)
        adj[b].add(a)
        leaf_set = {tree.leaf_vertices[k - 1] for k in range(1, n + 1) if k != leaf}
        if a not in leaf_set and b not in leaf_set:
            lengths[_edge(a, b)] = merged
    edges = sorted({_edge(u, v) for u, ws in adj.items() for v in ws})
    new_leaves = tuple(tree.leaf_vertices[k - 1] for k in range(1, n + 1) if k != leaf)
    new_tree = MarkedTree(n - 1, tuple(edges), new_leaves)
    return MarkedMetricTree(new_tree, {e: v for e, v in lengths.items() if e in set(new_tree.internal_edges)})


def attach_leaf(t: MarkedMetricTree, where, length: Fraction | None = None) -> MarkedMetricTree:
    """Add leaf n+1 at vertex ``where`` or on edge ``where = (u, v)``.

    On an internal edge of length L, ``length`` in (0, L) is the distance of the
    new vertex from u.  On a leaf edge, ``length`` is the new internal edge's
    length (the old leaf and n+1 become a cherry).
    """
    tree = t.tree
    n = tree.n
    edges = set(tree.edges)
    lengths = dict(t.lengths)
    new_leaf = max(tree.adjacency) + 1
    if isinstance(where, int):
        if tree.is_leaf_vertex(where):
            raise InvalidArgument("attach at an internal vertex or on an edge")
        edges.add(_edge(where, new_leaf))
    else:
        u, v = where
        e = _edge(u, v)
        if e not in edges:
            raise InvalidArgument(f"{where} is not an edge")
        mid = new_leaf + 1
        edges.discard(e)
        edges |= {_edge(u, mid), _edge(mid, v), _edge(mid, new_leaf)}
        if length is None:
            raise InvalidArgument("attaching on an edge needs a length")
        length = Fraction(length)
        old = lengths.pop(e, None)
        if old is not None:
            if not 0 < length < old:
                raise InvalidArgument(f"subdivision point {length} outside (0, {old})")
            lengths[_edge(u, mid)] = length
            lengths[_edge(mid, v)] = old - length
        else:
            if length <= 0:
                raise InvalidArgument("new internal edge needs positive length")
            inner = v if tree.is_leaf_vertex(u) else u
            lengths[_edge(inner, mid)] = length
    new_tree = MarkedTree(n + 1, tuple(edges), tree.leaf_vertices + (new_leaf,))
    return MarkedMetricTree(new_tree, lengths)


def random_metric_tree(rng, n: int, contract: float = 0.3, max_num: int = 12, max_den: int = 6) -> MarkedMetricTree:
    """Random trivalent tree by leaf insertion, some edges contracted, random rational lengths."""
    _check_n(n, 3, 64)
    # leaves are vertices 0..n-1, internal vertices n, n+1, ...
    edges = [(0, n), (1, n), (2, n)]
    nxt = n + 1
    for k in range(3, n):
        u, v = edges.pop(rng.randrange(len(edges)))
        edges += [(u, nxt), (nxt, v), (nxt, k)]
        nxt += 1
    tree = MarkedTree(n, tuple(edges), tuple(range(n)))
    keep = [s for s in sorted(tree.edge_splits.values()) if rng.random() >= contract]
    lengths = {s: Fraction(rng.randint(1, max_num), rng.randint(1, max_den)) for s in keep}
    return MarkedMetricTree.from_split_lengths(n, lengths)


# ---------------------------------------------------------------------------
# cherry-property orders


@dataclass(frozen=True)
class PartialLeafOrder:
    """Total orders on blocks of leaves; leaves in different blocks are incomparable."""

    i: int
    j: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(tuple(b) for b in self.blocks))

    def leq(self, a: int, b: int) -> bool | None:
        """True/False within a block, None when incomparable."""
        for blk in self.blocks:
            if a in blk and b in blk:
                return blk.index(a) <= blk.index(b)
        return None


def hanging_groups(t: MarkedTree, i: int, j: int) -> list[list[list[int]]]:
    """For each internal vertex on the i-j path: the leaves of each branch hanging off it.

    Leaves inside a branch are listed depth-first so each clade is contiguous.
    """
    vi, vj = t.leaf_vertices[i - 1], t.leaf_vertices[j - 1]
    path = t.path(vi, vj)
    on_path = set(path)
    groups = []
    for p in path[1:-1]:
        branches = []
        for w in t.adjacency[p]:
            if w in on_path:
                continue
            branches.append(_dfs_leaves(t, p, w))
        branches.sort(key=lambda b: min(b))
        groups.append(branches)
    return groups


def _dfs_leaves(t: MarkedTree, parent: int, v: int) -> list[int]:
    if t.is_leaf_vertex(v):
        return [t.label_of[v]]
    kids = [_dfs_leaves(t, v, w) for w in t.adjacency[v] if w != parent]
    kids.sort(key=lambda b: min(b))
    return [x for kid in kids for x in kid]


def quartet_cherries(splits: Iterable[Split], quartet: Iterable[int]) -> set[frozenset] | None:
    """The two cherries of the quartet's induced topology, or None if unresolved."""
    q = frozenset(quartet)
    for s in splits:
        a = q & s.side
        if len(a) == 2:
            return {frozenset(a), q - a}
    return None


def check_cherry_property(t: MarkedTree, i: int, j: int, order: PartialLeafOrder) -> bool:
    if i == j:
        raise InvalidArgument("endpoints must differ")
    groups = [frozenset(x for b in g for x in b) for g in hanging_groups(t, i, j)]
    blocks = [frozenset(b) for b in order.blocks]
    flat = [x for b in order.blocks for x in b]
    if len(flat) != len(set(flat)) or set(flat) != set(range(1, t.n + 1)) - {i, j}:
        return False
    # (1) no comparisons across subtrees and (2) a total order on each subtree
    if sorted(map(sorted, blocks)) != sorted(map(sorted, groups)):
        return False
    splits = splits_of_tree(t)
    for blk in order.blocks:
        for a, b, c in itertools.combinations(blk, 3):
            cherries = quartet_cherries(splits, (i, a, b, c))
            if cherries is None:
                continue
            if frozenset((a, b)) not in cherries and frozenset((b, c)) not in cherries:
                return False
    return True


def cherry_order(t: MarkedTree, i: int, j: int) -> PartialLeafOrder:
    """A partial order with the cherry property for endpoints i, j.

    Each block lists one path vertex's hanging leaves clade-contiguously; if that
    ever failed the check, the valid orders are searched exhaustively.
    """
    if i == j:
        raise InvalidArgument("endpoints must differ")
    for x in (i, j):
        if not 1 <= x <= t.n:
            raise InvalidArgument(f"leaf {x} out of range 1..{t.n}")
    blocks = tuple(tuple(x for b in g for x in b) for g in hanging_groups(t, i, j))
    order = PartialLeafOrder(i, j, blocks)
    if check_cherry_property(t, i, j, order):
        return order
    return next(all_cherry_orders(t, i, j))


def all_cherry_orders(t: MarkedTree, i: int, j: int, max_block: int = 8) -> Iterator[PartialLeafOrder]:
    """Every partial order with the cherry property (blocks up to ``max_block`` leaves)."""
    groups = [sorted(x for b in g for x in b) for g in hanging_groups(t, i, j)]
    if any(len(g) > max_block for g in groups):
        raise InvalidArgument(f"block larger than {max_block}; exhaustive search refused")
    splits = splits_of_tree(t)

    def valid_block(blk) -> bool:
        for a, b, c in itertools.combinations(blk, 3):
            ch = quartet_cherries(splits, (i, a, b, c))
            if ch is not None and frozenset((a, b)) not in ch and frozenset((b, c)) not in ch:
                return False
        return True

    options = [[p for p in itertools.permutations(g) if valid_block(p)] for g in groups]
    for combo in itertools.product(*options):
        yield PartialLeafOrder(i, j, combo)
