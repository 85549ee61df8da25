"""Simple undirected graphs: ingestion, preprocessing, serialization.

Graphs are stored in CSR form (``indptr``/``indices``) with neighbor lists
sorted per row.  All constructors deduplicate edges, symmetrize, and drop
self-loops, so every :class:`Graph` in the program satisfies the same
invariants: symmetric adjacency, no self-loops, no duplicate neighbors,
and ``2 * m`` equal to the degree sum.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Graph",
    "NodeIdMap",
    "EdgeListParseError",
    "parse_edge_list",
    "load_edge_list",
    "serialize_edge_list",
    "largest_connected_component",
    "degrees",
]


class EdgeListParseError(ValueError):
    """Malformed edge-list input; ``line_no`` is 1-based."""

    def __init__(self, line_no: int | None, message: str):
        self.line_no = line_no
        prefix = f"line {line_no}: " if line_no is not None else ""
        super().__init__(prefix + message)


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable simple undirected graph with 0-based dense node ids."""

    n: int
    indptr: np.ndarray
    indices: np.ndarray
    m: int

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        """Build from an iterable of (u, v) pairs.

        Duplicates and orientation are collapsed, self-loops dropped.
        """
        if n <= 0:
            raise ValueError("graph must have at least one node")
        pairs = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                continue
            pairs.add((min(u, v), max(u, v)))
        deg = np.zeros(n, dtype=np.int64)
        for u, v in pairs:
            deg[u] += 1
            deg[v] += 1
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(deg, out=indptr[1:])
        indices = np.empty(indptr[-1], dtype=np.int64)
        cursor = indptr[:-1].copy()
        for u, v in sorted(pairs):
            indices[cursor[u]] = v
            cursor[u] += 1
            indices[cursor[v]] = u
            cursor[v] += 1
        for i in range(n):
            row = indices[indptr[i]:indptr[i + 1]]
            row.sort()
        g = cls(n=n, indptr=indptr, indices=indices, m=len(pairs))
        g._freeze()
        g.validate()
        return g

    @classmethod
    def from_adjacency(cls, a: np.ndarray) -> "Graph":
        """Build from a dense 0/1 adjacency matrix (symmetrized, loop-free)."""
        a = np.asarray(a)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("adjacency must be square")
        sym = (a != 0) | (a != 0).T
        np.fill_diagonal(sym, False)
        us, vs = np.nonzero(np.triu(sym, 1))
        return cls.from_pairs(a.shape[0], us, vs)

    @classmethod
    def from_pairs(cls, n: int, us: np.ndarray, vs: np.ndarray) -> "Graph":
        """Vectorized constructor from distinct upper-triangle pairs (u < v)."""
        us = np.asarray(us, dtype=np.int64)
        vs = np.asarray(vs, dtype=np.int64)
        if us.size and not (
            np.all(us < vs) and np.all(us >= 0) and np.all(vs < n)
        ):
            raise ValueError("pairs must satisfy 0 <= u < v < n")
        all_u = np.concatenate([us, vs])
        all_v = np.concatenate([vs, us])
        order = np.lexsort((all_v, all_u))
        indices = all_v[order]
        deg = np.bincount(all_u, minlength=n)
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(deg, out=indptr[1:])
        # duplicate pair detection: within-row neighbor ids strictly increase
        if indices.size > 1:
            gaps = np.diff(indices)
            boundary = np.zeros(len(indices) - 1, dtype=bool)
            rs = indptr[1:-1]
            rs = rs[(rs > 0) & (rs < len(indices))]
            boundary[rs - 1] = True
            if np.any((gaps <= 0) & ~boundary):
                raise ValueError("duplicate pairs")
        g = cls(n=n, indptr=indptr, indices=indices, m=len(us))
        g._freeze()
        return g

    def _freeze(self) -> None:
        self.indptr.flags.writeable = False
        self.indices.flags.writeable = False

    def neighbors(self, i: int) -> np.ndarray:
        return self.indices[self.indptr[i]:self.indptr[i + 1]]

    def adjacency_lists(self) -> list[np.ndarray]:
        return [self.neighbors(i) for i in range(self.n)]

    def edge_array(self) -> np.ndarray:
        """(m, 2) array of edges with u < v, sorted lexicographically."""
        out = np.empty((self.m, 2), dtype=np.int64)
        k = 0
        for u in range(self.n):
            row = self.neighbors(u)
            for v in row[np.searchsorted(row, u + 1):]:
                out[k, 0] = u
                out[k, 1] = v
                k += 1
        return out

    def validate(self) -> None:
        """Assert the structural invariants; raises AssertionError on breakage."""
        assert self.n > 0
        assert self.indptr.shape == (self.n + 1,)
        assert self.indptr[0] == 0 and self.indptr[-1] == len(self.indices)
        assert 2 * self.m == len(self.indices)
        for i in range(self.n):
            row = self.neighbors(i)
            assert np.all(np.diff(row) > 0), f"row {i} unsorted or duplicated"
            assert i not in row, f"self-loop at {i}"
            assert np.all((row >= 0) & (row < self.n))
        # symmetry: j in adj[i] <=> i in adj[j]
        for i in range(self.n):
            for j in self.neighbors(i):
                row_j = self.neighbors(int(j))
                pos = np.searchsorted(row_j, i)
                assert pos < len(row_j) and row_j[pos] == i, f"asymmetric pair ({i}, {j})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.n == other.n
            and self.m == other.m
            and np.array_equal(self.indptr, other.indptr)
            and np.array_equal(self.indices, other.indices)
        )

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class NodeIdMap:
    """Bijection between original node ids and dense 0-based indices."""

    original_ids: tuple[int, ...]
    _index_of: dict[int, int] = field(repr=False, default_factory=dict)

    @classmethod
    def from_originals(cls, original_ids) -> "NodeIdMap":
        ids = tuple(int(x) for x in original_ids)
        index_of = {orig: i for i, orig in enumerate(ids)}
        if len(index_of) != len(ids):
            raise ValueError("original ids are not unique")
        return cls(original_ids=ids, _index_of=index_of)

    def index_of(self, original_id: int) -> int:
        return self._index_of[original_id]

    def original_of(self, index: int) -> int:
        return self.original_ids[index]

    def compose(self, inner: "NodeIdMap") -> "NodeIdMap":
        """Map produced by applying ``self`` first, then ``inner``.

        ``inner.original_ids`` are interpreted as dense indices of ``self``.
        """
        return NodeIdMap.from_originals(
            self.original_ids[i] for i in inner.original_ids
        )

    def __len__(self) -> int:
        return len(self.original_ids)


def parse_edge_list(text: str) -> tuple[Graph, NodeIdMap]:
    """Parse a line-oriented edge list into a graph plus id map.

    Each non-comment line holds two whitespace-separated nonnegative
    integer node ids, optionally followed by a weight column which is
    ignored (edges are binarized).  Lines starting with '#' or '%' and
    blank lines are skipped.  Edges are deduplicated and symmetrized,
    self-loops dropped; every id mentioned in the file becomes a node.
    Dense indices are assigned in increasing order of original id.
    """
    seen_ids: set[int] = set()
    raw_edges: list[tuple[int, int]] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line[0] in "#%":
            continue
        tokens = line.split()
        if len(tokens) not in (2, 3):
            raise EdgeListParseError(
                line_no, f"expected 2 or 3 columns, got {len(tokens)}"
            )
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise EdgeListParseError(
                line_no, f"non-integer node id in {tokens[:2]}"
            ) from None
        if u < 0 or v < 0:
            raise EdgeListParseError(line_no, f"negative node id in ({u}, {v})")
        seen_ids.add(u)
        seen_ids.add(v)
        raw_edges.append((u, v))
    if not seen_ids:
        raise EdgeListParseError(None, "edge list is empty (no nodes)")
    id_map = NodeIdMap.from_originals(sorted(seen_ids))
    edges = ((id_map.index_of(u), id_map.index_of(v)) for u, v in raw_edges)
    return Graph.from_edges(len(id_map), edges), id_map


def load_edge_list(path) -> tuple[Graph, NodeIdMap]:
    """Read and parse an edge-list file; see :func:`parse_edge_list`."""
    with open(path, "r", encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def serialize_edge_list(g: Graph) -> str:
    """Render ``g`` as "u v" lines sorted by (u, v), with a size header.

    Isolated nodes are written as self-loop lines "i i": the parser
    registers the id but drops the loop, so round-tripping reproduces the
    full node set of any graph.
    """
    pairs = [(int(u), int(v)) for u, v in g.edge_array()]
    deg = degrees(g)
    pairs += [(i, i) for i in range(g.n) if deg[i] == 0]
    lines = [f"# n={g.n} m={g.m}"]
    lines += [f"{u} {v}" for u, v in sorted(pairs)]
    return "\n".join(lines) + "\n"


def degrees(g: Graph) -> np.ndarray:
    """Per-node degree vector; sums to 2m."""
    return np.diff(g.indptr)


def _component_of(g: Graph, start: int, unvisited: np.ndarray) -> list[int]:
    comp = [start]
    unvisited[start] = False
    frontier = [start]
    while frontier:
        nxt = []
        for u in frontier:
            for v in g.neighbors(u):
                v = int(v)
                if unvisited[v]:
                    unvisited[v] = False
                    comp.append(v)
                    nxt.append(v)
        frontier = nxt
    return comp


def connected_components(g: Graph) -> list[list[int]]:
    """Connected components as sorted node lists, ordered by smallest member."""
    unvisited = np.ones(g.n, dtype=bool)
    comps = []
    for start in range(g.n):
        if unvisited[start]:
            comps.append(sorted(_component_of(g, start, unvisited)))
    return comps


def largest_connected_component(g: Graph) -> tuple[Graph, NodeIdMap]:
    """Induced subgraph on the largest component, nodes reindexed.

    Ties between equal-size components break toward the one containing the
    smallest node id, so the result is deterministic.  The returned map
    sends new dense indices to the ids they had in ``g``.
    """
    comps = connected_components(g)
    best = max(comps, key=lambda c: (len(c), -c[0]))
    id_map = NodeIdMap.from_originals(best)
    keep = {old: new for new, old in enumerate(best)}
    edges = []
    for u_old in best:
        for v_old in g.neighbors(u_old):
            v_old = int(v_old)
            if v_old in keep and u_old < v_old:
                edges.append((keep[u_old], keep[v_old]))
    return Graph.from_edges(len(best), edges), id_map
