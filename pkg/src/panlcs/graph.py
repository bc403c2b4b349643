"""Pangenome graph data model, parsers, and all-pairs preprocessing.

A pangenome graph is a directed graph whose vertices carry non-empty byte
labels.  A path through the graph "spells" the concatenation of its vertex
labels, and those spelled strings are the graph-side sequences that the
solver modules align queries against.

Two preprocessing products are computed here because every solver needs one
of them:

* :func:`reachability` -- dense vertex-to-vertex reachability (a directed
  path of at least one edge), via Floyd-Warshall on the adjacency matrix.
* :func:`char_distances` -- dense all-pairs minimum arc counts on the
  character-split graph (:func:`build_char_graph`), via Floyd-Warshall.

Both matrices are dense by design; memory grows quadratically in the vertex
count and in the total label length respectively, which is the intended
scaling limit of this library.

Labels are raw bytes and all comparisons are exact byte equality.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

log = logging.getLogger(__name__)

GRAPH_FORMATS = ("tsv", "gfa")


class GraphError(ValueError):
    """Malformed graph input, an invalid path, or a bad vertex reference."""


def _as_bytes(value: bytes | str) -> bytes:
    if isinstance(value, str):
        return value.encode("latin-1")
    return bytes(value)


@dataclass(frozen=True)
class PangenomeGraph:
    """Vertex-labeled directed graph.

    ``ids`` are opaque vertex tokens, ``labels`` the parallel byte labels,
    and ``edges`` ordered pairs of vertex indices.  Duplicate edges are
    collapsed on construction; self-loops and cycles are allowed.  Instances
    are immutable (and hashable) after construction.
    """

    ids: tuple[str, ...]
    labels: tuple[bytes, ...]
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if len(self.ids) != len(self.labels):
            raise GraphError("ids and labels must have equal length")
        seen: set[str] = set()
        for vid in self.ids:
            if vid in seen:
                raise GraphError(f"duplicate vertex id {vid!r}")
            seen.add(vid)
        for vid, label in zip(self.ids, self.labels):
            if not isinstance(label, bytes):
                raise GraphError(f"label of vertex {vid!r} must be bytes")
            if not label:
                raise GraphError(f"empty label for vertex {vid!r}")
        n = len(self.ids)
        deduped = dict.fromkeys(tuple(e) for e in self.edges)
        for u, v in deduped:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) references a missing vertex")
        object.__setattr__(self, "edges", tuple(deduped))

    @classmethod
    def from_items(
        cls,
        vertices: Iterable[tuple[str, bytes | str]],
        edges: Iterable[tuple[str, str]] = (),
    ) -> "PangenomeGraph":
        """Build a graph from (id, label) pairs and id-level edges."""
        ids: list[str] = []
        labels: list[bytes] = []
        for vid, label in vertices:
            ids.append(str(vid))
            labels.append(_as_bytes(label))
        index = {vid: k for k, vid in enumerate(ids)}
        if len(index) != len(ids):
            dup = next(v for k, v in enumerate(ids) if v in ids[:k])
            raise GraphError(f"duplicate vertex id {dup!r}")
        idx_edges = []
        for src, dst in edges:
            for vid in (src, dst):
                if vid not in index:
                    raise GraphError(f"edge endpoint {vid!r} is not a declared vertex")
            idx_edges.append((index[src], index[dst]))
        return cls(tuple(ids), tuple(labels), tuple(idx_edges))

    @cached_property
    def index(self) -> dict[str, int]:
        return {vid: k for k, vid in enumerate(self.ids)}

    @property
    def n(self) -> int:
        """Number of vertices."""
        return len(self.ids)

    @cached_property
    def total_label_length(self) -> int:
        """Sum of all label lengths (the character count of the graph)."""
        return sum(len(label) for label in self.labels)

    @cached_property
    def out_neighbors(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            out[u].append(v)
        return tuple(tuple(sorted(vs)) for vs in out)

    def vertex_index(self, vid: str) -> int:
        try:
            return self.index[vid]
        except KeyError:
            raise GraphError(f"unknown vertex id {vid!r}") from None

    def label_of(self, vid: str) -> bytes:
        return self.labels[self.vertex_index(vid)]

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self._edge_set

    @cached_property
    def _edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)


def spell(graph: PangenomeGraph, path: Sequence[str]) -> bytes:
    """Concatenate the labels along ``path`` (a sequence of vertex ids).

    The path must be non-empty and every consecutive id pair must be an
    edge of ``graph``; a single vertex is a valid path.
    """
    if not path:
        raise GraphError("path must contain at least one vertex")
    idxs = [graph.vertex_index(vid) for vid in path]
    for a, b in zip(idxs, idxs[1:]):
        if not graph.has_edge(a, b):
            raise GraphError(
                f"consecutive pair ({graph.ids[a]!r}, {graph.ids[b]!r}) is not an edge"
            )
    return b"".join(graph.labels[k] for k in idxs)


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------


def parse_graph(text: bytes | str, fmt: str = "tsv") -> PangenomeGraph:
    """Parse a graph from text in the ``tsv`` or ``gfa`` subset format.

    TSV: ``V <id> <label>`` and ``E <src> <dst>`` lines, whitespace
    separated, ``#`` comment lines ignored.

    GFA subset: ``S <id> <seq>`` and ``L <from> + <to> + <overlap>`` lines;
    only ``+``/``+`` orientations are supported, the overlap column is
    ignored, and all other record types are skipped (a warning with the
    skip count is logged).
    """
    if isinstance(text, bytes):
        text = text.decode("latin-1")
    if fmt == "tsv":
        return _parse_tsv(text)
    if fmt == "gfa":
        return _parse_gfa(text)
    raise GraphError(f"unknown graph format {fmt!r} (expected one of {GRAPH_FORMATS})")


def _parse_tsv(text: str) -> PangenomeGraph:
    vertices: list[tuple[str, bytes]] = []
    edges: list[tuple[str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        tag = tokens[0]
        if tag == "V":
            if len(tokens) < 3:
                raise GraphError(f"line {lineno}: empty label (V lines need `V <id> <label>`)")
            if len(tokens) > 3:
                raise GraphError(f"line {lineno}: labels may not contain whitespace")
            vertices.append((tokens[1], tokens[2].encode("latin-1")))
        elif tag == "E":
            if len(tokens) != 3:
                raise GraphError(f"line {lineno}: E lines need `E <src> <dst>`")
            edges.append((tokens[1], tokens[2]))
        else:
            raise GraphError(f"line {lineno}: unknown record tag {tag!r}")
    return PangenomeGraph.from_items(vertices, edges)


def _parse_gfa(text: str) -> PangenomeGraph:
    vertices: list[tuple[str, bytes]] = []
    edges: list[tuple[str, str]] = []
    skipped = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        tag = tokens[0]
        if tag == "S":
            if len(tokens) < 3:
                raise GraphError(f"line {lineno}: S lines need `S <id> <seq>`")
            seq = tokens[2]
            if seq == "*":
                raise GraphError(f"line {lineno}: segment {tokens[1]!r} has no sequence")
            vertices.append((tokens[1], seq.encode("latin-1")))
        elif tag == "L":
            if len(tokens) < 5:
                raise GraphError(
                    f"line {lineno}: L lines need `L <from> <orient> <to> <orient> [overlap]`"
                )
            src, src_orient, dst, dst_orient = tokens[1:5]
            for orient in (src_orient, dst_orient):
                if orient == "-":
                    raise GraphError(
                        f"line {lineno}: '-' orientation is unsupported (forward strand only)"
                    )
                if orient != "+":
                    raise GraphError(f"line {lineno}: bad orientation {orient!r}")
            edges.append((src, dst))
        else:
            skipped += 1
    if skipped:
        log.warning("skipped %d GFA records of unsupported types", skipped)
    return PangenomeGraph.from_items(vertices, edges)


# ---------------------------------------------------------------------------
# character-split graph
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CharGraph:
    """One node per label character, preserving the originating vertex.

    Node ``k`` carries ``chars[k]`` and sits at ``offset[k]`` within the
    label of vertex ``origin[k]``.  Nodes are numbered label-order within
    vertex-order, so node ids for vertex ``v`` occupy
    ``starts[v] .. starts[v+1]-1``.  Arcs step through each label
    (``(v,f) -> (v,f+1)``) and jump from the last character of ``u`` to the
    first of ``u'`` for every graph edge ``(u, u')``.
    """

    origin: np.ndarray
    offset: np.ndarray
    chars: np.ndarray
    arcs: np.ndarray
    starts: np.ndarray

    @property
    def node_count(self) -> int:
        return len(self.origin)

    @property
    def arc_count(self) -> int:
        return len(self.arcs)

    def node_id(self, vertex: int, offset: int) -> int:
        return int(self.starts[vertex]) + offset


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


def build_char_graph(graph: PangenomeGraph) -> CharGraph:
    """Split every vertex into one node per label character."""
    lengths = np.array([len(label) for label in graph.labels], dtype=np.int64)
    starts = np.concatenate([[0], np.cumsum(lengths)])
    total = int(starts[-1])
    chars = np.frombuffer(b"".join(graph.labels), dtype=np.uint8)
    origin = np.repeat(np.arange(graph.n, dtype=np.int64), lengths)
    offset = np.arange(total, dtype=np.int64) - starts[origin]

    intra_src = np.flatnonzero(offset[:-1] + 1 == offset[1:]) if total > 1 else np.array([], dtype=np.int64)
    intra = np.stack([intra_src, intra_src + 1], axis=1) if len(intra_src) else np.empty((0, 2), dtype=np.int64)
    inter = np.array(
        [(starts[u] + lengths[u] - 1, starts[v]) for u, v in graph.edges],
        dtype=np.int64,
    ).reshape(-1, 2)
    arcs = np.concatenate([intra, inter]) if total else np.empty((0, 2), dtype=np.int64)
    return CharGraph(
        origin=_freeze(origin),
        offset=_freeze(offset),
        chars=_freeze(chars.copy()),
        arcs=_freeze(arcs),
        starts=_freeze(starts),
    )


# ---------------------------------------------------------------------------
# all-pairs preprocessing
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ReachMatrix:
    """Dense vertex reachability: entry (u, v) is true iff a directed path
    with at least one edge leads from u to v.  A vertex reaches itself only
    through a cycle."""

    matrix: np.ndarray
    ids: tuple[str, ...]

    @cached_property
    def _index(self) -> dict[str, int]:
        return {vid: k for k, vid in enumerate(self.ids)}

    def reaches(self, u: int, v: int) -> bool:
        return bool(self.matrix[u, v])

    def reaches_ids(self, u: str, v: str) -> bool:
        return bool(self.matrix[self._index[u], self._index[v]])


def reachability(graph: PangenomeGraph) -> ReachMatrix:
    """All-pairs reachability via Floyd-Warshall on the adjacency matrix."""
    n = graph.n
    reach = np.zeros((n, n), dtype=bool)
    for u, v in graph.edges:
        reach[u, v] = True
    for k in range(n):
        np.logical_or(reach, np.outer(reach[:, k], reach[k, :]), out=reach)
    return ReachMatrix(matrix=_freeze(reach), ids=graph.ids)


@dataclass(frozen=True)
class CharDistMatrix:
    """Dense minimum arc counts between character-graph nodes.

    Unreachable pairs hold ``inf``; the diagonal is 0.  ``starts`` mirrors
    :class:`CharGraph` so (vertex, offset) pairs can be resolved directly.
    """

    matrix: np.ndarray
    starts: np.ndarray

    def node_id(self, vertex: int, offset: int) -> int:
        return int(self.starts[vertex]) + offset

    def arc_distance(self, a: int, b: int) -> int | None:
        value = self.matrix[a, b]
        return None if np.isinf(value) else int(value)

    def distance_vf(self, u: int, f: int, v: int, g: int) -> int | None:
        return self.arc_distance(self.node_id(u, f), self.node_id(v, g))


def char_distances(char_graph: CharGraph) -> CharDistMatrix:
    """All-pairs minimum arc counts via Floyd-Warshall on the split graph."""
    total = char_graph.node_count
    dist = np.full((total, total), np.inf)
    if total:
        np.fill_diagonal(dist, 0.0)
    for a, b in char_graph.arcs:
        dist[a, b] = min(dist[a, b], 1.0)
    for k in range(total):
        np.minimum(dist, dist[:, k, None] + dist[None, k, :], out=dist)
    return CharDistMatrix(matrix=_freeze(dist), starts=char_graph.starts)
