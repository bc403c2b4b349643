"""Sequence-to-graph longest common subsequence via a product DAG.

The solver pairs every query position with every equal graph label
character, producing one node per match, then draws an arc between two
matches exactly when they can occur in that order in both coordinate
systems: strictly later in the query, and either strictly later within one
vertex label or on a vertex reachable through the graph.  Every path in the
product graph then reads off a common subsequence, and a maximum-node path
(unit node weights) is a longest one.

The product graph is materialized explicitly with a dense scan over node
pairs; cost grows with the square of the match count, which is the
documented scaling behavior of this solver.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, NamedTuple

import numpy as np

from .daglp import MatchDag, longest_path_vertex
from .graph import CharDistMatrix, PangenomeGraph, ReachMatrix, reachability

if TYPE_CHECKING:  # pragma: no cover
    from .fglcs import GapParams


class MatchPoint(NamedTuple):
    """One matched character: query index, vertex index, label offset."""

    q_index: int
    vertex: int
    offset: int


class AlignmentError(ValueError):
    """An emitted alignment failed its own invariants."""


@dataclass(frozen=True)
class Alignment:
    """A solved alignment: the common subsequence and its two embeddings.

    ``q_positions`` are strictly increasing indices into the query;
    ``g_positions`` are (vertex id, label offset) pairs.  ``gaps`` is only
    present for gap-constrained solves and holds the realized (query gap,
    graph gap) of each consecutive pair.
    """

    score: int
    subsequence: bytes
    q_positions: tuple[int, ...]
    g_positions: tuple[tuple[str, int], ...]
    gaps: tuple[tuple[int, int], ...] | None = None

    def validate(
        self,
        query: bytes,
        graph: PangenomeGraph,
        reach: ReachMatrix | None = None,
        gap_params: "GapParams | None" = None,
        char_dist: CharDistMatrix | None = None,
    ) -> None:
        """Re-check every invariant against the instance; raise on violation.

        ``reach`` enables the cross-vertex ordering check; ``gap_params``
        plus ``char_dist`` enable the gap-bound checks.
        """
        k = self.score
        if not (len(self.subsequence) == len(self.q_positions) == len(self.g_positions) == k):
            raise AlignmentError("score and component lengths disagree")
        if any(a >= b for a, b in zip(self.q_positions, self.q_positions[1:])):
            raise AlignmentError("query positions must be strictly increasing")
        if self.gaps is not None and len(self.gaps) != max(k - 1, 0):
            raise AlignmentError("gap records must cover each consecutive pair")
        for t in range(k):
            qi = self.q_positions[t]
            vid, off = self.g_positions[t]
            label = graph.label_of(vid)
            if not (0 <= qi < len(query) and 0 <= off < len(label)):
                raise AlignmentError("position out of range")
            if not (self.subsequence[t] == query[qi] == label[off]):
                raise AlignmentError(f"character mismatch at chain position {t}")
        for t in range(k - 1):
            (vid_a, off_a), (vid_b, off_b) = self.g_positions[t], self.g_positions[t + 1]
            if vid_a == vid_b:
                if not off_a < off_b:
                    raise AlignmentError("same-vertex matches must advance in the label")
                graph_gap = off_b - off_a
            else:
                ua, ub = graph.vertex_index(vid_a), graph.vertex_index(vid_b)
                if reach is not None and not reach.reaches(ua, ub):
                    raise AlignmentError(f"vertex {vid_b!r} is not reachable from {vid_a!r}")
                graph_gap = None
                if char_dist is not None:
                    graph_gap = char_dist.distance_vf(ua, off_a, ub, off_b)
                    if graph_gap is None:
                        raise AlignmentError(
                            f"no character-level path from {vid_a!r}[{off_a}] to {vid_b!r}[{off_b}]"
                        )
            if self.gaps is not None:
                dq, dg = self.gaps[t]
                if dq != self.q_positions[t + 1] - self.q_positions[t]:
                    raise AlignmentError("recorded query gap disagrees with positions")
                if graph_gap is not None and dg != graph_gap:
                    raise AlignmentError("recorded graph gap disagrees with distances")
                if gap_params is not None:
                    if not 0 < dq <= gap_params.k1_limit:
                        raise AlignmentError(f"query gap {dq} violates the bound")
                    if not 0 < dg <= gap_params.k2_limit:
                        raise AlignmentError(f"graph gap {dg} violates the bound")


EMPTY_ALIGNMENT = Alignment(0, b"", (), (), None)


def match_points(query: bytes, graph: PangenomeGraph) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """All (query index, vertex, offset) character matches, as parallel
    arrays ordered by query index, then vertex, then offset."""
    q = np.frombuffer(query, dtype=np.uint8)
    lengths = np.array([len(label) for label in graph.labels], dtype=np.int64)
    starts = np.concatenate([[0], np.cumsum(lengths)])
    chars = np.frombuffer(b"".join(graph.labels), dtype=np.uint8)
    vert = np.repeat(np.arange(graph.n, dtype=np.int64), lengths)
    off = np.arange(len(chars), dtype=np.int64) - starts[vert]
    qi, ci = np.nonzero(q[:, None] == chars[None, :])
    return qi.astype(np.int64), vert[ci], off[ci]


def _pair_arcs(
    qi: np.ndarray,
    vert: np.ndarray,
    accept_block,
) -> np.ndarray:
    """Dense scan over ordered node pairs; ``accept_block`` evaluates the
    arc predicate for a block of source rows against all destinations."""
    m = len(qi)
    chunks: list[np.ndarray] = []
    block = max(1, int(32_000_000 // max(m, 1)))
    for lo in range(0, m, block):
        hi = min(lo + block, m)
        ok = accept_block(lo, hi)
        rows, cols = np.nonzero(ok)
        if len(rows):
            chunks.append(np.stack([rows + lo, cols], axis=1))
    if not chunks:
        return np.empty((0, 2), dtype=np.int64)
    return np.concatenate(chunks)


def build_match_graph(
    query: bytes, graph: PangenomeGraph, reach: ReachMatrix
) -> MatchDag:
    """Construct the unit-weight product DAG for unconstrained LCS solving.

    Nodes are all query/label character matches; an arc joins two matches
    when the query index strictly increases and the graph side either stays
    on one vertex with a strictly larger offset or moves to a reachable
    other vertex.
    """
    qi, vert, off = match_points(query, graph)
    rmat = reach.matrix

    def accept(lo: int, hi: int) -> np.ndarray:
        same = vert[lo:hi, None] == vert[None, :]
        graph_ok = np.where(
            same,
            off[lo:hi, None] < off[None, :],
            rmat[vert[lo:hi, None], vert[None, :]],
        )
        return (qi[lo:hi, None] < qi[None, :]) & graph_ok

    arcs = _pair_arcs(qi, vert, accept)
    payloads = tuple(
        MatchPoint(int(i), int(u), int(f)) for i, u, f in zip(qi, vert, off)
    )
    return MatchDag(
        weights=np.ones(len(qi), dtype=np.int64),
        arcs=arcs,
        payloads=payloads,
    )


def alignment_from_path(
    query: bytes,
    graph: PangenomeGraph,
    dag: MatchDag,
    path: tuple[int, ...],
    char_dist: CharDistMatrix | None = None,
) -> Alignment:
    """Read an alignment off a product-graph path, optionally recording the
    per-step (query gap, graph gap) pairs."""
    points = [dag.payloads[v] for v in path]
    q_positions = tuple(p.q_index for p in points)
    g_positions = tuple((graph.ids[p.vertex], p.offset) for p in points)
    subsequence = bytes(query[i] for i in q_positions)
    gaps = None
    if char_dist is not None:
        pairs = []
        for a, b in zip(points, points[1:]):
            dq = b.q_index - a.q_index
            if a.vertex == b.vertex:
                dg = b.offset - a.offset
            else:
                dist = char_dist.distance_vf(a.vertex, a.offset, b.vertex, b.offset)
                if dist is None:
                    raise AlignmentError("path step crosses unreachable characters")
                dg = dist
            pairs.append((dq, dg))
        gaps = tuple(pairs)
    return Alignment(
        score=len(points),
        subsequence=subsequence,
        q_positions=q_positions,
        g_positions=g_positions,
        gaps=gaps,
    )


def solve_lcs_sg(
    query: bytes,
    graph: PangenomeGraph,
    *,
    reach: ReachMatrix | None = None,
) -> Alignment:
    """Longest common subsequence between ``query`` and ``graph``.

    Returns a validated :class:`Alignment`; the empty alignment when no
    query character occurs in the graph.  ``reach`` may be passed to reuse
    precomputed reachability across queries.
    """
    if reach is None:
        reach = reachability(graph)
    dag = build_match_graph(query, graph, reach)
    if dag.n_nodes == 0:
        return EMPTY_ALIGNMENT
    result = longest_path_vertex(dag)
    alignment = alignment_from_path(query, graph, dag, result.path)
    alignment.validate(query, graph, reach=reach)
    return alignment
