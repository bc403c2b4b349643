"""Shared brute-force reference code and instance builders for the tests.

Everything here is deliberately naive (DFS, BFS, full enumeration) and
never touches the library's preprocessing or DAG machinery, so it can serve
as an independent cross-check.
"""

from __future__ import annotations

import random
from itertools import permutations

from hypothesis import strategies as st

from panlcs import MatchDag, PangenomeGraph, Seed

# ---------------------------------------------------------------------------
# graph-side references
# ---------------------------------------------------------------------------


def dfs_reach_pairs(graph: PangenomeGraph) -> set[tuple[int, int]]:
    """(u, v) pairs connected by a directed path of >= 1 edge, via DFS."""
    out: dict[int, list[int]] = {k: [] for k in range(graph.n)}
    for u, v in graph.edges:
        out[u].append(v)
    pairs: set[tuple[int, int]] = set()
    for src in range(graph.n):
        stack = list(out[src])
        seen: set[int] = set()
        while stack:
            node = stack.pop()
            if node in seen:
                continue
            seen.add(node)
            pairs.add((src, node))
            stack.extend(out[node])
    return pairs


def char_nodes_and_arcs(graph: PangenomeGraph):
    """Independent character-split construction: (chars, arcs, starts)."""
    chars: list[int] = []
    starts: list[int] = []
    for label in graph.labels:
        starts.append(len(chars))
        chars.extend(label)
    arcs: list[tuple[int, int]] = []
    for v, label in enumerate(graph.labels):
        for f in range(len(label) - 1):
            arcs.append((starts[v] + f, starts[v] + f + 1))
    for u, v in graph.edges:
        arcs.append((starts[u] + len(graph.labels[u]) - 1, starts[v]))
    return chars, arcs, starts


def bfs_char_distances(graph: PangenomeGraph) -> dict[tuple[int, int], int]:
    """All-pairs minimum arc counts between character nodes, via BFS."""
    chars, arcs, _ = char_nodes_and_arcs(graph)
    succ: dict[int, list[int]] = {k: [] for k in range(len(chars))}
    for a, b in arcs:
        succ[a].append(b)
    dists: dict[tuple[int, int], int] = {}
    for src in range(len(chars)):
        dists[(src, src)] = 0
        frontier = [src]
        depth = 0
        seen = {src}
        while frontier:
            depth += 1
            nxt = []
            for node in frontier:
                for other in succ[node]:
                    if other not in seen:
                        seen.add(other)
                        dists[(src, other)] = depth
                        nxt.append(other)
            frontier = nxt
    return dists


# ---------------------------------------------------------------------------
# DAG longest-path references
# ---------------------------------------------------------------------------


def enumerate_paths(n: int, arcs: list[tuple[int, int]]):
    """Every directed path (as a node list) of a small DAG."""
    out: dict[int, list[int]] = {k: [] for k in range(n)}
    for u, v in arcs:
        out[u].append(v)

    def walk(path):
        yield path
        for nxt in out[path[-1]]:
            yield from walk(path + [nxt])

    for start in range(n):
        yield from walk([start])


def brute_longest_vertex(dag: MatchDag) -> int:
    arcs = [tuple(map(int, a)) for a in dag.arcs]
    best = 0
    for path in enumerate_paths(dag.n_nodes, arcs):
        best = max(best, sum(int(dag.weights[v]) for v in path))
    return best


def brute_longest_edge(dag: MatchDag) -> int:
    arcs = [tuple(map(int, a)) for a in dag.arcs]
    weight = {}
    for k, (u, v) in enumerate(arcs):
        key = (u, v)
        weight[key] = max(weight.get(key, 0), int(dag.arc_weights[k]))
    best = 0
    for path in enumerate_paths(dag.n_nodes, arcs):
        total = sum(weight[(a, b)] for a, b in zip(path, path[1:]))
        best = max(best, total)
    return best


def residual_ok(dag: MatchDag, dist, mode: str) -> bool:
    """Check the final dist table against the recurrence, node by node."""
    n = dag.n_nodes
    in_arcs: dict[int, list[int]] = {k: [] for k in range(n)}
    for k, (u, v) in enumerate(dag.arcs):
        in_arcs[int(v)].append(k)
    for v in range(n):
        if mode == "edge":
            if not in_arcs[v]:
                expected = 0
            else:
                expected = max(
                    int(dist[int(dag.arcs[k][0])]) + int(dag.arc_weights[k])
                    for k in in_arcs[v]
                )
        else:
            w = int(dag.weights[v])
            if not in_arcs[v]:
                expected = w
            else:
                expected = max(int(dist[int(dag.arcs[k][0])]) for k in in_arcs[v]) + w
        if int(dist[v]) != expected:
            return False
    return True


def path_is_valid(dag: MatchDag, path) -> bool:
    arc_set = {tuple(map(int, a)) for a in dag.arcs}
    return all((a, b) in arc_set for a, b in zip(path, path[1:]))


# ---------------------------------------------------------------------------
# product-graph arc rules, applied directly pair by pair
# ---------------------------------------------------------------------------


def match_nodes_by_rule(query: bytes, graph: PangenomeGraph):
    """All (query index, vertex, offset) matches in the solver's order."""
    nodes = []
    for qi in range(len(query)):
        for v, label in enumerate(graph.labels):
            for f in range(len(label)):
                if query[qi] == label[f]:
                    nodes.append((qi, v, f))
    return nodes


def h_arcs_by_rule(query: bytes, graph: PangenomeGraph) -> set[tuple[int, int]]:
    reach = dfs_reach_pairs(graph)
    nodes = match_nodes_by_rule(query, graph)
    arcs = set()
    for x, (i, u, f) in enumerate(nodes):
        for y, (i2, u2, f2) in enumerate(nodes):
            if i >= i2:
                continue
            if (u == u2 and f < f2) or (u != u2 and (u, u2) in reach):
                arcs.add((x, y))
    return arcs


def hgap_arcs_by_rule(query: bytes, graph: PangenomeGraph, k1, k2) -> set[tuple[int, int]]:
    dists = bfs_char_distances(graph)
    _, _, starts = char_nodes_and_arcs(graph)
    nodes = match_nodes_by_rule(query, graph)
    k1 = float("inf") if k1 is None else k1
    k2 = float("inf") if k2 is None else k2
    arcs = set()
    for x, (i, u, f) in enumerate(nodes):
        for y, (i2, u2, f2) in enumerate(nodes):
            if not 0 < i2 - i <= k1:
                continue
            if u == u2:
                ok = 0 < f2 - f <= k2
            else:
                d = dists.get((starts[u] + f, starts[u2] + f2))
                ok = d is not None and d <= k2
            if ok:
                arcs.add((x, y))
    return arcs


# ---------------------------------------------------------------------------
# chaining references
# ---------------------------------------------------------------------------


def seed_precedes_brute(a: Seed, b: Seed, graph: PangenomeGraph) -> bool:
    if not a.j2 < b.j:
        return False
    if a.vertex == b.vertex:
        return a.i2 < b.i
    reach = dfs_reach_pairs(graph)
    return (graph.vertex_index(a.vertex), graph.vertex_index(b.vertex)) in reach


def best_chain_by_permutation(seeds, graph: PangenomeGraph, value) -> int:
    """Second chaining oracle: try every order of every subset."""
    reach = dfs_reach_pairs(graph)

    def precedes(a, b):
        if not a.j2 < b.j:
            return False
        if a.vertex == b.vertex:
            return a.i2 < b.i
        return (graph.vertex_index(a.vertex), graph.vertex_index(b.vertex)) in reach

    best = 0
    for mask in range(1 << len(seeds)):
        subset = [seeds[k] for k in range(len(seeds)) if mask >> k & 1]
        for order in permutations(subset):
            if all(precedes(a, b) for a, b in zip(order, order[1:])):
                best = max(best, sum(value(s) for s in order))
                break
    return best


# ---------------------------------------------------------------------------
# random instances (plain rng, for the big corpora)
# ---------------------------------------------------------------------------


def random_graph(
    rng: random.Random,
    max_n: int = 5,
    max_label: int = 3,
    alphabet: int = 3,
    acyclic: bool = True,
) -> PangenomeGraph:
    n = rng.randint(1, max_n)
    letters = "abcdefgh"[:alphabet]
    vertices = [
        (f"v{k}", "".join(rng.choice(letters) for _ in range(rng.randint(1, max_label))))
        for k in range(n)
    ]
    if acyclic:
        order = rng.sample(range(n), n)
        pos = {v: k for k, v in enumerate(order)}
        candidates = [(u, v) for u in range(n) for v in range(n) if pos[u] < pos[v]]
    else:
        candidates = [(u, v) for u in range(n) for v in range(n)]
    m = rng.randint(0, len(candidates))
    edges = [(f"v{u}", f"v{v}") for u, v in rng.sample(candidates, m)]
    return PangenomeGraph.from_items(vertices, edges)


def random_query(rng: random.Random, max_len: int = 8, alphabet: int = 3) -> bytes:
    letters = b"abcdefgh"[:alphabet]
    return bytes(rng.choice(letters) for _ in range(rng.randint(0, max_len)))


# ---------------------------------------------------------------------------
# hypothesis strategies
# ---------------------------------------------------------------------------


@st.composite
def graphs(draw, max_n=5, max_label=3, alphabet=3, acyclic=True):
    n = draw(st.integers(1, max_n))
    letters = "abcdefgh"[:alphabet]
    labels = [
        draw(st.text(alphabet=letters, min_size=1, max_size=max_label)) for _ in range(n)
    ]
    if acyclic:
        candidates = [(u, v) for u in range(n) for v in range(n) if u < v]
    else:
        candidates = [(u, v) for u in range(n) for v in range(n)]
    edges = draw(st.lists(st.sampled_from(candidates), max_size=2 * n, unique=True)) if candidates else []
    return PangenomeGraph.from_items(
        [(f"v{k}", labels[k]) for k in range(n)],
        [(f"v{u}", f"v{v}") for u, v in edges],
    )


@st.composite
def queries(draw, max_len=7, alphabet=3):
    letters = "abcdefgh"[:alphabet]
    return draw(st.text(alphabet=letters, max_size=max_len)).encode()


@st.composite
def match_dags(draw, max_nodes=7, weighted_arcs=False, max_weight=5):
    n = draw(st.integers(0, max_nodes))
    perm = draw(st.permutations(list(range(n)))) if n else []
    candidates = [
        (perm[a], perm[b]) for a in range(n) for b in range(a + 1, n)
    ]
    arcs = draw(st.lists(st.sampled_from(candidates), max_size=2 * n)) if candidates else []
    weights = [draw(st.integers(0, max_weight)) for _ in range(n)]
    if weighted_arcs:
        arc_tuples = [(u, v, draw(st.integers(0, max_weight))) for u, v in arcs]
    else:
        arc_tuples = arcs
    return MatchDag.from_lists(nodes=[(None, w) for w in weights], arcs=arc_tuples)
