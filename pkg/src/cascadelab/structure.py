"""Structural analysis of colored networks: communities, conductance,
degree priority, power-law fitting, distances, the community priority
tree, and seed-routed navigation.

Everything here is a pure function of an immutable graph; expensive
derived structures (community partition, seed subgraph) are memoized on
the graph object, so repeated queries on the same graph are cheap.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np
from scipy import stats
from scipy.sparse import csgraph

from .graph import EdgeTag, LabeledGraph, largest_connected_component
from .seeding import rng_from


@dataclass(frozen=True)
class Community:
    """A homochromatic node set with its distinguished seed node."""

    color: int
    members: np.ndarray  # sorted node ids
    seed: int

    @property
    def size(self) -> int:
        return int(self.members.shape[0])


def communities(g: LabeledGraph) -> list[Community]:
    """One community per color, partitioning the node set.

    Raises ValueError when some color has no seed, or more than one
    (baseline ER/PA graphs have no seeds at all, so they are rejected).
    """

    def build() -> list[Community]:
        if g.n == 0:
            return []
        order = np.argsort(g.color, kind="stable")
        sorted_colors = g.color[order]
        boundaries = np.flatnonzero(np.diff(sorted_colors)) + 1
        groups = np.split(order, boundaries)
        out = []
        for group in groups:
            color = int(g.color[group[0]])
            seeds = group[g.is_seed[group]]
            if seeds.shape[0] != 1:
                raise ValueError(
                    f"color {color} has {seeds.shape[0]} seeds, expected exactly 1")
            out.append(Community(color=color,
                                 members=np.sort(group).astype(np.int64),
                                 seed=int(seeds[0])))
        out.sort(key=lambda c: c.color)
        return out

    return g.cached("communities", build)


def conductance(g: LabeledGraph, w) -> float:
    """Phi(W) = cut(W, V\\W) / min(vol(W), vol(V\\W)), vol = degree sum.

    Requires a non-empty strict subset of the nodes; symmetric in W and
    its complement.
    """
    w = np.asarray(sorted(set(int(x) for x in w)), dtype=np.int64)
    if w.size == 0:
        raise ValueError("W must not be empty")
    if w.size >= g.n:
        raise ValueError("W must be a strict subset of the nodes")
    if w[0] < 0 or w[-1] >= g.n:
        raise IndexError("node id out of range")
    mask = np.zeros(g.n, dtype=bool)
    mask[w] = True
    cut = int(np.count_nonzero(mask[g.edge_u] != mask[g.edge_v]))
    vol_w = int(g.degrees[mask].sum())
    vol_rest = 2 * g.m - vol_w
    denom = min(vol_w, vol_rest)
    if denom == 0:
        raise ValueError("one side of the cut has zero volume")
    return cut / denom


@dataclass(frozen=True)
class CommunityConductance:
    """Cut, volume and conductance of one community against the rest."""

    size: int
    volume: int
    cut: int
    conductance: float


def community_conductances(g: LabeledGraph) -> dict[int, CommunityConductance]:
    """Conductance of every community, computed in one vectorized pass.

    Agrees with calling :func:`conductance` on each member set, but costs
    O(m) total instead of O(m) per community.
    """
    coms = communities(g)
    n_colors = int(g.color.max()) + 1 if g.n else 0
    vol = np.bincount(g.color, weights=g.degrees.astype(np.float64),
                      minlength=n_colors).astype(np.int64)
    cu, cv = g.color[g.edge_u], g.color[g.edge_v]
    cross = cu != cv
    cut = (np.bincount(cu[cross], minlength=n_colors)
           + np.bincount(cv[cross], minlength=n_colors)).astype(np.int64)
    total_vol = 2 * g.m
    out = {}
    for com in coms:
        c = com.color
        denom = min(int(vol[c]), total_vol - int(vol[c]))
        phi = float("inf") if denom == 0 else cut[c] / denom
        out[c] = CommunityConductance(
            size=com.size, volume=int(vol[c]), cut=int(cut[c]),
            conductance=phi)
    return out


@dataclass(frozen=True)
class DegreeProfile:
    """Neighbor color classes of one node, largest first.

    entries are (color, count) pairs sorted by count descending (ties by
    smaller color id); length is the number of distinct neighbor colors;
    first_degree/second_degree are the two largest counts (0 if absent).
    """

    node: int
    entries: tuple[tuple[int, int], ...]
    length: int
    first_degree: int
    second_degree: int


def degree_profile(g: LabeledGraph, v: int) -> DegreeProfile:
    """Color-class profile of v's neighborhood."""
    nbrs = g.neighbors(v)
    colors, counts = np.unique(g.color[nbrs], return_counts=True)
    order = np.lexsort((colors, -counts))
    entries = tuple((int(colors[i]), int(counts[i])) for i in order)
    return DegreeProfile(
        node=int(v),
        entries=entries,
        length=len(entries),
        first_degree=entries[0][1] if entries else 0,
        second_degree=entries[1][1] if len(entries) > 1 else 0,
    )


@dataclass(frozen=True)
class DegreePrioritySummary:
    """Vectorized degree-priority statistics for every node at once.

    Arrays of length n: profile length, first/second degree, and the top
    neighbor color (-1 for isolated nodes).  Matches
    :func:`degree_profile` node for node, including its tie rule.
    """

    length: np.ndarray
    first_degree: np.ndarray
    second_degree: np.ndarray
    top_color: np.ndarray

    def own_color_first(self, g: LabeledGraph) -> np.ndarray:
        """Boolean mask: the node's own color is its largest neighbor class."""
        return self.top_color == g.color


def degree_priority_summary(g: LabeledGraph) -> DegreePrioritySummary:
    """One pass over the edge list instead of n calls to degree_profile."""
    n_colors = int(g.color.max()) + 1 if g.n else 1
    owners = np.concatenate([g.edge_u, g.edge_v])
    ncolor = np.concatenate([g.color[g.edge_v], g.color[g.edge_u]])
    keys, counts = np.unique(owners * n_colors + ncolor, return_counts=True)
    owner_k = keys // n_colors
    color_k = keys % n_colors
    order = np.lexsort((color_k, -counts, owner_k))
    owner_s, color_s, count_s = owner_k[order], color_k[order], counts[order]
    _, first_idx = np.unique(owner_s, return_index=True)

    length = np.bincount(owner_s, minlength=g.n).astype(np.int64)
    first = np.zeros(g.n, dtype=np.int64)
    second = np.zeros(g.n, dtype=np.int64)
    top = np.full(g.n, -1, dtype=np.int64)
    heads = owner_s[first_idx]
    first[heads] = count_s[first_idx]
    top[heads] = color_s[first_idx]
    nxt = first_idx + 1
    ok = nxt < owner_s.shape[0]
    ok[ok] = owner_s[nxt[ok]] == heads[ok]
    second[owner_s[nxt[ok]]] = count_s[nxt[ok]]
    return DegreePrioritySummary(length=length, first_degree=first,
                                 second_degree=second, top_color=top)


@dataclass(frozen=True)
class PowerlawFit:
    """Discrete MLE power-law fit with a CCDF goodness diagnostic."""

    exponent: float
    d_min: int
    sample_count: int
    ccdf_r2: float


def powerlaw_exponent(degrees, d_min: int) -> PowerlawFit:
    """Discrete maximum-likelihood power-law exponent of the tail >= d_min.

    alpha = 1 + m / sum(ln(x_i / (d_min - 0.5))) over the m samples with
    x_i >= d_min (the Clauset–Shalizi–Newman discrete approximation).
    The diagnostic R^2 comes from a linear fit of the log-log CCDF.
    Requires at least 100 tail samples; identical samples are rejected
    (the exponent is unidentifiable).
    """
    if d_min < 1:
        raise ValueError("d_min must be at least 1")
    x = np.asarray(degrees, dtype=np.float64)
    tail = x[x >= d_min]
    if tail.shape[0] < 100:
        raise ValueError(
            f"need at least 100 samples >= d_min, got {tail.shape[0]}")
    if np.all(tail == tail[0]):
        raise ValueError("all tail samples are equal; exponent undefined")
    m = tail.shape[0]
    alpha = 1.0 + m / np.log(tail / (d_min - 0.5)).sum()
    values, counts = np.unique(tail, return_counts=True)
    ccdf = counts[::-1].cumsum()[::-1] / m  # P(X >= value)
    fit = stats.linregress(np.log(values), np.log(ccdf))
    return PowerlawFit(
        exponent=float(alpha),
        d_min=int(d_min),
        sample_count=int(m),
        ccdf_r2=float(fit.rvalue ** 2),
    )


@dataclass(frozen=True)
class DistanceStats:
    """Sampled node-to-node distances on the largest component."""

    avg_distance: float
    est_diameter: int
    pairs_sampled: int
    pairs_unreachable: int


def _bfs_distance_rows(g: LabeledGraph, sources: np.ndarray) -> np.ndarray:
    """BFS distances from the given sources to all nodes (chunked)."""
    out = np.empty((sources.shape[0], g.n), dtype=np.float64)
    a = g.csr()
    for lo in range(0, sources.shape[0], 64):
        chunk = sources[lo:lo + 64]
        out[lo:lo + chunk.shape[0]] = csgraph.dijkstra(
            a, directed=False, unweighted=True, indices=chunk)
    return out


def sample_lcc_pairs(g: LabeledGraph, sample_pairs: int, seed: int = 0,
                     max_sources: int = 64) -> tuple[np.ndarray, np.ndarray]:
    """Sample node pairs (u != v) from the largest component.

    Small components are enumerated exactly.  Large ones use stratified
    sampling: up to max_sources uniform source nodes, each paired with
    uniform targets, so distance queries need few BFS passes while the
    mean pair distance stays an unbiased estimate.
    """
    if sample_pairs < 1:
        raise ValueError("sample_pairs must be at least 1")
    lcc = largest_connected_component(g)
    if lcc.size < 2:
        raise ValueError("largest component has fewer than 2 nodes")
    total_pairs = lcc.size * (lcc.size - 1) // 2
    if total_pairs <= sample_pairs:
        us, vs = np.triu_indices(lcc.size, k=1)
        return lcc[us], lcc[vs]
    rng = rng_from(seed, "distance-pairs", g.n, g.m)
    n_sources = int(min(max_sources, sample_pairs, lcc.size))
    sources = lcc[rng.choice(lcc.size, size=n_sources, replace=False)]
    per = -(-sample_pairs // n_sources)  # ceil division
    pair_u = np.repeat(sources, per)[:sample_pairs]
    pair_v = lcc[rng.integers(0, lcc.size, size=sample_pairs)]
    clash = pair_u == pair_v
    while clash.any():
        pair_v[clash] = lcc[rng.integers(0, lcc.size, size=int(clash.sum()))]
        clash = pair_u == pair_v
    return pair_u, pair_v


def pair_distances(g: LabeledGraph, pair_u: np.ndarray,
                   pair_v: np.ndarray) -> np.ndarray:
    """BFS distance for each (u, v) pair; inf when unreachable."""
    sources, inverse = np.unique(pair_u, return_inverse=True)
    dist_rows = _bfs_distance_rows(g, sources)
    return dist_rows[inverse, pair_v]


def distance_stats(g: LabeledGraph, sample_pairs: int, seed: int = 0) -> DistanceStats:
    """Average distance over sampled pairs in the LCC plus a double-sweep
    diameter estimate.

    When the LCC has at most sample_pairs distinct pairs they are all
    used exactly; otherwise pairs come from :func:`sample_lcc_pairs`.
    Unreachable pairs cannot occur for pairs inside the LCC but are
    excluded and counted defensively.
    """
    pair_u, pair_v = sample_lcc_pairs(g, sample_pairs, seed)
    lcc = largest_connected_component(g)
    dists = pair_distances(g, pair_u, pair_v)
    reachable = np.isfinite(dists)
    if not reachable.any():
        raise ValueError("no reachable pairs sampled")

    # double-sweep: repeated BFS to the farthest node lower-bounds the diameter
    in_lcc = np.zeros(g.n, dtype=bool)
    in_lcc[lcc] = True
    start = int(lcc[np.argmax(g.degrees[lcc])])
    best = 0
    for _ in range(4):
        row = _bfs_distance_rows(g, np.asarray([start]))[0]
        row = np.where(in_lcc & np.isfinite(row), row, -np.inf)
        far = int(np.argmax(row))
        reach = int(row[far])
        if reach <= best:
            break
        best = reach
        start = far
    return DistanceStats(
        avg_distance=float(dists[reachable].mean()),
        est_diameter=best,
        pairs_sampled=int(dists.shape[0]),
        pairs_unreachable=int((~reachable).sum()),
    )


def community_diameters(g: LabeledGraph) -> dict[int, float]:
    """Exact BFS diameter of every induced community subgraph.

    Disconnected communities report math.inf.  Returned as a dict keyed
    by color.
    """
    a = g.csr()
    out: dict[int, float] = {}
    for com in communities(g):
        if com.size == 1:
            out[com.color] = 0.0
            continue
        sub = a[com.members][:, com.members]
        dist = csgraph.dijkstra(sub, directed=False, unweighted=True)
        worst = dist.max()
        out[com.color] = float("inf") if np.isinf(worst) else float(worst)
    return out


@dataclass(frozen=True)
class PriorityTree:
    """Contracted community graph after dropping seed-link edges.

    Vertex 0 is the root (all communities seeded by initial-graph nodes,
    contracted together); vertex i > 0 is the community of
    vertex_colors[i].  Edges run child -> parent, i.e. from the
    later-born community to the earlier-born one.  height is the longest
    directed path to a sink (the root, when the graph is a tree).
    violations lists the reasons is_tree failed, if any.
    """

    vertex_colors: tuple[int | None, ...]
    vertex_births: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    is_tree: bool
    height: int
    violations: tuple[str, ...]


def infection_priority_tree(g: LabeledGraph) -> PriorityTree:
    """Delete seed-link edges, contract each color class (all communities
    of initial-graph seeds merge into one root), collapse parallel edges,
    and orient every edge from the later-born community to the earlier.
    """
    tags = g.edge_tag
    if g.m and (tags == int(EdgeTag.PLAIN)).any():
        raise ValueError("graph has PLAIN edges; provenance is missing")
    if not g.is_seed.any():
        raise ValueError("graph has no seeds; provenance is missing")
    coms = communities(g)
    init_mask = tags == int(EdgeTag.INITIAL)
    if not init_mask.any():
        raise ValueError("graph has no INITIAL edges; provenance is missing")
    initial_set = set(np.unique(np.concatenate(
        [g.edge_u[init_mask], g.edge_v[init_mask]])).tolist())

    vertex_colors: list[int | None] = [None]
    vertex_births: list[int] = [0]
    vmap = np.zeros(int(g.color.max()) + 1, dtype=np.int64)
    later = [c for c in coms if int(c.seed) not in initial_set]
    later.sort(key=lambda c: int(g.birth_time[c.seed]))
    for com in later:
        vmap[com.color] = len(vertex_colors)
        vertex_colors.append(com.color)
        vertex_births.append(int(g.birth_time[com.seed]))

    keep = tags != int(EdgeTag.SEED_LINK)
    vu = vmap[g.color[g.edge_u[keep]]]
    vv = vmap[g.color[g.edge_v[keep]]]
    cross = vu != vv
    births = np.asarray(vertex_births)
    a, b = vu[cross], vv[cross]
    child = np.where(births[a] > births[b], a, b)
    parent = np.where(births[a] > births[b], b, a)
    if child.size:
        edge_arr = np.unique(np.stack([child, parent], axis=1), axis=0)
    else:
        edge_arr = np.empty((0, 2), dtype=np.int64)
    edge_set = [(int(c), int(p)) for c, p in edge_arr]

    violations: list[str] = []
    n_vertices = len(vertex_colors)
    out_deg = np.bincount(edge_arr[:, 0], minlength=n_vertices) \
        if edge_arr.size else np.zeros(n_vertices, dtype=np.int64)
    if out_deg[0] != 0:
        violations.append("root has an outgoing edge")
    for v in range(1, n_vertices):
        if out_deg[v] == 0:
            violations.append(
                f"community {vertex_colors[v]} has no parent (unreachable)")
        elif out_deg[v] > 1:
            violations.append(
                f"community {vertex_colors[v]} has {out_deg[v]} parents")
    is_tree = not violations and len(edge_set) == n_vertices - 1

    # longest directed path; edges always point to earlier births, so a
    # birth-ordered DP terminates even when the graph is not a tree
    depth = np.zeros(n_vertices, dtype=np.int64)
    order = np.argsort(births, kind="stable")
    parents_of: dict[int, list[int]] = {}
    for c, p in edge_set:
        parents_of.setdefault(c, []).append(p)
    for v in order:
        v = int(v)
        for p in parents_of.get(v, ()):
            depth[v] = max(depth[v], depth[p] + 1)
    return PriorityTree(
        vertex_colors=tuple(vertex_colors),
        vertex_births=tuple(vertex_births),
        edges=tuple(edge_set),
        is_tree=bool(is_tree),
        height=int(depth.max()) if n_vertices else 0,
        violations=tuple(violations),
    )


@dataclass(frozen=True)
class NavigationResult:
    """Outcome of one navigation query: the path (None on failure),
    its hop count, and how many nodes the search expanded."""

    path: tuple[int, ...] | None
    hops: int
    visited: int

    @property
    def succeeded(self) -> bool:
        return self.path is not None


def _seed_subgraph(g: LabeledGraph) -> dict[int, list[int]]:
    """Adjacency over seed nodes using only seed-seed edges (cached)."""

    def build():
        adj: dict[int, list[int]] = {int(s): [] for s in np.flatnonzero(g.is_seed)}
        both = g.is_seed[g.edge_u] & g.is_seed[g.edge_v]
        for u, v in zip(g.edge_u[both].tolist(), g.edge_v[both].tolist()):
            adj[u].append(v)
            adj[v].append(u)
        return adj

    return g.cached("seed-subgraph", build)


def _community_adjacency(g: LabeledGraph) -> dict[int, dict[int, list[int]]]:
    """Per-color adjacency restricted to same-color edges (cached)."""

    def build():
        adj: dict[int, dict[int, list[int]]] = {}
        for com in communities(g):
            adj[com.color] = {int(v): [] for v in com.members}
        same = g.color[g.edge_u] == g.color[g.edge_v]
        for u, v, c in zip(g.edge_u[same].tolist(), g.edge_v[same].tolist(),
                           g.color[g.edge_u[same]].tolist()):
            adj[c][u].append(v)
            adj[c][v].append(u)
        return adj

    return g.cached("community-adjacency", build)


def _bfs_path(adj, start: int, goal: int) -> tuple[list[int] | None, int]:
    """Shortest path in a dict adjacency; returns (path, nodes expanded)."""
    if start == goal:
        return [start], 1
    parent = {start: start}
    queue = deque([start])
    expanded = 0
    while queue:
        u = queue.popleft()
        expanded += 1
        for w in adj[u]:
            if w not in parent:
                parent[w] = u
                if w == goal:
                    path = [w]
                    while path[-1] != start:
                        path.append(parent[path[-1]])
                    return path[::-1], expanded
                queue.append(w)
    return None, expanded


def _bidirectional_bfs(adj, start: int, goal: int) -> tuple[list[int] | None, int]:
    """Bidirectional BFS; returns (shortest path, nodes expanded)."""
    if start == goal:
        return [start], 1
    orig_start = start
    parent_f = {start: start}
    parent_b = {goal: goal}
    frontier_f = [start]
    frontier_b = [goal]
    expanded = 0

    while frontier_f and frontier_b:
        # always expand the smaller frontier
        if len(frontier_f) > len(frontier_b):
            frontier_f, frontier_b = frontier_b, frontier_f
            parent_f, parent_b = parent_b, parent_f
            start, goal = goal, start
        nxt = []
        for u in frontier_f:
            expanded += 1
            for w in adj[u]:
                if w in parent_b:
                    # stitch: start ..parent_f.. u - w ..parent_b.. goal
                    fore = [w, u] if w != u else [w]
                    while fore[-1] != start:
                        fore.append(parent_f[fore[-1]])
                    fore.reverse()
                    back = w
                    while back != goal:
                        back = parent_b[back]
                        fore.append(back)
                    if fore[0] != orig_start:
                        fore.reverse()
                    return fore, expanded
                if w not in parent_f:
                    parent_f[w] = u
                    nxt.append(w)
        frontier_f = nxt
    return None, expanded


def navigate(g: LabeledGraph, u: int, v: int, hop_budget: int) -> NavigationResult:
    """Three-stage seed routing: climb from u to its community seed,
    cross the seed subgraph to v's community seed, then descend to v.

    Endpoints in the same community route directly inside it.  Returns a
    failed result when any stage is disconnected or the stitched path
    exceeds hop_budget.  The path is simple and valid in g.
    """
    if not g.is_seed.any():
        raise ValueError("graph has no colors/seeds; navigation needs them")
    if not (0 <= u < g.n and 0 <= v < g.n):
        raise IndexError("node id out of range")
    if u == v:
        return NavigationResult(path=(u,), hops=0, visited=1)
    com_adj = _community_adjacency(g)
    coms = {c.color: c for c in communities(g)}
    cu, cv = int(g.color[u]), int(g.color[v])
    visited = 0
    if cu == cv:
        path, expanded = _bfs_path(com_adj[cu], u, v)
        visited += expanded
        if path is None or len(path) - 1 > hop_budget:
            return NavigationResult(path=None, hops=-1, visited=visited)
        return NavigationResult(path=tuple(path), hops=len(path) - 1,
                                visited=visited)
    seed_u, seed_v = coms[cu].seed, coms[cv].seed
    up, expanded = _bfs_path(com_adj[cu], u, seed_u)
    visited += expanded
    if up is None:
        return NavigationResult(path=None, hops=-1, visited=visited)
    mid, expanded = _bidirectional_bfs(_seed_subgraph(g), seed_u, seed_v)
    visited += expanded
    if mid is None:
        return NavigationResult(path=None, hops=-1, visited=visited)
    down, expanded = _bfs_path(com_adj[cv], seed_v, v)
    visited += expanded
    if down is None:
        return NavigationResult(path=None, hops=-1, visited=visited)
    path = up + mid[1:] + down[1:]
    if len(path) - 1 > hop_budget:
        return NavigationResult(path=None, hops=-1, visited=visited)
    return NavigationResult(path=tuple(path), hops=len(path) - 1, visited=visited)
