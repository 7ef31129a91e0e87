"""Labeled undirected graphs with node metadata and edge provenance.

The graph type used throughout cascadelab: a simple undirected graph whose
nodes carry a color id, a seed flag and a birth time (node ids double as
birth times for generated graphs), and whose edges carry a provenance tag
recording which construction rule created them.

Storage is array-based (numpy): edge endpoint arrays plus lazily built CSR
adjacency, so a 10^5-node graph with 10^6 edges costs a few tens of MB and
all bulk queries are vectorized.  Graphs are immutable after construction
and safe to share across worker processes or threads.

File format (version 1, UTF-8, LF line endings)::

    cascadelab-graph v1 <n> <m>
    N <id> <color> <is_seed:0|1> <birth_time>     # n lines, sorted by id
    E <u> <v> <provenance>                        # m lines, u < v,
                                                  # sorted by (u, v)

Provenance is one of INITIAL, PA_GLOBAL, SEED_LINK, HOMOPHYLY, PLAIN.
The format is canonical: node lines must appear in id order and edge lines
in ascending (u, v) order, so serialization round-trips bit-exactly.
"""

from __future__ import annotations

from enum import IntEnum

import numpy as np
import scipy.sparse as sp
from scipy.sparse import csgraph


class EdgeTag(IntEnum):
    """Edge provenance: which construction rule created the edge."""

    INITIAL = 0     # edge of the initial complete graph
    PA_GLOBAL = 1   # a new seed's single degree-proportional edge over all nodes
    SEED_LINK = 2   # a new seed's uniform link to an existing seed
    HOMOPHYLY = 3   # a non-seed's degree-proportional edge inside its color class
    PLAIN = 4       # baseline models (ER / PA) with no provenance story


_TAG_NAMES = {tag: tag.name for tag in EdgeTag}
_TAG_BY_NAME = {tag.name: tag for tag in EdgeTag}

FORMAT_MAGIC = "cascadelab-graph"
FORMAT_VERSION = "v1"


class GraphFormatError(ValueError):
    """Raised for malformed graph files; message names the offending line."""


class LabeledGraph:
    """Immutable simple undirected graph with per-node metadata.

    Construct via :meth:`from_edges` (generators, tests) or
    :func:`deserialize`.  Node ids are dense in [0, n); edges are stored
    with u < v.  Construction validates simplicity: no self-loops, no
    duplicate edges, endpoints in range.
    """

    __slots__ = ("n", "color", "is_seed", "birth_time", "edge_u", "edge_v",
                 "edge_tag", "_derived")

    def __init__(self, n, color, is_seed, birth_time, edge_u, edge_v, edge_tag,
                 *, validate: bool = True):
        self.n = int(n)
        self.color = np.ascontiguousarray(color, dtype=np.int64)
        self.is_seed = np.ascontiguousarray(is_seed, dtype=bool)
        self.birth_time = np.ascontiguousarray(birth_time, dtype=np.int64)
        u = np.ascontiguousarray(edge_u, dtype=np.int64)
        v = np.ascontiguousarray(edge_v, dtype=np.int64)
        tag = np.ascontiguousarray(edge_tag, dtype=np.uint8)
        # canonical endpoint order u < v
        swap = u > v
        if swap.any():
            u, v = np.where(swap, v, u), np.where(swap, u, v)
        # canonical edge order (u, v) ascending, deterministic for equal graphs
        order = np.lexsort((v, u))
        self.edge_u = u[order]
        self.edge_v = v[order]
        self.edge_tag = tag[order]
        self._derived: dict = {}
        if validate:
            self._validate()

    @classmethod
    def from_edges(cls, n, edges, *, color=None, is_seed=None, birth_time=None):
        """Build a graph from an iterable of (u, v) or (u, v, tag) tuples.

        Metadata defaults: color 0 everywhere, no seeds, birth_time = id.
        """
        edges = list(edges)
        if edges and len(edges[0]) == 3:
            eu = [e[0] for e in edges]
            ev = [e[1] for e in edges]
            et = [int(e[2]) for e in edges]
        else:
            eu = [e[0] for e in edges]
            ev = [e[1] for e in edges]
            et = [int(EdgeTag.PLAIN)] * len(edges)
        return cls(
            n,
            np.zeros(n, dtype=np.int64) if color is None else color,
            np.zeros(n, dtype=bool) if is_seed is None else is_seed,
            np.arange(n, dtype=np.int64) if birth_time is None else birth_time,
            np.asarray(eu, dtype=np.int64),
            np.asarray(ev, dtype=np.int64),
            np.asarray(et, dtype=np.uint8),
        )

    # ---- validation -------------------------------------------------------

    def _validate(self) -> None:
        n, m = self.n, self.m
        if n < 0:
            raise ValueError("node count must be non-negative")
        for name in ("color", "is_seed", "birth_time"):
            if getattr(self, name).shape != (n,):
                raise ValueError(f"{name} must have length n={n}")
        if m:
            if self.edge_u.min(initial=0) < 0 or self.edge_v.max(initial=-1) >= n:
                raise ValueError("edge endpoint out of range")
            if (self.edge_u == self.edge_v).any():
                raise ValueError("self-loops are not allowed")
            dup = (np.diff(self.edge_u) == 0) & (np.diff(self.edge_v) == 0)
            if dup.any():
                i = int(np.flatnonzero(dup)[0])
                raise ValueError(
                    f"duplicate edge ({self.edge_u[i]}, {self.edge_v[i]})")
        if (self.color < 0).any():
            raise ValueError("colors must be non-negative")
        if (self.birth_time < 0).any():
            raise ValueError("birth times must be non-negative")

    # ---- basic queries ----------------------------------------------------

    @property
    def m(self) -> int:
        """Number of edges."""
        return int(self.edge_u.shape[0])

    @property
    def degrees(self) -> np.ndarray:
        """Degree of every node, as an int64 array of length n."""
        try:
            return self._derived["degrees"]
        except KeyError:
            deg = np.bincount(self.edge_u, minlength=self.n) + np.bincount(
                self.edge_v, minlength=self.n)
            deg = deg.astype(np.int64)
            self._derived["degrees"] = deg
            return deg

    def degree(self, v: int) -> int:
        if not 0 <= v < self.n:
            raise IndexError(f"node id {v} out of range [0, {self.n})")
        return int(self.degrees[v])

    def adjacency(self) -> tuple[np.ndarray, np.ndarray]:
        """CSR adjacency (indptr, indices); neighbor lists sorted ascending."""
        try:
            return self._derived["adjacency"]
        except KeyError:
            a = self.csr()
            pair = (a.indptr.astype(np.int64), a.indices.astype(np.int64))
            self._derived["adjacency"] = pair
            return pair

    def csr(self) -> sp.csr_matrix:
        """Symmetric 0/1 adjacency matrix in CSR form (cached)."""
        try:
            return self._derived["csr"]
        except KeyError:
            row = np.concatenate([self.edge_u, self.edge_v])
            col = np.concatenate([self.edge_v, self.edge_u])
            data = np.ones(row.shape[0], dtype=np.int8)
            a = sp.coo_matrix((data, (row, col)), shape=(self.n, self.n)).tocsr()
            a.sort_indices()
            self._derived["csr"] = a
            return a

    def neighbors(self, v: int) -> np.ndarray:
        """Neighbor ids of v, ascending."""
        if not 0 <= v < self.n:
            raise IndexError(f"node id {v} out of range [0, {self.n})")
        indptr, indices = self.adjacency()
        return indices[indptr[v]:indptr[v + 1]]

    def cached(self, key: str, builder):
        """Memoize a derived structure on this (immutable) graph."""
        try:
            return self._derived[key]
        except KeyError:
            value = builder()
            self._derived[key] = value
            return value

    # ---- equality / repr --------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, LabeledGraph):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.color, other.color)
            and np.array_equal(self.is_seed, other.is_seed)
            and np.array_equal(self.birth_time, other.birth_time)
            and np.array_equal(self.edge_u, other.edge_u)
            and np.array_equal(self.edge_v, other.edge_v)
            and np.array_equal(self.edge_tag, other.edge_tag)
        )

    def __hash__(self):  # identity hash; graphs are mutable-free but large
        return id(self)

    def __repr__(self) -> str:
        kinds = np.bincount(self.edge_tag, minlength=len(EdgeTag))
        tags = ", ".join(
            f"{EdgeTag(i).name}={int(c)}" for i, c in enumerate(kinds) if c)
        return f"LabeledGraph(n={self.n}, m={self.m}, {tags or 'no edges'})"


def degree(g: LabeledGraph, v: int) -> int:
    """Degree of node v; raises IndexError for out-of-range ids."""
    return g.degree(v)


def largest_connected_component(g: LabeledGraph, excluded=()) -> np.ndarray:
    """Node set of the largest connected component of g minus `excluded`.

    Ties between equal-size components are broken toward the component
    containing the smallest surviving node id, so the result is a
    deterministic function of the input.  Returns a sorted int64 array
    (empty when nothing survives).
    """
    excluded = np.asarray(sorted(set(int(x) for x in excluded)), dtype=np.int64)
    if excluded.size and (excluded.min() < 0 or excluded.max() >= g.n):
        raise IndexError("excluded node id out of range")
    if excluded.size == 0:
        return g.cached(
            "lcc", lambda: _lcc_of(g, np.arange(g.n, dtype=np.int64)))
    keep = np.ones(g.n, dtype=bool)
    keep[excluded] = False
    survivors = np.flatnonzero(keep)
    return _lcc_of(g, survivors)


def _lcc_of(g: LabeledGraph, survivors: np.ndarray) -> np.ndarray:
    if survivors.size == 0:
        return survivors.astype(np.int64)
    if survivors.size == g.n:
        sub = g.csr()
    else:
        sub = g.csr()[survivors][:, survivors]
    _, labels = csgraph.connected_components(sub, directed=False)
    sizes = np.bincount(labels)
    best_size = sizes.max()
    # labels appear in survivor (= ascending id) order, so per-label first
    # occurrence identifies the component with the smallest surviving id
    candidates = np.flatnonzero(sizes == best_size)
    firsts = np.full(sizes.shape[0], g.n, dtype=np.int64)
    np.minimum.at(firsts, labels, np.arange(labels.shape[0]))
    best = candidates[np.argmin(firsts[candidates])]
    return survivors[labels == best].astype(np.int64)


# ---- serialization ---------------------------------------------------------


def serialize(g: LabeledGraph) -> bytes:
    """Serialize to the canonical v1 text format (UTF-8 bytes, LF endings)."""
    lines = [f"{FORMAT_MAGIC} {FORMAT_VERSION} {g.n} {g.m}"]
    seeds = g.is_seed.astype(np.int64)
    for i in range(g.n):
        lines.append(f"N {i} {g.color[i]} {seeds[i]} {g.birth_time[i]}")
    tag_names = [_TAG_NAMES[EdgeTag(int(t))] for t in g.edge_tag]
    eu, ev = g.edge_u, g.edge_v
    for j in range(g.m):
        lines.append(f"E {eu[j]} {ev[j]} {tag_names[j]}")
    return ("\n".join(lines) + "\n").encode("utf-8")


def _fail(lineno: int, message: str):
    raise GraphFormatError(f"line {lineno}: {message}")


def deserialize(data: bytes) -> LabeledGraph:
    """Parse the canonical v1 format; errors name the offending line."""
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise GraphFormatError(f"not valid UTF-8: {exc}") from None
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        _fail(1, "empty file, expected header")
    head = lines[0].split(" ")
    if len(head) != 4 or head[0] != FORMAT_MAGIC or head[1] != FORMAT_VERSION:
        _fail(1, f"malformed header {lines[0]!r}")
    try:
        n, m = int(head[2]), int(head[3])
    except ValueError:
        _fail(1, f"malformed header counts {lines[0]!r}")
    if n < 0 or m < 0:
        _fail(1, "negative node or edge count")
    if len(lines) != 1 + n + m:
        _fail(len(lines), f"expected {1 + n + m} lines for n={n}, m={m}, "
                          f"found {len(lines)}")

    color = np.empty(n, dtype=np.int64)
    is_seed = np.empty(n, dtype=bool)
    birth = np.empty(n, dtype=np.int64)
    for i in range(n):
        lineno = 2 + i
        parts = lines[1 + i].split(" ")
        if len(parts) != 5 or parts[0] != "N":
            _fail(lineno, f"malformed node line {lines[1 + i]!r}")
        try:
            nid, col, seed, bt = (int(parts[1]), int(parts[2]),
                                  int(parts[3]), int(parts[4]))
        except ValueError:
            _fail(lineno, f"non-integer field in node line {lines[1 + i]!r}")
        if nid != i:
            _fail(lineno, f"node lines must be sorted by id; expected {i}, got {nid}")
        if seed not in (0, 1):
            _fail(lineno, "is_seed must be 0 or 1")
        if col < 0 or bt < 0:
            _fail(lineno, "color and birth_time must be non-negative")
        color[i], is_seed[i], birth[i] = col, bool(seed), bt

    eu = np.empty(m, dtype=np.int64)
    ev = np.empty(m, dtype=np.int64)
    et = np.empty(m, dtype=np.uint8)
    prev = (-1, -1)
    for j in range(m):
        lineno = 2 + n + j
        parts = lines[1 + n + j].split(" ")
        if len(parts) != 4 or parts[0] != "E":
            _fail(lineno, f"malformed edge line {lines[1 + n + j]!r}")
        try:
            u, v = int(parts[1]), int(parts[2])
        except ValueError:
            _fail(lineno, f"non-integer endpoint in {lines[1 + n + j]!r}")
        tag = _TAG_BY_NAME.get(parts[3])
        if tag is None:
            _fail(lineno, f"unknown provenance {parts[3]!r}")
        if not (0 <= u < n) or not (0 <= v < n):
            _fail(lineno, f"dangling edge endpoint ({u}, {v}) with n={n}")
        if u >= v:
            _fail(lineno, f"edge endpoints must satisfy u < v, got ({u}, {v})")
        if (u, v) == prev:
            _fail(lineno, f"duplicate edge ({u}, {v})")
        if (u, v) < prev:
            _fail(lineno, f"edge lines not in canonical (u, v) order at ({u}, {v})")
        prev = (u, v)
        eu[j], ev[j], et[j] = u, v, tag
    return LabeledGraph(n, color, is_seed, birth, eu, ev, et)


def save_graph(g: LabeledGraph, path) -> None:
    with open(path, "wb") as fh:
        fh.write(serialize(g))


def load_graph(path) -> LabeledGraph:
    with open(path, "rb") as fh:
        return deserialize(fh.read())
