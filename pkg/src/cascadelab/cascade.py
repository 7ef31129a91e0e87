"""Threshold-cascade semantics, physical attacks, and security thresholds.

The cascade model: every node x has a threshold phi(x) in (0, 1]; a node
outside the initial attack set becomes infected once the infected fraction
of its neighbors reaches phi(x).  Because infection is monotone, the final
set is the least fixed point and does not depend on update order; the
implementation propagates round-synchronously with vectorized frontier
expansion, O(m) work per cascade.

Fraction comparisons are exact: per node we precompute the least integer
count k with k/deg >= phi (in IEEE double semantics), so the engine agrees
bit-for-bit with a naive rescan that compares fractions directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .graph import LabeledGraph, largest_connected_component
from .seeding import rng_from
from .structure import Community, communities


@dataclass(frozen=True)
class ThresholdAssignment:
    """Per-node thresholds phi in (0, 1] plus the uninfectable flags.

    Degree-0 nodes under random thresholds have no defined threshold
    (r uniform on an empty set); they are marked uninfectable and never
    join an infection set unless attacked directly.
    """

    phi: np.ndarray
    uninfectable: np.ndarray

    def __post_init__(self):
        if self.phi.shape != self.uninfectable.shape:
            raise ValueError("phi and uninfectable must have equal length")


def uniform_thresholds(g: LabeledGraph, phi: float) -> ThresholdAssignment:
    """The same threshold phi for every node; requires 0 < phi <= 1."""
    if not 0.0 < phi <= 1.0:
        raise ValueError(f"uniform threshold must be in (0, 1], got {phi}")
    return ThresholdAssignment(
        np.full(g.n, float(phi)), np.zeros(g.n, dtype=bool))


def random_thresholds(g: LabeledGraph, trial_seed: int = 0) -> ThresholdAssignment:
    """phi(v) = r / deg(v) with r uniform on {1, ..., deg(v)}.

    Deterministic in trial_seed.  Degree-0 nodes are uninfectable.
    """
    deg = g.degrees
    rng = rng_from(trial_seed, "random-thresholds")
    # one draw per node regardless of degree keeps the stream layout fixed
    r = rng.integers(1, np.maximum(deg, 1) + 1)
    uninfectable = deg == 0
    phi = np.where(uninfectable, 1.0, r / np.maximum(deg, 1))
    return ThresholdAssignment(phi, uninfectable)


@dataclass(frozen=True)
class CascadeOutcome:
    """Final infection set plus the per-round growth trace.

    growth[0] is the attack-set size; each later entry is the number of
    nodes newly infected in that propagation round (all positive).
    rounds == len(growth) - 1 is the number of spreading rounds.
    """

    infected: np.ndarray
    rounds: int
    growth: tuple[int, ...]
    num_nodes: int

    @property
    def fraction(self) -> float:
        return self.infected.shape[0] / self.num_nodes if self.num_nodes else 0.0


def _as_node_array(s, n: int) -> np.ndarray:
    arr = np.asarray(sorted(set(int(x) for x in s)), dtype=np.int64)
    if arr.size and (arr[0] < 0 or arr[-1] >= n):
        raise IndexError("attack set contains out-of-range node ids")
    return arr


def _need_counts(g: LabeledGraph, theta: ThresholdAssignment) -> np.ndarray:
    """Least k with k/deg >= phi under float comparison; deg+1 sentinel is
    never needed because phi <= 1 always admits k = deg.  Degree-0 and
    uninfectable nodes get 1, which their count (0) can never reach."""
    deg = g.degrees
    if theta.phi.shape[0] != g.n:
        raise ValueError("threshold assignment does not match graph size")
    phi = theta.phi
    k = np.ceil(phi * deg).astype(np.int64)
    k = np.maximum(k, 1)
    pos = deg > 0
    safe_deg = np.maximum(deg, 1)
    # ceil() can land one step off after float rounding; nudge both ways
    down = pos & (k > 1) & ((k - 1) / safe_deg >= phi)
    k[down] -= 1
    up = pos & (k / safe_deg < phi)
    k[up] += 1
    k[~pos] = 1
    k[theta.uninfectable] = np.iinfo(np.int64).max
    return k


def _gather_neighbors(indptr, indices, frontier) -> np.ndarray:
    """All neighbors of the frontier nodes, concatenated (with repeats)."""
    starts = indptr[frontier]
    lens = indptr[frontier + 1] - starts
    total = int(lens.sum())
    if total == 0:
        return np.empty(0, dtype=indices.dtype)
    cum = np.cumsum(lens)
    shift = np.repeat(starts - (cum - lens), lens)
    return indices[np.arange(total, dtype=np.int64) + shift]


def infection_set(g: LabeledGraph, s, theta: ThresholdAssignment) -> CascadeOutcome:
    """Least fixed point of threshold infection starting from attack set s.

    Round-synchronous propagation; the final set is order-independent
    because the dynamics are monotone.
    """
    attack = _as_node_array(s, g.n)
    infected = np.zeros(g.n, dtype=bool)
    infected[attack] = True
    growth = [int(attack.size)]
    if attack.size:
        indptr, indices = g.adjacency()
        need = _need_counts(g, theta)
        cnt = np.zeros(g.n, dtype=np.int64)
        frontier = attack
        while frontier.size:
            nbrs = _gather_neighbors(indptr, indices, frontier)
            if nbrs.size == 0:
                break
            if nbrs.size >= g.n // 4:
                cnt += np.bincount(nbrs, minlength=g.n)
            else:
                np.add.at(cnt, nbrs, 1)
            cand = np.unique(nbrs)
            newly = cand[(~infected[cand]) & (cnt[cand] >= need[cand])]
            if newly.size == 0:
                break
            infected[newly] = True
            growth.append(int(newly.size))
            frontier = newly
    return CascadeOutcome(
        infected=np.flatnonzero(infected).astype(np.int64),
        rounds=len(growth) - 1,
        growth=tuple(growth),
        num_nodes=g.n,
    )


def injury_set(g: LabeledGraph, s) -> np.ndarray:
    """Survivors disconnected from the largest component after deleting s.

    The deleted nodes themselves are not counted as injured.  Returns a
    sorted int64 array.
    """
    attack = _as_node_array(s, g.n)
    lcc = largest_connected_component(g, excluded=attack)
    injured = np.ones(g.n, dtype=bool)
    injured[attack] = False
    injured[lcc] = False
    return np.flatnonzero(injured).astype(np.int64)


def top_degree_nodes(g: LabeledGraph, k: int) -> np.ndarray:
    """The k highest-degree nodes, ties broken toward smaller ids (sorted)."""
    if not 0 <= k <= g.n:
        raise ValueError(f"k must be in [0, n], got {k}")
    order = np.lexsort((np.arange(g.n), -g.degrees))
    return np.sort(order[:k]).astype(np.int64)


def security_threshold(g: LabeledGraph, s, grid, epsilon: float):
    """Smallest phi in grid whose uniform-threshold cascade from s infects
    at most epsilon * n nodes; None when no grid value qualifies.

    grid must be sorted ascending with values in (0, 1]; 0 < epsilon < 1.
    """
    grid = [float(x) for x in grid]
    if not grid:
        raise ValueError("phi grid must not be empty")
    if any(not 0.0 < x <= 1.0 for x in grid):
        raise ValueError("phi grid values must lie in (0, 1]")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("phi grid must be strictly ascending")
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"epsilon must be in (0, 1), got {epsilon}")
    attack = _as_node_array(s, g.n)
    budget = epsilon * g.n
    for phi in grid:
        outcome = infection_set(g, attack, uniform_thresholds(g, phi))
        if outcome.infected.shape[0] <= budget:
            return phi
    return None


class CommunityStrength(Enum):
    STRONG = "strong"
    VULNERABLE = "vulnerable"


def _classify(g: LabeledGraph, x: Community, theta: ThresholdAssignment,
              need: np.ndarray) -> CommunityStrength:
    """Localized cascade: every node outside X starts infected (and stays),
    members of X start healthy with their external-neighbor counts
    preloaded; propagate inside X only.  Equivalent to running
    infection_set(g, V \\ X, theta) and inspecting the seed."""
    indptr, indices = g.adjacency()
    member_mask = np.zeros(g.n, dtype=bool)
    member_mask[x.members] = True
    deg = g.degrees
    members = x.members
    nbrs = _gather_neighbors(indptr, indices, members)
    lens = indptr[members + 1] - indptr[members]
    owner = np.repeat(np.arange(members.shape[0]), lens)
    internal = np.bincount(owner[member_mask[nbrs]],
                           minlength=members.shape[0])
    cnt = np.zeros(g.n, dtype=np.int64)
    cnt[members] = deg[members] - internal  # external neighbors, all infected
    infected = np.zeros(g.n, dtype=bool)
    frontier = members[cnt[members] >= need[members]]
    infected[frontier] = True
    while frontier.size:
        nbrs = _gather_neighbors(indptr, indices, frontier)
        if nbrs.size == 0:
            break
        inside = nbrs[member_mask[nbrs]]
        if inside.size == 0:
            break
        np.add.at(cnt, inside, 1)
        cand = np.unique(inside)
        newly = cand[(~infected[cand]) & (cnt[cand] >= need[cand])]
        if newly.size == 0:
            break
        infected[newly] = True
        frontier = newly
    return (CommunityStrength.VULNERABLE if infected[x.seed]
            else CommunityStrength.STRONG)


def classify_community(g: LabeledGraph, x: Community,
                       theta: ThresholdAssignment) -> CommunityStrength:
    """STRONG iff the community's seed stays uninfected when every node
    outside the community is infected and infection propagates inside.

    Raises ValueError when x is not homochromatic or its seed is wrong.
    """
    members = np.asarray(x.members, dtype=np.int64)
    if members.size == 0:
        raise ValueError("community has no members")
    cols = g.color[members]
    if not (cols == cols[0]).all():
        raise ValueError("community members are not homochromatic")
    if x.seed not in set(int(v) for v in members):
        raise ValueError("community seed is not a member")
    if not g.is_seed[x.seed]:
        raise ValueError(f"node {x.seed} is not flagged as a seed")
    return _classify(g, x, theta, _need_counts(g, theta))


def count_vulnerable(g: LabeledGraph, theta: ThresholdAssignment) -> int:
    """Number of vulnerable communities under the given thresholds."""
    need = _need_counts(g, theta)
    return sum(
        1 for x in communities(g)
        if _classify(g, x, theta, need) is CommunityStrength.VULNERABLE
    )
