"""Per-round stochastic cluster-head election and member assignment.

Election follows the rotating-threshold rule: each alive node draws a
uniform value and claims cluster-head duty when the draw falls below a
threshold that rises over the epoch, so every node serves exactly once per
``round(1/p)``-round epoch while it stays alive. The uniform mode then trims
or promotes by residual energy to hit a fixed head count.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import CLUSTERING_UNIFORM, NodeState


def epoch_length(ch_probability: float) -> int:
    """Rounds per election epoch, ``round(1/p)`` and at least 1."""
    _check_probability(ch_probability)
    return max(1, round(1.0 / ch_probability))


def election_threshold(ch_probability: float, round_index: int, eligible: bool) -> float:
    """Probability that an eligible node claims head duty this round.

    Evaluates ``p / (1 - p * (r mod round(1/p)))`` clamped to 1, or 0 for
    nodes outside the eligible set.
    """
    _check_probability(ch_probability)
    if round_index < 0:
        raise ValueError(f"round_index must be >= 0, got {round_index}")
    if not eligible:
        return 0.0
    offset = round_index % epoch_length(ch_probability)
    denominator = 1.0 - ch_probability * offset
    if denominator <= 0.0:
        return 1.0
    return min(1.0, ch_probability / denominator)


def _check_probability(p: float) -> None:
    if not (0.0 < p <= 1.0):
        raise ValueError(f"ch_probability must be in (0, 1], got {p}")


@dataclass(frozen=True)
class ElectionState:
    """Snapshot of the eligible set for one round's election."""

    round_index: int
    ch_probability: float
    epoch: int
    eligible: frozenset[int]

    @classmethod
    def for_round(
        cls, nodes: list[NodeState], ch_probability: float, round_index: int
    ) -> "ElectionState":
        """Eligible set: alive nodes that have not served in the current epoch."""
        epoch = epoch_length(ch_probability)
        epoch_start = (round_index // epoch) * epoch
        eligible = frozenset(
            n.id
            for n in nodes
            if n.alive and (n.last_ch_round is None or n.last_ch_round < epoch_start)
        )
        return cls(round_index, ch_probability, epoch, eligible)


@dataclass
class ClusterAssignment:
    """Elected heads plus the member-to-head map for one round."""

    cluster_heads: list[int]
    member_of: dict[int, int]


def elect_cluster_heads(
    nodes: list[NodeState],
    state: ElectionState,
    clustering: str,
    cluster_count: int,
    rng: np.random.Generator,
) -> list[int]:
    """Run one round's election; returns head ids in ascending order.

    Non-uniform mode keeps whatever the independent draws produce, including
    zero heads. Uniform mode trims an over-election to the ``cluster_count``
    highest-energy heads and fills an under-election by promoting alive
    candidates in descending energy order, preferring eligible nodes; ties
    break toward the lower node id. Every head, elected or promoted, enters
    the cooldown via ``last_ch_round``.
    """
    alive = [n for n in nodes if n.alive]
    if not alive:
        raise ValueError("election requires at least one alive node")
    draws = rng.random(len(alive))
    heads = [
        n
        for n, u in zip(alive, draws)
        if u < election_threshold(state.ch_probability, state.round_index, n.id in state.eligible)
    ]
    if clustering == CLUSTERING_UNIFORM:
        target = min(cluster_count, len(alive))
        if len(heads) > target:
            heads = sorted(heads, key=lambda n: (-n.energy, n.id))[:target]
        elif len(heads) < target:
            chosen = {n.id for n in heads}
            pool = [n for n in alive if n.id not in chosen]
            pool.sort(key=lambda n: (n.id not in state.eligible, -n.energy, n.id))
            heads = heads + pool[: target - len(heads)]
    for n in heads:
        n.last_ch_round = state.round_index
    return sorted(n.id for n in heads)


def assign_members(nodes: list[NodeState], cluster_heads: list[int]) -> ClusterAssignment:
    """Attach every alive non-head node to its nearest head.

    Distance ties break toward the lower head id.
    """
    if not cluster_heads:
        raise ValueError("assign_members requires at least one cluster head")
    heads = sorted(cluster_heads)
    head_set = set(heads)
    by_id = {n.id: n for n in nodes}
    members = [n for n in nodes if n.alive and n.id not in head_set]
    member_of: dict[int, int] = {}
    if members:
        head_xy = np.array([(by_id[h].position.x, by_id[h].position.y) for h in heads])
        member_xy = np.array([(n.position.x, n.position.y) for n in members])
        dists = np.hypot(
            member_xy[:, 0][:, None] - head_xy[:, 0][None, :],
            member_xy[:, 1][:, None] - head_xy[:, 1][None, :],
        )
        nearest = dists.argmin(axis=1)  # first minimum -> lowest head id
        for node, head_idx in zip(members, nearest):
            member_of[node.id] = heads[int(head_idx)]
    return ClusterAssignment(heads, member_of)
