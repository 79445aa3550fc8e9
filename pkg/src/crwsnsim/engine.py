"""The round loop: sensing, election, intra-cluster reporting, the
protocol-dependent head-to-fusion-centre phase, death processing, and
metrics capture.

Each round runs, in order: every alive node senses one bit; heads are
elected and members attach to their nearest head; every member reports its
bit to its head (head pays reception plus aggregation per received bit);
heads then deliver to the fusion centre either directly (baseline) or along
the fusion-centre-oriented spanning tree with a per-head direct-vs-relay
cost decision (proposed); finally nodes that ran out of energy are marked
dead. Deductions floor at zero so the books always balance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import (
    PROTOCOL_BASELINE,
    NodeState,
    ScenarioConfig,
    distance,
    place_nodes,
)
from .energy import link_cost, rx_energy
from .clustering import ClusterAssignment, ElectionState, assign_members, elect_cluster_heads
from .routing import (
    RouteDecision,
    build_adjacency,
    merge_sensing_tables,
    orient_tree,
    prim_mst,
    route_decision,
)


@dataclass
class RoundOutcome:
    """What happened in one round. ``round_index`` is 0-based."""

    round_index: int
    cluster_heads: list[int]
    mst_edges: list[tuple[int, int, float]]
    decisions: list[RouteDecision]
    energy_spent: float
    deaths: list[int]


@dataclass
class MetricsRow:
    """Per-round aggregates. ``round_number`` is 1-based as reported in CSVs."""

    round_number: int
    total_residual: float
    alive: int
    ch_count: int
    first_death_round: int | None


@dataclass
class SimulationResult:
    config: ScenarioConfig
    metrics: list[MetricsRow]
    outcomes: list[RoundOutcome]
    initial_energy: float
    terminated_round: int | None = None  # 1-based round that could not run

    @property
    def final_residual(self) -> float:
        return self.metrics[-1].total_residual if self.metrics else self.initial_energy

    @property
    def final_alive(self) -> int:
        return self.metrics[-1].alive if self.metrics else self.config.n_nodes

    @property
    def first_death_round(self) -> int | None:
        return self.metrics[-1].first_death_round if self.metrics else None


def _drain(node: NodeState, amount: float) -> float:
    """Deduct up to ``amount`` joules, flooring at zero.

    Returns the realized drop (energy before minus energy after), so the
    per-round spend telescopes exactly against the residual energy.
    """
    before = node.energy
    node.energy = before - min(before, amount)
    return before - node.energy


def no_ch_fallback(nodes: list[NodeState], config: ScenarioConfig) -> float:
    """Zero-head round: every alive node sends its bit straight to the FC."""
    alive = [n for n in nodes if n.alive]
    if not alive:
        raise ValueError("fallback requires at least one alive node")
    params = config.energy
    spent = 0.0
    for n in alive:
        spent += _drain(n, link_cost(params, 1, distance(n.position, config.fc_position)))
    return spent


def _member_report_phase(
    nodes: list[NodeState], assignment: ClusterAssignment, config: ScenarioConfig
) -> float:
    params = config.energy
    by_id = {n.id: n for n in nodes}
    spent = 0.0
    for member_id, head_id in assignment.member_of.items():
        member = by_id[member_id]
        head = by_id[head_id]
        spent += _drain(member, link_cost(params, 1, distance(member.position, head.position)))
        spent += _drain(head, rx_energy(params, 1) + params.e_aggregation)
    return spent


def _baseline_head_phase(
    heads: list[NodeState], config: ScenarioConfig, decisions: list[RouteDecision]
) -> float:
    """Every head sends its single aggregated bit directly to the FC."""
    params = config.energy
    spent = 0.0
    for head in heads:
        d_fc = distance(head.position, config.fc_position)
        dec = route_decision(params, 1, d_fc, d_fc, is_root=True, ch_id=head.id)
        decisions.append(dec)
        spent += _drain(head, dec.direct_cost)
    return spent


def _proposed_head_phase(
    heads: list[NodeState],
    config: ScenarioConfig,
    decisions: list[RouteDecision],
) -> tuple[float, list[tuple[int, int, float]]]:
    """Spanning-tree convergecast of the heads' sensing tables.

    Every head transmits once, deepest heads first, carrying the full
    table width (one bit per head). A relaying head charges its parent
    the matching reception cost and the parent merges the incoming table
    before its own transmission.
    """
    params = config.energy
    fc = config.fc_position
    adjacency = build_adjacency([h.position for h in heads])
    edges = prim_mst(adjacency, start=0)
    fc_dists = [distance(h.position, fc) for h in heads]
    tree = orient_tree(len(heads), edges, fc_dists)
    m_bits = len(heads)
    tables = {h.id: {h.id: h.sensed_bit} for h in heads}
    delivered: dict[int, int] = {}
    spent = 0.0
    for idx in tree.order:
        head = heads[idx]
        parent_idx = tree.parents[idx]
        if parent_idx is None:
            dec = route_decision(
                params, m_bits, fc_dists[idx], fc_dists[idx], is_root=True, ch_id=head.id
            )
        else:
            dec = route_decision(
                params,
                m_bits,
                fc_dists[idx],
                float(adjacency[idx, parent_idx]),
                is_root=False,
                ch_id=head.id,
                parent_id=heads[parent_idx].id,
            )
        decisions.append(dec)
        if dec.is_direct:
            spent += _drain(head, dec.direct_cost)
            delivered = merge_sensing_tables(delivered, tables[head.id])
        else:
            spent += _drain(head, dec.relay_cost)
            parent = heads[parent_idx]
            spent += _drain(parent, rx_energy(params, m_bits))
            tables[parent.id] = merge_sensing_tables(tables[parent.id], tables[head.id])
    if len(delivered) != len(heads):
        raise RuntimeError("convergecast did not deliver every head's bit")
    mst_edges = [(heads[i].id, heads[j].id, w) for i, j, w in edges]
    return spent, mst_edges


def run_round(
    nodes: list[NodeState],
    config: ScenarioConfig,
    round_index: int,
    rng: np.random.Generator,
) -> RoundOutcome:
    """Execute one full round, mutating node state in place."""
    alive = [n for n in nodes if n.alive]
    if not alive:
        raise ValueError("run_round requires at least one alive node")

    bits = rng.integers(0, 2, size=len(alive))
    for node, bit in zip(alive, bits):
        node.sensed_bit = int(bit)

    state = ElectionState.for_round(nodes, config.ch_probability, round_index)
    head_ids = elect_cluster_heads(
        nodes, state, config.clustering, config.cluster_count, rng
    )

    spent = 0.0
    decisions: list[RouteDecision] = []
    mst_edges: list[tuple[int, int, float]] = []
    if not head_ids:
        spent += no_ch_fallback(nodes, config)
    else:
        assignment = assign_members(nodes, head_ids)
        spent += _member_report_phase(nodes, assignment, config)
        by_id = {n.id: n for n in nodes}
        heads = [by_id[h] for h in assignment.cluster_heads]
        if config.protocol == PROTOCOL_BASELINE:
            spent += _baseline_head_phase(heads, config, decisions)
        else:
            phase_spent, mst_edges = _proposed_head_phase(heads, config, decisions)
            spent += phase_spent

    deaths = []
    for n in alive:
        if n.energy <= 0.0:
            n.alive = False
            deaths.append(n.id)

    return RoundOutcome(round_index, head_ids, mst_edges, decisions, spent, deaths)


def run_simulation(
    config: ScenarioConfig, nodes: list[NodeState] | None = None
) -> SimulationResult:
    """Run ``config.rounds`` rounds (or until extinction), deterministically.

    Passing ``nodes`` bypasses the seeded uniform placement (and its RNG
    draws); the per-round stream then starts at the generator's origin.
    """
    rng = np.random.default_rng(config.rng_seed)
    if nodes is None:
        nodes = place_nodes(config, rng)
    initial = math.fsum(n.energy for n in nodes)

    metrics: list[MetricsRow] = []
    outcomes: list[RoundOutcome] = []
    first_death: int | None = None
    terminated: int | None = None
    for r in range(config.rounds):
        if not any(n.alive for n in nodes):
            terminated = r + 1
            break
        outcome = run_round(nodes, config, r, rng)
        if first_death is None and outcome.deaths:
            first_death = r + 1
        residual = math.fsum(n.energy for n in nodes if n.alive)
        alive_count = sum(1 for n in nodes if n.alive)
        metrics.append(
            MetricsRow(r + 1, residual, alive_count, len(outcome.cluster_heads), first_death)
        )
        outcomes.append(outcome)
    return SimulationResult(config, metrics, outcomes, initial, terminated)
