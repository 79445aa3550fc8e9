"""Domain types, scenario configuration, and deterministic node placement."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

PROTOCOL_BASELINE = "baseline"
PROTOCOL_PROPOSED = "proposed"
PROTOCOLS = (PROTOCOL_BASELINE, PROTOCOL_PROPOSED)

CLUSTERING_UNIFORM = "uniform"
CLUSTERING_NONUNIFORM = "nonuniform"
CLUSTERING_MODES = (CLUSTERING_UNIFORM, CLUSTERING_NONUNIFORM)


@dataclass(frozen=True)
class Position:
    """A point in the deployment field, metres."""

    x: float
    y: float


def distance(a: Position, b: Position) -> float:
    """Euclidean distance between two positions, metres."""
    return math.hypot(a.x - b.x, a.y - b.y)


class NodeKind(Enum):
    NORMAL = "normal"
    ADVANCED = "advanced"


@dataclass
class NodeState:
    """Mutable per-sensor state carried across rounds.

    ``last_ch_round`` records the most recent round (0-based) in which the
    node served as a cluster head; it drives the election cooldown.
    """

    id: int
    position: Position
    kind: NodeKind
    energy: float
    alive: bool = True
    last_ch_round: int | None = None
    sensed_bit: int = 0


@dataclass(frozen=True)
class EnergyParams:
    """Radio energy constants. Joules per bit unless noted otherwise."""

    initial_energy: float = 0.5       # J per normal node
    e_tx: float = 50e-9               # transmit electronics
    e_aggregation: float = 5e-9       # data aggregation
    e_rx: float = 50e-9               # receive electronics
    e_fs: float = 10e-12              # free-space amplifier, J/bit/m^2
    e_mp: float = 0.0013e-12          # multipath amplifier, J/bit/m^4
    e_elec: float = 50e-9             # electronics constant of the linear model
    e_prop: float = 10e-12            # propagation constant of the linear model, J/m
    path_loss: float = 0.3            # path-loss factor of the linear model

    def __post_init__(self) -> None:
        for name in (
            "initial_energy", "e_tx", "e_aggregation", "e_rx", "e_fs",
            "e_mp", "e_elec", "e_prop", "path_loss",
        ):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0.0):
                raise ValueError(f"{name} must be a positive finite number, got {value!r}")


@dataclass(frozen=True)
class ScenarioConfig:
    """Everything needed to reproduce one simulation run."""

    n_nodes: int = 100
    field_width: float = 100.0
    field_height: float = 100.0
    fc_position: Position = Position(50.0, 50.0)
    ch_probability: float = 0.1
    rounds: int = 1500
    protocol: str = PROTOCOL_BASELINE
    clustering: str = CLUSTERING_NONUNIFORM
    cluster_count: int = 10
    advanced_fraction: float = 0.0
    advanced_energy_factor: float = 0.0
    rng_seed: int = 42
    energy: EnergyParams = field(default_factory=EnergyParams)

    def __post_init__(self) -> None:
        if self.n_nodes < 1:
            raise ValueError(f"n_nodes must be >= 1, got {self.n_nodes}")
        for name in ("field_width", "field_height"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0.0):
                raise ValueError(f"{name} must be positive, got {value!r}")
        if not (0.0 < self.ch_probability <= 1.0):
            raise ValueError(f"ch_probability must be in (0, 1], got {self.ch_probability}")
        if self.rounds < 0:
            raise ValueError(f"rounds must be >= 0, got {self.rounds}")
        if self.protocol not in PROTOCOLS:
            raise ValueError(f"protocol must be one of {PROTOCOLS}, got {self.protocol!r}")
        if self.clustering not in CLUSTERING_MODES:
            raise ValueError(
                f"clustering must be one of {CLUSTERING_MODES}, got {self.clustering!r}"
            )
        if self.clustering == CLUSTERING_UNIFORM:
            if not (1 <= self.cluster_count <= self.n_nodes):
                raise ValueError(
                    f"cluster_count must be in [1, n_nodes], got {self.cluster_count}"
                )
            if self.ch_probability * self.n_nodes < 1.0:
                raise ValueError(
                    "ch_probability * n_nodes must be >= 1 for uniform clustering, "
                    f"got {self.ch_probability * self.n_nodes}"
                )
        if not (0.0 <= self.advanced_fraction <= 1.0):
            raise ValueError(
                f"advanced_fraction must be in [0, 1], got {self.advanced_fraction}"
            )
        if self.advanced_energy_factor < 0.0:
            raise ValueError(
                f"advanced_energy_factor must be >= 0, got {self.advanced_energy_factor}"
            )


def place_nodes(config: ScenarioConfig, rng: np.random.Generator) -> list[NodeState]:
    """Place ``n_nodes`` sensors i.i.d. uniformly over the field.

    The first ``floor(advanced_fraction * n_nodes)`` node ids are advanced
    nodes with initial energy scaled by ``1 + advanced_energy_factor``.
    Identical (config, generator state) gives an identical node list.
    """
    xs = rng.uniform(0.0, config.field_width, config.n_nodes)
    ys = rng.uniform(0.0, config.field_height, config.n_nodes)
    n_advanced = int(config.advanced_fraction * config.n_nodes)
    base = config.energy.initial_energy
    nodes = []
    for i in range(config.n_nodes):
        advanced = i < n_advanced
        nodes.append(
            NodeState(
                id=i,
                position=Position(float(xs[i]), float(ys[i])),
                kind=NodeKind.ADVANCED if advanced else NodeKind.NORMAL,
                energy=base * (1.0 + config.advanced_energy_factor) if advanced else base,
            )
        )
    return nodes
