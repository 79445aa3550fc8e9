"""Command-line front end: config files, single runs, multi-seed sweeps,
and comparison summaries emitted as CSV.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, replace

import numpy as np

from .model import (
    CLUSTERING_MODES,
    CLUSTERING_NONUNIFORM,
    CLUSTERING_UNIFORM,
    PROTOCOL_BASELINE,
    PROTOCOL_PROPOSED,
    PROTOCOLS,
    EnergyParams,
    Position,
    ScenarioConfig,
)
from .engine import MetricsRow, SimulationResult, run_simulation

CSV_HEADER = "round,protocol,clustering,seed,total_residual_j,alive,ch_count"

SUMMARY_HEADER = (
    "variant,mean_final_residual_j,stddev_final_residual_j,"
    "mean_final_alive,mean_first_death_round"
)


class ConfigError(ValueError):
    """Configuration problem, optionally tied to a config-file line."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None and column is not None:
            message = f"line {line}, column {column}: {message}"
        elif line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def _parse_protocol(text: str) -> str:
    value = text.strip().lower()
    if value not in PROTOCOLS:
        raise ValueError(f"expected one of {'/'.join(PROTOCOLS)}, got {text!r}")
    return value


def _parse_clustering(text: str) -> str:
    value = text.strip().lower()
    if value not in CLUSTERING_MODES:
        raise ValueError(f"expected one of {'/'.join(CLUSTERING_MODES)}, got {text!r}")
    return value


# config-file key -> (destination attribute, value parser)
_KEY_SPECS: dict[str, tuple[str, object]] = {
    "nodes": ("n_nodes", int),
    "rounds": ("rounds", int),
    "p": ("ch_probability", float),
    "seed": ("rng_seed", int),
    "protocol": ("protocol", _parse_protocol),
    "clustering": ("clustering", _parse_clustering),
    "k": ("cluster_count", int),
    "field_width": ("field_width", float),
    "field_height": ("field_height", float),
    "fc_x": ("fc_x", float),
    "fc_y": ("fc_y", float),
    "advanced_fraction": ("advanced_fraction", float),
    "advanced_energy_factor": ("advanced_energy_factor", float),
    "initial_energy": ("energy.initial_energy", float),
    "e_tx": ("energy.e_tx", float),
    "e_aggregation": ("energy.e_aggregation", float),
    "e_rx": ("energy.e_rx", float),
    "e_fs": ("energy.e_fs", float),
    "e_mp": ("energy.e_mp", float),
    "e_elec": ("energy.e_elec", float),
    "e_prop": ("energy.e_prop", float),
    "path_loss": ("energy.path_loss", float),
}

_ATTR_TO_KEY = {attr.split(".")[-1]: key for key, (attr, _) in _KEY_SPECS.items()}
_ATTR_TO_KEY["ch_probability"] = "p"
_ATTR_TO_KEY["n_nodes"] = "nodes"
_ATTR_TO_KEY["rng_seed"] = "seed"
_ATTR_TO_KEY["cluster_count"] = "k"


def _build_config(values: dict[str, object], lines: dict[str, int]) -> ScenarioConfig:
    scenario: dict[str, object] = {}
    energy: dict[str, float] = {}
    fc: dict[str, float] = {}
    for key, value in values.items():
        attr = _KEY_SPECS[key][0]
        if attr.startswith("energy."):
            energy[attr.split(".", 1)[1]] = value  # type: ignore[assignment]
        elif attr in ("fc_x", "fc_y"):
            fc[attr] = value  # type: ignore[assignment]
        else:
            scenario[attr] = value
    try:
        params = EnergyParams(**energy) if energy else EnergyParams()
        default_fc = ScenarioConfig.__dataclass_fields__["fc_position"].default
        position = Position(
            fc.get("fc_x", default_fc.x), fc.get("fc_y", default_fc.y)
        )
        return ScenarioConfig(fc_position=position, energy=params, **scenario)
    except ValueError as err:
        message = str(err)
        attr = message.split()[0]
        key = _ATTR_TO_KEY.get(attr)
        if key is not None:
            message = key + message[len(attr):]
            raise ConfigError(message, line=lines.get(key)) from err
        raise ConfigError(message) from err


def parse_config(text: str) -> ScenarioConfig:
    """Parse flat ``key = value`` text; ``#`` starts a comment.

    Unknown or duplicate keys and out-of-range values are rejected with the
    offending line number; omitted keys keep their defaults.
    """
    values: dict[str, object] = {}
    lines: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            column = len(raw) - len(raw.lstrip()) + 1
            raise ConfigError(
                f"expected 'key = value', got {stripped!r}", line=lineno, column=column
            )
        key, _, value_text = stripped.partition("=")
        key = key.strip()
        value_text = value_text.strip()
        if key not in _KEY_SPECS:
            raise ConfigError(f"unknown key {key!r}", line=lineno)
        if key in values:
            raise ConfigError(f"duplicate key {key!r}", line=lineno)
        parser = _KEY_SPECS[key][1]
        try:
            values[key] = parser(value_text)  # type: ignore[operator]
        except ValueError as err:
            raise ConfigError(f"invalid value for {key!r}: {err}", line=lineno) from err
        lines[key] = lineno
    return _build_config(values, lines)


def _fmt(value: float) -> str:
    """17 significant digits: parses back to the same float."""
    return format(value, ".16e")


def config_echo_lines(config: ScenarioConfig, seeds: list[int]) -> list[str]:
    """Comment lines restating every effective parameter, config-file syntax."""
    e = config.energy
    pairs = [
        ("protocol", config.protocol),
        ("clustering", config.clustering),
        ("k", config.cluster_count),
        ("nodes", config.n_nodes),
        ("rounds", config.rounds),
        ("p", repr(config.ch_probability)),
        ("field_width", repr(config.field_width)),
        ("field_height", repr(config.field_height)),
        ("fc_x", repr(config.fc_position.x)),
        ("fc_y", repr(config.fc_position.y)),
        ("advanced_fraction", repr(config.advanced_fraction)),
        ("advanced_energy_factor", repr(config.advanced_energy_factor)),
        ("initial_energy", repr(e.initial_energy)),
        ("e_tx", repr(e.e_tx)),
        ("e_aggregation", repr(e.e_aggregation)),
        ("e_rx", repr(e.e_rx)),
        ("e_fs", repr(e.e_fs)),
        ("e_mp", repr(e.e_mp)),
        ("e_elec", repr(e.e_elec)),
        ("e_prop", repr(e.e_prop)),
        ("path_loss", repr(e.path_loss)),
    ]
    out = [f"# {key} = {value}" for key, value in pairs]
    out.append(f"# seeds = {','.join(str(s) for s in seeds)}")
    return out


def render_run_csv(config: ScenarioConfig, seeds: list[int]) -> tuple[str, list[SimulationResult]]:
    """Run every seed and render the per-round CSV (rows grouped by seed)."""
    chunks = config_echo_lines(config, seeds)
    chunks.append(CSV_HEADER)
    results = []
    for seed in seeds:
        result = run_simulation(replace(config, rng_seed=seed))
        results.append(result)
        for row in result.metrics:
            chunks.append(
                f"{row.round_number},{config.protocol},{config.clustering},{seed},"
                f"{_fmt(row.total_residual)},{row.alive},{row.ch_count}"
            )
    return "\n".join(chunks) + "\n", results


@dataclass
class MetricsSeries:
    """One seed's rows recovered from an emitted per-round CSV."""

    protocol: str
    clustering: str
    seed: int
    rows: list[MetricsRow]


def read_metrics_csv(text: str) -> tuple[dict[str, str], list[MetricsSeries]]:
    """Parse per-round CSV output back into parameters and metrics rows.

    ``first_death_round`` is reconstructed from the alive column and the
    echoed node count.
    """
    params: dict[str, str] = {}
    series: list[MetricsSeries] = []
    header_seen = False
    for raw in text.splitlines():
        if not raw.strip():
            continue
        if raw.startswith("#"):
            body = raw[1:].strip()
            if "=" in body:
                key, _, value = body.partition("=")
                params[key.strip()] = value.strip()
            continue
        if not header_seen:
            if raw != CSV_HEADER:
                raise ValueError(f"unexpected CSV header: {raw!r}")
            header_seen = True
            continue
        parts = raw.split(",")
        if len(parts) != 7:
            raise ValueError(f"malformed CSV row: {raw!r}")
        round_number = int(parts[0])
        protocol, clustering, seed = parts[1], parts[2], int(parts[3])
        residual, alive, ch_count = float(parts[4]), int(parts[5]), int(parts[6])
        if not series or series[-1].seed != seed or round_number == 1:
            series.append(MetricsSeries(protocol, clustering, seed, []))
        current = series[-1]
        previous_alive = (
            current.rows[-1].alive if current.rows else int(params.get("nodes", alive))
        )
        previous_death = current.rows[-1].first_death_round if current.rows else None
        first_death = previous_death
        if first_death is None and alive < previous_alive:
            first_death = round_number
        current.rows.append(MetricsRow(round_number, residual, alive, ch_count, first_death))
    return params, series


_COMPARE_VARIANTS = (
    ("baseline", PROTOCOL_BASELINE, CLUSTERING_NONUNIFORM),
    ("proposed_uniform", PROTOCOL_PROPOSED, CLUSTERING_UNIFORM),
    ("proposed_nonuniform", PROTOCOL_PROPOSED, CLUSTERING_NONUNIFORM),
)


def summarize_variants(
    config: ScenarioConfig, seeds: list[int]
) -> dict[str, dict[str, float]]:
    """Run all three protocol variants over the seeds and aggregate.

    Runs that never lose a node contribute ``rounds + 1`` to the mean
    first-death round (right-censored).
    """
    summary: dict[str, dict[str, float]] = {}
    for name, protocol, clustering in _COMPARE_VARIANTS:
        finals, alives, deaths = [], [], []
        for seed in seeds:
            result = run_simulation(
                replace(config, protocol=protocol, clustering=clustering, rng_seed=seed)
            )
            finals.append(result.final_residual)
            alives.append(float(result.final_alive))
            fd = result.first_death_round
            deaths.append(float(fd) if fd is not None else float(config.rounds + 1))
        summary[name] = {
            "mean_final_residual_j": float(np.mean(finals)),
            "stddev_final_residual_j": float(np.std(finals)),
            "mean_final_alive": float(np.mean(alives)),
            "mean_first_death_round": float(np.mean(deaths)),
        }
    return summary


def render_compare_csv(config: ScenarioConfig, seeds: list[int]) -> str:
    summary = summarize_variants(config, seeds)
    chunks = config_echo_lines(config, seeds)
    chunks.append(SUMMARY_HEADER)
    for name, _, _ in _COMPARE_VARIANTS:
        s = summary[name]
        chunks.append(
            f"{name},{_fmt(s['mean_final_residual_j'])},{_fmt(s['stddev_final_residual_j'])},"
            f"{_fmt(s['mean_final_alive'])},{_fmt(s['mean_first_death_round'])}"
        )
    baseline = summary["baseline"]
    uniform = summary["proposed_uniform"]
    nonuniform = summary["proposed_nonuniform"]
    ratios = [
        (
            "ratio_residual_proposed_uniform_over_baseline",
            uniform["mean_final_residual_j"] / baseline["mean_final_residual_j"],
        ),
        (
            "ratio_residual_proposed_uniform_over_proposed_nonuniform",
            uniform["mean_final_residual_j"] / nonuniform["mean_final_residual_j"],
        ),
        (
            "ratio_alive_proposed_uniform_over_baseline",
            uniform["mean_final_alive"] / baseline["mean_final_alive"],
        ),
    ]
    for name, value in ratios:
        chunks.append(f"{name},{_fmt(value)},,,")
    return "\n".join(chunks) + "\n"


def _parse_seed_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError as err:
        raise ConfigError(f"invalid --seeds list {text!r}: {err}") from err


def _effective_config(ns: argparse.Namespace) -> ScenarioConfig:
    """Defaults, overlaid by the config file, overlaid by command-line flags."""
    if ns.config is not None:
        try:
            with open(ns.config, "r", encoding="utf-8") as handle:
                config = parse_config(handle.read())
        except OSError as err:
            raise ConfigError(f"cannot read config file {ns.config!r}: {err}") from err
    else:
        config = ScenarioConfig()
    overrides: dict[str, object] = {}
    for flag, attr in (
        ("protocol", "protocol"),
        ("clustering", "clustering"),
        ("k", "cluster_count"),
        ("rounds", "rounds"),
        ("seed", "rng_seed"),
    ):
        value = getattr(ns, flag, None)
        if value is not None:
            overrides[attr] = value
    try:
        return replace(config, **overrides) if overrides else config
    except ValueError as err:
        message = str(err)
        attr = message.split()[0]
        key = _ATTR_TO_KEY.get(attr)
        if key is not None:
            message = key + message[len(attr):]
        raise ConfigError(message) from err


def _seeds_for(ns: argparse.Namespace, config: ScenarioConfig) -> list[int]:
    if getattr(ns, "seeds", None) is not None:
        if getattr(ns, "seed", None) is not None:
            raise ConfigError("--seed and --seeds are mutually exclusive")
        seeds = _parse_seed_list(ns.seeds)
        if not seeds:
            raise ConfigError("--seeds must list at least one seed")
        return seeds
    return [config.rng_seed]


def _write_output(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
        return
    try:
        with open(out_path, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    except OSError as err:
        raise ConfigError(f"cannot write output path {out_path!r}: {err}") from err


def run_command(ns: argparse.Namespace) -> int:
    config = _effective_config(ns)
    seeds = _seeds_for(ns, config)
    text, _ = render_run_csv(config, seeds)
    _write_output(text, ns.out)
    return 0


def compare_command(ns: argparse.Namespace) -> int:
    config = _effective_config(ns)
    seeds = _seeds_for(ns, config)
    text = render_compare_csv(config, seeds)
    _write_output(text, ns.out)
    return 0


def _add_shared_flags(parser: argparse.ArgumentParser, with_protocol: bool) -> None:
    if with_protocol:
        parser.add_argument("--protocol", choices=PROTOCOLS)
        parser.add_argument("--clustering", choices=CLUSTERING_MODES)
    parser.add_argument("--k", type=int, help="uniform-mode cluster count (default 10)")
    parser.add_argument("--rounds", type=int)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--seeds", help="comma-separated seed list")
    parser.add_argument("--config", help="flat key = value config file")
    parser.add_argument("--out", help="output CSV path (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crwsnsim",
        description="Round-based cluster/relay reporting simulator for "
        "spectrum-sensing sensor networks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    run_parser = sub.add_parser("run", help="simulate one variant, emit per-round CSV")
    _add_shared_flags(run_parser, with_protocol=True)
    run_parser.set_defaults(func=run_command)
    compare_parser = sub.add_parser(
        "compare", help="run all three variants over a seed list, emit summary CSV"
    )
    _add_shared_flags(compare_parser, with_protocol=False)
    compare_parser.set_defaults(func=compare_command)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exit_:  # argparse already reported to stderr
        return int(exit_.code or 0)
    try:
        return ns.func(ns)
    except ConfigError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
