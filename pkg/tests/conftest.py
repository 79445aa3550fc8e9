import pytest

from crwsnsim import ScenarioConfig, run_simulation

SWEEP_SEEDS = tuple(range(20))

SWEEP_VARIANTS = {
    "baseline": ("baseline", "nonuniform"),
    "proposed_uniform": ("proposed", "uniform"),
    "proposed_nonuniform": ("proposed", "nonuniform"),
}


@pytest.fixture(scope="session")
def default_sweep():
    """All three protocol variants over 20 paired seeds at the defaults.

    Shared session-wide: the acceptance criteria and the paired-seed CLI
    checks all read from this one 60-run sweep.
    """
    results = {}
    for name, (protocol, clustering) in SWEEP_VARIANTS.items():
        results[name] = [
            run_simulation(
                ScenarioConfig(protocol=protocol, clustering=clustering, rng_seed=seed)
            )
            for seed in SWEEP_SEEDS
        ]
    return results
