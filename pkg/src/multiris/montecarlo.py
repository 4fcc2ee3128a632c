"""Seeded Monte Carlo experiments over random line-of-sight scenarios.

A single experiment draws independent scenarios, programs each one
optimally under the requested channel model, and aggregates the
resulting gains.  Reproducibility is exact and parallel-safe: trial t of
an experiment with master seed s always uses the stream seed
derive_seed(s, t), results are placed by trial index, and sums are
compensated, so the statistics are bit-identical for any worker count.

Sweeps over a grid of cascade sizes reuse the same machinery with one
derived master seed per grid cell, derive_seed(s, L, N), which makes
every cell independent of the grid it is embedded in.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .los import derive_seed, sample_los_links, _normalize_path_gains
from .network import SystemTopology
from .optimize import (
    delta_theory,
    expected_gain_physics,
    gain_conventional,
    optimize_conventional,
    optimize_physics,
)

MODELS = ("physics", "conventional")


@dataclass(frozen=True)
class ExperimentSpec:
    """Full description of one Monte Carlo gain experiment.

    Fields:
        topology: cascade layout under test.
        model: 'physics', 'conventional', or 'both' (paired trials).
        trials: number of independent scenarios (>= 1).
        master_seed: 64-bit seed all trial streams derive from.
        path_gains: None, scalar, or per-link values; see sample_los_links.
    """

    topology: SystemTopology
    model: str
    trials: int
    master_seed: int
    path_gains: object = None

    def __post_init__(self):
        if self.model not in MODELS + ("both",):
            raise ValueError(
                f"model must be one of {MODELS + ('both',)}, got {self.model!r}"
            )
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if self.path_gains is not None and not np.isscalar(self.path_gains):
            object.__setattr__(
                self, "path_gains", tuple(float(g) for g in self.path_gains)
            )
        # validates shape and sign once, up front
        _normalize_path_gains(self.topology, self.path_gains)

    def requested_models(self) -> tuple:
        return MODELS if self.model == "both" else (self.model,)

    def total_path_gain(self) -> float:
        g_tx, g_inter, g_rx = _normalize_path_gains(self.topology, self.path_gains)
        return float(g_tx * np.prod(g_inter) * g_rx)


@dataclass(frozen=True)
class GainStats:
    """Aggregated gain statistics of one experiment arm."""

    mean_gain: float
    std_error: float
    trials: int
    theory_gain: float
    relative_deviation: float


_OPTIMIZERS = {"physics": optimize_physics, "conventional": optimize_conventional}


def trial_seed(master_seed: int, trial: int) -> int:
    """Stream seed of one trial; exposed so single trials can be replayed."""
    return derive_seed(master_seed, trial)


def _trial_block(payload) -> tuple:
    """Gains for a contiguous trial range; runs in worker processes."""
    topology, path_gains, master_seed, start, stop, models = payload
    out = [np.empty(stop - start) for _ in models]
    for t in range(start, stop):
        links = sample_los_links(
            topology, path_gains, seed=trial_seed(master_seed, t)
        )
        for k, model in enumerate(models):
            out[k][t - start] = _OPTIMIZERS[model](links).gain
    return start, out


def _collect_gains(spec: ExperimentSpec, workers: int) -> dict:
    """Per-trial gains for every requested model, indexed by trial."""
    models = spec.requested_models()
    gains = {m: np.empty(spec.trials) for m in models}
    if workers <= 1 or spec.trials == 1:
        _, blocks = _trial_block(
            (spec.topology, spec.path_gains, spec.master_seed, 0, spec.trials, models)
        )
        for k, m in enumerate(models):
            gains[m][:] = blocks[k]
        return gains
    bounds = np.linspace(0, spec.trials, workers + 1).astype(int)
    payloads = [
        (spec.topology, spec.path_gains, spec.master_seed, int(a), int(b), models)
        for a, b in zip(bounds[:-1], bounds[1:])
        if b > a
    ]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for start, blocks in pool.map(_trial_block, payloads):
            for k, m in enumerate(models):
                gains[m][start : start + len(blocks[k])] = blocks[k]
    return gains


def _mean_and_se(values: np.ndarray) -> tuple:
    """Compensated mean and standard error, exact zeros for a constant sample."""
    n = len(values)
    if float(np.max(values)) == float(np.min(values)):
        # constant sample: the mean is that value and the spread is exactly 0
        return float(values[0]), 0.0
    mean = math.fsum(values) / n
    if n == 1:
        return mean, 0.0
    var = math.fsum((v - mean) ** 2 for v in values) / (n - 1)
    return mean, math.sqrt(var / n)


def _resolve_workers(workers) -> int:
    if workers is None:
        return 1
    w = int(workers)
    if w < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    return w


def _theory_gain(model: str, spec: ExperimentSpec) -> float:
    lam = spec.total_path_gain()
    topo = spec.topology
    if model == "physics":
        return expected_gain_physics(topo.num_ris, topo.elements_per_ris, lam)
    return gain_conventional(topo.num_ris, topo.elements_per_ris, lam)


def run_gain_experiment(spec: ExperimentSpec, workers=None) -> dict:
    """Run the experiment and return GainStats per requested model.

    With model='both' the two arms share every trial's scenario, so their
    statistics are paired.  The result is bit-identical for any worker
    count; workers only affect wall time.

    Returns:
        dict mapping model name to GainStats.
    """
    gains = _collect_gains(spec, _resolve_workers(workers))
    out = {}
    for model, values in gains.items():
        mean, se = _mean_and_se(values)
        theory = _theory_gain(model, spec)
        deviation = math.nan if theory == 0.0 else mean / theory - 1.0
        out[model] = GainStats(
            mean_gain=mean,
            std_error=se,
            trials=spec.trials,
            theory_gain=theory,
            relative_deviation=deviation,
        )
    return out


def delta_empirical(spec: ExperimentSpec, workers=None) -> float:
    """Paired-sample estimate of the relative gain advantage.

    Requires model='both'; both arms see identical scenarios, so the
    conventional arm is the exact deterministic baseline of the same
    draws that produced the physics mean.
    """
    if spec.model != "both":
        raise ValueError("delta_empirical requires model='both'")
    stats = run_gain_experiment(spec, workers=workers)
    baseline = stats["conventional"].mean_gain
    return stats["physics"].mean_gain / baseline - 1.0


@dataclass(frozen=True)
class SweepRow:
    """One grid cell of a sweep; field names mirror the CSV schema."""

    L: int
    N_I: int
    trials: int
    mean_physics: float
    se_physics: float
    theory_physics: float
    gain_conventional: float
    delta_empirical: float
    delta_theory: float


def sweep(
    ris_counts: Sequence[int],
    element_counts: Sequence[int],
    trials: int,
    master_seed: int,
    path_gains=None,
    workers=None,
) -> list:
    """Paired gain experiments over a grid of cascade sizes.

    Rows are produced in row-major order: the surface-count list is the
    outer loop, the element-count list the inner one.  Each cell derives
    its own master seed from (master_seed, L, N), so adding or removing
    grid points never changes the results of the remaining cells.

    Raises:
        ValueError: on an empty grid axis or invalid counts.
    """
    ris_counts = [int(v) for v in ris_counts]
    element_counts = [int(v) for v in element_counts]
    if not ris_counts or not element_counts:
        raise ValueError("both grid axes must be non-empty")
    rows = []
    for num_ris in ris_counts:
        for elements in element_counts:
            spec = ExperimentSpec(
                topology=SystemTopology(num_ris, elements),
                model="both",
                trials=trials,
                master_seed=derive_seed(master_seed, num_ris, elements),
                path_gains=path_gains,
            )
            stats = run_gain_experiment(spec, workers=workers)
            physics = stats["physics"]
            baseline = stats["conventional"]
            rows.append(
                SweepRow(
                    L=num_ris,
                    N_I=elements,
                    trials=trials,
                    mean_physics=physics.mean_gain,
                    se_physics=physics.std_error,
                    theory_physics=physics.theory_gain,
                    gain_conventional=baseline.mean_gain,
                    delta_empirical=physics.mean_gain / baseline.mean_gain - 1.0,
                    delta_theory=delta_theory(num_ris, elements),
                )
            )
    return rows
