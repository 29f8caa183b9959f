"""
Benchmark harness comparing the three exact matchers (Parent-Distance, Skipped-Number, Skipped-Number with a tau-filter) on generated patterns and texts.

The primary metric is the deterministic work counters of each search; wall time is recorded but never relied upon. Every trial draws a fresh pattern and text from seeds derived from the configuration seed and the trial number, so a configuration always produces the same records apart from elapsed_ns, whether trials run in one process or in a pool.
"""

import csv
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from typing import Iterable, Optional, TextIO

import numpy as np

from .matching import MatchResult, exact_match
from .randgen import GenSpec, composition_sequence, derive_seed, entropy_distribution, generate
from .representations import Representation
from .signatures import DEFAULT_TAU, filtered_match
from .utils import CartesianForestError, GeneratorSpecError, ParameterError

logger = logging.getLogger(__name__)

METHODS = ("pd", "sn", "sn_filter")

CSV_COLUMNS = ("method", "n", "m", "k", "h2", "seed", "comparisons", "windows_full_checked", "elapsed_ns")

# Stream numbers used to derive the pattern and text seeds of a trial.
PATTERN_STREAM = 0
TEXT_STREAM = 1


@dataclass(frozen=True)
class BenchRecord:
    method: str
    n: int
    m: int
    k: int
    h2: Optional[float]
    seed: int
    comparisons: int
    windows_full_checked: int
    elapsed_ns: int
    trial: int = 0
    occurrences: int = 0

    def row(self) -> list:
        return [
            self.method,
            self.n,
            self.m,
            self.k,
            "" if self.h2 is None else self.h2,
            self.seed,
            self.comparisons,
            self.windows_full_checked,
            self.elapsed_ns,
        ]


@dataclass(frozen=True)
class BenchConfig:
    """
    One benchmark point: text length n, pattern length m, alphabet size k and, for the entropy experiments, the collision entropy h2 applied to both pattern and text.

    With h2 set, fixed_counts draws pattern and text as random arrangements of fixed letter counts (composition_sequence); otherwise each symbol is drawn independently.
    """

    n: int = 1000
    m: int = 8
    k: int = 4
    trials: int = 1000
    seed: int = 0
    h2: Optional[float] = None
    tau: int = DEFAULT_TAU
    methods: tuple[str, ...] = METHODS
    fixed_counts: bool = True

    def validate(self) -> None:
        if not 1 <= self.m <= self.n:
            raise ParameterError(f"pattern length must be between 1 and n = {self.n}, got {self.m}")
        if self.trials < 0:
            raise ParameterError(f"trial count must be non-negative, got {self.trials}")
        unknown = [method for method in self.methods if method not in METHODS]
        if unknown:
            raise ParameterError(f"unknown bench methods: {', '.join(unknown)}")
        if self.k < 1:
            raise GeneratorSpecError(f"alphabet size must be at least 1, got {self.k}")
        if self.h2 is not None:
            entropy_distribution(self.k, self.h2)


def _search(method: str, p: tuple, t: tuple, tau: int) -> MatchResult:
    if method == "pd":
        return exact_match(p, t, Representation.PD)
    if method == "sn":
        return exact_match(p, t, Representation.SN)
    return filtered_match(p, t, tau)


def run_trial(config: BenchConfig, trial: int) -> list[BenchRecord]:
    """
    Runs every method of the configuration on the pattern and text of one trial.

    Args:
        config (BenchConfig): the benchmark point.
        trial (int): the trial number.

    Returns:
        list[BenchRecord]: one record per method, in the order of config.methods.
    """
    trial_seed = derive_seed(config.seed, trial)
    draw = composition_sequence if config.h2 is not None and config.fixed_counts else generate
    p = draw(GenSpec(config.m, config.k, derive_seed(trial_seed, PATTERN_STREAM), config.h2))
    t = draw(GenSpec(config.n, config.k, derive_seed(trial_seed, TEXT_STREAM), config.h2))

    records = []
    reference = None
    for method in config.methods:
        started = time.perf_counter_ns()
        result = _search(method, p, t, config.tau)
        elapsed = time.perf_counter_ns() - started

        if reference is None:
            reference = result.positions
        elif result.positions != reference:
            raise CartesianForestError(f"trial {trial} (seed {trial_seed}): {method} disagrees with {config.methods[0]}")

        records.append(
            BenchRecord(
                method=method,
                n=config.n,
                m=config.m,
                k=config.k,
                h2=config.h2,
                seed=trial_seed,
                comparisons=result.counters.comparisons,
                windows_full_checked=result.counters.windows_full_checked,
                elapsed_ns=elapsed,
                trial=trial,
                occurrences=result.occurrences,
            )
        )
    return records


def run_bench(config: BenchConfig, workers: int = 1) -> list[BenchRecord]:
    """
    Runs all trials of a benchmark point.

    Args:
        config (BenchConfig): the benchmark point.
        workers (int, optional): number of worker processes; 1 runs in-process. Defaults to 1.

    Returns:
        list[BenchRecord]: the records, sorted by (method, trial). Raises GeneratorSpecError for infeasible generator parameters.
    """
    config.validate()
    logger.info("bench n=%d m=%d k=%d h2=%s: %d trials", config.n, config.m, config.k, config.h2, config.trials)

    trials = range(config.trials)
    if workers > 1 and config.trials > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            batches = list(pool.map(partial(run_trial, config), trials))
    else:
        batches = [run_trial(config, trial) for trial in trials]

    order = {method: i for i, method in enumerate(METHODS)}
    records = [record for batch in batches for record in batch]
    records.sort(key=lambda r: (order[r.method], r.trial))
    return records


def uniform_experiment(
    m_values: Iterable[int],
    k_values: Iterable[Optional[int]] = (2, 4, None),
    n: int = 1000,
    trials: int = 1000,
    seed: int = 0,
    tau: int = DEFAULT_TAU,
) -> list[BenchConfig]:
    """
    Benchmark points for uniform random patterns and texts, sweeping the pattern length. A k of None stands for an alphabet as large as the pattern.

    Args:
        m_values (Iterable[int]): the pattern lengths.
        k_values (Iterable[Optional[int]], optional): alphabet sizes. Defaults to (2, 4, None).
        n (int, optional): text length. Defaults to 1000.
        trials (int, optional): trials per point. Defaults to 1000.
        seed (int, optional): base seed. Defaults to 0.
        tau (int, optional): filter width. Defaults to 64.

    Returns:
        list[BenchConfig]: one configuration per (k, m).
    """
    configs = []
    for k in k_values:
        for m in m_values:
            configs.append(BenchConfig(n=n, m=m, k=m if k is None else k, trials=trials, seed=seed, tau=tau))
    return configs


def entropy_experiment(
    h2_values: Iterable[float],
    k: int = 4,
    n: int = 1000,
    m: int = 100,
    trials: int = 1000,
    seed: int = 0,
    tau: int = DEFAULT_TAU,
    fixed_counts: bool = True,
) -> list[BenchConfig]:
    """
    Benchmark points at a fixed pattern length, sweeping the collision entropy of pattern and text. Every point uses the same trial seeds, so with fixed_counts the points differ only in their letter counts.
    """
    return [
        BenchConfig(n=n, m=m, k=k, trials=trials, seed=seed, h2=h2, tau=tau, fixed_counts=fixed_counts) for h2 in h2_values
    ]


def run_experiment(configs: Iterable[BenchConfig], workers: int = 1) -> list[BenchRecord]:
    records = []
    for config in configs:
        records.extend(run_bench(config, workers))
    return records


def summarize(records: Iterable[BenchRecord]) -> dict[tuple, dict[str, float]]:
    """
    Mean comparisons and mean fully checked windows per (method, n, m, k, h2).

    Args:
        records (Iterable[BenchRecord]): bench records.

    Returns:
        dict[tuple, dict[str, float]]: keyed by (method, n, m, k, h2), with "comparisons" and "windows_full_checked" means and the "trials" count.
    """
    groups: dict[tuple, list[BenchRecord]] = {}
    for record in records:
        key = (record.method, record.n, record.m, record.k, record.h2)
        groups.setdefault(key, []).append(record)

    summary = {}
    for key, group in groups.items():
        comparisons = np.array([r.comparisons for r in group], dtype=np.float64)
        checked = np.array([r.windows_full_checked for r in group], dtype=np.float64)
        summary[key] = {
            "comparisons": float(comparisons.mean()),
            "windows_full_checked": float(checked.mean()),
            "trials": len(group),
        }
    return summary


def write_csv(records: Iterable[BenchRecord], stream: TextIO) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for record in records:
        writer.writerow(record.row())
