"""
Random-walk experiments: analyze ``w_n`` at checkpoints over many trials and
aggregate the classification statistics per checkpoint.

Every trial draws from its own stream keyed on (master seed, trial index) and
aggregation runs in trial order, so reports do not depend on scheduling.
"""
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import log

import numpy as np
import pandas as pd

from src.freegroup.automorphisms import FreeAutomorphism, invert
from src.randomwalk.distribution import StepDistribution
from src.randomwalk.walk import iterate_walk, trial_rng
from src.trainfold.train_track import Outcome
from src.utils.config_loader import AnalysisLimits, WalkConfig
from src.utils.errors import FreeWalkError, WalkTruncated
from src.utils.file_utils import write_csv_report
from src.utils.logger import setup_logging
from src.whitehead.analysis import analyze_automorphism
from src.whitehead.classify import Verdict
from src.whitehead.index import format_fraction

logger = setup_logging("randomwalk")

TRUNCATED = "Truncated"
ERROR = "Error"

SUMMARY_COLUMNS = [
    "checkpoint_n", "trials", "frac_tt_found", "frac_fi_certified",
    "frac_ageometric", "frac_triangular", "frac_principal",
    "frac_unresolved", "mean_index", "mean_log_lambda",
    "frac_triangular_among_fi",
]
INVERSE_COLUMNS = [
    "inverse_frac_fi_certified", "inverse_frac_triangular",
    "frac_joint_triangular",
]
RECORD_COLUMNS = [
    "trial", "checkpoint_n", "outcome", "lambda", "log_lambda",
    "fully_irreducible", "ageometric", "k_list", "index", "index_value",
    "triangular", "principal", "seconds",
]


@dataclass(frozen=True)
class CheckpointRecord:
    trial: int
    n: int
    outcome: str
    eigenvalue: float | None
    fully_irreducible: Verdict
    ageometric: Verdict
    sizes: tuple[int, ...] = ()
    index: Fraction | None = None
    triangular: bool = False
    principal: bool = False
    seconds: float = 0.0

    @property
    def unresolved(self) -> bool:
        return self.fully_irreducible is Verdict.UNKNOWN

    @classmethod
    def unresolved_record(cls, trial: int, n: int,
                          outcome: str) -> "CheckpointRecord":
        return cls(trial, n, outcome, None, Verdict.UNKNOWN, Verdict.UNKNOWN)

    def to_row(self) -> dict:
        return {
            "trial": self.trial,
            "checkpoint_n": self.n,
            "outcome": self.outcome,
            "lambda": self.eigenvalue,
            "log_lambda": log(self.eigenvalue)
            if self.eigenvalue and self.eigenvalue > 0 else np.nan,
            "fully_irreducible": self.fully_irreducible.value,
            "ageometric": self.ageometric.value,
            "k_list": ";".join(str(k) for k in self.sizes),
            "index": format_fraction(self.index)
            if self.index is not None else None,
            "index_value": float(self.index)
            if self.index is not None else np.nan,
            "triangular": self.triangular,
            "principal": self.principal,
            "seconds": self.seconds,
        }


def analyze_checkpoint(w: FreeAutomorphism,
                       limits: AnalysisLimits | None = None,
                       trial: int = 0, n: int = 0) -> CheckpointRecord:
    """Run the analysis pipeline on ``w`` and keep the walk statistics."""
    start = time.perf_counter()
    report = analyze_automorphism(w, limits)
    flags = report.classification
    return CheckpointRecord(
        trial, n, report.train_track.outcome.value,
        report.eigenvalue if report.train_track.found else None,
        flags.fully_irreducible, flags.ageometric, flags.sizes, flags.index,
        flags.triangular, flags.principal, time.perf_counter() - start)


def _safe_checkpoint(w: FreeAutomorphism, limits: AnalysisLimits,
                     trial: int, n: int) -> CheckpointRecord:
    try:
        return analyze_checkpoint(w, limits, trial, n)
    except FreeWalkError as e:
        logger.error(f"❌ Trial {trial}, n={n}: analysis of {w} failed: {e}")
        return CheckpointRecord.unresolved_record(trial, n, ERROR)


def run_trial(mu: StepDistribution, config: WalkConfig, trial: int
              ) -> tuple[list[CheckpointRecord], list[CheckpointRecord]]:
    """
    Walk once and analyze the checkpoints.

    :return: Records for ``w_n`` and, when ``config.also_inverse`` is set,
        for ``w_n^-1`` (otherwise an empty list).
    """
    records: list[CheckpointRecord] = []
    inverse_records: list[CheckpointRecord] = []
    checkpoints = set(config.checkpoints)
    walk = iterate_walk(mu, config.steps, trial_rng(config.seed, trial),
                        config.letter_budget)
    try:
        for n, w in enumerate(walk, start=1):
            if n not in checkpoints:
                continue
            records.append(_safe_checkpoint(w, config.limits, trial, n))
            if config.also_inverse:
                inverse_records.append(
                    _safe_checkpoint(invert(w), config.limits, trial, n))
    except WalkTruncated as e:
        logger.warning(f"⚠️ Trial {trial} truncated: {e}")
        for n in config.checkpoints:
            if n >= e.step:
                records.append(
                    CheckpointRecord.unresolved_record(trial, n, TRUNCATED))
                if config.also_inverse:
                    inverse_records.append(CheckpointRecord.unresolved_record(
                        trial, n, TRUNCATED))
    logger.debug(f"🔍 Trial {trial} done: {len(records)} checkpoints")
    return records, inverse_records


def records_frame(records: list[CheckpointRecord]) -> pd.DataFrame:
    return pd.DataFrame([r.to_row() for r in records], columns=RECORD_COLUMNS)


def _flags(df: pd.DataFrame) -> pd.DataFrame:
    return pd.DataFrame({
        "checkpoint_n": df["checkpoint_n"],
        "tt": df["outcome"] == Outcome.TRAIN_TRACK.value,
        "fi": df["fully_irreducible"] == Verdict.CERTIFIED_YES.value,
        "ageometric": df["ageometric"] == Verdict.CERTIFIED_YES.value,
        "triangular": df["triangular"].astype(bool),
        "principal": df["principal"].astype(bool),
        "unresolved": df["fully_irreducible"] == Verdict.UNKNOWN.value,
        "index_value": df["index_value"].astype(float),
        "log_lambda": df["log_lambda"].astype(float),
    })


def summarize(records: list[CheckpointRecord],
              inverse_records: list[CheckpointRecord] | None = None
              ) -> pd.DataFrame:
    """Aggregate per-checkpoint statistics; a pure function of the records."""
    flags = _flags(records_frame(records))
    grouped = flags.groupby("checkpoint_n", sort=True)
    fi_count = grouped["fi"].sum()
    summary = pd.DataFrame({
        "trials": grouped.size(),
        "frac_tt_found": grouped["tt"].mean(),
        "frac_fi_certified": grouped["fi"].mean(),
        "frac_ageometric": grouped["ageometric"].mean(),
        "frac_triangular": grouped["triangular"].mean(),
        "frac_principal": grouped["principal"].mean(),
        "frac_unresolved": grouped["unresolved"].mean(),
        "mean_index": grouped["index_value"].mean(),
        "mean_log_lambda": grouped["log_lambda"].mean(),
        "frac_triangular_among_fi":
            (grouped["triangular"].sum() / fi_count).where(fi_count > 0),
    })
    if inverse_records:
        inverse = _flags(records_frame(inverse_records))
        inverse_grouped = inverse.groupby("checkpoint_n", sort=True)
        summary["inverse_frac_fi_certified"] = inverse_grouped["fi"].mean()
        summary["inverse_frac_triangular"] = \
            inverse_grouped["triangular"].mean()
        joint = flags["triangular"].to_numpy() & \
            inverse["triangular"].to_numpy()
        summary["frac_joint_triangular"] = pd.Series(
            joint, index=flags.index).groupby(flags["checkpoint_n"]).mean()
    summary = summary.reset_index()
    summary["trials"] = summary["trials"].astype(int)
    columns = SUMMARY_COLUMNS + (INVERSE_COLUMNS if inverse_records else [])
    return summary[columns]


@dataclass
class ExperimentReport:
    config: WalkConfig
    records: list[CheckpointRecord]
    inverse_records: list[CheckpointRecord] = field(default_factory=list)

    @property
    def summary(self) -> pd.DataFrame:
        return summarize(self.records, self.inverse_records)

    def to_csv(self, file_path: str | None = None) -> str:
        return write_csv_report(self.summary, file_path)

    def records_to_csv(self, file_path: str | None = None) -> str:
        """Per-record export; includes wall times, so not reproducible."""
        frame = records_frame(self.records)
        if self.inverse_records:
            inverse = records_frame(self.inverse_records)
            inverse.insert(0, "walk", "inverse")
            frame.insert(0, "walk", "forward")
            frame = pd.concat([frame, inverse], ignore_index=True)
        return write_csv_report(frame, file_path)


def run_experiment(mu: StepDistribution,
                   config: WalkConfig) -> ExperimentReport:
    """
    Run ``config.trials`` independent walks and collect checkpoint records.

    :param mu: Step distribution; its rank fixes the rank of the walk.
    :param config: Walk parameters, analysis limits and worker count.
    :return: Report whose records are ordered by trial, then checkpoint.
    """
    logger.info(f"🔍 Running {config.trials} trials of {config.steps} steps "
                f"(rank {mu.rank}, seed {config.seed}, "
                f"{config.workers} worker(s))")
    trials = range(config.trials)
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(run_trial, [mu] * config.trials,
                                    [config] * config.trials, trials))
    else:
        results = [run_trial(mu, config, trial) for trial in trials]

    report = ExperimentReport(config, [], [])
    for records, inverse_records in results:
        report.records.extend(records)
        report.inverse_records.extend(inverse_records)
    unresolved = sum(r.unresolved for r in report.records)
    logger.info(f"✅ Experiment finished: {len(report.records)} records, "
                f"{unresolved} unresolved")
    return report
