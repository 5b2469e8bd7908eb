"""Ensembles of estimation trials for the compressed and direct strategies."""

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass
from enum import StrEnum
from typing import Any, Final, NamedTuple

import numpy as np
from numpy.typing import NDArray
from scipy.stats import chi2

from schurpress.collective.leakage import InvalidLeakage, leaky_distribution
from schurpress.collective.measure import estimate_values, outcome_distribution
from schurpress.collective.spin import SpinAxis
from schurpress.errors import InvalidArgument
from schurpress.estimation.estimators import estimator_moments
from schurpress.estimation.streams import chunk_sizes, parallel_map
from schurpress.estimation.theta import ThetaState
from schurpress.schur.qswt import compress3
from schurpress.serialization.abc import JSONSerializable

LOGGER: Final[logging.Logger] = logging.getLogger(__name__)

TRIAL_CHUNK: Final[int] = 1024
SIGMA_BAND: Final[float] = 4.0


class TrialMode(StrEnum):
    COMPRESSED = "compressed"
    DIRECT3 = "direct3"
    DIRECT2 = "direct2"

    @property
    def copies(self) -> int:
        """Qubits consumed per run."""
        match self:
            case TrialMode.DIRECT2:
                return 2
            case _:
                return 3


def _positive(name: str, value: int) -> None:
    if value < 1:
        raise InvalidArgument(f"{name} must be a positive integer. Got: {value}")


@dataclass(frozen=True, slots=True)
class TrialStats(JSONSerializable):
    n_trials: int
    runs_per_trial: int
    mean: float
    variance: float
    expected_variance: float
    seed: int | None = None

    def __post_init__(self):
        if self.variance < 0:
            raise InvalidArgument(f"Variance cannot be negative. Got: {self.variance}")

    def __json__(self) -> dict[str, Any]:
        return {
            "n_trials": self.n_trials,
            "runs_per_trial": self.runs_per_trial,
            "mean": self.mean,
            "variance": self.variance,
            "expected_variance": self.expected_variance,
            "seed": self.seed,
        }


class TrialEnsemble(NamedTuple):
    stats: TrialStats
    trial_means: NDArray[np.float64]

    def histogram(self, bins: int = 20) -> tuple[NDArray[np.int64], NDArray[np.float64]]:
        """Counts and bin edges of the trial means."""
        return np.histogram(self.trial_means, bins=bins)


@dataclass(frozen=True, slots=True)
class SweepPoint(JSONSerializable):
    theta: float
    analytic: float
    sampled: float
    two_qubit: float
    tolerance: float

    @property
    def ratio_to_two_qubit(self) -> float | None:
        return self.analytic / self.two_qubit if self.two_qubit > 0 else None

    @property
    def passed(self) -> bool:
        return abs(self.sampled - self.analytic) <= self.tolerance

    def __json__(self) -> dict[str, Any]:
        return {
            "theta_deg": math.degrees(self.theta),
            "analytic": self.analytic,
            "sampled": self.sampled,
            "two_qubit": self.two_qubit,
            "ratio_to_two_qubit": self.ratio_to_two_qubit,
        }


@dataclass(frozen=True, slots=True)
class LeakyPoint(JSONSerializable):
    theta: float
    leakage_p: float
    ideal: float
    leaky: float

    @property
    def deviation(self) -> float:
        return self.leaky - self.ideal

    def __json__(self) -> dict[str, Any]:
        return {
            "theta_deg": math.degrees(self.theta),
            "leakage_p": self.leakage_p,
            "ideal": self.ideal,
            "leaky": self.leaky,
            "deviation": self.deviation,
        }


class LeakySweep(NamedTuple):
    points: list[LeakyPoint]
    worst_theta: float


def compressed_distribution(state: ThetaState, axis: SpinAxis) -> NDArray[np.float64]:
    return outcome_distribution(compress3(state.qubit), axis)


def expected_trial_variance(state: ThetaState, axis: SpinAxis, runs: int, mode: TrialMode) -> float:
    """``V1 / (copies * runs)``."""
    return state.variance(axis) / (mode.copies * runs)


def _trial_means(
    state: ThetaState,
    axis: SpinAxis,
    runs: int,
    mode: TrialMode,
    n_trials: int,
    rng: np.random.Generator,
) -> NDArray[np.float64]:
    match mode:
        case TrialMode.COMPRESSED:
            probs = compressed_distribution(state, axis)
            counts = rng.multinomial(runs, probs / probs.sum(), size=n_trials)
            return counts @ estimate_values(3) / runs
        case TrialMode.DIRECT3 | TrialMode.DIRECT2:
            shots = mode.copies * runs
            p_up = min(max(0.5 + state.expectation(axis), 0.0), 1.0)
            ups = rng.binomial(shots, p_up, size=n_trials)
            # each spin contributes +-1/2; the estimate is their mean
            return (ups - shots / 2) / shots


def run_trial_ensemble(
    state: ThetaState,
    axis: SpinAxis,
    runs: int,
    n_trials: int,
    mode: TrialMode | str = TrialMode.COMPRESSED,
    rng: np.random.Generator | int | None = None,
    threads: int | None = None,
) -> TrialEnsemble:
    """Average ``runs`` single-shot estimates per trial, ``n_trials`` times.

    An integer ``rng`` is used as the seed and recorded in the stats.
    """
    _positive("runs", runs)
    _positive("n_trials", n_trials)
    mode = TrialMode(mode)
    seed = rng if isinstance(rng, int) else None
    generator = np.random.default_rng(rng) if not isinstance(rng, np.random.Generator) else rng

    chunks = parallel_map(
        lambda size, child: _trial_means(state, axis, runs, mode, size, child),
        chunk_sizes(n_trials, TRIAL_CHUNK),
        generator,
        threads,
    )
    means = np.concatenate(chunks)
    stats = TrialStats(
        n_trials=n_trials,
        runs_per_trial=runs,
        mean=float(means.mean()),
        variance=float(means.var(ddof=1 if n_trials > 1 else 0)),
        expected_variance=expected_trial_variance(state, axis, runs, mode),
        seed=seed,
    )
    LOGGER.debug("%s trials at theta=%.4g: %s", mode, state.theta_deg, stats)
    return TrialEnsemble(stats, means)


def sample_histogram(
    state: ThetaState, axis: SpinAxis, shots: int, rng: np.random.Generator
) -> NDArray[np.int64]:
    """Single-shot outcome counts of the collective measurement, ``m = +3/2 .. -3/2``."""
    _positive("shots", shots)
    probs = compressed_distribution(state, axis)
    return rng.multinomial(shots, probs / probs.sum())


def chi2_band(variance: float, n_trials: int, level: float = 0.99) -> tuple[float, float]:
    """Two-sided band for the sample variance of ``n_trials`` normal draws."""
    if n_trials < 2:
        raise InvalidArgument(f"A variance band needs at least two trials. Got: {n_trials}")
    if not 0.0 < level < 1.0:
        raise InvalidArgument(f"Confidence level must lie in (0, 1). Got: {level}")
    dof = n_trials - 1
    low, high = chi2.ppf([(1 - level) / 2, (1 + level) / 2], dof)
    return variance * low / dof, variance * high / dof


def _sampled_point(
    theta: float, axis: SpinAxis, shots: int, phase: float, rng: np.random.Generator
) -> SweepPoint:
    state = ThetaState(theta, phase)
    probs = compressed_distribution(state, axis)
    values = estimate_values(3)
    moments = estimator_moments(probs, values)
    counts = rng.multinomial(shots, probs / probs.sum())
    mean = counts @ values / shots
    sampled = float(counts @ (values - mean) ** 2) / max(shots - 1, 1)
    # standard error of a sample variance
    se = math.sqrt(max(moments.fourth_central - moments.variance**2, 0.0) / shots)
    return SweepPoint(
        theta=theta,
        analytic=moments.variance,
        sampled=sampled,
        two_qubit=state.variance(axis) / 2,
        tolerance=SIGMA_BAND * se,
    )


def variance_sweep(
    thetas: Sequence[float],
    axis: SpinAxis,
    shots: int,
    rng: np.random.Generator,
    phase: float = 0.0,
    threads: int | None = None,
) -> list[SweepPoint]:
    """Analytic and sampled single-shot variance of the compressed estimator per angle."""
    _positive("shots", shots)
    return parallel_map(
        lambda theta, child: _sampled_point(theta, axis, shots, phase, child),
        list(thetas),
        rng,
        threads,
    )


def leaky_variance_sweep(
    thetas: Sequence[float], p: float, axis: SpinAxis | None = None, phase: float = 0.0
) -> LeakySweep:
    """Compressed-estimator variance with and without dark-port leakage."""
    if not 0.0 <= p <= 1.0:
        raise InvalidLeakage(p)
    if not thetas:
        raise InvalidArgument("At least one angle is required")
    axis = SpinAxis.X() if axis is None else axis
    values = estimate_values(3)
    points = []
    for theta in thetas:
        compressed = compress3(ThetaState(theta, phase).qubit)
        ideal = estimator_moments(outcome_distribution(compressed, axis), values).variance
        leaky = estimator_moments(leaky_distribution(compressed, axis, p), values).variance
        points.append(LeakyPoint(theta, p, ideal, leaky))
    worst = max(points, key=lambda point: abs(point.deviation))
    return LeakySweep(points, worst.theta)
