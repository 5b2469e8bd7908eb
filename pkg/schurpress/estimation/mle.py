"""Monte-Carlo benchmark of the 2+1 maximum-likelihood strategy.

Two copies are stored and measured along Z, the third is measured at once
along a Haar-random axis whose azimuth relative to the state is unknown to
the estimator. The estimate maximises the joint likelihood over ``z``.
"""

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any, Final, NamedTuple

import numpy as np
from numpy.typing import ArrayLike, NDArray

from schurpress.collective.spin import SpinAxis
from schurpress.errors import InvalidArgument, OutOfRange
from schurpress.estimation.likelihood import (
    Z_RANGE,
    first_up_probability,
    pair_probabilities,
    transverse,
)
from schurpress.estimation.streams import chunk_sizes, parallel_map
from schurpress.estimation.theta import ThetaState
from schurpress.serialization.abc import JSONSerializable

LOGGER: Final[logging.Logger] = logging.getLogger(__name__)

GRID_SIZE: Final[int] = 2001
REFINE_TOL: Final[float] = 1e-10
MLE_CHUNK: Final[int] = 4096
# games per grid table, bounds the table at about 4 MB
GRID_BLOCK: Final[int] = 256
_MAX_REFINE_STEPS: Final[int] = 200
_INV_PHI: Final[float] = (math.sqrt(5) - 1) / 2

_TALLY_OF_DOWNS: Final[tuple[tuple[int, int], ...]] = ((0, 0), (0, 1), (1, 1))


@dataclass(frozen=True, slots=True)
class GameOutcome:
    first_outcome: int
    zz_tally: tuple[int, int]
    delta: float
    epsilon: float
    z_mle: float


@dataclass(frozen=True, slots=True, eq=False)
class GameBatch:
    """Column-wise record of many games; ``epsilon`` is the guessed azimuth."""

    z_true: float
    first_outcome: NDArray[np.int8]
    downs: NDArray[np.int64]
    delta: NDArray[np.float64]
    epsilon: NDArray[np.float64]
    z_mle: NDArray[np.float64]

    def __len__(self) -> int:
        return self.z_mle.size

    def __getitem__(self, index: int) -> GameOutcome:
        return GameOutcome(
            first_outcome=int(self.first_outcome[index]),
            zz_tally=_TALLY_OF_DOWNS[int(self.downs[index])],
            delta=float(self.delta[index]),
            epsilon=float(self.epsilon[index]),
            z_mle=float(self.z_mle[index]),
        )

    def squared_errors(self) -> NDArray[np.float64]:
        return (self.z_mle - self.z_true) ** 2


@dataclass(frozen=True, slots=True)
class MleSweepPoint(JSONSerializable):
    theta: float
    z_true: float
    mse: float

    @property
    def v1(self) -> float:
        return 0.25 - self.z_true**2

    @property
    def v1_over_3(self) -> float:
        return self.v1 / 3

    @property
    def v1_over_2(self) -> float:
        return self.v1 / 2

    def __json__(self) -> dict[str, Any]:
        return {
            "theta_deg": math.degrees(self.theta),
            "z_true": self.z_true,
            "mse": self.mse,
            "v1_over_3": self.v1_over_3,
            "v1_over_2": self.v1_over_2,
        }


class MleSweep(NamedTuple):
    points: list[MleSweepPoint]
    fit_k: float | None


def _check_z(z: float) -> None:
    if not Z_RANGE[0] <= z <= Z_RANGE[1]:
        raise OutOfRange("z_true", z, *Z_RANGE)


def _objective(
    z: NDArray[np.float64], a: NDArray[np.float64], b: NDArray[np.float64], downs: NDArray[np.int64]
) -> NDArray[np.float64]:
    pair = np.choose(downs, pair_probabilities(z))
    return (0.5 + a * z + b * transverse(z)) * pair


def maximize_likelihood(
    first_outcome: ArrayLike,
    downs: ArrayLike,
    delta: ArrayLike,
    epsilon: ArrayLike,
    grid_size: int = GRID_SIZE,
    tol: float = REFINE_TOL,
) -> NDArray[np.float64]:
    """Argmax over ``z`` in ``[-1/2, 1/2]`` of the joint likelihood, one per game.

    A uniform grid locates the best bracket, golden-section search refines it.
    Boundary maxima are returned as the exact endpoint.
    """
    if grid_size < 3:
        raise InvalidArgument(f"The likelihood grid needs at least 3 points. Got: {grid_size}")
    first_outcome, downs, delta, epsilon = np.broadcast_arrays(
        np.atleast_1d(first_outcome), np.atleast_1d(downs), delta, epsilon
    )
    downs = downs.astype(np.int64)
    # outcome 1 flips the sign of the random-axis term
    sign = np.where(first_outcome == 0, 1.0, -1.0)
    a = sign * np.cos(delta)
    b = sign * np.sin(delta) * np.cos(epsilon)

    grid = np.linspace(*Z_RANGE, grid_size)
    grid_pairs = pair_probabilities(grid)
    grid_transverse = transverse(grid)
    best = np.empty(a.size, dtype=np.int64)
    for start in range(0, a.size, GRID_BLOCK):
        rows = slice(start, start + GRID_BLOCK)
        table = np.outer(a[rows], grid)
        table += 0.5
        table += np.outer(b[rows], grid_transverse)
        table *= grid_pairs[downs[rows]]
        best[rows] = np.argmax(table, axis=1)
    z_grid = grid[best]

    lo = grid[np.maximum(best - 1, 0)]
    hi = grid[np.minimum(best + 1, grid_size - 1)]
    for _ in range(_MAX_REFINE_STEPS):
        if np.max(hi - lo) <= tol:
            break
        c = hi - _INV_PHI * (hi - lo)
        d = lo + _INV_PHI * (hi - lo)
        left = _objective(c, a, b, downs) >= _objective(d, a, b, downs)
        hi = np.where(left, d, hi)
        lo = np.where(left, lo, c)
    refined = (lo + hi) / 2
    better = _objective(refined, a, b, downs) > _objective(z_grid, a, b, downs)
    return np.where(better, refined, z_grid)


def mle_2plus1_batch(
    z_true: float,
    n_games: int,
    rng: np.random.Generator,
    grid_size: int = GRID_SIZE,
    tol: float = REFINE_TOL,
) -> GameBatch:
    _check_z(z_true)
    if n_games < 1:
        raise InvalidArgument(f"n_games must be a positive integer. Got: {n_games}")
    u = rng.random((4, n_games))
    delta = np.arccos(1.0 - 2.0 * u[0])
    epsilon_true = 2 * math.pi * u[1]
    epsilon_guess = 2 * math.pi * u[2]
    up = np.clip(first_up_probability(z_true, delta, epsilon_true), 0.0, 1.0)
    first_outcome = (u[3] >= up).astype(np.int8)
    downs = rng.binomial(2, min(max(0.5 - z_true, 0.0), 1.0), size=n_games)
    z_mle = maximize_likelihood(first_outcome, downs, delta, epsilon_guess, grid_size, tol)
    return GameBatch(z_true, first_outcome, downs, delta, epsilon_guess, z_mle)


def mle_2plus1(z_true: float, rng: np.random.Generator) -> GameOutcome:
    return mle_2plus1_batch(z_true, 1, rng)[0]


def fit_k(points: Sequence[MleSweepPoint]) -> float | None:
    """Least-squares ``K`` in ``MSE ~ V1 / K``."""
    v1 = np.array([point.v1 for point in points])
    mse = np.array([point.mse for point in points])
    numerator = float(mse @ v1)
    if numerator <= 0:
        return None
    return float(v1 @ v1) / numerator


def mle_mse_sweep(
    thetas: Sequence[float],
    samples: int,
    rng: np.random.Generator,
    axis: SpinAxis | None = None,
    phase: float = 0.0,
    threads: int | None = None,
    grid_size: int = GRID_SIZE,
) -> MleSweep:
    """Mean-squared error of the 2+1 estimate per angle, and the fitted ``K``.

    The game depends only on the true expectation along ``axis`` (Z by default).
    """
    if samples < 1:
        raise InvalidArgument(f"samples must be a positive integer. Got: {samples}")
    axis = SpinAxis.Z() if axis is None else axis
    z_trues = [
        min(max(ThetaState(theta, phase).expectation(axis), Z_RANGE[0]), Z_RANGE[1])
        for theta in thetas
    ]
    tasks = [(i, size) for i, _ in enumerate(thetas) for size in chunk_sizes(samples, MLE_CHUNK)]

    def squared_error_sum(task: tuple[int, int], child: np.random.Generator) -> float:
        index, size = task
        batch = mle_2plus1_batch(z_trues[index], size, child, grid_size)
        return float(batch.squared_errors().sum())

    sums = parallel_map(squared_error_sum, tasks, rng, threads)
    totals = [0.0] * len(thetas)
    for (index, _), value in zip(tasks, sums):
        totals[index] += value

    points = [
        MleSweepPoint(theta, z, total / samples)
        for theta, z, total in zip(thetas, z_trues, totals)
    ]
    k = fit_k(points)
    LOGGER.debug("2+1 sweep over %d angles, %d games each: K=%s", len(points), samples, k)
    return MleSweep(points, k)
