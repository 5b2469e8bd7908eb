from schurpress.estimation.average import AverageVariance, average_variance
from schurpress.estimation.estimators import (
    Moments,
    estimator_moments,
    estimator_zcomp,
    estimator_zdirect,
)
from schurpress.estimation.likelihood import likelihood_first, likelihood_pair
from schurpress.estimation.mle import (
    GameBatch,
    GameOutcome,
    MleSweep,
    MleSweepPoint,
    mle_2plus1,
    mle_2plus1_batch,
    mle_mse_sweep,
)
from schurpress.estimation.theta import (
    ThetaState,
    single_copy_expectation,
    single_copy_variance,
)
from schurpress.estimation.trials import (
    LeakySweep,
    SweepPoint,
    TrialEnsemble,
    TrialMode,
    TrialStats,
    chi2_band,
    leaky_variance_sweep,
    run_trial_ensemble,
    variance_sweep,
)

__all__ = [
    "AverageVariance",
    "GameBatch",
    "GameOutcome",
    "LeakySweep",
    "MleSweep",
    "MleSweepPoint",
    "Moments",
    "SweepPoint",
    "ThetaState",
    "TrialEnsemble",
    "TrialMode",
    "TrialStats",
    "average_variance",
    "chi2_band",
    "estimator_moments",
    "estimator_zcomp",
    "estimator_zdirect",
    "leaky_variance_sweep",
    "likelihood_first",
    "likelihood_pair",
    "mle_2plus1",
    "mle_2plus1_batch",
    "mle_mse_sweep",
    "run_trial_ensemble",
    "single_copy_expectation",
    "single_copy_variance",
    "variance_sweep",
]
