"""Dark-port leakage in the final interferometric analysis.

Every constituent single-qubit projector ``|+n><+n|`` is replaced by
``(1-p)|+n><+n| + p|-n><-n|``. On the symmetric sector this is a classical
channel on the spin-down tally: each of the ``n`` constituent outcomes flips
independently with probability ``p``.
"""

from functools import cache

import numpy as np
from numpy.typing import NDArray
from scipy.stats import binom

from schurpress.collective.measure import outcome_distribution
from schurpress.collective.spin import SpinAxis
from schurpress.errors import OutOfRange
from schurpress.qstate.state import StateVector
from schurpress.schur.symmetric import SymmetricCode


class InvalidLeakage(OutOfRange):
    def __init__(self, p: float):
        super().__init__("leakage probability", p, 0.0, 1.0)


@cache
def flip_channel(n_copies: int, p: float) -> NDArray[np.float64]:
    """``T[k_out, k_in]``, the tally transition matrix.

    Examples:
        >>> np.allclose(flip_channel(1, 0.25), [[0.75, 0.25], [0.25, 0.75]])
        True
    """
    if not 0.0 <= p <= 1.0:
        raise InvalidLeakage(p)
    channel = np.empty((n_copies + 1, n_copies + 1))
    for k_in in range(n_copies + 1):
        # up -> down flips add to the tally, down -> up flips subtract
        gained = binom.pmf(np.arange(n_copies - k_in + 1), n_copies - k_in, p)
        lost = binom.pmf(np.arange(k_in + 1), k_in, p)
        channel[:, k_in] = np.convolve(gained, lost[::-1])
    channel.setflags(write=False)
    return channel


def leaky_distribution(
    state: StateVector | SymmetricCode, axis: SpinAxis, p: float
) -> NDArray[np.float64]:
    if not 0.0 <= p <= 1.0:
        raise InvalidLeakage(p)
    ideal = outcome_distribution(state, axis)
    if p == 0.0:
        return ideal
    return flip_channel(ideal.size - 1, float(p)) @ ideal


def leaky_x_distribution(state: StateVector | SymmetricCode, p: float) -> NDArray[np.float64]:
    return leaky_distribution(state, SpinAxis.X(), p)
