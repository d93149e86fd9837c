from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterator

if TYPE_CHECKING:
    from betahalton.structure.numeration_system import NumerationSystem

from betahalton.process import _numeration
from betahalton.structure._digits import DigitString, as_digit_string
from betahalton.utils._checks import NumerationRangeError, check_positive_int


@dataclass(frozen=True)
class OdometerState:
    """
    An admissible digit string together with the system it lives in.
    """

    digits: DigitString
    system: NumerationSystem

    def __post_init__(self):
        digits = as_digit_string(self.digits)
        object.__setattr__(self, "digits", digits)

        if not _numeration.is_admissible(digits, self.system):
            raise ValueError(
                f"{digits} is not admissible in system {self.system.coeffs}."
            )

    @classmethod
    def from_integer(cls, n: int, system: NumerationSystem) -> OdometerState:
        return cls(_numeration.greedy_expansion(n, system), system)

    @property
    def value(self) -> int:
        return _numeration.expansion_value(self.digits, self.system)


def successor(state: OdometerState) -> OdometerState:
    """
    Add one to an admissible digit string.

    The carry horizon ``M`` is the smallest index such that every partial
    sum from ``M`` upwards still fits below the next base value after
    adding one, ``x(j) + 1 < G_{j+1}`` for all ``j >= M``. The low block
    ``x(M) + 1`` is re-expanded greedily on positions ``0..M`` and the
    digits above ``M`` are kept.

    Parameters
    ----------
    state
        The current position of the odometer.

    Returns
    -------
    OdometerState
        The expansion of ``n + 1``.
    """
    system = state.system
    G = system.G

    core = state.digits.stripped()
    length = len(core)

    partials = list(itertools.accumulate(e * G[k] for k, e in enumerate(core)))
    n = partials[-1] if partials else 0

    if n + 1 >= G[-1]:
        raise NumerationRangeError(
            f"The successor of {n} is outside the precomputed range of "
            f"system {system.coeffs} (G_{system.max_index}={G[-1]})."
        )

    horizon = length
    for j in range(length - 1, -1, -1):
        if partials[j] + 1 < G[j + 1]:
            horizon = j
        else:
            break

    low_value = (partials[horizon] if horizon < length else n) + 1
    low_digits = _numeration.greedy_expansion(low_value, system).padded(horizon + 1)

    digits = DigitString(low_digits.digits + core[horizon + 1 :])

    return OdometerState(digits, system)


def orbit(start: OdometerState, count: int) -> Iterator[OdometerState]:
    """
    Lazily yield ``start, tau(start), ..., tau^(count-1)(start)``.
    """
    count = check_positive_int(count, "count")

    state = start
    yield state
    for __ in range(count - 1):
        state = successor(state)
        yield state
