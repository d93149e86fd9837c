from __future__ import annotations

import functools
import math
from typing import TYPE_CHECKING, Iterator, Sequence

if TYPE_CHECKING:
    from betahalton.structure.point_set import HaltonConfig

import mpmath
import numpy as np

from betahalton.configs._backend import canon
from betahalton.process import _odometer
from betahalton.structure._digits import DigitString, as_digit_string
from betahalton.structure.numeration_system import NumerationSystem
from betahalton.utils._checks import NumerationRangeError, check_positive_int

# -----------------------------------------------------------------------------
# Monna map
# -----------------------------------------------------------------------------


def monna_map(digits: DigitString | Sequence[int], system: NumerationSystem) -> float:
    """
    The beta-adic Monna map ``sum_j eps_j beta^(-j-1)``.

    Evaluated by Horner's scheme from the highest index down. The digits
    are assumed admissible, which is not re-checked here.

    Parameters
    ----------
    digits
        An admissible digit string.
    system
        A system whose classification maps into the unit interval.

    Returns
    -------
    float
        A point in [0, 1).
    """
    system.check_maps_into_unit_interval()

    beta = system.beta
    value = 0.0
    for e in reversed(as_digit_string(digits).stripped()):
        value = (value + e) / beta
    # Horner rounding can reach 1.0 on the longest admissible strings
    return min(value, float(np.nextafter(1.0, 0.0)))


def monna_map_mp(digits: DigitString | Sequence[int], system: NumerationSystem) -> mpmath.mpf:
    """
    ``monna_map`` evaluated with the high-precision root.
    """
    system.check_maps_into_unit_interval()

    with mpmath.workdps(canon.mp_dps()):
        beta = system.beta_mp
        value = mpmath.mpf(0)
        for e in reversed(as_digit_string(digits).stripped()):
            value = (value + e) / beta
    return value


# -----------------------------------------------------------------------------
# Pseudo-inverse
# -----------------------------------------------------------------------------


def pseudo_inverse(x: float, system: NumerationSystem, depth: int) -> DigitString:
    """
    First ``depth`` digits of the greedy beta-expansion of ``x``.

    Digits are extracted as ``eps_j = floor(y * beta)``, ``y <- y * beta - eps_j``.
    Floating point error in ``y`` grows like ``beta^j``, so ``y * beta`` is
    rounded up to the next integer when it lies just below it (within
    ``max(1e-12, 64 * eps * beta^(j+1))``, capped at ``1e-6``) and the
    rounded digit is still admissible. Past the cap the float error
    exceeds the digit weight, so deep digits of an inexact ``x`` are noise
    of order ``beta^-j``. A digit that would break the partial-sum condition is
    lowered until it fits.

    Parameters
    ----------
    x
        A point in [0, 1).
    system
        The numeration system.
    depth
        Number of digits to extract.

    Returns
    -------
    DigitString
        Exactly ``depth`` digits (trailing zeros kept), always admissible.
    """
    depth = check_positive_int(depth, "depth")

    if not 0 <= x < 1:
        raise ValueError(f"`x` must be in [0, 1), got {x}.")

    if depth > system.max_index:
        raise NumerationRangeError(
            f"`depth` {depth} exceeds the precomputed range of system "
            f"{system.coeffs} (max_index={system.max_index})."
        )

    beta = system.beta
    G = system.G
    machine_eps = np.finfo(np.float64).eps

    digits = []
    partial = 0
    y = float(x)

    for j in range(depth):
        t = y * beta
        e = math.floor(t)

        guard = min(
            max(canon.digit_guard(), 64 * machine_eps * beta ** (j + 1)),
            canon.max_digit_guard(),
        )
        if e + 1 - t < guard and partial + (e + 1) * G[j] < G[j + 1]:
            e += 1

        while e > 0 and partial + e * G[j] >= G[j + 1]:
            e -= 1

        digits.append(e)
        partial += e * G[j]
        y = max(t - e, 0.0)

    return DigitString(tuple(digits))


# -----------------------------------------------------------------------------
# Interval transformation
# -----------------------------------------------------------------------------


def interval_transform(
    x: float, system: NumerationSystem, depth: int | None = None
) -> float:
    """
    ``T(x) = monna_map(successor(pseudo_inverse(x, depth)))``.

    Exact up to float rounding when ``x`` has a finite expansion shorter
    than ``depth``, otherwise accurate to about
    ``beta^(-depth) / (1 - 1/beta)``.
    """
    system.check_maps_into_unit_interval()

    if depth is None:
        depth = canon.default_depth()

    depth = check_positive_int(depth, "depth", minimum=system.degree + 2)

    digits = pseudo_inverse(x, system, depth)
    state = _odometer.successor(_odometer.OdometerState(digits, system))

    return monna_map(state.digits, system)


def transform_orbit(
    x: float, system: NumerationSystem, count: int, depth: int | None = None
) -> Iterator[float]:
    """
    Yield ``x, T(x), ..., T^(count-1)(x)``.
    """
    count = check_positive_int(count, "count")

    yield x
    for __ in range(count - 1):
        x = interval_transform(x, system, depth)
        yield x


def product_transform(
    point: Sequence[float], cfg: HaltonConfig, depth: int | None = None
) -> tuple[float, ...]:
    """
    Apply each coordinate's interval transformation to an s-dimensional
    point. Starting from the origin, the n-th iterate is the n-th Halton
    point of ``cfg``.
    """
    if len(point) != cfg.dimension:
        raise ValueError(
            f"Point has {len(point)} coordinates but the config has "
            f"dimension {cfg.dimension}."
        )
    return tuple(
        interval_transform(x, system, depth) for x, system in zip(point, cfg.systems)
    )


@functools.lru_cache(maxsize=1)
def fibonacci_system() -> NumerationSystem:
    """
    The Fibonacci numeration system ``a = (1, 1)``, ``G = 1, 2, 3, 5, ...``.
    """
    return NumerationSystem((1, 1))


def kakutani_fibonacci(x: float) -> float:
    """
    The Kakutani-Fibonacci transformation, the interval transformation of
    the Fibonacci system at the default depth.

    Starting from 0 its n-th iterate is ``monna_map(greedy_expansion(n))``.
    """
    return interval_transform(x, fibonacci_system(), canon.default_depth())
