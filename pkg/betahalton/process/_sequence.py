from __future__ import annotations

import bisect
import itertools
import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import TYPE_CHECKING, Sequence

if TYPE_CHECKING:
    from betahalton.structure.numeration_system import NumerationSystem

import mpmath
import numpy as np

from betahalton.configs._backend import canon
from betahalton.process import _mapping, _numeration
from betahalton.structure.point_set import (
    CompatReport,
    HaltonConfig,
    PairCompatibility,
    PointSet,
    RationalHit,
)
from betahalton.utils import _utils
from betahalton.utils._checks import (
    NumerationRangeError,
    OutsideHypothesesError,
    check_positive_int,
)

# -----------------------------------------------------------------------------
# Points
# -----------------------------------------------------------------------------


def vdc_point(n: int, system: NumerationSystem) -> float:
    """
    The ``n``-th point of the beta-adic van der Corput sequence,
    ``monna_map(greedy_expansion(n))``.
    """
    return _mapping.monna_map(_numeration.greedy_expansion(n, system), system)


def vdc_points(indices: Sequence[int] | np.ndarray, system: NumerationSystem) -> np.ndarray:
    """
    Vectorised ``vdc_point``.

    Digits of all indices are extracted at once and summed with the same
    Horner scheme as ``monna_map``, so results are bit-identical to the
    scalar form.
    """
    system.check_maps_into_unit_interval()

    indices = np.asarray(indices, dtype=np.int64).ravel()
    if indices.size == 0:
        return np.empty(0, dtype=np.float64)

    if np.any(indices < 0):
        raise ValueError("Sequence indices must be non-negative.")

    G = system.G
    largest = int(indices.max())

    if largest >= G[-1]:
        raise NumerationRangeError(
            f"Index {largest} is outside the precomputed range of system "
            f"{system.coeffs} (G_{system.max_index}={G[-1]})."
        )

    if largest == 0:
        return np.zeros(indices.size, dtype=np.float64)

    top = bisect.bisect_right(G, largest) - 1

    digits = np.empty((indices.size, top + 1), dtype=np.int64)
    remainder = indices.copy()
    for k in range(top, -1, -1):
        digits[:, k] = remainder // G[k]
        remainder -= digits[:, k] * G[k]

    beta = system.beta
    values = np.zeros(indices.size, dtype=np.float64)
    for k in range(top, -1, -1):
        values = (values + digits[:, k]) / beta

    return np.minimum(values, np.nextafter(1.0, 0.0))


def halton_point(n: int, cfg: HaltonConfig) -> tuple[float, ...]:
    """
    The ``n``-th point of the beta-adic Halton sequence, one
    van der Corput coordinate per system.
    """
    return tuple(vdc_point(n, system) for system in cfg.systems)


def generate_point_set(
    cfg: HaltonConfig,
    count: int,
    skip: int = 0,
    include_zero: bool = False,
    n_jobs: int = 1,
) -> PointSet:
    """
    Generate ``count`` consecutive Halton points.

    Parameters
    ----------
    cfg
        The systems, one per coordinate.
    count
        Number of points.
    skip
        Number of leading indices to drop.
    include_zero
        If ``True`` the sequence starts at index 0 (the origin), otherwise
        at index 1.
    n_jobs
        Number of worker processes. Indices are split in contiguous
        shards and reassembled in index order.

    Returns
    -------
    PointSet
        Points for indices ``skip + 1 ... skip + count`` (or from ``skip``
        if ``include_zero``).
    """
    count = check_positive_int(count, "count")
    skip = check_positive_int(skip, "skip", minimum=0)
    n_jobs = check_positive_int(n_jobs, "n_jobs")

    first = skip if include_zero else skip + 1
    indices = np.arange(first, first + count, dtype=np.int64)

    if n_jobs == 1 or count < 2 * n_jobs:
        columns = [vdc_points(indices, system) for system in cfg.systems]
    else:
        shards = np.array_split(indices, n_jobs)
        _utils.message_user(
            f"Generating {count} points in {len(shards)} shards on {n_jobs} workers."
        )
        columns = []
        with ProcessPoolExecutor(max_workers=n_jobs) as executor:
            for system in cfg.systems:
                parts = executor.map(vdc_points, shards, itertools.repeat(system))
                columns.append(np.concatenate(list(parts)))

    points = np.column_stack(columns)

    return PointSet(points, provenance=cfg.describe(), first_index=first)


def orbit_point_set(
    start: Sequence[float],
    cfg: HaltonConfig,
    count: int,
    depth: int | None = None,
) -> PointSet:
    """
    The orbit ``start, T(start), ..., T^(count-1)(start)`` of the product
    of interval transformations.
    """
    count = check_positive_int(count, "count")

    point = tuple(float(x) for x in start)
    points = [point]
    for __ in range(count - 1):
        point = _mapping.product_transform(point, cfg, depth)
        points.append(point)

    start_text = ",".join(repr(x) for x in start)
    return PointSet(
        np.array(points, dtype=np.float64),
        provenance=f"orbit[{start_text}] of {cfg.describe()}",
        first_index=0,
    )


# -----------------------------------------------------------------------------
# Compatibility
# -----------------------------------------------------------------------------


def compatibility_check(
    systems: Sequence[NumerationSystem], k_max: int = 4, tol: float = 1e-12
) -> CompatReport:
    """
    Check the conditions under which the product of the odometers is
    uniquely ergodic.

    For each pair ``i < j`` with constant coefficients ``b_i`` and
    ``b_j``, ``gcd(b_i, b_j) == 1`` is decisive. The ratios
    ``beta_i^k / beta_j^l`` for ``1 <= k, l <= k_max`` are compared with
    their best rational approximations of denominator at most ``10^4``;
    a hit within ``tol`` is reported as evidence of a rational ratio.

    Raises
    ------
    OutsideHypothesesError
        If any system has non-constant coefficients.

    Notes
    -----
    The ratio test is heuristic: irrationality cannot be decided
    numerically, so a clean run only ever yields "PASS" for the
    bounded range searched.
    """
    k_max = check_positive_int(k_max, "k_max")

    if not tol > 0:
        raise ValueError(f"`tol` must be positive, got {tol}.")

    for system in systems:
        if not system.constant_coefficients:
            raise OutsideHypothesesError(
                f"System {system.coeffs} is outside the compatibility "
                f"hypotheses: only constant coefficients a = (b, ..., b) "
                f"(including the classical base b) can be checked."
            )

    pairs = []
    for i, j in itertools.combinations(range(len(systems)), 2):
        b_i = systems[i].coeffs[0]
        b_j = systems[j].coeffs[0]

        pairs.append(
            PairCompatibility(
                i=i,
                j=j,
                b_i=b_i,
                b_j=b_j,
                coprime=math.gcd(b_i, b_j) == 1,
                rational_hits=_rational_power_ratios(
                    systems[i], systems[j], k_max, tol
                ),
            )
        )

    report = CompatReport(pairs=tuple(pairs), k_max=k_max, tol=tol)

    if report.status == "WARN":
        warnings.warn(
            "Some power ratios of the characteristic roots are numerically "
            "rational. The Halton sequence may not be uniformly distributed."
        )

    return report


def _rational_power_ratios(
    first: NumerationSystem, second: NumerationSystem, k_max: int, tol: float
) -> tuple[RationalHit, ...]:
    max_denominator = 10**4

    hits = []
    with mpmath.workdps(canon.mp_dps()):
        for k, l in itertools.product(range(1, k_max + 1), repeat=2):  # noqa: E741
            ratio = first.beta_mp**k / second.beta_mp**l

            approx = Fraction(mpmath.nstr(ratio, 40)).limit_denominator(
                max_denominator
            )
            distance = abs(ratio - mpmath.mpf(approx.numerator) / approx.denominator)

            if distance < tol:
                hits.append(RationalHit(k, l, approx.numerator, approx.denominator))

    return tuple(hits)


def make_halton_config(
    systems: Sequence[NumerationSystem], k_max: int = 4, tol: float = 1e-12
) -> HaltonConfig:
    """
    Build a ``HaltonConfig``, attaching the compatibility report when
    every system has constant coefficients.
    """
    systems = tuple(systems)

    if len(systems) > 1 and all(system.constant_coefficients for system in systems):
        return HaltonConfig(systems, compatibility_check(systems, k_max, tol))

    if len(systems) > 1:
        warnings.warn(
            "Compatibility can only be checked for constant coefficient "
            "systems. Uniform distribution of this Halton sequence is not "
            "guaranteed."
        )

    return HaltonConfig(systems)
