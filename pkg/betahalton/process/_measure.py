from __future__ import annotations

import dataclasses
import warnings
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterator, Sequence

if TYPE_CHECKING:
    from betahalton.structure.numeration_system import NumerationSystem

import mpmath

from betahalton.configs._backend import canon
from betahalton.process import _mapping, _numeration
from betahalton.structure._digits import DigitString, as_digit_string
from betahalton.utils._checks import (
    NumerationRangeError,
    OutsideHypothesesError,
    check_positive_int,
)

# -----------------------------------------------------------------------------
# Types
# -----------------------------------------------------------------------------


@dataclass(frozen=True)
class CylinderSet:
    """
    All expansions whose digits ``eps_0 ... eps_{K-1}`` equal ``prefix``.

    ``K`` is the length of ``prefix`` as given, trailing zeros included;
    ``K = 0`` is the full space.
    """

    system: NumerationSystem
    prefix: DigitString = DigitString(())

    def __post_init__(self):
        prefix = as_digit_string(self.prefix)
        object.__setattr__(self, "prefix", prefix)

        if not _numeration.is_admissible(prefix, self.system):
            raise ValueError(
                f"Cylinder prefix {prefix} is not admissible in system "
                f"{self.system.coeffs}."
            )

    @property
    def depth(self) -> int:
        return len(self.prefix)

    @property
    def partial_sum(self) -> int:
        return _numeration.expansion_value(self.prefix, self.system)


@dataclass(frozen=True)
class HalfOpenInterval:
    lower: float
    upper: float

    @property
    def length(self) -> float:
        return self.upper - self.lower


@dataclass(frozen=True)
class SpectrumCheck:
    """
    The candidate eigenvalue ``z = exp(2 pi i c / (b^m beta^l))``.

    ``values[n]`` holds the distance of ``G_n c / (b^m beta^l)`` to the
    nearest integer, which is zero in the limit iff ``z^{G_n} -> 1``.
    """

    system: NumerationSystem
    c: int
    m: int = 0
    l: int = 1  # noqa: E741
    values: tuple[float, ...] = ()

    def __post_init__(self):
        for name in ("c", "m", "l"):
            value = getattr(self, name)
            if isinstance(value, bool) or int(value) != value or value < 0:
                raise ValueError(
                    f"`{name}` must be a non-negative integer, got {value!r}."
                )


@dataclass(frozen=True)
class TransportReport:
    """
    Result of comparing the measure of every cylinder with the length of
    its image in [0, 1).
    """

    coeffs: tuple[int, ...]
    depth: int
    max_deviation: float
    worst_prefix: tuple[int, ...]
    max_mass_error: float
    cylinders_checked: int
    covered_by_theory: bool

    def to_record(self) -> dict:
        record = dataclasses.asdict(self)
        record["coeffs"] = list(self.coeffs)
        record["worst_prefix"] = list(self.worst_prefix)
        return record


# -----------------------------------------------------------------------------
# Counting
# -----------------------------------------------------------------------------


def count_prefix(cylinder: CylinderSet, M: int) -> int:
    """
    Exact number of integers ``n < G_M`` whose expansion starts with the
    cylinder prefix.

    Parameters
    ----------
    cylinder
        The cylinder of depth ``K``.
    M
        ``K <= M <= max_index``.
    """
    return prefix_counts(cylinder, [M])[0]


def prefix_counts(cylinder: CylinderSet, M_values: Sequence[int]) -> list[int]:
    """
    ``count_prefix`` for several ``M`` sharing one memo.
    """
    system = cylinder.system
    K = cylinder.depth

    for M in M_values:
        if not K <= M <= system.max_index:
            raise NumerationRangeError(
                f"`M` must be in [{K}, {system.max_index}] for a cylinder of "
                f"depth {K} in system {system.coeffs}, got {M}."
            )

    return _prefix_counts(system.G, K, cylinder.partial_sum, M_values)


def _prefix_counts(
    G: tuple[int, ...], K: int, prefix_sum: int, M_values: Sequence[int]
) -> list[int]:
    """
    Count digit choices ``eps_K ... eps_{M-1}`` above a prefix with
    value ``prefix_sum`` such that every partial sum stays below the next
    base value.

    ``count_below(top, bound)`` is the number of choices for positions
    ``K ... top-1`` whose total (prefix included) is ``< bound``, with
    ``bound <= G_top`` so the partial-sum condition at ``top`` is implied.
    Only one digit per level leaves a bound below ``G_j``, the others hit
    the memoised free count ``count_below(j, G_j)``.
    """
    memo: dict[tuple[int, int], int] = {}

    def count_below(top: int, bound: int) -> int:
        if top == K:
            return 1 if prefix_sum < bound else 0

        key = (top, bound)
        if key in memo:
            return memo[key]

        j = top - 1
        total = 0
        e = 0
        while e * G[j] < bound:
            total += count_below(j, min(G[j], bound - e * G[j]))
            e += 1

        memo[key] = total
        return total

    return [count_below(M, G[M]) for M in M_values]


# -----------------------------------------------------------------------------
# Invariant measure
# -----------------------------------------------------------------------------


def mu(cylinder: CylinderSet) -> mpmath.mpf:
    """
    The invariant measure of a cylinder of depth ``K``.

    With ``F_M = count_prefix(Z, M)``

    ``mu(Z) = sum_{r<d} (F_{K+r} - sum_{i<r} a_i F_{K+r-1-i}) beta^{d-1-r}``
    divided by ``beta^K (beta^{d-1} + ... + 1)``.

    The integer differences are exact, so only one division happens in
    high precision.
    """
    system = cylinder.system
    K = cylinder.depth
    d = system.degree

    _check_range(system, K + d - 1)

    counts = prefix_counts(cylinder, range(K, K + d))

    with mpmath.workdps(canon.mp_dps()):
        return _mu_from_counts(system.coeffs, K, counts, system.beta_mp)


def _mu_from_counts(
    a: tuple[int, ...], K: int, counts: Sequence[int], beta: mpmath.mpf
) -> mpmath.mpf:
    d = len(a)

    numerator = mpmath.mpf(0)
    for r in range(d):
        weight = counts[r] - sum(a[i] * counts[r - 1 - i] for i in range(r))
        numerator += weight * beta ** (d - 1 - r)

    denominator = beta**K * mpmath.fsum(beta**i for i in range(d))

    return numerator / denominator


# -----------------------------------------------------------------------------
# Cylinder images
# -----------------------------------------------------------------------------


def cylinder_image(cylinder: CylinderSet) -> HalfOpenInterval:
    """
    The interval ``[inf, sup)`` in which the Monna image of the cylinder
    is dense.

    ``inf`` is the Monna map of the prefix and ``sup - inf`` the closed
    form supremum of the admissible tails, see ``tail_supremum``.
    """
    with mpmath.workdps(canon.mp_dps()):
        lower = _mapping.monna_map_mp(cylinder.prefix, cylinder.system)
        upper = lower + tail_supremum(cylinder)
        return HalfOpenInterval(float(lower), float(upper))


def tail_supremum(cylinder: CylinderSet) -> mpmath.mpf:
    """
    Closed form of ``sup sum_{j>=K} eps_j beta^(-j-1)`` over admissible
    extensions of the prefix.

    Notes
    -----
    For ``a = (c, ..., c)`` of degree ``d`` with ``h`` digits ``c`` on top
    of the prefix, ``t = d - 1 - h`` more ``c`` may follow, then ``c - 1``
    and a fresh tail, giving ``beta^-K c sum_{i=1}^{t+1} beta^-i``.

    For ``a = (c, c-1, ..., c-1, c)`` scan down from the top of the prefix
    over digits ``c - 1``. If a ``c`` is met after ``q`` of them (``q < d - 1``),
    the next ``t = d - 1 - q`` digits are capped at ``c - 1``, giving
    ``beta^-K ((c-1) sum_{i=1}^t beta^-i + beta^-t)``; otherwise the tail
    is fresh with supremum ``beta^-K``.

    b-adic equivalent systems accept every digit ``<= a_0`` in base
    ``a_0 + 1``, so the supremum is ``beta^-K``. Composite systems share
    their base sequence and root with ``a''`` and use its form.
    """
    system = cylinder.system
    system.check_maps_into_unit_interval()

    classification = system.classification
    a = system.coeffs
    tag = classification.tag

    if tag == "CompositeCase":
        assert classification.detail is not None
        a = classification.detail.a_double_prime
        tag = _numeration.classify_coefficients(a).tag

    with mpmath.workdps(canon.mp_dps()):
        beta = system.beta_mp
        return beta ** -cylinder.depth * _scaled_tail(
            tag, a, cylinder.prefix.digits, beta
        )


def _scaled_tail(
    tag: str, a: tuple[int, ...], prefix: tuple[int, ...], beta: mpmath.mpf
) -> mpmath.mpf:
    """
    ``beta^K`` times the tail supremum for the closed-form case ``tag``.
    """
    c = a[0]
    d = len(a)

    if tag == "UniformCase":
        h = 0
        for digit in reversed(prefix):
            if digit != c:
                break
            h += 1
        t = d - 1 - h
        assert t >= 0, "An admissible prefix cannot end in d digits a_0."
        return c * mpmath.fsum(beta**-i for i in range(1, t + 2))

    if tag == "SandwichCase":
        t = 0
        for q, digit in enumerate(reversed(prefix[-(d - 1) :])):
            if digit == c:
                t = d - 1 - q
                break
            if digit != c - 1:
                break
        return (c - 1) * mpmath.fsum(beta**-i for i in range(1, t + 1)) + beta**-t

    if tag == "BAdicEquivalentCase":
        return mpmath.mpf(1)

    raise ValueError(f"No closed form tail supremum for {tag} system {a}.")


def tail_supremum_numeric(
    cylinder: CylinderSet, extension: int | None = None
) -> mpmath.mpf:
    """
    Numeric cross-check of ``tail_supremum``: extend the prefix by
    ``extension`` maximal admissible digits and sum them.

    The result is below the supremum by at most ``beta^-(K + extension)``.
    """
    system = cylinder.system
    G = system.G
    K = cylinder.depth

    if extension is None:
        extension = system.max_index - K - 1
    extension = check_positive_int(extension, "extension")
    _check_range(system, K + extension)

    partial = cylinder.partial_sum

    with mpmath.workdps(canon.mp_dps()):
        beta = system.beta_mp
        total = mpmath.mpf(0)
        for j in range(K, K + extension):
            e = (G[j + 1] - 1 - partial) // G[j]
            partial += e * G[j]
            total += e * beta ** (-j - 1)
        return total


def enumerate_cylinders(system: NumerationSystem, depth: int) -> Iterator[CylinderSet]:
    """
    Yield every admissible cylinder with a prefix of exactly ``depth`` digits.
    """
    for digits in _numeration.enumerate_admissible(system, depth):
        yield CylinderSet(system, digits)


# -----------------------------------------------------------------------------
# Transport verification
# -----------------------------------------------------------------------------


def verify_transport(system: NumerationSystem, depth: int) -> TransportReport:
    """
    Compare ``mu(Z)`` with the length of ``cylinder_image(Z)`` for every
    admissible cylinder of depth ``0 ... depth``.

    Also checks that the measures of each depth sum to one. Equality is
    proven for constant coefficients and for ``(1, 0, 1)``, other systems
    are reported as exploratory runs.

    Parameters
    ----------
    system
        A system that maps into the unit interval.
    depth
        The deepest cylinder level.

    Returns
    -------
    TransportReport
        Maximal deviation, the prefix where it occurs, the maximal
        per-depth mass error and the number of cylinders checked.
    """
    depth = check_positive_int(depth, "depth", minimum=0)
    system.check_maps_into_unit_interval()
    _check_range(system, depth + system.degree - 1)

    covered = system.constant_coefficients or system.coeffs == (1, 0, 1)
    if not covered:
        warnings.warn(
            f"Transport is only proven for constant coefficients and (1,0,1). "
            f"The report for {system.coeffs} is exploratory."
        )

    a = system.coeffs
    d = system.degree
    G = system.G

    classification = system.classification
    tail_coeffs, tail_tag = a, classification.tag
    if classification.tag == "CompositeCase":
        assert classification.detail is not None
        tail_coeffs = classification.detail.a_double_prime
        tail_tag = _numeration.classify_coefficients(tail_coeffs).tag

    max_deviation = mpmath.mpf(0)
    worst_prefix: tuple[int, ...] = ()
    max_mass_error = mpmath.mpf(0)
    checked = 0

    with mpmath.workdps(canon.mp_dps()):
        beta = system.beta_mp

        level = [((), 0)]
        for K in range(depth + 1):
            masses = []
            scale = beta**-K

            for prefix, prefix_sum in level:
                counts = _prefix_counts(G, K, prefix_sum, range(K, K + d))
                measure = _mu_from_counts(a, K, counts, beta)
                length = scale * _scaled_tail(tail_tag, tail_coeffs, prefix, beta)

                deviation = abs(measure - length)
                if deviation > max_deviation:
                    max_deviation = deviation
                    worst_prefix = prefix

                masses.append(measure)
                checked += 1

            max_mass_error = max(max_mass_error, abs(mpmath.fsum(masses) - 1))

            if K < depth:
                level = [
                    (prefix + (e,), prefix_sum + e * G[K])
                    for prefix, prefix_sum in level
                    for e in range((G[K + 1] - 1 - prefix_sum) // G[K] + 1)
                ]

    return TransportReport(
        coeffs=a,
        depth=depth,
        max_deviation=float(max_deviation),
        worst_prefix=worst_prefix,
        max_mass_error=float(max_mass_error),
        cylinders_checked=checked,
        covered_by_theory=covered,
    )


# -----------------------------------------------------------------------------
# Spectrum
# -----------------------------------------------------------------------------


def eigenvalue_limit_check(check: SpectrumCheck, n_max: int) -> SpectrumCheck:
    """
    Fill ``check.values`` for ``n = 0 ... n_max``.

    ``b`` is the constant coefficient of the system. The root is refined
    to enough digits that ``G_n / beta^l`` keeps its fractional part.
    """
    system = check.system
    n_max = check_positive_int(n_max, "n_max", minimum=0)
    _check_range(system, n_max)

    if check.m > 0 and not system.constant_coefficients:
        raise OutsideHypothesesError(
            f"`m` > 0 needs a constant coefficient system a = (b, ..., b), "
            f"got {system.coeffs}."
        )

    b = system.coeffs[0]
    G = system.G

    dps = canon.mp_dps() + len(str(G[n_max])) + 10
    beta = _numeration.refine_root(system.coeffs, system.beta_mp, dps)

    values = []
    with mpmath.workdps(dps):
        denominator = mpmath.mpf(b) ** check.m * beta**check.l
        for n in range(n_max + 1):
            x = G[n] * check.c / denominator
            values.append(float(abs(x - mpmath.nint(x))))

    return dataclasses.replace(check, values=tuple(values))


def _check_range(system: NumerationSystem, index: int) -> None:
    if index > system.max_index:
        raise NumerationRangeError(
            f"G_{index} is needed but system {system.coeffs} is only "
            f"precomputed up to G_{system.max_index}."
        )
