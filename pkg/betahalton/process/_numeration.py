from __future__ import annotations

import bisect
from typing import TYPE_CHECKING, Iterator, Sequence

if TYPE_CHECKING:
    from betahalton.structure.numeration_system import NumerationSystem

import mpmath
import numpy as np

from betahalton.configs._backend import canon
from betahalton.structure._digits import (
    Classification,
    CompositeDetail,
    DigitString,
    as_digit_string,
)
from betahalton.utils._checks import (
    NumerationRangeError,
    RootNotConvergedError,
    check_coefficients,
    check_positive_int,
)

# -----------------------------------------------------------------------------
# Classification
# -----------------------------------------------------------------------------


def classify_coefficients(coeffs: Sequence[int]) -> Classification:
    """
    Decide which unit-interval case form a coefficient vector takes.

    The first matching form is returned, checked in the order
    uniform ``(a_0, ..., a_0)``, sandwich ``(a_0, a_0-1, ..., a_0-1, a_0)``,
    b-adic equivalent ``(a_0, ..., a_0, a_0+1)`` and composite
    ``(a', ..., a', a'')``. Anything else cannot map the integers densely
    into [0, 1).

    Parameters
    ----------
    coeffs
        The recurrence coefficients ``(a_0, ..., a_{d-1})``.

    Returns
    -------
    Classification
        The case tag, with the composite decomposition or the
        equivalent integer base where applicable.

    Notes
    -----
    A b-adic equivalent vector such as ``(1, 2)`` generates the powers of
    ``a_0 + 1`` (here base 2), so ``equivalent_base`` is ``a_0 + 1``.
    """
    a = check_coefficients(coeffs)
    d = len(a)
    a0 = a[0]

    if all(x == a0 for x in a):
        return Classification("UniformCase")

    if d >= 3 and a[-1] == a0 and all(x == a0 - 1 for x in a[1:-1]):
        return Classification("SandwichCase")

    if d >= 2 and a[-1] == a0 + 1 and all(x == a0 for x in a[:-1]):
        return Classification("BAdicEquivalentCase", equivalent_base=a0 + 1)

    detail = _composite_decomposition(a)
    if detail is not None:
        return Classification("CompositeCase", detail=detail)

    return Classification("NotUnitIntervalOrNotDense")


def _composite_decomposition(a: tuple[int, ...]) -> CompositeDetail | None:
    """
    Find the smallest block length ``L >= 2`` with ``a = (a', ..., a', a'')``
    where the blocks take one of the two admissible shapes.
    """
    d = len(a)

    for block in range(2, d // 2 + 1):
        if d % block:
            continue

        a_prime = a[:block]
        a_double_prime = a[-block:]
        repetitions = d // block - 1

        if any(
            a[i * block : (i + 1) * block] != a_prime for i in range(repetitions)
        ):
            continue

        c = a_prime[0]
        if c < 1:
            continue

        first_shape = a_prime == (c,) * (block - 1) + (c - 1,) and (
            a_double_prime == (c,) * block
        )
        second_shape = a_prime == (c,) + (c - 1,) * (block - 1) and (
            a_double_prime == (c,) + (c - 1,) * (block - 2) + (c,)
        )

        if first_shape or second_shape:
            return CompositeDetail(a_prime, a_double_prime, repetitions)

    return None


def satisfies_descent(coeffs: Sequence[int]) -> bool:
    """
    ``True`` if ``a_0 >= a_1 >= ... >= a_{d-1} >= 1``, which guarantees a
    Pisot characteristic root.
    """
    a = check_coefficients(coeffs)
    return all(x >= y for x, y in zip(a, a[1:])) and a[-1] >= 1


# -----------------------------------------------------------------------------
# Base sequence and characteristic root
# -----------------------------------------------------------------------------


def compute_base_sequence(coeffs: Sequence[int], max_index: int) -> tuple[int, ...]:
    """
    Compute ``G_0, ..., G_{max_index}`` exactly.

    ``G_0 = 1``, ``G_k = a_0 G_{k-1} + ... + a_{k-1} G_0 + 1`` for
    ``k < d`` and ``G_{n+d} = a_0 G_{n+d-1} + ... + a_{d-1} G_n`` after.
    Python integers are unbounded, so no value can wrap around.
    """
    a = check_coefficients(coeffs)
    d = len(a)
    max_index = check_positive_int(max_index, "max_index", minimum=d)

    G = [1]
    for k in range(1, max_index + 1):
        value = sum(a[i] * G[k - 1 - i] for i in range(min(k, d)))
        if k < d:
            value += 1
        G.append(value)

    assert all(
        x < y for x, y in zip(G, G[1:])
    ), f"Base sequence of {a} is not strictly increasing."

    return tuple(G)


def characteristic_root(
    coeffs: Sequence[int], tol: float = 1e-9
) -> tuple[mpmath.mpf, bool]:
    """
    Return the dominant root ``beta > 1`` of
    ``x^d = a_0 x^{d-1} + ... + a_{d-1}`` and whether it is numerically
    a Pisot number.

    Parameters
    ----------
    coeffs
        The recurrence coefficients.
    tol
        In (0, 1e-6]. The other roots must have modulus ``< 1 - tol``
        for the root to count as Pisot.

    Returns
    -------
    beta
        The root, as an ``mpmath.mpf`` carrying ``canon.mp_dps()`` digits.
    pisot
        ``True`` if every other root lies strictly inside the unit disc.
    """
    beta, other_roots = characteristic_roots(coeffs, tol)
    return beta, bool(np.all(np.abs(other_roots) < 1 - tol))


def characteristic_roots(
    coeffs: Sequence[int], tol: float = 1e-9
) -> tuple[mpmath.mpf, np.ndarray]:
    """
    Dominant root by bisection on ``[1, 1 + sum(a)]`` followed by Newton
    refinement in high precision. The remaining ``d - 1`` roots are the
    eigenvalues of the companion matrix (``numpy.roots``) with the one
    nearest ``beta`` removed.
    """
    a = check_coefficients(coeffs)

    if not 0 < tol <= 1e-6:
        raise ValueError(f"`tol` must be in (0, 1e-6], got {tol}.")

    beta = _dominant_root(a)

    poly = np.array([1.0] + [-float(x) for x in a])
    if len(a) == 1:
        other_roots = np.array([], dtype=np.complex128)
    else:
        all_roots = np.roots(poly).astype(np.complex128)
        drop = int(np.argmin(np.abs(all_roots - float(beta))))
        other_roots = np.delete(all_roots, drop)

    return beta, other_roots


def _dominant_root(a: tuple[int, ...]) -> mpmath.mpf:
    """
    The unique positive root of the characteristic polynomial (one sign
    change, so exactly one by Descartes' rule).
    """
    d = len(a)

    with mpmath.workdps(canon.mp_dps() + 10):
        lo = mpmath.mpf(1)
        hi = mpmath.mpf(1 + sum(a))

        # a coarse bracket is enough for Newton to take over
        for __ in range(60):
            mid = (lo + hi) / 2
            if _poly(a, mid) < 0:
                lo = mid
            else:
                hi = mid

        x = refine_root(a, (lo + hi) / 2, canon.mp_dps())

        residual = abs(_poly(a, x))
        if residual >= canon.root_tolerance() * x**d or not x > 1:
            raise RootNotConvergedError(
                f"Root of {a} has residual {mpmath.nstr(residual, 5)}, "
                f"above tolerance."
            )

    return x


def refine_root(
    coeffs: Sequence[int], beta: mpmath.mpf, dps: int, max_iter: int = 200
) -> mpmath.mpf:
    """
    Newton-refine an approximation of the dominant root to ``dps``
    decimal digits.

    Also used when a computation needs more digits than the stored root
    carries, e.g. ``G_n / beta^l`` for large ``n``.
    """
    a = check_coefficients(coeffs)

    with mpmath.workdps(dps + 10):
        x = mpmath.mpf(beta)
        threshold = mpmath.mpf(10) ** (-(dps + 5))

        for __ in range(max_iter):
            step = _poly(a, x) / _dpoly(a, x)
            x -= step
            if abs(step) < threshold * x:
                break
        else:
            raise RootNotConvergedError(
                f"Newton refinement of the root of {a} did not converge "
                f"in {max_iter} iterations."
            )

    return x


def _poly(a: tuple[int, ...], x: mpmath.mpf) -> mpmath.mpf:
    d = len(a)
    return x**d - mpmath.fsum(a[i] * x ** (d - 1 - i) for i in range(d))


def _dpoly(a: tuple[int, ...], x: mpmath.mpf) -> mpmath.mpf:
    d = len(a)
    return d * x ** (d - 1) - mpmath.fsum(
        a[i] * (d - 1 - i) * x ** (d - 2 - i) for i in range(d - 1)
    )


def build_system(coeffs: Sequence[int], max_index: int) -> NumerationSystem:
    """
    Build an immutable ``NumerationSystem`` with ``G_0 ... G_{max_index}``.
    """
    from betahalton.structure.numeration_system import NumerationSystem

    return NumerationSystem(coeffs, max_index=max_index)


# -----------------------------------------------------------------------------
# Expansions
# -----------------------------------------------------------------------------


def greedy_expansion(n: int, system: NumerationSystem) -> DigitString:
    """
    Greedy G-expansion of the integer ``n``.

    The highest digit index is the largest ``k`` with ``G_k <= n``; digits
    are found by repeated subtraction of the largest fitting ``G_k``.
    """
    G = system.G

    if isinstance(n, bool) or int(n) != n or n < 0:
        raise ValueError(f"`n` must be a non-negative integer, got {n!r}.")
    n = int(n)

    if n >= G[-1]:
        raise NumerationRangeError(
            f"{n} is outside the precomputed range [0, G_{system.max_index}="
            f"{G[-1]}) of system {system.coeffs}."
        )

    if n == 0:
        return DigitString(())

    top = bisect.bisect_right(G, n) - 1

    digits = [0] * (top + 1)
    remainder = n
    for k in range(top, -1, -1):
        digits[k], remainder = divmod(remainder, G[k])

    assert remainder == 0, "Greedy expansion left a remainder."

    return DigitString(tuple(digits))


def expansion_value(digits: DigitString | Sequence[int], system: NumerationSystem) -> int:
    """
    Exact integer ``sum_k eps_k G_k``.
    """
    core = as_digit_string(digits).stripped()
    _check_length(len(core), system, needed=len(core) - 1)

    G = system.G
    return sum(e * G[k] for k, e in enumerate(core))


def is_admissible(digits: DigitString | Sequence[int], system: NumerationSystem) -> bool:
    """
    ``True`` iff every partial sum obeys ``sum_{k<K} eps_k G_k < G_K``.

    This partial-sum test is the defining condition of integer
    G-expansions; ``is_admissible_lexicographic`` is a faster equivalent
    for the systems where Parry's comparison word applies.
    """
    core = as_digit_string(digits).stripped()
    _check_length(len(core), system, needed=len(core))

    G = system.G
    partial = 0
    for k, e in enumerate(core):
        partial += e * G[k]
        if partial >= G[k + 1]:
            return False
    return True


def quasi_greedy_word(system: NumerationSystem) -> tuple[int, ...]:
    """
    One period ``(a_0, ..., a_{d-2}, a_{d-1} - 1)`` of the comparison word.
    """
    a = system.coeffs
    return a[:-1] + (a[-1] - 1,)


def is_admissible_lexicographic(
    digits: DigitString | Sequence[int], system: NumerationSystem
) -> bool:
    """
    Parry's test: for every ``k`` the reversed block ``(eps_k, ..., eps_0)``
    is not above the equally long prefix of the periodic comparison word.

    Only defined for uniform, sandwich and composite systems, where it
    agrees with ``is_admissible`` (property tested).
    """
    if system.classification.tag not in (
        "UniformCase",
        "SandwichCase",
        "CompositeCase",
    ):
        raise ValueError(
            f"The lexicographic test is not valid for "
            f"{system.classification.tag} system {system.coeffs}. "
            f"Use `is_admissible`."
        )

    core = as_digit_string(digits).stripped()
    word = quasi_greedy_word(system)
    period = len(word)

    for k in range(len(core)):
        for i in range(k + 1):
            digit = core[k - i]
            expected = word[i % period]
            if digit < expected:
                break
            if digit > expected:
                return False
    return True


def enumerate_admissible(system: NumerationSystem, length: int) -> Iterator[DigitString]:
    """
    Yield every admissible digit string of exactly ``length`` digits,
    trailing zeros included. There are ``G_length`` of them.
    """
    _check_length(length, system, needed=length)

    G = system.G

    def _extend(prefix: list[int], partial: int) -> Iterator[DigitString]:
        k = len(prefix)
        if k == length:
            yield DigitString(tuple(prefix))
            return

        e = 0
        while partial + e * G[k] < G[k + 1]:
            prefix.append(e)
            yield from _extend(prefix, partial + e * G[k])
            prefix.pop()
            e += 1

    yield from _extend([], 0)


def parry_expansion_of_one(system: NumerationSystem, max_len: int = 64) -> tuple[int, ...]:
    """
    Greedy beta-expansion of 1, computed with the high-precision root.

    Stops when the remainder vanishes (within ``1e-25``) or after
    ``max_len`` digits.
    """
    max_len = check_positive_int(max_len, "max_len")
    zero = mpmath.mpf(10) ** -25

    digits = []
    with mpmath.workdps(canon.mp_dps()):
        beta = system.beta_mp
        remainder = mpmath.mpf(1)

        for __ in range(max_len):
            x = remainder * beta
            digit = mpmath.floor(x)
            if abs(x - mpmath.nint(x)) < zero:
                digit = mpmath.nint(x)
            remainder = max(x - digit, mpmath.mpf(0))
            digits.append(int(digit))

            if remainder < zero:
                break

    return tuple(digits)


# Helpers --------------------------------------------------------------------


def _check_length(length: int, system: NumerationSystem, needed: int) -> None:
    """
    Raise if ``G_needed`` is beyond the precomputed range.
    """
    if needed > system.max_index:
        raise NumerationRangeError(
            f"A digit string of length {length} needs G_{needed}, but system "
            f"{system.coeffs} is only precomputed up to G_{system.max_index}."
        )
