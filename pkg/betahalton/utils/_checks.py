from __future__ import annotations

from typing import Sequence


class InvalidCoefficientsError(ValueError):
    """The coefficient vector violates the recurrence invariants."""


class NumerationRangeError(ValueError):
    """An index or digit string reaches past the precomputed base sequence."""


class NotUnitIntervalError(ValueError):
    """The Monna map of the system leaves [0, 1) or is not dense in it."""


class OutsideHypothesesError(ValueError):
    """Compatibility requested for systems without constant coefficients."""


class WorkBudgetError(ValueError):
    """An exact discrepancy computation would exceed the work budget."""


class UnknownTestFunctionError(ValueError):
    """The integrand is not part of the built-in suite."""


class RootNotConvergedError(RuntimeError):
    """The dominant root refinement did not converge."""


def check_coefficients(coeffs: Sequence[int]) -> tuple[int, ...]:
    """
    Validate a coefficient vector ``(a_0, ..., a_{d-1})`` and return it
    as a tuple of ints.

    Parameters
    ----------
    coeffs
        The recurrence coefficients.

    Raises
    ------
    InvalidCoefficientsError
        If the vector is empty, has negative entries, ``a_0 < 1``, a
        trailing zero, or is the degenerate ``(1,)`` which does not grow.
    """
    try:
        coeffs = tuple(int(a) for a in coeffs)
    except (TypeError, ValueError):
        raise InvalidCoefficientsError(
            f"Coefficients must be a sequence of integers, got {coeffs!r}."
        )

    if len(coeffs) == 0:
        raise InvalidCoefficientsError("Coefficient vector must have length d >= 1.")

    if any(a < 0 for a in coeffs):
        raise InvalidCoefficientsError(
            f"All coefficients must be non-negative, got {coeffs}."
        )

    if coeffs[0] < 1:
        raise InvalidCoefficientsError(f"a_0 must be >= 1, got {coeffs}.")

    if coeffs[-1] < 1:
        raise InvalidCoefficientsError(
            f"The last coefficient a_{len(coeffs) - 1} must be >= 1 "
            f"(a trailing zero reduces the order), got {coeffs}."
        )

    if coeffs == (1,):
        raise InvalidCoefficientsError(
            "The system (1,) has G_n = 1 for all n and root 1, "
            "it is not a numeration system."
        )

    return coeffs


def check_positive_int(value: int, name: str, minimum: int = 1) -> int:
    """
    Ensure ``value`` is an integer ``>= minimum``.
    """
    if isinstance(value, bool) or int(value) != value or value < minimum:
        raise ValueError(f"`{name}` must be an integer >= {minimum}, got {value!r}.")
    return int(value)
