from __future__ import annotations

import warnings
from typing import TYPE_CHECKING, Sequence

if TYPE_CHECKING:
    import numpy as np

    from betahalton.structure._digits import Classification

import mpmath

from betahalton.configs._backend import canon
from betahalton.process import _numeration
from betahalton.utils._checks import NotUnitIntervalError, check_coefficients


class NumerationSystem:
    """
    A linear recurrence numeration system ``G`` with its characteristic root.

    Holds the coefficient vector ``a``, the base sequence
    ``G_0, ..., G_{max_index}`` (exact integers), the dominant root
    ``beta`` (high precision and float), the remaining roots and the
    unit-interval classification.

    Parameters
    ----------
    coeffs
        The recurrence coefficients ``(a_0, ..., a_{d-1})`` with
        ``a_0 >= 1``, ``a_{d-1} >= 1`` and all entries non-negative.
    max_index
        The last precomputed index of the base sequence. Digit strings
        longer than this cannot be handled by the system.
    pisot_tol
        Other roots must have modulus below ``1 - pisot_tol`` for the
        root to count as Pisot.

    Notes
    -----
    All attributes are fixed at construction and exposed through
    read-only properties. Systems are compared by ``(coeffs, max_index)``.
    """

    def __init__(
        self,
        coeffs: Sequence[int],
        max_index: int | None = None,
        pisot_tol: float = 1e-9,
    ):
        coeffs = check_coefficients(coeffs)

        if max_index is None:
            max_index = canon.default_max_index()

        # These should be treated as constant for the lifetime of the class.
        self._coeffs = coeffs
        self._G = _numeration.compute_base_sequence(coeffs, max_index)
        self._max_index = len(self._G) - 1

        self._beta_mp, self._other_roots = _numeration.characteristic_roots(
            coeffs, pisot_tol
        )
        self._beta = float(self._beta_mp)
        self._pisot_verified = bool(all(abs(r) < 1 - pisot_tol for r in self._other_roots))

        self._classification = _numeration.classify_coefficients(coeffs)
        self._satisfies_descent = _numeration.satisfies_descent(coeffs)

        # b-adic equivalent systems carry a root of modulus 1 but reduce to an integer base
        if not self._pisot_verified and self._classification.tag != "BAdicEquivalentCase":
            warnings.warn(
                f"The root of {coeffs} is not a Pisot number, expansions are "
                f"exact but the sequence is not guaranteed to be low discrepancy."
            )

        with mpmath.workdps(canon.mp_dps()):
            self._growth_constant = float(
                self._G[self._max_index] / self._beta_mp**self._max_index
            )

    # Properties -------------------------------------------------------------

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        return len(self._coeffs)

    @property
    def G(self) -> tuple[int, ...]:
        """
        The base sequence ``G_0 ... G_{max_index}``.
        """
        return self._G

    @property
    def max_index(self) -> int:
        return self._max_index

    @property
    def beta(self) -> float:
        return self._beta

    @property
    def beta_mp(self) -> mpmath.mpf:
        return self._beta_mp

    @property
    def other_roots(self) -> np.ndarray:
        return self._other_roots.copy()

    @property
    def pisot_verified(self) -> bool:
        return self._pisot_verified

    @property
    def growth_constant(self) -> float:
        """
        Numerical estimate of ``c = lim G_n / beta^n``.
        """
        return self._growth_constant

    @property
    def classification(self) -> Classification:
        return self._classification

    @property
    def satisfies_descent(self) -> bool:
        return self._satisfies_descent

    @property
    def constant_coefficients(self) -> bool:
        """
        ``True`` for ``a = (b, ..., b)``, the systems covered by the
        compatibility theory.
        """
        return all(a == self._coeffs[0] for a in self._coeffs)

    @property
    def equivalent_coeffs(self) -> tuple[int, ...] | None:
        return self._classification.equivalent_coeffs

    # Checkers -----------------------------------------------------------------

    def check_maps_into_unit_interval(self) -> None:
        """
        Raise ``NotUnitIntervalError`` if the Monna map of this system
        is not a dense map into [0, 1).
        """
        if not self._classification.maps_into_unit_interval:
            raise NotUnitIntervalError(
                f"System {self._coeffs} does not map the integers densely into "
                f"[0, 1). Supported forms are (a_0,...,a_0), "
                f"(a_0,a_0-1,...,a_0-1,a_0), (a_0,...,a_0,a_0+1) and "
                f"(a',...,a',a'') with a'=(a_0,...,a_0,a_0-1), "
                f"a''=(a_0,...,a_0) or a'=(a_0,a_0-1,...,a_0-1), "
                f"a''=(a_0,a_0-1,...,a_0-1,a_0)."
            )

    # Dunder -----------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, NumerationSystem):
            return NotImplemented
        return (self._coeffs, self._max_index) == (other._coeffs, other._max_index)

    def __hash__(self) -> int:
        return hash((self._coeffs, self._max_index))

    def __repr__(self) -> str:
        return (
            f"NumerationSystem(coeffs={self._coeffs}, max_index={self._max_index}, "
            f"beta={self._beta:.12g})"
        )
