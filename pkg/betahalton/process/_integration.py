from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from betahalton.process._discrepancy import star_discrepancy
from betahalton.structure.point_set import PointSet
from betahalton.utils._checks import UnknownTestFunctionError, WorkBudgetError


@dataclass(frozen=True)
class TestFunction:
    """
    An integrand on ``[0, 1)^s`` with known integral and Hardy-Krause
    variation (anchored at 1).
    """

    __test__ = False  # not a pytest class

    name: str
    func: Callable[[np.ndarray], np.ndarray]
    integral: float
    variation: float


@dataclass(frozen=True)
class IntegrationResult:
    f_id: str
    N: int
    estimate: float
    true_value: float
    error: float
    kh_bound: float | None

    def to_record(self) -> dict:
        return {
            "f_id": self.f_id,
            "N": self.N,
            "estimate": self.estimate,
            "true_value": self.true_value,
            "error": self.error,
            "kh_bound": self.kh_bound,
        }


def test_function_suite(s: int, alpha: float = 0.5) -> dict[str, TestFunction]:
    """
    The built-in integrands in dimension ``s``.

    Notes
    -----
    The variation of ``f`` is the sum over nonempty coordinate subsets
    ``u`` of the integral of ``|d^u f|`` with the other coordinates set
    to 1.

    - ``"constant"``: ``f = 1``, integral 1, variation 0.
    - ``"product"``: ``prod x_i``, integral ``2^-s``. Every mixed
      derivative is 1 at the anchor, variation ``2^s - 1``.
    - ``"mean"``: ``sum x_i / s``, integral 1/2. Only first derivatives
      are nonzero, variation ``s * (1 / s) = 1``.
    - ``"genz_product"``: ``prod (1 + alpha (x_i - 1/2))``, integral 1.
      A subset ``u`` contributes ``alpha^|u| (1 + alpha/2)^(s-|u|)``,
      variation ``(1 + 3 alpha / 2)^s - (1 + alpha / 2)^s``.
    """
    if not 0 < alpha <= 1:
        raise ValueError(f"`alpha` must be in (0, 1], got {alpha}.")

    return {
        "constant": TestFunction(
            "constant",
            lambda x: np.ones(x.shape[0], dtype=np.float64),
            1.0,
            0.0,
        ),
        "product": TestFunction(
            "product",
            lambda x: np.prod(x, axis=1),
            2.0**-s,
            2.0**s - 1,
        ),
        "mean": TestFunction(
            "mean",
            lambda x: np.mean(x, axis=1),
            0.5,
            1.0,
        ),
        "genz_product": TestFunction(
            "genz_product",
            lambda x: np.prod(1 + alpha * (x - 0.5), axis=1),
            1.0,
            (1 + 1.5 * alpha) ** s - (1 + 0.5 * alpha) ** s,
        ),
    }


test_function_suite.__test__ = False  # type: ignore[attr-defined]


def qmc_integrate(
    f_id: str,
    point_set: PointSet,
    d_star: float | None = None,
    alpha: float = 0.5,
    work_budget: int | None = None,
) -> IntegrationResult:
    """
    Quasi-Monte Carlo estimate of a built-in integrand.

    Parameters
    ----------
    f_id
        A key of ``test_function_suite``.
    point_set
        The integration nodes.
    d_star
        The star discrepancy of ``point_set``. If ``None`` it is computed,
        and the Koksma-Hlawka bound is omitted when that exceeds the work
        budget.
    alpha
        Parameter of ``"genz_product"``.
    work_budget
        Passed to ``star_discrepancy``.

    Returns
    -------
    IntegrationResult
        Estimate, true value, absolute error and ``V(f) * D_N*``.
    """
    suite = test_function_suite(point_set.dimension, alpha)

    if f_id not in suite:
        raise UnknownTestFunctionError(
            f"Unknown test function {f_id!r}. Must be one of: {list(suite)}"
        )

    function = suite[f_id]

    values = function.func(point_set.points)
    estimate = math.fsum(values) / point_set.N

    if d_star is None:
        try:
            d_star = star_discrepancy(point_set, work_budget=work_budget).d_star
        except WorkBudgetError:
            d_star = None

    kh_bound = None if d_star is None else function.variation * d_star

    return IntegrationResult(
        f_id=f_id,
        N=point_set.N,
        estimate=estimate,
        true_value=function.integral,
        error=abs(estimate - function.integral),
        kh_bound=kh_bound,
    )
