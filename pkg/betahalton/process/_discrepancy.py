from __future__ import annotations

import itertools
from typing import Literal

import numpy as np

from betahalton.configs._backend import canon
from betahalton.structure.point_set import DiscrepancyReport, PointSet
from betahalton.utils._checks import WorkBudgetError


def star_discrepancy(
    point_set: PointSet,
    method: Literal["auto", "exact_1d", "exact_grid", "brute_force"] = "auto",
    work_budget: int | None = None,
) -> DiscrepancyReport:
    """
    Exact star discrepancy ``D_N*`` of a point set.

    Parameters
    ----------
    point_set
        ``N >= 1`` points in ``[0, 1)^s``.
    method
        - ``"exact_1d"``: the sorted-coordinate formula, ``s = 1`` only.
        - ``"exact_grid"``: sweep over the critical grid, ``s <= 3``.
        - ``"brute_force"``: count every grid corner directly, ``N <= 1000``.
        - ``"auto"``: ``"exact_1d"`` for ``s = 1``, else ``"exact_grid"``.
    work_budget
        Upper bound on the work estimate of the grid methods, by default
        ``canon.default_work_budget()``.

    Returns
    -------
    DiscrepancyReport
        The value with the method used. All methods are exact.

    Notes
    -----
    The supremum over anchored boxes ``[0, a)`` is attained, or approached,
    at corners whose coordinates are point coordinates or 1. At each such
    corner both the open box (``vol - #{x < a} / N``) and the closed box
    (``#{x <= a} / N - vol``) are evaluated.
    """
    points = point_set.points
    N, s = points.shape

    if N == 0:
        raise ValueError("Cannot compute the discrepancy of an empty point set.")

    if work_budget is None:
        work_budget = canon.default_work_budget()

    if method == "auto":
        method = "exact_1d" if s == 1 else "exact_grid"

    if method == "exact_1d":
        d_star = _exact_1d(points)

    elif method == "exact_grid":
        if s > 3:
            raise WorkBudgetError(
                f"`exact_grid` supports dimension s <= 3, got s={s}."
            )
        _check_budget((N + 1) ** (s - 1) * N, work_budget, method)
        d_star = _exact_grid(points)

    elif method == "brute_force":
        if N > canon.brute_force_max_points():
            raise WorkBudgetError(
                f"`brute_force` supports N <= {canon.brute_force_max_points()}, "
                f"got N={N}."
            )
        _check_budget((N + 1) ** s * N, work_budget, method)
        d_star = _brute_force(points)

    else:
        raise ValueError(
            f"`method` must be one of 'auto', 'exact_1d', 'exact_grid', "
            f"'brute_force', got {method!r}."
        )

    return DiscrepancyReport(N=N, s=s, d_star=float(d_star), method=method)


def _check_budget(work: int, work_budget: int, method: str) -> None:
    if work > work_budget:
        raise WorkBudgetError(
            f"`{method}` needs about {work} operations, above the work budget "
            f"of {work_budget}. Reduce N or raise `work_budget`."
        )


def _exact_1d(points: np.ndarray) -> float:
    if points.shape[1] != 1:
        raise ValueError(
            f"`exact_1d` needs one-dimensional points, got s={points.shape[1]}."
        )

    x = np.sort(points[:, 0])
    N = x.size
    i = np.arange(1, N + 1, dtype=np.float64)

    return float(np.max(np.maximum(x - (i - 1) / N, i / N - x)))


def _critical_grid(coordinates: np.ndarray) -> np.ndarray:
    return np.append(np.unique(coordinates), 1.0)


def _exact_grid(points: np.ndarray) -> float:
    """
    Loop over corners of the first ``s - 1`` coordinates; along the last
    coordinate all corners are handled at once by ``searchsorted`` on the
    sorted points inside the slab.
    """
    N, s = points.shape

    head = points[:, :-1]
    last = points[:, -1]

    head_grids = [_critical_grid(head[:, i]) for i in range(s - 1)]
    last_grid = _critical_grid(last)

    d_star = 0.0
    for corner in itertools.product(*head_grids):
        corner = np.array(corner, dtype=np.float64)
        head_volume = float(np.prod(corner))

        open_last = np.sort(last[np.all(head < corner, axis=1)])
        closed_last = np.sort(last[np.all(head <= corner, axis=1)])

        open_counts = np.searchsorted(open_last, last_grid, side="left")
        closed_counts = np.searchsorted(closed_last, last_grid, side="right")

        volume = head_volume * last_grid

        d_star = max(
            d_star,
            float(np.max(volume - open_counts / N)),
            float(np.max(closed_counts / N - volume)),
        )

    return d_star


def _brute_force(points: np.ndarray, chunk_size: int = 4096) -> float:
    """
    Count every point against every corner of the critical grid.
    """
    N, s = points.shape

    grids = [_critical_grid(points[:, i]) for i in range(s)]
    corners = np.stack(np.meshgrid(*grids, indexing="ij"), axis=-1).reshape(-1, s)

    d_star = 0.0
    for start in range(0, corners.shape[0], chunk_size):
        block = corners[start : start + chunk_size]

        open_counts = np.all(points[np.newaxis] < block[:, np.newaxis], axis=2).sum(
            axis=1
        )
        closed_counts = np.all(
            points[np.newaxis] <= block[:, np.newaxis], axis=2
        ).sum(axis=1)

        volume = np.prod(block, axis=1)

        d_star = max(
            d_star,
            float(np.max(volume - open_counts / N)),
            float(np.max(closed_counts / N - volume)),
        )

    return d_star
