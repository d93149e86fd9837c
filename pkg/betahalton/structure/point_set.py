from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Literal

if TYPE_CHECKING:
    from betahalton.structure.numeration_system import NumerationSystem

import numpy as np

CompatStatus = Literal["PASS", "WARN", "FAIL"]
DiscrepancyMethod = Literal["exact_1d", "exact_grid", "brute_force"]


@dataclass(frozen=True)
class RationalHit:
    """
    ``beta_i^k / beta_j^l`` lies within ``tol`` of ``p / q``.
    """

    k: int
    l: int  # noqa: E741
    p: int
    q: int


@dataclass(frozen=True)
class PairCompatibility:
    """
    Compatibility of the systems at positions ``i < j`` of a Halton config.

    ``coprime`` is decisive. ``rational_hits`` is bounded-range evidence
    only, an empty list does not prove that no power ratio is rational.
    """

    i: int
    j: int
    b_i: int
    b_j: int
    coprime: bool
    rational_hits: tuple[RationalHit, ...] = ()

    @property
    def status(self) -> CompatStatus:
        if not self.coprime:
            return "FAIL"
        if self.rational_hits:
            return "WARN"
        return "PASS"


@dataclass(frozen=True)
class CompatReport:
    """
    Per-pair compatibility of the systems of a Halton sequence.
    """

    pairs: tuple[PairCompatibility, ...]
    k_max: int
    tol: float

    @property
    def status(self) -> CompatStatus:
        statuses = [pair.status for pair in self.pairs]
        for status in ("FAIL", "WARN"):
            if status in statuses:
                return status  # type: ignore[return-value]
        return "PASS"

    def to_record(self) -> dict:
        return {
            "status": self.status,
            "k_max": self.k_max,
            "tol": self.tol,
            "pairs": [
                {
                    "i": pair.i,
                    "j": pair.j,
                    "b_i": pair.b_i,
                    "b_j": pair.b_j,
                    "coprime": pair.coprime,
                    "status": pair.status,
                    "rational_hits": [
                        dataclasses.asdict(hit) for hit in pair.rational_hits
                    ],
                }
                for pair in self.pairs
            ],
        }


@dataclass(frozen=True)
class HaltonConfig:
    """
    The systems ``(G_1, ..., G_s)`` of an s-dimensional Halton sequence.

    Parameters
    ----------
    systems
        One numeration system per coordinate, each mapping into [0, 1).
    compat
        The compatibility report, if the systems were checked. Only
        constant coefficient systems can be checked.
    """

    systems: tuple[NumerationSystem, ...]
    compat: CompatReport | None = None

    def __post_init__(self):
        systems = tuple(self.systems)
        object.__setattr__(self, "systems", systems)

        if len(systems) == 0:
            raise ValueError("A Halton config needs at least one system.")

        for system in systems:
            system.check_maps_into_unit_interval()

    @property
    def dimension(self) -> int:
        return len(self.systems)

    def describe(self) -> str:
        """
        Generator description used in point file headers, e.g.
        ``beta-halton[(1,1);(2)]``.
        """
        parts = [
            "(" + ",".join(str(a) for a in system.coeffs) + ")"
            for system in self.systems
        ]
        return "beta-halton[" + ";".join(parts) + "]"


@dataclass(frozen=True, eq=False)
class PointSet:
    """
    ``N`` points in ``[0, 1)^s`` held as a read-only ``(N, s)`` array.

    Parameters
    ----------
    points
        Array-like of shape ``(N, s)`` (or ``(N,)`` for ``s = 1``).
    provenance
        Description of the generator, e.g. from ``HaltonConfig.describe``.
    first_index
        The sequence index of the first point.
    """

    points: np.ndarray
    provenance: str = "unknown"
    first_index: int = field(default=1)

    def __post_init__(self):
        points = np.array(self.points, dtype=np.float64)

        if points.ndim == 1:
            points = points[:, np.newaxis]

        if points.ndim != 2:
            raise ValueError(
                f"Points must be an (N, s) array, got shape {points.shape}."
            )

        if points.size and (np.any(points < 0) or np.any(points >= 1)):
            raise ValueError("All point coordinates must lie in [0, 1).")

        points.setflags(write=False)
        object.__setattr__(self, "points", points)

    @property
    def N(self) -> int:
        return self.points.shape[0]

    @property
    def dimension(self) -> int:
        return self.points.shape[1]

    def __len__(self) -> int:
        return self.N


@dataclass(frozen=True)
class DiscrepancyReport:
    N: int
    s: int
    d_star: float
    method: DiscrepancyMethod
    exact: bool = True

    def __post_init__(self):
        assert 0 <= self.d_star <= 1, f"Star discrepancy {self.d_star} not in [0, 1]."

    def to_record(self) -> dict:
        return dataclasses.asdict(self)
