"""Parameter sweeps over the seed amplitudes, matching the standard figures.

Three canned grids cover the interesting landscape:

  * ``fig2a``  — equal seeds, alpha_1 = alpha_2 = |alpha|;
  * ``fig2b``  — fixed 2:1 ratio, alpha_1 = |alpha| = 2 alpha_2;
  * ``surface`` — two axes, the seed ratio gamma = |alpha_2|/|alpha_1| and
    the magnitude |alpha| = |alpha_2|, so |alpha_1| = |alpha| / gamma.

Every row carries the squared measures plus |F| and V, and is validated
against the identity residual bounds before it can exist; the emitters in
``output`` refuse anything that slips past.  An optional oracle check
re-evaluates eligible rows through the Fock-space route and records the
worst per-field deviation.
"""

from __future__ import annotations

import dataclasses
import math
import warnings
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from ._parallel import ordered_map
from .analytic import MEASURE_FIELDS, SeedPair, complementarity_measures
from .fock import DEFAULT_POLICY, CutoffPolicy
from .oracle import ORACLE_ALPHA_MAX, build_composite, measures_from_state

SWEEP_MODES = ("fig2a", "fig2b", "surface", "explicit")

ROW_IDENTITY_ATOL = 1e-12

MAX_GRID_POINTS = 1_000_000

DEFAULT_FIG2_ALPHA_MAX = 6.0
DEFAULT_FIG2_ALPHA_STEP = 0.05
DEFAULT_SURFACE_ALPHA_MAX = 10.0
DEFAULT_SURFACE_ALPHA_STEP = 0.1
DEFAULT_SURFACE_GAMMA_STEP = 0.02


@dataclass(frozen=True)
class AxisSpec:
    """Inclusive arithmetic grid start, start+step, ..., capped at stop."""

    start: float
    stop: float
    step: float

    def __post_init__(self):
        for name in ("start", "stop", "step"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.step <= 0.0:
            raise ValueError(f"step must be > 0, got {self.step}")
        if self.stop < self.start:
            raise ValueError("stop must be >= start")

    def count(self) -> int:
        return int(math.floor((self.stop - self.start) / self.step + 1e-9)) + 1

    def values(self) -> np.ndarray:
        vals = self.start + np.arange(self.count()) * self.step
        # the last point may overshoot stop by rounding; pin it back
        return np.minimum(vals, self.stop)


@dataclass(frozen=True)
class SweepGrid:
    mode: str
    alpha_axis: Optional[AxisSpec] = None
    gamma_axis: Optional[AxisSpec] = None
    seeds: tuple = ()
    oracle_check: bool = False

    def __post_init__(self):
        if self.mode not in SWEEP_MODES:
            raise ValueError(f"mode must be one of {SWEEP_MODES}, got {self.mode!r}")
        if self.mode == "explicit":
            if not self.seeds:
                raise ValueError("explicit mode needs at least one seed pair")
            object.__setattr__(self, "seeds", tuple(self.seeds))
        else:
            if self.alpha_axis is None:
                raise ValueError(f"{self.mode} mode needs an alpha axis")
            if self.mode == "surface" and self.gamma_axis is None:
                raise ValueError("surface mode needs a gamma axis")

    def point_count(self) -> int:
        if self.mode == "explicit":
            return len(self.seeds)
        count = self.alpha_axis.count()
        if self.mode == "surface":
            count *= self.gamma_axis.count()
        return count


def fig2a_grid(
    alpha_max: float = DEFAULT_FIG2_ALPHA_MAX,
    alpha_step: float = DEFAULT_FIG2_ALPHA_STEP,
    oracle_check: bool = False,
) -> SweepGrid:
    """Equal-seed sweep alpha_1 = alpha_2 = |alpha|."""
    return SweepGrid(
        "fig2a", alpha_axis=AxisSpec(0.0, alpha_max, alpha_step), oracle_check=oracle_check
    )


def fig2b_grid(
    alpha_max: float = DEFAULT_FIG2_ALPHA_MAX,
    alpha_step: float = DEFAULT_FIG2_ALPHA_STEP,
    oracle_check: bool = False,
) -> SweepGrid:
    """Fixed-ratio sweep alpha_1 = |alpha| = 2 alpha_2."""
    return SweepGrid(
        "fig2b", alpha_axis=AxisSpec(0.0, alpha_max, alpha_step), oracle_check=oracle_check
    )


def surface_grid(
    alpha_max: float = DEFAULT_SURFACE_ALPHA_MAX,
    alpha_step: float = DEFAULT_SURFACE_ALPHA_STEP,
    gamma_step: float = DEFAULT_SURFACE_GAMMA_STEP,
    oracle_check: bool = False,
) -> SweepGrid:
    """Two-axis sweep over gamma in (0, 1] and |alpha| = |alpha_2| in [0, alpha_max]."""
    return SweepGrid(
        "surface",
        alpha_axis=AxisSpec(0.0, alpha_max, alpha_step),
        gamma_axis=AxisSpec(gamma_step, 1.0, gamma_step),
        oracle_check=oracle_check,
    )


def explicit_grid(seed_pairs: Sequence[SeedPair], oracle_check: bool = False) -> SweepGrid:
    return SweepGrid("explicit", seeds=tuple(seed_pairs), oracle_check=oracle_check)


@dataclass(frozen=True)
class SweepRow:
    """One grid point: seed magnitudes, ratio, and the plotted measures.

    Construction re-checks the three identity residual bounds, so a row can
    only exist if its squared measures are mutually consistent to 1e-12.
    ``oracle_residual`` is the worst per-field deviation of the Fock-space
    route at this point, present only when the sweep ran its oracle check
    and the point was within the oracle's seed-magnitude cap.
    """

    alpha1_abs: float
    alpha2_abs: float
    gamma: float
    D2: float
    P2: float
    E2: float
    C2: float
    F_abs: float
    mu_s2: float
    V: float
    oracle_residual: Optional[float] = None

    def __post_init__(self):
        for name, residual in self.identity_residuals().items():
            if residual > ROW_IDENTITY_ATOL:
                raise ValueError(f"row violates '{name}' by {residual:.3e}")

    def identity_residuals(self) -> dict:
        return {
            "D2 = P2 + E2": abs(self.D2 - self.P2 - self.E2),
            "P2 + E2 + C2 = 1": abs(self.P2 + self.E2 + self.C2 - 1.0),
            "P2 + C2 = mu_s2": abs(self.P2 + self.C2 - self.mu_s2),
        }


# Columns shared by the CSV and JSON emitters, in declaration order.
ROW_FIELDS = tuple(f.name for f in dataclasses.fields(SweepRow) if f.name != "oracle_residual")
ORACLE_RESIDUAL_FIELD = "oracle_residual"


def _grid_points(grid: SweepGrid) -> list[tuple[SeedPair, float]]:
    """Expand the grid to (seeds, gamma) pairs in row-major axis order."""
    if grid.mode == "explicit":
        points = []
        for pair in grid.seeds:
            a1 = abs(pair.alpha1)
            gamma = abs(pair.alpha2) / a1 if a1 > 0.0 else math.nan
            points.append((pair, gamma))
        return points
    alphas = grid.alpha_axis.values()
    if grid.mode == "fig2a":
        return [(SeedPair(complex(a), complex(a)), 1.0) for a in alphas]
    if grid.mode == "fig2b":
        return [(SeedPair(complex(a), complex(a / 2.0)), 0.5) for a in alphas]
    # surface: gamma outer, |alpha| inner; |alpha_1| = |alpha| / gamma is
    # undefined at |alpha| = 0, so those rows are skipped with a warning.
    points = []
    skipped = 0
    for gamma in grid.gamma_axis.values():
        for a in alphas:
            if a == 0.0:
                skipped += 1
                continue
            points.append((SeedPair(complex(a / gamma), complex(a)), float(gamma)))
    if skipped:
        warnings.warn(
            f"skipped {skipped} surface grid points with |alpha_1| = 0 "
            "(seed ratio undefined there)",
            stacklevel=3,
        )
    return points


def run_sweep(grid: SweepGrid, policy: CutoffPolicy = DEFAULT_POLICY) -> list[SweepRow]:
    """Evaluate the closed-form measures over the grid, one row per point.

    Rows come back in row-major axis order.  With ``grid.oracle_check`` the
    Fock-space route is also evaluated wherever both seed magnitudes are
    within the oracle cap, and the worst per-field deviation is attached.
    """
    if grid.point_count() > MAX_GRID_POINTS:
        raise ValueError(
            f"grid has {grid.point_count()} points, above the "
            f"{MAX_GRID_POINTS} limit"
        )
    points = _grid_points(grid)

    def evaluate(point: tuple[SeedPair, float]) -> SweepRow:
        seeds, gamma = point
        m = complementarity_measures(seeds)
        return SweepRow(
            alpha1_abs=abs(seeds.alpha1),
            alpha2_abs=abs(seeds.alpha2),
            gamma=gamma,
            D2=m.D * m.D,
            P2=m.P * m.P,
            E2=m.E * m.E,
            C2=m.C * m.C,
            F_abs=m.F_abs,
            mu_s2=m.mu_s * m.mu_s,
            V=m.V,
        )

    rows = ordered_map(evaluate, points)
    if not grid.oracle_check:
        return rows

    eligible = [
        k
        for k, (seeds, _) in enumerate(points)
        if max(abs(seeds.alpha1), abs(seeds.alpha2)) <= ORACLE_ALPHA_MAX
    ]

    def oracle_residual(k: int) -> float:
        seeds = points[k][0]
        fock_route = measures_from_state(build_composite(seeds, policy))
        closed_route = complementarity_measures(seeds)
        return max(
            abs(getattr(fock_route, name) - getattr(closed_route, name))
            for name in MEASURE_FIELDS
        )

    residuals = ordered_map(oracle_residual, eligible)
    for k, residual in zip(eligible, residuals):
        rows[k] = dataclasses.replace(rows[k], oracle_residual=residual)
    return rows
