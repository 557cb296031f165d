"""Control polygon reduction: backward knot elimination by influence weight."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .controlpolygon import ControlPolygon, influence_of
from .regress import Dataset, Fitter, RankDeficientError, fit_control_polygon, fit_ols
from .splinecore import KnotSequence

__all__ = [
    "Removal",
    "CprRun",
    "DiagnosticBundle",
    "ReductionError",
    "cpr_run",
    "summarize",
    "diagnostics",
    "selection_cost_table",
]


class ReductionError(RuntimeError):
    """A refit failed part way through a reduction run."""

    def __init__(self, step, knots, cause):
        self.step = step
        self.knots = knots
        self.cause = cause
        super().__init__(f"fit failed at step {step} with knots {knots}: {cause}")


@dataclass(frozen=True)
class Removal:
    step: int
    index: int
    knot: float
    weight: float


@dataclass
class CprRun:
    """Trajectory of a CPR run.

    ``polygons[i]`` has ``i`` interior knots, so the 1-based model index used
    in reports is ``i + 1``.
    """

    polygons: list[ControlPolygon]
    removed: list[Removal]
    n_fits: int = 0

    def __len__(self):
        return len(self.polygons)

    def __getitem__(self, index: int) -> ControlPolygon:
        """1-based model index, as in the summary table."""
        if not 1 <= index <= len(self.polygons):
            raise IndexError(f"model index {index} outside 1..{len(self.polygons)}")
        return self.polygons[index - 1]

    @property
    def order(self) -> int:
        return self.polygons[0].knots.order

    def summary(self) -> list[dict]:
        return summarize(self)


def cpr_run(
    data: Dataset,
    initial_knots: KnotSequence,
    fitter: Fitter = fit_ols,
) -> CprRun:
    """Fit, drop the least influential knot, refit, until no interior knots remain.

    Exactly ``L + 1`` fits are made for ``L`` initial interior knots.
    """
    knots = initial_knots
    trajectory = []
    removed = []
    step = 0
    while True:
        try:
            cp = fit_control_polygon(data, knots, keep_fit=False, fitter=fitter)
        except RankDeficientError as err:
            raise ReductionError(step, list(knots.interior), err) from err
        trajectory.append(cp)
        if knots.n_interior == 0:
            break
        step += 1
        least = influence_of(cp).least_influential()
        removed.append(Removal(step, least.index, least.knot, least.weight))
        knots = knots.without(least.index)

    trajectory.reverse()
    return CprRun(trajectory, removed, n_fits=len(trajectory))


def summarize(run) -> list[dict]:
    """One row per model index: (index, l, dfs, rmse, loglik)."""
    rows = []
    for i, poly in enumerate(run.polygons, start=1):
        rows.append(
            {
                "index": i,
                "l": poly.knots.n_interior,
                "dfs": poly.knots.n_basis,
                "rmse": poly.fit.rmse if poly.fit else float("nan"),
                "loglik": poly.fit.loglik if poly.fit else float("nan"),
            }
        )
    return rows


@dataclass
class DiagnosticBundle:
    overlay: list[dict] = field(default_factory=list)
    rmse: list[dict] = field(default_factory=list)


def diagnostics(run: CprRun, to: int | None = None, resolution: int = 200) -> DiagnosticBundle:
    """Plot-ready data for the sequential polygon and rmse diagnostics."""
    n = len(run.polygons)
    if to is None:
        to = n
    if not 1 <= to <= n:
        raise IndexError(f"'to' must lie in 1..{n}, got {to}")
    bundle = DiagnosticBundle()
    summary = summarize(run)
    for i in range(1, to + 1):
        poly = run[i]
        a, b = poly.knots.boundary
        x = np.linspace(a, b, resolution)
        bundle.overlay.append(
            {
                "index": i,
                "iknots": list(poly.knots.interior),
                "vertices": poly.vertices.tolist(),
                "trace": np.column_stack([x, poly(x)]).tolist(),
            }
        )
        bundle.rmse.append(summary[i - 1])
    return bundle


def selection_cost_table(L: int) -> dict:
    """Number of regression fits needed by each selection strategy."""
    if L < 0:
        raise ValueError("L must be non-negative")
    return {"cpr": L + 1, "backward": L * (L + 1) // 2 + 1, "grid": 2**L}
