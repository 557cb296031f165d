"""Tensor-product B-splines, control nets and control net reduction.

Columns of a tensor basis are ordered with the first margin's index varying
fastest, so a coefficient vector reshaped in Fortran order has shape
``(n_1, n_2, ..., n_m)`` with ``n_i`` basis functions on margin ``i``.
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from . import _kernels
from .cprsel import ReductionError
from .controlpolygon import ControlPolygon, FitStats, _bidiagonal, rank_weights
from .regress import Dataset, Fitter, RankDeficientError, fit_ols
from .splinecore import KnotSequence, basis_matrix, basis_row

__all__ = [
    "DimensionalityError",
    "TensorSizeWarning",
    "TensorBasis",
    "ControlNet",
    "MarginGrid",
    "CnrRemoval",
    "CnrRun",
    "tensor_size",
    "tensor_basis",
    "tensor_eval_sum",
    "conditional_ordinates",
    "conditional_polygon",
    "conditional_influence",
    "marginal_influence",
    "fit_control_net",
    "cnr_run",
]

DEFAULT_GRID_P = 20
DEFAULT_SLICE_BUDGET = 1_000_000


class DimensionalityError(ValueError):
    """A tensor basis would have more columns than there are observations."""

    def __init__(self, n_columns, n_rows):
        self.n_columns = n_columns
        self.n_rows = n_rows
        super().__init__(
            f"tensor basis needs {n_columns} regression coefficients for {n_rows} observations; "
            "refusing without an explicit override (allow_big=True / --allow-big-tensor). "
            "Consider fixing a primary margin with CPR first and keeping it static."
        )


class TensorSizeWarning(UserWarning):
    pass


def tensor_size(margins: Sequence[KnotSequence]) -> int:
    return math.prod(m.n_basis for m in margins)


@dataclass(frozen=True)
class TensorBasis:
    margins: tuple[KnotSequence, ...]
    values: np.ndarray = field(repr=False)

    @property
    def shape(self):
        return self.values.shape

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(m.n_basis for m in self.margins)

    def multi_index(self, column: int) -> tuple[int, ...]:
        """Flat column -> per-margin basis indices (0-based, first fastest)."""
        return tuple(int(v) for v in np.unravel_index(column, self.dims, order="F"))

    def flat_index(self, multi: Sequence[int]) -> int:
        return int(np.ravel_multi_index(tuple(multi), self.dims, order="F"))


def _check_columns(columns, margins):
    if len(columns) != len(margins):
        raise ValueError(f"{len(columns)} data columns for {len(margins)} margins")
    if len(margins) < 2:
        raise ValueError("a tensor product needs at least two margins")
    cols = [np.atleast_1d(np.asarray(c, dtype=float)) for c in columns]
    if len({c.size for c in cols}) != 1:
        raise ValueError("data columns have unequal lengths")
    return cols


def tensor_basis(columns, margins: Sequence[KnotSequence], allow_big: bool = False) -> TensorBasis:
    """Row-wise tensor product of the marginal bases, folded left to right."""
    margins = tuple(margins)
    cols = _check_columns(columns, margins)
    n_rows = cols[0].size
    n_cols = tensor_size(margins)
    if n_cols > n_rows:
        if not allow_big:
            raise DimensionalityError(n_cols, n_rows)
        warnings.warn(
            f"tensor basis has {n_cols} columns for {n_rows} rows",
            TensorSizeWarning,
            stacklevel=2,
        )
    return TensorBasis(margins, _tensor_values(cols, margins))


def _tensor_values(cols, margins):
    values = basis_matrix(cols[0], margins[0]).values
    for col, knots in zip(cols[1:], margins[1:]):
        values = _kernels.row_kronecker(values, basis_matrix(col, knots).values)
    return values


@dataclass(frozen=True)
class ControlNet:
    margins: tuple[KnotSequence, ...]
    theta: np.ndarray
    fit: FitStats | None = None

    def __post_init__(self):
        margins = tuple(self.margins)
        object.__setattr__(self, "margins", margins)
        theta = np.array(self.theta, dtype=float).ravel()
        if theta.size != tensor_size(margins):
            raise ValueError(f"theta has {theta.size} entries, expected {tensor_size(margins)}")
        if not np.all(np.isfinite(theta)):
            raise ValueError("theta must be finite")
        theta.setflags(write=False)
        object.__setattr__(self, "theta", theta)

    @property
    def m(self) -> int:
        return len(self.margins)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(k.n_basis for k in self.margins)

    def tensor(self) -> np.ndarray:
        return self.theta.reshape(self.dims, order="F")

    def __call__(self, *columns) -> np.ndarray:
        # evaluation involves no regression, so the size guard does not apply
        return _tensor_values(_check_columns(columns, self.margins), self.margins) @ self.theta


def tensor_eval_sum(point: Sequence[float], net: ControlNet) -> float:
    """Evaluate ``net`` at one point by explicit nested summation."""
    if len(point) != net.m:
        raise ValueError(f"point has {len(point)} coordinates, net has {net.m} margins")
    rows = [basis_row(x, knots) for x, knots in zip(point, net.margins)]
    theta = net.tensor()
    total = 0.0
    for multi in itertools.product(*(range(d) for d in net.dims)):
        term = theta[multi]
        for r, j in zip(rows, multi):
            term *= r[j]
        total += term
    return float(total)


def _other_margins(net: ControlNet, free: int) -> list[int]:
    if not 0 <= free < net.m:
        raise IndexError(f"margin {free} out of range for {net.m} margins")
    return [i for i in range(net.m) if i != free]


def _slice_matrix(net: ControlNet, free: int, fixed_rows: Sequence[np.ndarray]) -> np.ndarray:
    """Contract theta against basis rows of every fixed margin.

    ``fixed_rows[i]`` is an (S, n_i) array for the i-th non-free margin; the
    result is (n_free, S), one conditional ordinate vector per slice.
    """
    t = np.moveaxis(net.tensor(), free, 0)
    n_free = t.shape[0]
    n_slices = fixed_rows[0].shape[0]
    # contract the axis next to the free one each time; the slice axis is carried last
    t = np.einsum("fj...,sj->f...s", t, fixed_rows[0])
    for rows in fixed_rows[1:]:
        t = np.einsum("fj...s,sj->f...s", t, rows)
    out = t.reshape(n_free, n_slices)
    return out


def conditional_ordinates(net: ControlNet, free_margin: int, fixed: Sequence[float]) -> np.ndarray:
    """Ordinates of the uni-variable spline obtained by fixing the other margins."""
    others = _other_margins(net, free_margin)
    fixed = list(np.atleast_1d(np.asarray(fixed, dtype=float)))
    if len(fixed) != len(others):
        raise ValueError(f"need {len(others)} fixed values, got {len(fixed)}")
    rows = [basis_row(v, net.margins[i])[None, :] for v, i in zip(fixed, others)]
    return _slice_matrix(net, free_margin, rows)[:, 0]


def conditional_polygon(net: ControlNet, free_margin: int, fixed: Sequence[float]) -> ControlPolygon:
    return ControlPolygon(net.margins[free_margin], conditional_ordinates(net, free_margin, fixed))


def _slice_weights(knots: KnotSequence, j: int, slices: np.ndarray) -> np.ndarray:
    """Influence weight of knot ``j`` on each column of ``slices``."""
    coarse = knots.without(j)
    diag, sub = _bidiagonal(coarse, knots.knot_at(j))
    _, resid = _kernels.bidiag_project(diag, sub, slices)
    return np.abs(resid)


def conditional_influence(net: ControlNet, margin: int, knot_index: int, fixed: Sequence[float]) -> float:
    slices = conditional_ordinates(net, margin, fixed)[:, None]
    return float(_slice_weights(net.margins[margin], knot_index, slices)[0])


@dataclass(frozen=True)
class MarginGrid:
    """Per-margin conditioning values: p evenly spaced interior points."""

    p: int = DEFAULT_GRID_P
    values: Mapping[int, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        if int(self.p) < 1:
            raise ValueError("grid size p must be >= 1")

    @staticmethod
    def interior_points(column, p: int) -> np.ndarray:
        column = np.asarray(column, dtype=float)
        lo, hi = float(column.min()), float(column.max())
        t = np.arange(1, p + 1)
        return lo + t * (hi - lo) / (p + 1)

    @classmethod
    def from_data(cls, columns, p: int = DEFAULT_GRID_P) -> "MarginGrid":
        if int(p) < 1:
            raise ValueError("grid size p must be >= 1")
        values = {i: cls.interior_points(c, p) for i, c in enumerate(columns)}
        return cls(int(p), values)

    def for_margin(self, i: int) -> np.ndarray:
        try:
            v = np.asarray(self.values[i], dtype=float)
        except KeyError:
            raise KeyError(f"grid has no values for margin {i}") from None
        if v.size == 0:
            raise ValueError(f"grid for margin {i} is empty")
        return v


def _grid_slices(net: ControlNet, margin: int, grid: MarginGrid, budget: int) -> np.ndarray:
    others = _other_margins(net, margin)
    values = [grid.for_margin(i) for i in others]
    n_slices = math.prod(v.size for v in values)
    if n_slices > budget:
        raise ValueError(
            f"conditioning grid has {n_slices} slices, above the budget of {budget}"
        )
    rows = [basis_matrix(v, net.margins[i]).values for v, i in zip(values, others)]
    # Cartesian product of grid points with the first other-margin fastest
    expanded = []
    for pos, r in enumerate(rows):
        inner = math.prod(x.shape[0] for x in rows[:pos])
        outer = math.prod(x.shape[0] for x in rows[pos + 1 :])
        expanded.append(np.tile(np.repeat(r, inner, axis=0), (outer, 1)))
    return _slice_matrix(net, margin, expanded)


def marginal_influence(
    net: ControlNet,
    margin: int,
    knot_index: int,
    grid: MarginGrid,
    budget: int = DEFAULT_SLICE_BUDGET,
) -> float:
    """Largest conditional influence weight over the conditioning grid."""
    slices = _grid_slices(net, margin, grid, budget)
    return float(_slice_weights(net.margins[margin], knot_index, slices).max())


# ---------------------------------------------------------------------------
# fitting and reduction
# ---------------------------------------------------------------------------


def _design(data: Dataset, margins, allow_big):
    cols = [data.columns[p] for p in data.predictors]
    basis = tensor_basis(cols, margins, allow_big=allow_big).values
    return np.hstack([basis, data.covariate_matrix()])


def fit_control_net(
    data: Dataset,
    margins: Sequence[KnotSequence],
    keep_fit: bool = False,
    fitter: Fitter = fit_ols,
    allow_big: bool = False,
) -> ControlNet:
    margins = tuple(margins)
    if len(data.predictors) != len(margins):
        raise ValueError(f"dataset has {len(data.predictors)} predictors for {len(margins)} margins")
    X = _design(data, margins, allow_big)
    result = fitter(X, data.y)
    ncoef = tensor_size(margins)
    stats = FitStats(
        rmse=result.rmse,
        loglik=result.loglik,
        vcov=result.vcov,
        n_covariates=len(data.covariates),
        coefficients=result.coefficients,
        fit=result if keep_fit else None,
    )
    return ControlNet(margins, result.coefficients[:ncoef], stats)


@dataclass(frozen=True)
class CnrRemoval:
    step: int
    margin: int
    index: int
    knot: float
    weight: float


@dataclass
class CnrRun:
    """Trajectory of a CNR run; ``nets[0]`` is the smallest model."""

    nets: list[ControlNet]
    removed: list[CnrRemoval]
    reducible: tuple[int, ...]
    n_fits: int = 0

    def __len__(self):
        return len(self.nets)

    def __getitem__(self, index: int) -> ControlNet:
        if not 1 <= index <= len(self.nets):
            raise IndexError(f"model index {index} outside 1..{len(self.nets)}")
        return self.nets[index - 1]

    def summary(self) -> list[dict]:
        rows = []
        for i, net in enumerate(self.nets, start=1):
            rows.append(
                {
                    "index": i,
                    "l": [k.n_interior for k in net.margins],
                    "dfs": tensor_size(net.margins),
                    "rmse": net.fit.rmse if net.fit else float("nan"),
                    "loglik": net.fit.loglik if net.fit else float("nan"),
                }
            )
        return rows


def score_net(net: ControlNet, reducible, grid: MarginGrid, budget: int = DEFAULT_SLICE_BUDGET):
    """Marginal influence of every interior knot on the reducible margins.

    Returns a list of dicts (margin, index, knot, weight, rank) ordered by
    margin then knot index; rank 1 is the global minimum.
    """
    rows = []
    for margin in sorted(reducible):
        knots = net.margins[margin]
        if knots.n_interior == 0:
            continue
        slices = _grid_slices(net, margin, grid, budget)
        for j in knots.interior_indices():
            w = float(_slice_weights(knots, j, slices).max())
            rows.append({"margin": margin, "index": j, "knot": knots.knot_at(j), "weight": w})
    keys = [(r["margin"], r["index"]) for r in rows]
    ranks = rank_weights([r["weight"] for r in rows], keys)
    for r, rank in zip(rows, ranks):
        r["rank"] = rank
    return rows


def cnr_run(
    data: Dataset,
    margins: Sequence[KnotSequence],
    reducible: Sequence[int] | None = None,
    grid: MarginGrid | int = DEFAULT_GRID_P,
    fitter: Fitter = fit_ols,
    allow_big: bool = False,
    budget: int = DEFAULT_SLICE_BUDGET,
) -> CnrRun:
    """Remove the globally least influential knot across reducible margins, refit, repeat."""
    margins = tuple(margins)
    if reducible is None:
        reducible = range(len(margins))
    reducible = tuple(sorted(set(int(i) for i in reducible)))
    if not reducible:
        raise ValueError("nothing to reduce: the set of reducible margins is empty")
    bad = [i for i in reducible if not 0 <= i < len(margins)]
    if bad:
        raise IndexError(f"reducible margins {bad} out of range for {len(margins)} margins")
    if not isinstance(grid, MarginGrid):
        grid = MarginGrid.from_data([data.columns[p] for p in data.predictors], int(grid))

    nets, removed = [], []
    step = 0
    while True:
        try:
            net = fit_control_net(data, margins, fitter=fitter, allow_big=allow_big)
        except RankDeficientError as err:
            raise ReductionError(step, [list(k.interior) for k in margins], err) from err
        nets.append(net)
        scores = score_net(net, reducible, grid, budget)
        if not scores:
            break
        step += 1
        best = min(scores, key=lambda r: r["rank"])
        removed.append(CnrRemoval(step, best["margin"], best["index"], best["knot"], best["weight"]))
        margins = tuple(
            k.without(best["index"]) if i == best["margin"] else k for i, k in enumerate(margins)
        )

    nets.reverse()
    return CnrRun(nets, removed, reducible, n_fits=len(nets))
