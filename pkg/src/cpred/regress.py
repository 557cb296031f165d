"""Design matrices and ordinary least squares fits for spline regression."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import numpy as np

from .controlpolygon import ControlPolygon, FitStats
from .splinecore import KnotSequence, basis_matrix

__all__ = [
    "Dataset",
    "FitResult",
    "Fitter",
    "RankDeficientError",
    "design_matrix",
    "matrix_rank",
    "fit_ols",
    "fit_control_polygon",
]


class RankDeficientError(ValueError):
    """The design matrix does not have full column rank."""

    def __init__(self, rank, ncol, message=None):
        self.rank = rank
        self.ncol = ncol
        super().__init__(message or f"design matrix is rank deficient: rank {rank} < {ncol} columns")


@dataclass(frozen=True)
class Dataset:
    """Named numeric columns plus the roles they play in the model.

    ``predictors`` holds one name for a uni-variable model and several for a
    tensor-product model. There is no intercept: the spline basis carries
    the varying mean.
    """

    columns: Mapping[str, np.ndarray]
    response: str
    predictors: tuple[str, ...]
    covariates: tuple[str, ...] = ()

    def __post_init__(self):
        preds = (self.predictors,) if isinstance(self.predictors, str) else tuple(self.predictors)
        covs = (self.covariates,) if isinstance(self.covariates, str) else tuple(self.covariates)
        object.__setattr__(self, "predictors", preds)
        object.__setattr__(self, "covariates", covs)
        if not preds:
            raise ValueError("at least one predictor column is required")

        cols = {}
        lengths = set()
        for name in (self.response, *preds, *covs):
            if name not in self.columns:
                raise KeyError(f"column {name!r} not found; available: {sorted(self.columns)}")
            values = np.asarray(self.columns[name], dtype=float)
            if values.ndim != 1:
                raise ValueError(f"column {name!r} must be one-dimensional")
            if not np.all(np.isfinite(values)):
                raise ValueError(f"column {name!r} contains non-finite values")
            cols[name] = values
            lengths.add(values.size)
        if len(lengths) != 1:
            raise ValueError("referenced columns have unequal lengths")
        if 0 in lengths:
            raise ValueError("dataset has no rows")
        object.__setattr__(self, "columns", cols)

    @classmethod
    def from_arrays(cls, x, y, covariates: Mapping[str, np.ndarray] | None = None) -> "Dataset":
        cols = {"x": x, "y": y}
        cols.update(covariates or {})
        return cls(cols, "y", ("x",), tuple(covariates or ()))

    @property
    def n(self) -> int:
        return self.columns[self.response].size

    @property
    def y(self) -> np.ndarray:
        return self.columns[self.response]

    @property
    def predictor(self) -> str:
        if len(self.predictors) != 1:
            raise ValueError(f"expected a single predictor, dataset has {len(self.predictors)}")
        return self.predictors[0]

    @property
    def x(self) -> np.ndarray:
        return self.columns[self.predictor]

    def covariate_matrix(self) -> np.ndarray:
        if not self.covariates:
            return np.empty((self.n, 0))
        return np.column_stack([self.columns[c] for c in self.covariates])


@dataclass(frozen=True)
class FitResult:
    coefficients: np.ndarray
    rmse: float
    loglik: float
    vcov: np.ndarray = field(repr=False)
    residuals: np.ndarray = field(repr=False)
    rank: int


Fitter = Callable[[np.ndarray, np.ndarray], FitResult]


def design_matrix(data: Dataset, knots: KnotSequence) -> np.ndarray:
    basis = basis_matrix(data.x, knots).values
    return np.hstack([basis, data.covariate_matrix()])


def matrix_rank(m) -> int:
    """Numerical rank: singular values above max(dim) * eps * sigma_max."""
    m = np.atleast_2d(np.asarray(m, dtype=float))
    if m.size == 0:
        return 0
    s = np.linalg.svd(m, compute_uv=False)
    tol = max(m.shape) * np.finfo(float).eps * s.max()
    return int(np.sum(s > tol))


def _gaussian_loglik(rss: float, n: int) -> float:
    if rss <= 0.0:
        return math.inf
    return -0.5 * n * (math.log(2.0 * math.pi) + math.log(rss / n) + 1.0)


def fit_ols(X, y, check_rank: bool = True) -> FitResult:
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    n, p = X.shape
    if y.shape != (n,):
        raise ValueError(f"response has {y.size} values, design has {n} rows")
    rank = matrix_rank(X)
    if rank < p:
        if check_rank:
            raise RankDeficientError(rank, p)
        coef, *_ = np.linalg.lstsq(X, y, rcond=None)
        xtx_inv = np.linalg.pinv(X.T @ X)
    else:
        q, r = np.linalg.qr(X)
        coef = np.linalg.solve(r, q.T @ y)
        r_inv = np.linalg.solve(r, np.eye(p))
        xtx_inv = r_inv @ r_inv.T

    resid = y - X @ coef
    rss = float(resid @ resid)
    dof = n - rank
    sigma2 = rss / dof if dof > 0 else math.nan
    vcov = sigma2 * xtx_inv
    vcov = 0.5 * (vcov + vcov.T)
    return FitResult(
        coefficients=coef,
        rmse=math.sqrt(rss / n),
        loglik=_gaussian_loglik(rss, n),
        vcov=vcov,
        residuals=resid,
        rank=rank,
    )


def fit_control_polygon(
    data: Dataset,
    knots: KnotSequence,
    keep_fit: bool = False,
    fitter: Fitter = fit_ols,
) -> ControlPolygon:
    """Regress the response on the spline basis (plus covariates)."""
    X = design_matrix(data, knots)
    result = fitter(X, data.y)
    nb = knots.n_basis
    stats = FitStats(
        rmse=result.rmse,
        loglik=result.loglik,
        vcov=result.vcov,
        n_covariates=len(data.covariates),
        coefficients=result.coefficients,
        fit=result if keep_fit else None,
    )
    return ControlPolygon(knots, result.coefficients[:nb], stats)
