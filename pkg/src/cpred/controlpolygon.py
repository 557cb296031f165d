"""Control polygons, Boehm knot insertion and knot influence weights."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .splinecore import KnotSequence, basis_matrix, greville_sites

__all__ = [
    "FitStats",
    "ControlPolygon",
    "InsertionMatrix",
    "InfluenceEntry",
    "InfluenceReport",
    "insertion_matrix",
    "insert_knot",
    "coarsened_ordinates",
    "reinserted_ordinates",
    "influence_weight",
    "influence_of",
]


@dataclass(frozen=True)
class FitStats:
    """Summary of the regression that produced a polygon's ordinates."""

    rmse: float
    loglik: float
    vcov: np.ndarray = field(repr=False)
    n_covariates: int = 0
    coefficients: np.ndarray | None = field(default=None, repr=False)
    fit: object | None = field(default=None, repr=False)


@dataclass(frozen=True)
class ControlPolygon:
    knots: KnotSequence
    ordinates: np.ndarray
    fit: FitStats | None = None

    def __post_init__(self):
        theta = np.array(self.ordinates, dtype=float)
        if theta.ndim != 1 or theta.size != self.knots.n_basis:
            raise ValueError(
                f"expected {self.knots.n_basis} ordinates for order {self.knots.order} "
                f"with {self.knots.n_interior} interior knots, got {theta.size}"
            )
        if not np.all(np.isfinite(theta)):
            raise ValueError("ordinates must be finite")
        theta.setflags(write=False)
        object.__setattr__(self, "ordinates", theta)

    @property
    def abscissae(self) -> np.ndarray:
        return greville_sites(self.knots)

    @property
    def vertices(self) -> np.ndarray:
        """(k+l) x 2 array of (abscissa, ordinate) pairs."""
        return np.column_stack([self.abscissae, self.ordinates])

    def __call__(self, x) -> np.ndarray:
        """Evaluate the spline function defined by this polygon."""
        return basis_matrix(x, self.knots).values @ self.ordinates


@dataclass(frozen=True)
class InsertionMatrix:
    entries: np.ndarray
    source_knots: KnotSequence
    inserted_at: float

    @property
    def diag(self) -> np.ndarray:
        m = self.entries.shape[1]
        return self.entries[np.arange(m), np.arange(m)]

    @property
    def sub(self) -> np.ndarray:
        m = self.entries.shape[1]
        return self.entries[np.arange(1, m + 1), np.arange(m)]


def _bidiagonal(knots: KnotSequence, xi_prime: float) -> tuple[np.ndarray, np.ndarray]:
    """Diagonal and sub-diagonal of the insertion matrix for ``xi_prime``."""
    a, b = knots.boundary
    if not (a < xi_prime < b):
        raise ValueError(f"inserted knot {xi_prime!r} must lie strictly inside ({a}, {b})")
    full = knots.full
    k = knots.order
    m = knots.n_basis
    j = np.arange(1, m)
    lo = full[j]
    hi = full[j + k - 1]
    span = np.where(hi > lo, hi - lo, 1.0)
    w = np.where(xi_prime <= lo, 0.0, np.where(xi_prime >= hi, 1.0, (xi_prime - lo) / span))
    diag = np.concatenate([[1.0], w])
    sub = np.concatenate([1.0 - w, [1.0]])
    return diag, sub


def insertion_matrix(knots: KnotSequence, xi_prime: float) -> InsertionMatrix:
    """The (m+1) x m matrix mapping coarse ordinates to refined ones."""
    diag, sub = _bidiagonal(knots, float(xi_prime))
    m = diag.size
    W = np.zeros((m + 1, m))
    W[np.arange(m), np.arange(m)] = diag
    W[np.arange(1, m + 1), np.arange(m)] = sub
    return InsertionMatrix(W, knots, float(xi_prime))


def insert_knot(cp: ControlPolygon, xi_prime: float) -> ControlPolygon:
    """Refine ``cp`` by one knot without changing the spline it represents."""
    W = insertion_matrix(cp.knots, xi_prime)
    return ControlPolygon(cp.knots.with_knot(float(xi_prime)), W.entries @ cp.ordinates)


def _project(cp: ControlPolygon, j: int):
    coarse_knots = cp.knots.without(j)
    diag, sub = _bidiagonal(coarse_knots, cp.knots.knot_at(j))
    coef, resid = _kernels.bidiag_project(diag, sub, cp.ordinates)
    refined = np.zeros(coef.size + 1)
    refined[:-1] = diag * coef
    refined[1:] += sub * coef
    return coarse_knots, coef, refined, abs(float(resid))


def coarsened_ordinates(cp: ControlPolygon, j: int) -> np.ndarray:
    """Least-squares ordinates on the knot sequence with knot ``j`` removed."""
    return _project(cp, j)[1]


def reinserted_ordinates(cp: ControlPolygon, j: int) -> np.ndarray:
    """Projection of the ordinates onto the span of the coarsened polygon."""
    return _project(cp, j)[2]


def influence_weight(cp: ControlPolygon, j: int) -> float:
    return _project(cp, j)[3]


@dataclass(frozen=True)
class InfluenceEntry:
    index: int
    knot: float
    weight: float
    rank: int


@dataclass(frozen=True)
class InfluenceReport:
    entries: list[InfluenceEntry]
    original: ControlPolygon
    coarsened: list[ControlPolygon]
    reinserted: list[ControlPolygon]

    def __len__(self):
        return len(self.entries)

    @property
    def weights(self) -> np.ndarray:
        return np.array([e.weight for e in self.entries])

    @property
    def ranks(self) -> list[int]:
        return [e.rank for e in self.entries]

    def least_influential(self) -> InfluenceEntry:
        return min(self.entries, key=lambda e: e.rank)

    def table(self) -> list[dict]:
        return [
            {"index": e.index, "iknots": e.knot, "w": e.weight, "rank": e.rank}
            for e in self.entries
        ]


def rank_weights(weights, indices) -> list[int]:
    """Rank 1 = smallest weight; ties go to the smaller knot index."""
    order = sorted(range(len(weights)), key=lambda i: (weights[i], indices[i]))
    ranks = [0] * len(weights)
    for r, i in enumerate(order, start=1):
        ranks[i] = r
    return ranks


def influence_of(cp: ControlPolygon, indices=None) -> InfluenceReport:
    """Influence weight of every requested interior knot of ``cp``.

    ``indices`` are 1-based positions in the full knot sequence and default
    to every interior knot.
    """
    if indices is None:
        indices = cp.knots.interior_indices()
    indices = sorted(int(j) for j in indices)
    weights, coarsened, reinserted = [], [], []
    for j in indices:
        coarse_knots, coef, refined, w = _project(cp, j)
        weights.append(w)
        coarsened.append(ControlPolygon(coarse_knots, coef))
        reinserted.append(ControlPolygon(cp.knots, refined))
    ranks = rank_weights(weights, indices)
    entries = [
        InfluenceEntry(j, cp.knots.knot_at(j), w, r)
        for j, w, r in zip(indices, weights, ranks)
    ]
    return InfluenceReport(entries, cp, coarsened, reinserted)
