"""Knot sequences and B-spline basis evaluation.

Knot positions handed to or returned by the public API (``omega``, the
influence reports) are 1-based indices into the *full* knot sequence, so
for an order-4 spline the first interior knot has index 5. Array positions
(basis columns, ordinates) are ordinary 0-based numpy indices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import _kernels

__all__ = [
    "KnotSequence",
    "BasisMatrix",
    "make_knot_sequence",
    "knots_from_data",
    "omega",
    "basis_row",
    "basis_matrix",
    "greville_sites",
    "trimmed_quantile",
]


@dataclass(frozen=True)
class KnotSequence:
    """Polynomial order plus boundary and interior knots.

    Use :func:`make_knot_sequence` to build validated instances.
    """

    order: int
    boundary: tuple[float, float]
    interior: tuple[float, ...] = ()
    full: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        k = self.order
        a, b = self.boundary
        full = np.concatenate([np.full(k, a), np.asarray(self.interior, dtype=float), np.full(k, b)])
        full.setflags(write=False)
        object.__setattr__(self, "full", full)

    @property
    def n_interior(self) -> int:
        return len(self.interior)

    @property
    def n_basis(self) -> int:
        return self.order + len(self.interior)

    def __len__(self):
        return 2 * self.order + len(self.interior)

    def interior_indices(self) -> list[int]:
        """1-based full-sequence indices of the interior knots."""
        return list(range(self.order + 1, self.order + self.n_interior + 1))

    def knot_at(self, index: int) -> float:
        _check_interior_index(self, index)
        return float(self.full[index - 1])

    def without(self, index: int) -> "KnotSequence":
        """Drop the interior knot at 1-based full index ``index``."""
        _check_interior_index(self, index)
        pos = index - self.order - 1
        interior = self.interior[:pos] + self.interior[pos + 1 :]
        return KnotSequence(self.order, self.boundary, interior)

    def with_knot(self, value: float) -> "KnotSequence":
        a, b = self.boundary
        if not (a < value < b):
            raise ValueError(f"knot {value!r} must lie strictly inside ({a}, {b})")
        interior = tuple(sorted(self.interior + (float(value),)))
        return KnotSequence(self.order, self.boundary, interior)

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "bknots": [float(v) for v in self.boundary],
            "iknots": [float(v) for v in self.interior],
            "xi": [float(v) for v in self.full],
        }

    def __eq__(self, other):
        if not isinstance(other, KnotSequence):
            return NotImplemented
        return (
            self.order == other.order
            and self.boundary == other.boundary
            and self.interior == other.interior
        )

    def __hash__(self):
        return hash((self.order, self.boundary, self.interior))


def _check_interior_index(knots: KnotSequence, index: int) -> None:
    k, l = knots.order, knots.n_interior
    if not isinstance(index, (int, np.integer)):
        raise TypeError(f"knot index must be an integer, got {type(index).__name__}")
    if not (k + 1 <= index <= k + l):
        raise IndexError(
            f"index {index} is not an interior knot; interior indices are {k + 1}..{k + l}"
        )


def make_knot_sequence(order: int, boundary: Sequence[float], interior: Sequence[float] = ()) -> KnotSequence:
    """Validate inputs and assemble a :class:`KnotSequence`.

    >>> make_knot_sequence(2, (0, 1), [0.5]).full.tolist()
    [0.0, 0.0, 0.5, 1.0, 1.0]
    """
    if isinstance(order, bool) or int(order) != order or order < 1:
        raise ValueError(f"order must be an integer >= 1, got {order!r}")
    order = int(order)
    if len(boundary) != 2:
        raise ValueError("boundary must be a pair (a, b)")
    a, b = float(boundary[0]), float(boundary[1])
    interior = [float(v) for v in interior]
    if not all(math.isfinite(v) for v in (a, b, *interior)):
        raise ValueError("knots must be finite")
    if not a < b:
        raise ValueError(f"boundary must satisfy a < b, got ({a}, {b})")
    bad = [v for v in interior if not (a < v < b)]
    if bad:
        raise ValueError(f"interior knots {bad} are not strictly inside ({a}, {b})")
    return KnotSequence(order, (a, b), tuple(sorted(interior)))


def knots_from_data(
    x,
    *,
    order: int = 4,
    df: int | None = None,
    iknots: Sequence[float] | None = None,
    bknots: Sequence[float] | None = None,
) -> KnotSequence:
    """Knot sequence for data ``x`` from either ``df`` or explicit ``iknots``.

    With ``df``, ``df - order`` interior knots are placed at trimmed
    quantiles of ``x``. Giving both ``df`` and ``iknots`` is an error.
    """
    x = np.asarray(x, dtype=float)
    if df is not None and iknots is not None:
        raise ValueError("specify either df or iknots, not both")
    if bknots is None:
        if x.size == 0:
            raise ValueError("cannot derive boundary knots from empty data")
        bknots = (float(np.min(x)), float(np.max(x)))
    if df is not None:
        n_int = int(df) - int(order)
        if n_int < 0:
            raise ValueError(f"df ({df}) must be >= order ({order})")
        if n_int == 0:
            iknots = []
        else:
            probs = np.arange(1, n_int + 1) / (n_int + 1)
            iknots = trimmed_quantile(x, probs)
    return make_knot_sequence(order, bknots, [] if iknots is None else iknots)


def omega(x: float, j: int, knots: KnotSequence) -> float:
    """Linear ramp of ``x`` between knots ``j`` and ``j + k - 1`` (1-based)."""
    full = knots.full
    k = knots.order
    if not (1 <= j and j + k - 1 <= len(full)):
        raise IndexError(f"omega index {j} out of range for a sequence of {len(full)} knots")
    lo = full[j - 1]
    hi = full[j + k - 2]
    if x <= lo:
        return 0.0
    if x >= hi:
        return 1.0
    return float((x - lo) / (hi - lo))


def _check_support(xs, knots: KnotSequence) -> np.ndarray:
    xs = np.asarray(xs, dtype=float)
    if not np.all(np.isfinite(xs)):
        raise ValueError("x values must be finite")
    a, b = knots.boundary
    if xs.size and (xs.min() < a or xs.max() > b):
        raise ValueError(
            f"x values outside the support [{a}, {b}]: "
            f"range [{xs.min()}, {xs.max()}]; extrapolation is not supported"
        )
    return xs


def basis_row(x: float, knots: KnotSequence) -> np.ndarray:
    xs = _check_support(np.atleast_1d(float(x)), knots)
    return _kernels.basis_values(xs, knots.full, knots.order)[0]


@dataclass(frozen=True)
class BasisMatrix:
    values: np.ndarray
    knots: KnotSequence
    greville: np.ndarray | None
    x_min: float
    x_max: float

    @property
    def shape(self):
        return self.values.shape

    def __array__(self, dtype=None, copy=None):
        return self.values if dtype is None else self.values.astype(dtype)


def basis_matrix(xs, knots: KnotSequence) -> BasisMatrix:
    xs = _check_support(np.atleast_1d(xs), knots).ravel()
    if xs.size == 0:
        raise ValueError("cannot build a basis matrix for an empty x vector")
    values = _kernels.basis_values(xs, knots.full, knots.order)
    greville = greville_sites(knots) if knots.order >= 2 else None
    return BasisMatrix(values, knots, greville, float(xs.min()), float(xs.max()))


def greville_sites(knots: KnotSequence) -> np.ndarray:
    """Control-vertex abscissae: the mean of the k-1 knots after each position."""
    k = knots.order
    if k < 2:
        raise ValueError("Greville sites are undefined for order-1 splines")
    windows = np.lib.stride_tricks.sliding_window_view(knots.full[1:-1], k - 1)
    return windows.mean(axis=1)


def trimmed_quantile(data, probs) -> np.ndarray:
    """Quantiles of the unique values of ``data`` with its extremes dropped.

    Linear interpolation between order statistics (the usual "type 7" rule).

    >>> trimmed_quantile([0, 0, 1, 2, 3, 4, 4], [0.5]).tolist()
    [2.0]
    """
    data = np.asarray(data, dtype=float).ravel()
    probs = np.atleast_1d(np.asarray(probs, dtype=float))
    if not np.all(np.isfinite(data)):
        raise ValueError("data must be finite")
    if np.any(probs <= 0.0) or np.any(probs >= 1.0):
        raise ValueError("probs must lie strictly inside (0, 1)")
    uniq = np.unique(data)
    if uniq.size < 3:
        raise ValueError(f"need at least 3 unique values, got {uniq.size}")
    trimmed = uniq[1:-1]
    m = trimmed.size
    h = probs * (m - 1)
    lo = np.floor(h).astype(int)
    hi = np.minimum(lo + 1, m - 1)
    frac = h - lo
    return trimmed[lo] + frac * (trimmed[hi] - trimmed[lo])
