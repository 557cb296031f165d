"""B-spline regression model selection by control polygon and control net reduction."""

__version__ = "0.1.0"

from ._accel import backend_name
from .controlpolygon import (
    ControlPolygon,
    FitStats,
    InfluenceReport,
    InsertionMatrix,
    coarsened_ordinates,
    influence_of,
    insert_knot,
    insertion_matrix,
    reinserted_ordinates,
)
from .cprsel import CprRun, ReductionError, cpr_run, diagnostics, selection_cost_table, summarize
from .regress import Dataset, FitResult, RankDeficientError, design_matrix, fit_control_polygon, fit_ols, matrix_rank
from .splinecore import (
    BasisMatrix,
    KnotSequence,
    basis_matrix,
    basis_row,
    greville_sites,
    knots_from_data,
    make_knot_sequence,
    omega,
    trimmed_quantile,
)
from .tensornet import (
    CnrRun,
    ControlNet,
    DimensionalityError,
    MarginGrid,
    TensorBasis,
    TensorSizeWarning,
    cnr_run,
    conditional_influence,
    conditional_ordinates,
    conditional_polygon,
    fit_control_net,
    marginal_influence,
    tensor_basis,
    tensor_eval_sum,
    tensor_size,
)
