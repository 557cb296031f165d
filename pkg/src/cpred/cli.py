"""Command-line interface: ``cpred {basis,influence,cpr,cnr,simulate}``.

Exit codes: 0 success, 2 configuration or validation error, 3 numerical
failure (rank deficiency), 4 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import math
import os
import shutil
import sys
import tempfile
from pathlib import Path

import numpy as np

from . import __version__
from .controlpolygon import ControlPolygon, influence_of
from .cprsel import ReductionError, cpr_run, diagnostics
from .regress import Dataset, RankDeficientError, fit_control_polygon
from .splinecore import basis_matrix, greville_sites, knots_from_data, make_knot_sequence
from .svgplot import LinePlot
from .tensornet import DimensionalityError, MarginGrid, cnr_run, tensor_size

log = logging.getLogger("cpred")

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_IO = 4

REF_ORDER = 4
REF_BKNOTS = (0.0, 6.0)
REF_IKNOTS = (1.0, 1.5, 2.3, 4.0, 4.5)
REF_THETA = (1.0, 0.0, 3.5, 4.2, 3.7, -0.5, -0.7, 2.0, 1.5)

DEFAULTS = {
    "input": None,
    "response": "y",
    "predictor": "x",
    "covariates": "",
    "order": "4",
    "df": None,
    "iknots": None,
    "bknots": None,
    "margins": None,
    "grid_p": 20,
    "out": ".",
    "format": "csv,json,svg",
    "seed": 0,
    "keep_fit": False,
    "allow_big_tensor": False,
    "theta": None,
    "indices": None,
    "to": None,
    "resolution": 25,
    "generator": "sine",
    "n": 200,
    "sigma": 0.0,
    "with_covariate": False,
}


class ConfigError(ValueError):
    pass


# ---------------------------------------------------------------------------
# parsing helpers
# ---------------------------------------------------------------------------


def _floats(text):
    text = str(text).strip()
    if not text:
        return []
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as err:
        raise ConfigError(f"expected a comma separated list of numbers, got {text!r}") from err


def _ints(text):
    vals = _floats(text)
    if any(v != int(v) for v in vals):
        raise ConfigError(f"expected integers, got {text!r}")
    return [int(v) for v in vals]


def _per_margin(text, m, parse, name):
    """Split ``a;b;c`` into one entry per margin (a single entry is broadcast)."""
    if text is None:
        return [None] * m
    parts = str(text).split(";")
    if len(parts) == 1 and m > 1 and parse is not _floats:
        parts = parts * m
    if len(parts) != m:
        raise ConfigError(f"--{name} gives {len(parts)} entries for {m} margins")
    return [parse(p) for p in parts]


def _scalar_list(text, m, name):
    vals = _ints(text)
    if len(vals) == 1:
        vals = vals * m
    if len(vals) != m:
        raise ConfigError(f"--{name} gives {len(vals)} values for {m} margins")
    return vals


def _fmt(v):
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, (list, tuple)):
        return ";".join(_fmt(x) for x in v)
    return str(v)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        f = float(obj)
        return f if math.isfinite(f) else None
    return obj


class Outputs:
    """Stages files in a temp dir and moves them into place on commit."""

    def __init__(self, out_dir, formats):
        self.out_dir = Path(out_dir)
        self.formats = formats
        self._staged = []
        self._tmp = None

    def __enter__(self):
        self.out_dir.mkdir(parents=True, exist_ok=True)
        self._tmp = Path(tempfile.mkdtemp(prefix=".cpred-", dir=self.out_dir))
        return self

    def __exit__(self, exc_type, exc, tb):
        if exc_type is None:
            for name in self._staged:
                os.replace(self._tmp / name, self.out_dir / name)
        shutil.rmtree(self._tmp, ignore_errors=True)
        return False

    def csv(self, name, header, rows):
        if "csv" not in self.formats:
            return
        with open(self._tmp / name, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\r\n")
            w.writerow(header)
            for row in rows:
                w.writerow([_fmt(v) for v in row])
        self._staged.append(name)

    def json(self, name, payload):
        if "json" not in self.formats:
            return
        with open(self._tmp / name, "w", encoding="utf-8") as fh:
            json.dump(_jsonable(payload), fh, sort_keys=True, indent=2, allow_nan=False, ensure_ascii=False)
            fh.write("\n")
        self._staged.append(name)

    def svg(self, name, plot):
        if "svg" not in self.formats:
            return
        with open(self._tmp / name, "w", encoding="utf-8") as fh:
            fh.write(plot.render())
        self._staged.append(name)

    def written(self):
        return [str(self.out_dir / n) for n in self._staged]


def read_csv(path):
    """Read a headed numeric CSV into a dict of string-valued columns."""
    path = Path(path)
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ConfigError(f"input file {path} is empty") from None
        header = [h.strip() for h in header]
        rows = [r for r in reader if r and any(c.strip() for c in r)]
    if not rows:
        raise ConfigError(f"input file {path} has a header but no data rows")
    if any(len(r) != len(header) for r in rows):
        raise ConfigError(f"input file {path} has rows with the wrong number of fields")
    return {name: [r[i] for r in rows] for i, name in enumerate(header)}


def _numeric(raw, name):
    if name not in raw:
        raise ConfigError(f"column {name!r} not found; available: {sorted(raw)}")
    try:
        return np.array([float(v) for v in raw[name]])
    except ValueError as err:
        raise ConfigError(f"column {name!r} is not numeric: {err}") from err


def load_dataset(cfg, n_predictors=None) -> Dataset:
    if not cfg["input"]:
        raise ConfigError("--input is required")
    raw = read_csv(cfg["input"])
    predictors = [p.strip() for p in str(cfg["predictor"]).split(",") if p.strip()]
    if n_predictors is not None and len(predictors) != n_predictors:
        raise ConfigError(f"expected {n_predictors} predictor column(s), got {predictors}")
    covariates = [c.strip() for c in str(cfg["covariates"] or "").split(",") if c.strip()]
    names = [cfg["response"], *predictors, *covariates]
    cols = {name: _numeric(raw, name) for name in names}
    return Dataset(cols, cfg["response"], tuple(predictors), tuple(covariates))


def build_margins(cfg, columns):
    """One knot sequence per predictor column from order/df/iknots/bknots."""
    m = len(columns)
    if cfg["df"] is not None and cfg["iknots"] is not None:
        raise ConfigError(
            "both --df and --iknots were given; when both are specified the explicit "
            "interior knots would take precedence, which is refused here to avoid "
            "silently ignoring --df"
        )
    orders = _scalar_list(cfg["order"], m, "order")
    dfs = _scalar_list(cfg["df"], m, "df") if cfg["df"] is not None else [None] * m
    iknots = _per_margin(cfg["iknots"], m, _floats, "iknots")
    bknots = _per_margin(cfg["bknots"], m, _floats, "bknots")
    margins = []
    for i in range(m):
        bk = bknots[i]
        if bk is not None and len(bk) != 2:
            raise ConfigError("--bknots needs exactly two values per margin")
        margins.append(knots_from_data(columns[i], order=orders[i], df=dfs[i], iknots=iknots[i], bknots=bk))
    return margins


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_basis(cfg):
    formats = cfg["formats"]
    if not cfg["input"]:
        raise ConfigError("--input is required for basis")
    predictors = [p.strip() for p in str(cfg["predictor"]).split(",") if p.strip()]
    if len(predictors) != 1:
        raise ConfigError("basis takes a single --predictor column")
    x = _numeric(read_csv(cfg["input"]), predictors[0])
    if not np.all(np.isfinite(x)):
        raise ConfigError(f"column {predictors[0]!r} contains non-finite values")
    (knots,) = build_margins(cfg, [x])
    bmat = basis_matrix(x, knots)
    meta = knots.to_dict()
    meta["xi_star"] = greville_sites(knots).tolist() if knots.order >= 2 else None
    meta["dim"] = list(bmat.shape)
    with Outputs(cfg["out"], formats) as out:
        header = ["x"] + [f"B{j}" for j in range(1, knots.n_basis + 1)]
        out.csv("basis.csv", header, ([xv, *row] for xv, row in zip(x, bmat.values)))
        out.json("knots.json", meta)
        if "svg" in formats:
            order = np.argsort(x, kind="stable")
            plot = LinePlot("B-spline basis", "x", "B(x)")
            for j in range(knots.n_basis):
                plot.add(x[order], bmat.values[order, j])
            out.svg("basis.svg", plot)
    return out.written()


def _polygon_payload(cp: ControlPolygon, **extra):
    payload = {
        "order": cp.knots.order,
        "iknots": list(cp.knots.interior),
        "xi": cp.knots.full.tolist(),
        "xi_star": cp.abscissae.tolist(),
        "theta": cp.ordinates.tolist(),
    }
    if cp.fit is not None:
        payload["rmse"] = cp.fit.rmse
        payload["loglik"] = cp.fit.loglik
        payload["coefficients"] = cp.fit.coefficients
    payload.update(extra)
    return payload


def cmd_influence(cfg):
    if cfg["theta"] is not None:
        if cfg["input"] is None and cfg["bknots"] is None:
            raise ConfigError("an explicit --theta needs --bknots (or --input to derive them)")
        order = _ints(cfg["order"])
        if len(order) != 1:
            raise ConfigError("influence works on a single margin")
        if cfg["df"] is not None:
            raise ConfigError("--df cannot be combined with an explicit --theta; give --iknots")
        bk = _floats(cfg["bknots"]) if cfg["bknots"] is not None else None
        if bk is None:
            data = load_dataset(cfg, n_predictors=1)
            bk = [float(data.x.min()), float(data.x.max())]
        if len(bk) != 2:
            raise ConfigError("--bknots needs exactly two values")
        knots = make_knot_sequence(order[0], bk, _floats(cfg["iknots"] or ""))
        cp = ControlPolygon(knots, _floats(cfg["theta"]))
    else:
        data = load_dataset(cfg, n_predictors=1)
        (knots,) = build_margins(cfg, [data.x])
        cp = fit_control_polygon(data, knots, keep_fit=cfg["keep_fit"])

    indices = _ints(cfg["indices"]) if cfg["indices"] else None
    report = influence_of(cp, indices)
    with Outputs(cfg["out"], cfg["formats"]) as out:
        out.csv(
            "influence.csv",
            ["index", "iknots", "w", "rank"],
            ([e.index, e.knot, e.weight, e.rank] for e in report.entries),
        )
        out.json(
            "influence.json",
            {
                "original": _polygon_payload(cp),
                "weights": report.table(),
                "coarsened": [
                    _polygon_payload(c, removed_index=e.index, removed_knot=e.knot)
                    for c, e in zip(report.coarsened, report.entries)
                ],
                "reinserted": [
                    _polygon_payload(r, removed_index=e.index, removed_knot=e.knot)
                    for r, e in zip(report.reinserted, report.entries)
                ],
            },
        )
        if "svg" in cfg["formats"]:
            plot = LinePlot("Knot influence", "x", "theta")
            plot.add(cp.abscissae, cp.ordinates, label="original", markers=True, color="#000000")
            for c, r, e in zip(report.coarsened, report.reinserted, report.entries):
                plot.add(c.abscissae, c.ordinates, label=f"coarsened {e.index}", dashed=True)
                plot.add(r.abscissae, r.ordinates, label=f"reinserted {e.index}", markers=True)
            out.svg("influence.svg", plot)
    return out.written()


def cmd_cpr(cfg):
    data = load_dataset(cfg, n_predictors=1)
    (knots,) = build_margins(cfg, [data.x])
    run = cpr_run(data, knots)
    summary = run.summary()
    to = int(cfg["to"]) if cfg["to"] is not None else len(run)
    bundle = diagnostics(run, to=to)

    with Outputs(cfg["out"], cfg["formats"]) as out:
        out.csv(
            "summary.csv",
            ["index", "l", "dfs", "rmse", "loglik"],
            ([r["index"], r["l"], r["dfs"], r["rmse"], r["loglik"]] for r in summary),
        )
        out.csv(
            "removals.csv",
            ["step", "index", "knot", "weight"],
            ([r.step, r.index, r.knot, r.weight] for r in run.removed),
        )
        out.json(
            "polygons.json",
            {
                "order": run.order,
                "n_fits": run.n_fits,
                "polygons": [
                    _polygon_payload(p, index=i, l=p.knots.n_interior, dfs=p.knots.n_basis)
                    for i, p in enumerate(run.polygons, start=1)
                ],
            },
        )
        out.csv(
            "rmse_curve.csv",
            ["index", "l", "dfs", "rmse"],
            ([r["index"], r["l"], r["dfs"], r["rmse"]] for r in bundle.rmse),
        )
        overlay_rows = []
        for item in bundle.overlay:
            overlay_rows += [[item["index"], "vertex", x, y] for x, y in item["vertices"]]
            overlay_rows += [[item["index"], "spline", x, y] for x, y in item["trace"]]
        out.csv("overlay.csv", ["index", "kind", "x", "y"], overlay_rows)
        if "svg" in cfg["formats"]:
            rplot = LinePlot("RMSE by model index", "model index", "RMSE")
            rplot.add([r["index"] for r in bundle.rmse], [r["rmse"] for r in bundle.rmse], markers=True)
            out.svg("rmse.svg", rplot)
            cplot = LinePlot("Sequential control polygons", "x", "theta")
            for item in bundle.overlay:
                v = np.asarray(item["vertices"])
                cplot.add(v[:, 0], v[:, 1], label=f"index {item['index']}", markers=True)
            out.svg("polygons.svg", cplot)
    return out.written()


def cmd_cnr(cfg):
    data = load_dataset(cfg)
    m = len(data.predictors)
    if m < 2:
        raise ConfigError("cnr needs at least two --predictor columns")
    columns = [data.columns[p] for p in data.predictors]
    margins = build_margins(cfg, columns)
    if cfg["margins"] is None:
        reducible = list(range(m))
    else:
        reducible = [i - 1 for i in _ints(cfg["margins"])]
        if not reducible:
            raise ConfigError("nothing to reduce: --margins is empty")
        if any(not 0 <= i < m for i in reducible):
            raise ConfigError(f"--margins must be in 1..{m}")
    grid_p = int(cfg["grid_p"])
    if grid_p < 1:
        raise ConfigError("--grid-p must be >= 1")
    n_coef = tensor_size(margins)
    if n_coef > data.n and not cfg["allow_big_tensor"]:
        raise DimensionalityError(n_coef, data.n)
    run = cnr_run(
        data,
        margins,
        reducible=reducible,
        grid=MarginGrid.from_data(columns, grid_p),
        allow_big=cfg["allow_big_tensor"],
    )

    res = int(cfg["resolution"])
    if res < 2:
        raise ConfigError("--resolution must be >= 2")
    axes = [np.linspace(k.boundary[0], k.boundary[1], res) for k in margins]
    mesh = np.meshgrid(*axes, indexing="ij")
    lattice = [g.ravel(order="F") for g in mesh]

    with Outputs(cfg["out"], cfg["formats"]) as out:
        summary = run.summary()
        out.csv(
            "summary.csv",
            ["index", "l", "dfs", "rmse", "loglik"],
            ([r["index"], r["l"], r["dfs"], r["rmse"], r["loglik"]] for r in summary),
        )
        out.csv(
            "removals.csv",
            ["step", "margin", "index", "knot", "weight"],
            ([r.step, r.margin + 1, r.index, r.knot, r.weight] for r in run.removed),
        )
        out.json(
            "nets.json",
            {
                "n_fits": run.n_fits,
                "reducible": [i + 1 for i in run.reducible],
                "nets": [
                    {
                        "index": i,
                        "margins": [k.to_dict() for k in net.margins],
                        "theta": net.theta,
                        "rmse": net.fit.rmse,
                        "loglik": net.fit.loglik,
                    }
                    for i, net in enumerate(run.nets, start=1)
                ],
            },
        )
        surface_rows = []
        for i, net in enumerate(run.nets, start=1):
            f = net(*lattice)
            for pt in zip(*lattice, f):
                surface_rows.append([i, *pt])
        out.csv(
            "surface.csv",
            ["index", *[f"x{j}" for j in range(1, m + 1)], "f"],
            surface_rows,
        )
        if "svg" in cfg["formats"]:
            rplot = LinePlot("RMSE by degrees of freedom", "degrees of freedom", "RMSE")
            rplot.add([r["dfs"] for r in summary], [r["rmse"] for r in summary], markers=True)
            out.svg("rmse.svg", rplot)
    return out.written()


def simulate(generator, n, sigma, seed, with_covariate=False, theta=None, iknots=None, bknots=None, order=None):
    rng = np.random.default_rng(seed)
    if n < 2:
        raise ConfigError("--n must be at least 2")
    if sigma < 0:
        raise ConfigError("--sigma must be non-negative")
    cols = {}
    if generator == "sine":
        x = np.linspace(-np.pi, np.pi, n)
        f = np.sin(x)
        cols["x"] = x
    elif generator == "spline":
        order = REF_ORDER if order is None else order
        bknots = REF_BKNOTS if bknots is None else bknots
        iknots = REF_IKNOTS if iknots is None else iknots
        theta = REF_THETA if theta is None else theta
        knots = make_knot_sequence(order, bknots, iknots)
        x = np.linspace(knots.boundary[0], knots.boundary[1], n)
        f = ControlPolygon(knots, theta)(x)
        cols["x"] = x
    elif generator == "hormone":
        # log-scale luteal rise on a cycle mapped to [-1, 1]
        x = np.linspace(-1.0, 1.0, n)
        f = -0.55 + 0.1 * x + 1.6 * np.exp(-((x - 0.45) / 0.3) ** 2) / (1.0 + np.exp(-15.0 * x))
        cols["x"] = x
    elif generator == "surface":
        x1 = rng.uniform(0.0, 1.0, n)
        x2 = rng.uniform(0.0, 1.0, n)
        f = np.sin(2.0 * np.pi * x1) * (0.5 + x2) + x2**2
        cols["x1"] = x1
        cols["x2"] = x2
    else:
        raise ConfigError(f"unknown generator {generator!r}")
    y = f + sigma * rng.standard_normal(n)
    if with_covariate:
        z = rng.standard_normal(n)
        y = y + 0.5 * z
        cols["z"] = z
    cols["y"] = y
    return cols


def cmd_simulate(cfg):
    order = _ints(cfg["order"])[0] if cfg["generator"] == "spline" and cfg["theta"] is not None else None
    cols = simulate(
        cfg["generator"],
        int(cfg["n"]),
        float(cfg["sigma"]),
        int(cfg["seed"]),
        with_covariate=cfg["with_covariate"],
        theta=_floats(cfg["theta"]) if cfg["theta"] is not None else None,
        iknots=_floats(cfg["iknots"]) if cfg["iknots"] is not None else None,
        bknots=_floats(cfg["bknots"]) if cfg["bknots"] is not None else None,
        order=order,
    )
    names = list(cols)
    formats = cfg["formats"] | {"csv"}
    with Outputs(cfg["out"], formats) as out:
        out.csv("data.csv", names, zip(*(cols[c] for c in names)))
    return out.written()


COMMANDS = {
    "basis": cmd_basis,
    "influence": cmd_influence,
    "cpr": cmd_cpr,
    "cnr": cmd_cnr,
    "simulate": cmd_simulate,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("common options")
    g.add_argument("--config", help="JSON file with option values (flags override it)")
    g.add_argument("--input", help="input CSV with a header row")
    g.add_argument("--response", help="response column (default y)")
    g.add_argument("--predictor", help="predictor column(s), comma separated (default x)")
    g.add_argument("--covariates", help="extra fixed-effect columns, comma separated")
    g.add_argument("--order", help="polynomial order per margin (default 4)")
    g.add_argument("--df", help="degrees of freedom per margin; df - order interior knots")
    g.add_argument("--iknots", help="interior knots, comma separated; margins separated by ';'")
    g.add_argument("--bknots", help="boundary knots a,b; margins separated by ';'")
    g.add_argument("--margins", help="1-based margins to reduce in cnr (default all)")
    g.add_argument("--grid-p", type=int, help="conditioning grid size per margin (default 20)")
    g.add_argument("--out", help="output directory (default .)")
    g.add_argument("--format", help="comma separated subset of csv,json,svg")
    g.add_argument("--seed", type=int, help="random seed for simulate (default 0)")
    g.add_argument("--keep-fit", action="store_true", default=None)
    g.add_argument("--allow-big-tensor", action="store_true", default=None)
    g.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="cpred", description="Spline regression model selection by control polygon reduction.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("basis", parents=[common], help="write a B-spline basis and its knot metadata")

    p = sub.add_parser("influence", parents=[common], help="knot influence weights of one control polygon")
    p.add_argument("--theta", help="explicit ordinates, comma separated")
    p.add_argument("--indices", help="1-based full-sequence knot indices to score")

    p = sub.add_parser("cpr", parents=[common], help="run control polygon reduction")
    p.add_argument("--to", type=int, help="last model index included in the overlay diagnostics")

    p = sub.add_parser("cnr", parents=[common], help="run control net reduction")
    p.add_argument("--resolution", type=int, help="lattice points per margin in surface.csv (default 25)")

    p = sub.add_parser("simulate", parents=[common], help="write a synthetic dataset")
    p.add_argument("--generator", choices=["sine", "spline", "hormone", "surface"])
    p.add_argument("--n", type=int)
    p.add_argument("--sigma", type=float)
    p.add_argument("--theta", help="ordinates for the spline generator")
    p.add_argument("--with-covariate", action="store_true", default=None)
    return parser


def resolve_config(args) -> dict:
    file_cfg = {}
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                file_cfg = json.load(fh)
        except json.JSONDecodeError as err:
            raise ConfigError(f"config file {args.config} is not valid JSON: {err}") from err
        if not isinstance(file_cfg, dict):
            raise ConfigError("config file must hold a JSON object")
        file_cfg = {k.replace("-", "_"): v for k, v in file_cfg.items()}
        unknown = sorted(set(file_cfg) - set(DEFAULTS))
        if unknown:
            raise ConfigError(f"unknown config keys: {unknown}")
    cfg = dict(DEFAULTS)
    for key in DEFAULTS:
        if key in file_cfg and file_cfg[key] is not None:
            value = file_cfg[key]
            if isinstance(value, list):
                value = ",".join(str(v) for v in value)
            cfg[key] = value
        flag = getattr(args, key, None)
        if flag is not None:
            cfg[key] = flag
    formats = {f.strip() for f in str(cfg["format"]).split(",") if f.strip()}
    bad = formats - {"csv", "json", "svg"}
    if bad or not formats:
        raise ConfigError(f"--format must be a subset of csv,json,svg; got {cfg['format']!r}")
    cfg["formats"] = formats
    return cfg


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        cfg = resolve_config(args)
        written = COMMANDS[args.command](cfg)
    except (ReductionError, RankDeficientError) as err:
        print(f"cpred: numerical failure: {err}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as err:
        print(f"cpred: I/O error: {err}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, KeyError, IndexError) as err:
        print(f"cpred: {err}", file=sys.stderr)
        return EXIT_CONFIG
    for path in written:
        log.info("wrote %s", path)
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
