"""Dataset ingestion, report assembly and serialization.

The report mirrors the summary tables used throughout the analyses:
per-component vexp / cvexp / rcvexp / cardinality / minimum contribution,
signed percent contributions with per-variable Vifs within the support,
component correlations, and optional external-response R^2.
"""

import csv
import io
import json
from dataclasses import asdict, dataclass

import numpy as np

from . import core, pca, sparse
from .errors import MissingColumn, MissingValue, NonNumericCell

_MISSING_TOKENS = {"", "na", "n/a", "nan", "null", "?", "."}


def ingest_csv(path, response_column=None, id_column=None, delimiter=None):
    """Read a numeric CSV with a header row.

    Returns (column_names, values, ids, response). The id column (row
    labels) and the response column are excluded from the feature matrix.
    Rows with missing cells are rejected; imputation is not supported.
    """
    with open(path, newline="") as fh:
        sample = fh.read(4096)
        fh.seek(0)
        if delimiter is None:
            delimiter = "\t" if "\t" in sample.splitlines()[0] else ","
        reader = csv.reader(fh, delimiter=delimiter)
        rows = [row for row in reader if row]
    header = [h.strip() for h in rows[0]]
    drop = []
    for name in (id_column, response_column):
        if name is not None:
            if name not in header:
                raise MissingColumn(name)
            drop.append(header.index(name))
    feature_cols = [i for i in range(len(header)) if i not in drop]
    names = [header[i] for i in feature_cols]

    ids = []
    response = []
    data = []
    for r, row in enumerate(rows[1:], start=1):
        if id_column is not None:
            ids.append(row[header.index(id_column)].strip())
        parsed = []
        for c in feature_cols + ([header.index(response_column)] if response_column else []):
            cell = row[c].strip()
            if cell.lower() in _MISSING_TOKENS:
                raise MissingValue(r, header[c])
            try:
                parsed.append(float(cell))
            except ValueError:
                raise NonNumericCell(r, header[c]) from None
        if response_column is not None:
            response.append(parsed.pop())
        data.append(parsed)
    values = np.asarray(data, float)
    resp = np.asarray(response, float) if response_column else None
    return names, values, (ids if id_column else None), resp


@dataclass(frozen=True)
class ComponentSummary:
    method: str
    cardinality: int
    vexp_pct: float
    cvexp_pct: float
    rcvexp: float
    mincont_pct: float
    r2_vs_target: float
    variables: tuple  # (name, contribution_pct, vif_within_support)


@dataclass(frozen=True)
class AnalysisReport:
    config: dict
    column_names: tuple
    total_variance: float
    pca_vexp_pct: tuple
    components: tuple  # ComponentSummary
    correlations: tuple  # nested tuples, nd x nd (empty if nd < 2)
    response_r2: tuple  # R^2 for 1..nd components, empty without response


def build_report(x, result, config_echo, response=None):
    """Assemble an AnalysisReport from a pipeline result."""
    total = result.total_variance
    comps = []
    cum_sparse = 0.0
    cum_rot = 0.0
    for comp, rot_ve in zip(result.components, result.rotated_vexp):
        cum_sparse += comp.extra_vexp
        cum_rot += rot_ve
        vifs = core.vif(x, comp.support.indices)
        variables = tuple(
            (x.column_names[i], float(c), float(v))
            for i, c, v in zip(comp.support.indices, comp.contributions, vifs)
        )
        comps.append(
            ComponentSummary(
                method=comp.method,
                cardinality=comp.support.cardinality,
                vexp_pct=100.0 * comp.extra_vexp / total,
                cvexp_pct=100.0 * cum_sparse / total,
                rcvexp=cum_sparse / cum_rot,
                mincont_pct=float(np.min(np.abs(comp.contributions))),
                r2_vs_target=comp.r2_vs_target,
                variables=variables,
            )
        )
    if len(result.components) >= 2:
        corr = sparse.component_correlations(result.components)
        correlations = tuple(tuple(float(v) for v in row) for row in corr)
    else:
        correlations = ()
    response_r2 = []
    if response is not None:
        resp = np.asarray(response, float)
        resp = resp - resp.mean()
        score_mat = np.column_stack([c.scores for c in result.components])
        for k in range(1, score_mat.shape[1] + 1):
            response_r2.append(core.r_squared(score_mat[:, :k], resp))
    return AnalysisReport(
        config=dict(config_echo),
        column_names=tuple(x.column_names),
        total_variance=total,
        pca_vexp_pct=tuple(100.0 * v / total for v in result.pca_vexp),
        components=tuple(comps),
        correlations=correlations,
        response_r2=tuple(response_r2),
    )


def pca_report(x, d, config_echo, response=None):
    """PCA-only report: vexp spectrum, no sparse component blocks."""
    model = pca.fit_pca(x, d)
    response_r2 = []
    if response is not None:
        resp = np.asarray(response, float)
        resp = resp - resp.mean()
        for k in range(1, d + 1):
            response_r2.append(core.r_squared(model.scores[:, :k], resp))
    return AnalysisReport(
        config=dict(config_echo),
        column_names=tuple(x.column_names),
        total_variance=model.total_variance,
        pca_vexp_pct=tuple(100.0 * v / model.total_variance for v in model.vexp),
        components=(),
        correlations=(),
        response_r2=tuple(response_r2),
    )


def _json_default(obj):
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"not serializable: {type(obj)}")


def report_from_json(payload):
    """Rebuild an AnalysisReport from the bytes produced by emit(..., 'json')."""
    data = json.loads(payload)
    comps = tuple(
        ComponentSummary(
            method=c["method"],
            cardinality=c["cardinality"],
            vexp_pct=c["vexp_pct"],
            cvexp_pct=c["cvexp_pct"],
            rcvexp=c["rcvexp"],
            mincont_pct=c["mincont_pct"],
            r2_vs_target=c["r2_vs_target"],
            variables=tuple(tuple(v) for v in c["variables"]),
        )
        for c in data["components"]
    )
    return AnalysisReport(
        config=data["config"],
        column_names=tuple(data["column_names"]),
        total_variance=data["total_variance"],
        pca_vexp_pct=tuple(data["pca_vexp_pct"]),
        components=comps,
        correlations=tuple(tuple(row) for row in data["correlations"]),
        response_r2=tuple(data["response_r2"]),
    )


def emit(report, fmt="tsv"):
    """Serialize a report: 'json' is lossless, 'tsv' mirrors the table
    presentation (whole-percent contributions, one decimal for vexp)."""
    if fmt == "json":
        payload = {
            "config": report.config,
            "column_names": list(report.column_names),
            "total_variance": report.total_variance,
            "pca_vexp_pct": list(report.pca_vexp_pct),
            "components": [asdict(c) for c in report.components],
            "correlations": [list(row) for row in report.correlations],
            "response_r2": list(report.response_r2),
        }
        return (json.dumps(payload, indent=2, default=_json_default) + "\n").encode()
    if fmt != "tsv":
        raise ValueError(f"unknown format {fmt!r}")

    out = io.StringIO()

    def w(*cells):
        out.write("\t".join(str(c) for c in cells) + "\n")

    w("# config")
    for key in sorted(report.config):
        w(key, report.config[key])
    w("# pca vexp")
    w("component", "vexp_pct")
    for j, v in enumerate(report.pca_vexp_pct, start=1):
        w(f"pc{j}", f"{v:.1f}")
    if report.components:
        w("# components")
        w("component", "method", "card", "vexp_pct", "cvexp_pct", "rcvexp_pct",
          "mincont_pct", "r2_vs_target")
        for j, c in enumerate(report.components, start=1):
            r2 = "" if c.r2_vs_target is None else f"{c.r2_vs_target:.3f}"
            w(f"comp{j}", c.method, c.cardinality, f"{c.vexp_pct:.1f}",
              f"{c.cvexp_pct:.1f}", f"{100 * c.rcvexp:.1f}",
              f"{c.mincont_pct:.0f}", r2)
        w("# contributions")
        w("component", "variable", "contribution_pct", "vif")
        for j, c in enumerate(report.components, start=1):
            for name, contrib, v in c.variables:
                w(f"comp{j}", name, f"{contrib:.0f}", f"{v:.2f}")
    if report.correlations:
        w("# component correlations")
        for row in report.correlations:
            w(*(f"{v:.3f}" for v in row))
    if report.response_r2:
        w("# response r2")
        w("components", "r2")
        for k, v in enumerate(report.response_r2, start=1):
            w(k, f"{v:.3f}")
    return out.getvalue().encode()
