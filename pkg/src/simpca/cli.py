"""Command-line front end.

Subcommands: ``pca`` (variance spectrum and optional response R^2),
``rotate`` (rotated coefficient table), ``simpca`` (full sparse pipeline
with the summary report).

Exit codes: 0 success, 2 configuration error, 3 data error, 4 numerical
failure.
"""

import argparse
import sys

import numpy as np

from . import core, pca, report, rotation, selection, sparse
from .errors import ConfigError, DataError, NumericalError, SimpcaError


def _common_data_args(p):
    p.add_argument("--input", required=True, help="CSV file with a header row")
    p.add_argument("--id-column", default=None,
                   help="row-identifier column, excluded from the features")
    p.add_argument("--response", default=None,
                   help="response column, excluded from the features")
    p.add_argument("--scale", required=True, choices=["none", "unit-variance"],
                   help="column scaling (no default: choose per dataset)")
    p.add_argument("--delimiter", default=None, help="comma by default, tab accepted")
    p.add_argument("--format", default="tsv", choices=["tsv", "json"])
    p.add_argument("--out", default=None, help="output path (stdout by default)")


def _rotation_args(p):
    p.add_argument("--coef-scale", default="normalized",
                   choices=["l2", "normalized", "eigen-normalized"],
                   help="coefficient scaling before rotation: unit-L2 columns, "
                        "divided by the singular value, or divided by the "
                        "eigenvalue of X'X")
    p.add_argument("--criterion", default="varimax",
                   choices=["varimax", "quartimax", "equamax", "cf"])
    p.add_argument("--kappa", type=float, default=None,
                   help="Crawford-Ferguson kappa (only with --criterion cf)")
    p.add_argument("--kaiser", action="store_true",
                   help="unit row norms before rotation, undone afterwards")
    p.add_argument("--nr", type=int, required=True, help="components to rotate")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=1)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="simpca",
        description="Sparse components from rotated principal components",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_pca = sub.add_parser("pca", help="variance-explained spectrum")
    _common_data_args(p_pca)
    p_pca.add_argument("--nd", type=int, required=True, help="components to report")

    p_rot = sub.add_parser("rotate", help="rotated coefficient table")
    _common_data_args(p_rot)
    _rotation_args(p_rot)

    p_run = sub.add_parser("simpca", help="full sparse pipeline")
    _common_data_args(p_run)
    _rotation_args(p_run)
    p_run.add_argument("--nd", type=int, required=True, help="components to output")
    p_run.add_argument("--select", default="forward",
                       choices=["threshold", "adaptive", "iter-threshold",
                                "forward", "backward", "stepwise"])
    p_run.add_argument("--alpha", type=float, default=0.95)
    p_run.add_argument("--threshold", type=float, default=0.3)
    p_run.add_argument("--t0", type=float, default=0.25)
    p_run.add_argument("--step", type=float, default=0.05)
    p_run.add_argument("--norm", default="2", choices=["1", "2", "inf"])
    p_run.add_argument("--method", default="pspca",
                       choices=["pspca", "cspca", "uspca", "plain"])
    deflate = p_run.add_mutually_exclusive_group()
    deflate.add_argument("--deflate", dest="deflate", action="store_true")
    deflate.add_argument("--no-deflate", dest="deflate", action="store_false")
    p_run.set_defaults(deflate=True)
    return parser


_COEF_SCALES = {
    "l2": "unit-l2",
    "normalized": "component-unit-norm",
    "eigen-normalized": "inverse-eigenvalue",
}

_SELECT_KINDS = {
    "threshold": "fixed-threshold",
    "adaptive": "adaptive-threshold",
    "iter-threshold": "iterative-reverse-threshold",
    "forward": "forward",
    "backward": "backward",
    "stepwise": "stepwise",
}


def _criterion_from_args(args):
    if args.criterion == "cf":
        if args.kappa is None:
            raise ConfigError("--criterion cf requires --kappa")
        return rotation.RotationCriterion.crawford_ferguson(args.kappa)
    if args.kappa is not None:
        raise ConfigError("--kappa only applies to --criterion cf")
    if args.criterion == "varimax":
        return rotation.RotationCriterion.varimax()
    if args.criterion == "quartimax":
        return rotation.RotationCriterion.quartimax()
    return rotation.RotationCriterion.equamax(args.nr)


def _load(args):
    names, values, ids, resp = report.ingest_csv(
        args.input,
        response_column=args.response,
        id_column=args.id_column,
        delimiter=args.delimiter,
    )
    x = core.center_scale(values, scaling=args.scale, column_names=names)
    return x, ids, resp


def _echo(args, skip=("out",)):
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _write(payload, args):
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(payload)
    else:
        sys.stdout.buffer.write(payload)


def _cmd_pca(args):
    x, _, resp = _load(args)
    if args.nd == 0:
        d = core.numerical_rank(x)
    else:
        d = args.nd
    rep = report.pca_report(x, d, _echo(args), response=resp)
    _write(report.emit(rep, args.format), args)


def _cmd_rotate(args):
    x, _, _ = _load(args)
    model = pca.fit_pca(x, args.nr)
    coefs = pca.rescale_coefficients(
        model.v, _COEF_SCALES[args.coef_scale], lam=model.lam
    )
    result = rotation.rotate(
        coefs, _criterion_from_args(args), kaiser=args.kaiser,
        restarts=args.restarts, seed=args.seed,
    )
    lines = ["\t".join(["variable"] + [f"comp{j + 1}" for j in range(args.nr)])]
    for name, row in zip(x.column_names, result.b):
        lines.append("\t".join([name] + [f"{v:.6f}" for v in row]))
    lines.append(f"# converged\t{result.converged}\tsweeps\t{result.sweeps_used}")
    _write(("\n".join(lines) + "\n").encode(), args)


def _cmd_simpca(args):
    x, _, resp = _load(args)
    strategy = selection.SelectionStrategy(
        kind=_SELECT_KINDS[args.select],
        alpha=args.alpha,
        threshold=args.threshold,
        t0=args.t0,
        step=args.step,
        norm_m=np.inf if args.norm == "inf" else int(args.norm),
    )
    config = sparse.SimpcaPipelineConfig(
        nd=args.nd,
        nr=args.nr,
        strategy=strategy,
        criterion=_criterion_from_args(args),
        coefficient_scaling=_COEF_SCALES[args.coef_scale],
        kaiser=args.kaiser,
        method=args.method,
        deflate=args.deflate,
        restarts=args.restarts,
        seed=args.seed,
    )
    result = sparse.run_simpca(x, config)
    rep = report.build_report(x, result, _echo(args), response=resp)
    _write(report.emit(rep, args.format), args)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {"pca": _cmd_pca, "rotate": _cmd_rotate, "simpca": _cmd_simpca}
    try:
        handlers[args.command](args)
    except (ConfigError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (DataError, OSError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 3
    except (NumericalError, SimpcaError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
