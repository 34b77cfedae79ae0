"""Command-line interface.

Verbs:
  loss-experiment --config cfg.json
  estimate --input points.csv --dim D --volume V --bandwidth H
           (--q Q | --adaptive) --r R [--epsilon E] --seed S --output out.csv
  baseline --input points.csv --radius H --output out.csv

Exit codes: 0 success, 1 input error (files, flags, malformed data),
2 numerical failure (no admissible q, degenerate estimation).
"""

from __future__ import annotations

import argparse
import json
import sys

from .baseline import build_neighbor_graph, shortest_path_distances
from .errors import InputError, NumericalError
from .estimator import DiracConfig, OptimizerConfig, estimate_all_distances
from .harness import ExperimentConfig, run_loss_experiment
from .io import load_point_cloud, save_distance_matrix
from .laplacian import build_laplacian
from .spectral import eigendecompose, select_q
from .types import ManifoldConfig, TruncationParams


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on usage errors; bad flags are input
    # errors here, which the contract maps to 1
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="lapgeo", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    loss = sub.add_parser("loss-experiment", help="run the seeded loss sweep")
    loss.add_argument("--config", required=True, help="JSON experiment config")

    est = sub.add_parser("estimate", help="all-pairs spectral distance estimate")
    est.add_argument("--input", required=True, help="point cloud CSV")
    est.add_argument("--dim", required=True, type=int, help="intrinsic dimension d")
    est.add_argument("--volume", required=True, type=float, help="manifold volume")
    est.add_argument("--bandwidth", required=True, type=float, help="kernel bandwidth h")
    group = est.add_mutually_exclusive_group(required=True)
    group.add_argument("--q", type=int, help="fixed linear truncation")
    group.add_argument("--adaptive", action="store_true", help="choose q from the spectrum")
    est.add_argument("--r", required=True, type=int, help="quadratic truncation")
    est.add_argument("--epsilon", type=float, default=0.0, help="adaptive gap slack")
    est.add_argument("--seed", required=True, type=int, help="optimizer seed")
    est.add_argument("--samples", type=int, default=200, help="Monte-Carlo candidates")
    est.add_argument("--refine", type=int, default=12, help="refinement sweeps")
    est.add_argument("--output", required=True, help="distance matrix CSV")

    base = sub.add_parser("baseline", help="shortest-path baseline distances")
    base.add_argument("--input", required=True, help="point cloud CSV")
    base.add_argument("--radius", required=True, type=float, help="edge radius")
    base.add_argument("--output", required=True, help="distance matrix CSV")
    return parser


def _cmd_loss(args) -> int:
    try:
        with open(args.config, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"lapgeo: cannot read config: {exc}", file=sys.stderr)
        return 1
    cfg = ExperimentConfig.from_dict(data)
    run_loss_experiment(cfg)
    if cfg.output_path is None:
        print("lapgeo: config has no output_path; nothing written", file=sys.stderr)
        return 1
    return 0


def _cmd_estimate(args) -> int:
    cloud = load_point_cloud(args.input)
    manifold = ManifoldConfig(args.dim, args.volume, args.bandwidth)
    dec = eigendecompose(build_laplacian(cloud, manifold))
    r = args.r
    q = select_q(dec, r, args.epsilon) if args.adaptive else args.q
    dirac = DiracConfig(dec, TruncationParams(q, r, args.epsilon))
    print(f"q={q} r={r} rank={dec.rank}", file=sys.stderr)
    opt = OptimizerConfig(n_samples=args.samples, n_refine=args.refine, seed=args.seed)
    dist = estimate_all_distances(dirac, cloud, opt)
    save_distance_matrix(args.output, dist)
    return 0


def _cmd_baseline(args) -> int:
    cloud = load_point_cloud(args.input)
    graph = build_neighbor_graph(cloud, args.radius)
    save_distance_matrix(args.output, shortest_path_distances(graph))
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    handler = {
        "loss-experiment": _cmd_loss,
        "estimate": _cmd_estimate,
        "baseline": _cmd_baseline,
    }[args.verb]
    try:
        return handler(args)
    except InputError as exc:
        print(f"lapgeo: input error: {exc}", file=sys.stderr)
        return 1
    except NumericalError as exc:
        print(f"lapgeo: numerical failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
