"""``fig``: plot-ready tables."""

from __future__ import annotations

import argparse

from mixedsimplex.commands._io import emit_table
from mixedsimplex.schemas.config import CliConfig
from mixedsimplex.services.figure_service import FIGURES, RECTIFY_SAMPLERS, FigureService


def run_fig(args: argparse.Namespace, cfg: CliConfig) -> None:
    if args.name == "entmax-curve":
        table = FigureService.entmax_curve(args.alpha, args.resolution, args.t_max)
    elif args.name == "maxent-vs-K":
        table = FigureService.maxent_vs_k(
            args.k_min, args.k_max, tuple(range(args.n_max + 1)), bits=cfg.bits
        )
    else:
        table = FigureService.build(
            args.name,
            sampler=args.sampler,
            z=args.z,
            sigma=args.sigma,
            beta=args.beta,
            lam=args.lam,
            bins=args.bins,
            n=args.n,
            seed=cfg.seed,
        )
    emit_table(table, args.out)


def register(subparsers, parent: argparse.ArgumentParser) -> None:
    p = subparsers.add_parser("fig", parents=[parent], help="figure data as CSV")
    p.add_argument("--name", required=True, help=f"one of {', '.join(FIGURES)}")
    p.add_argument("--out", choices=("csv", "json"), default="csv", help="table format")
    p.add_argument("--alpha", type=float, default=1.5)
    p.add_argument("--resolution", type=int, default=10, help="grid points per unit t")
    p.add_argument("--t-max", type=float, default=3.0)
    p.add_argument("--k-min", type=int, default=2)
    p.add_argument("--k-max", type=int, default=10)
    p.add_argument("--n-max", type=int, default=3)
    p.add_argument("--sampler", choices=RECTIFY_SAMPLERS, default="gaussian-sparsemax")
    p.add_argument("--z", type=float, default=0.5)
    p.add_argument("--sigma", type=float, default=0.3)
    p.add_argument("--beta", type=float, default=0.1)
    p.add_argument("--lam", type=float, default=1.05)
    p.add_argument("--bins", type=int, default=50)
    p.add_argument("--n", type=int, default=100_000)
    p.set_defaults(handler=run_fig)
