"""``transform``: logits on stdin to a simplex point."""

from __future__ import annotations

import argparse
import logging

from mixedsimplex.commands._io import emit, read_vector
from mixedsimplex.schemas.config import CliConfig
from mixedsimplex.services.transform_service import TRANSFORM_KINDS, TransformService

logger = logging.getLogger("cli")


def run_transform(args: argparse.Namespace, cfg: CliConfig) -> None:
    z = read_vector(args.input)
    point = TransformService.apply(args.kind, z, alpha=args.alpha, beta=args.beta, k=args.k)
    logger.info("Transform kind=%s K=%d", args.kind, len(z))
    emit(point.to_list())


def register(subparsers, parent: argparse.ArgumentParser) -> None:
    p = subparsers.add_parser("transform", parents=[parent], help="map a logit vector to the simplex")
    p.add_argument("--kind", choices=TRANSFORM_KINDS, required=True)
    p.add_argument("--alpha", type=float, default=1.5)
    p.add_argument("--beta", type=float, default=1.0, help="temperature")
    p.add_argument("--k", type=int, default=None, help="kept coordinates for topk")
    p.add_argument("--in", dest="input", default=None, help="JSON logits (default stdin)")
    p.set_defaults(handler=run_transform)
