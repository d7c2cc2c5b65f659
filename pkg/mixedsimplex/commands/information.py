"""``entropy``, ``coding-entropy``, ``maxent``, ``kl`` and ``mi``."""

from __future__ import annotations

import argparse
import logging

from mixedsimplex.commands._io import emit, emit_table, load, read_json
from mixedsimplex.commands.distribution import load_distribution
from mixedsimplex.errors import InvalidArgument, Overflow
from mixedsimplex.schemas.config import CliConfig
from mixedsimplex.schemas.distribution import JointSchema
from mixedsimplex.schemas.responses import (
    CodingEntropyResponse,
    EntropyResponse,
    FaceEntropySchema,
    MaxEntResponse,
    ValueResponse,
)
from mixedsimplex.services.figure_service import FigureService
from mixedsimplex.services.information_service import LOG2, InformationService, dirichlet_entropy

logger = logging.getLogger("cli")


def _scale(cfg: CliConfig) -> float:
    return 1.0 / LOG2 if cfg.bits else 1.0


def run_entropy(args: argparse.Namespace, cfg: CliConfig) -> None:
    if args.dirichlet:
        emit(ValueResponse(value=dirichlet_entropy(args.dirichlet) * _scale(cfg), units=cfg.units))
        return
    if args.dist is None:
        raise InvalidArgument("entropy needs --dist or --dirichlet")
    report = InformationService.direct_sum_entropy(load_distribution(args.dist))
    if cfg.bits:
        report = report.in_bits()
    emit(
        EntropyResponse(
            units=cfg.units,
            discrete_part=report.discrete_part,
            continuous_part=report.continuous_part,
            total=report.total,
            faces=[
                FaceEntropySchema(indices=f.to_json(), mass=e.mass, differential=e.differential)
                for f, e in report.per_face.items()
            ],
        )
    )


def run_coding_entropy(args: argparse.Namespace, cfg: CliConfig) -> None:
    report = InformationService.coding_report(load_distribution(args.dist), args.N)
    if cfg.bits:
        report = report.in_bits()
    emit(
        CodingEntropyResponse(
            units=cfg.units,
            N=report.N,
            face_code=report.face_code,
            differential=report.differential,
            precision=report.precision,
            total=report.total,
        )
    )


def run_maxent(args: argparse.Namespace, cfg: CliConfig) -> None:
    if cfg.output_format == "csv":
        table = FigureService.maxent_vs_k(2, args.K, tuple(range(args.N + 1)), bits=cfg.bits)
        emit_table(table, "csv")
        return
    solution = InformationService.maxent_over_faces(args.K, args.N)
    try:
        laguerre = InformationService.laguerre_maxent_value(args.K, args.N) * _scale(cfg)
    except Overflow as exc:
        logger.warning("Laguerre evaluation skipped: %s", exc)
        laguerre = None
    emit(
        MaxEntResponse(
            units=cfg.units,
            K=solution.K,
            N=solution.N,
            g=solution.g.tolist(),
            value=solution.value * _scale(cfg),
            laguerre=laguerre,
        )
    )


def run_kl(args: argparse.Namespace, cfg: CliConfig) -> None:
    value = InformationService.kl_divergence(load_distribution(args.p), load_distribution(args.q))
    emit(ValueResponse(value=value * _scale(cfg), units=cfg.units))


def run_mi(args: argparse.Namespace, cfg: CliConfig) -> None:
    joint = load(JointSchema, read_json(args.joint)).to_model()
    value = InformationService.mutual_information(joint)
    emit(ValueResponse(value=value * _scale(cfg), units=cfg.units))


def register(subparsers, parent: argparse.ArgumentParser) -> None:
    e = subparsers.add_parser("entropy", parents=[parent], help="direct-sum entropy")
    e.add_argument("--dist", default=None, help="mixed distribution JSON")
    e.add_argument("--dirichlet", type=float, nargs="+", default=None, help="Dirichlet concentrations")
    e.set_defaults(handler=run_entropy)

    c = subparsers.add_parser("coding-entropy", parents=[parent], help="code length at N-bit precision")
    c.add_argument("--dist", required=True)
    c.add_argument("--N", type=int, required=True)
    c.set_defaults(handler=run_coding_entropy)

    m = subparsers.add_parser("maxent", parents=[parent], help="maximum coding entropy over faces")
    m.add_argument("--K", type=int, required=True)
    m.add_argument("--N", type=int, required=True)
    m.set_defaults(handler=run_maxent)

    k = subparsers.add_parser("kl", parents=[parent], help="KL divergence of two distributions")
    k.add_argument("--p", required=True)
    k.add_argument("--q", required=True)
    k.set_defaults(handler=run_kl)

    i = subparsers.add_parser("mi", parents=[parent], help="mutual information with a discrete Z")
    i.add_argument("--joint", required=True)
    i.set_defaults(handler=run_mi)
