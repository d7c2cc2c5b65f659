"""``sample``, ``density`` and ``faces``: generative stories and their face masses."""

from __future__ import annotations

import argparse
import logging

from mixedsimplex.commands._io import emit, emit_lines, read_json, read_vector
from mixedsimplex.errors import NoDensityForm
from mixedsimplex.models.rng import RngState
from mixedsimplex.models.sampler_spec import (
    DirichletSpec,
    GaussianSparsemaxSpec,
    GumbelSoftmaxSpec,
    parse_sampler_spec,
)
from mixedsimplex.models.simplex import SimplexPoint
from mixedsimplex.schemas.config import CliConfig
from mixedsimplex.schemas.responses import FaceHistogramResponse, FaceProbabilitySchema
from mixedsimplex.services.distribution_service import DistributionService
from mixedsimplex.services.sampler_service import SamplerService, k2_location

logger = logging.getLogger("cli")


def run_sample(args: argparse.Namespace, cfg: CliConfig) -> None:
    spec = parse_sampler_spec(read_json(args.spec))
    samples = SamplerService.sample_array(spec, RngState(cfg.seed), args.n, workers=args.workers)
    logger.info("Sample spec=%s n=%d seed=%d", spec.kind, args.n, cfg.seed)
    emit_lines(row.tolist() for row in samples)


def run_density(args: argparse.Namespace, cfg: CliConfig) -> None:
    spec = parse_sampler_spec(read_json(args.spec))
    point = SimplexPoint(read_vector(args.point))
    if isinstance(spec, DirichletSpec):
        emit({"density": SamplerService.dirichlet_density(point, spec.alpha)})
    elif isinstance(spec, GumbelSoftmaxSpec):
        emit({"density": SamplerService.gumbel_softmax_density(point, spec.z, spec.beta)})
    elif isinstance(spec, GaussianSparsemaxSpec) and spec.K == 2:
        atoms = SamplerService.gaussian_sparsemax_density_k2(point[0], k2_location(spec.z), spec.sigma)
        emit(atoms._asdict())
    else:
        raise NoDensityForm(f"no closed-form density for {spec.kind} with K={spec.K}")


def run_faces(args: argparse.Namespace, cfg: CliConfig) -> None:
    spec = parse_sampler_spec(read_json(args.spec))
    hist = DistributionService.estimate_face_probs(
        spec, args.n, cfg.tol, RngState(cfg.seed), workers=args.workers
    )
    emit(
        FaceHistogramResponse(
            K=hist.K,
            n=hist.total,
            tol=hist.tol,
            faces=[
                FaceProbabilitySchema(
                    indices=face.to_json(),
                    count=count,
                    probability=hist.probability(face),
                    standard_error=hist.standard_error(face),
                )
                for face, count in hist.counts.items()
            ],
        )
    )


def register(subparsers, parent: argparse.ArgumentParser) -> None:
    p = subparsers.add_parser("sample", parents=[parent], help="draw points (JSON lines)")
    p.add_argument("--spec", required=True, help="sampler spec JSON file")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(handler=run_sample)

    d = subparsers.add_parser("density", parents=[parent], help="closed-form sampler density at a point")
    d.add_argument("--spec", required=True)
    d.add_argument("--point", default=None, help="JSON point (default stdin)")
    d.set_defaults(handler=run_density)

    f = subparsers.add_parser("faces", parents=[parent], help="Monte Carlo face probabilities")
    f.add_argument("--spec", required=True)
    f.add_argument("--n", type=int, required=True)
    f.add_argument("--workers", type=int, default=None)
    f.set_defaults(handler=run_faces)
