"""``dist``: evaluate, query and build mixed distributions."""

from __future__ import annotations

import argparse

from mixedsimplex.commands._io import emit, load, read_json, read_vector
from mixedsimplex.errors import InvalidArgument
from mixedsimplex.models.distribution import MixedDistribution
from mixedsimplex.models.rng import RngState
from mixedsimplex.models.sampler_spec import parse_sampler_spec
from mixedsimplex.models.simplex import Face, FaceSet, SimplexPoint
from mixedsimplex.schemas.config import CliConfig
from mixedsimplex.schemas.distribution import MixedDistributionSchema
from mixedsimplex.services.distribution_service import DistributionService


def load_distribution(path: str | None) -> MixedDistribution:
    return load(MixedDistributionSchema, read_json(path)).to_model()


def run_density(args: argparse.Namespace, cfg: CliConfig) -> None:
    d = load_distribution(args.dist)
    value = DistributionService.density(d, SimplexPoint(read_vector(args.point)), cfg.tol)
    emit({"density": value})


def run_probability(args: argparse.Namespace, cfg: CliConfig) -> None:
    d = load_distribution(args.dist)
    data = read_json(args.faces)
    if not isinstance(data, list):
        raise InvalidArgument("expected a JSON array of faces")
    faces = FaceSet.of(d.K, (Face.from_indices(f, one_based=True) for f in data))
    interval = tuple(args.y1) if args.y1 else None
    emit({"probability": DistributionService.probability(d, faces, interval)})


def run_expectation(args: argparse.Namespace, cfg: CliConfig) -> None:
    d = load_distribution(args.dist)
    emit(DistributionService.expectation(d, args.n_mc, RngState(cfg.seed)).to_list())


def run_gaussian_sparsemax(args: argparse.Namespace, cfg: CliConfig) -> None:
    d = DistributionService.from_gaussian_sparsemax_k2(args.z, args.sigma)
    emit(MixedDistributionSchema.from_model(d))


def run_estimate(args: argparse.Namespace, cfg: CliConfig) -> None:
    spec = parse_sampler_spec(read_json(args.spec))
    d = DistributionService.estimate_distribution(spec, args.n, cfg.tol, RngState(cfg.seed))
    emit(MixedDistributionSchema.from_model(d), args.out)


def register(subparsers, parent: argparse.ArgumentParser) -> None:
    p = subparsers.add_parser("dist", help="mixed distributions")
    verbs = p.add_subparsers(dest="verb", required=True)

    density = verbs.add_parser("density", parents=[parent], help="direct-sum density at a point")
    density.add_argument("--dist", required=True)
    density.add_argument("--point", default=None, help="JSON point (default stdin)")
    density.set_defaults(handler=run_density)

    prob = verbs.add_parser("probability", parents=[parent], help="probability of a face-set event")
    prob.add_argument("--dist", required=True)
    prob.add_argument("--faces", default=None, help="JSON faces (default stdin)")
    prob.add_argument("--y1", type=float, nargs=2, metavar=("LO", "HI"), default=None)
    prob.set_defaults(handler=run_probability)

    exp = verbs.add_parser("expectation", parents=[parent], help="E[Y]")
    exp.add_argument("--dist", required=True)
    exp.add_argument("--n-mc", type=int, default=10_000)
    exp.set_defaults(handler=run_expectation)

    gs = verbs.add_parser("gaussian-sparsemax", parents=[parent], help="K=2 closed form as a distribution")
    gs.add_argument("--z", type=float, required=True)
    gs.add_argument("--sigma", type=float, required=True)
    gs.set_defaults(handler=run_gaussian_sparsemax)

    est = verbs.add_parser("estimate", parents=[parent], help="empirical distribution from a sampler")
    est.add_argument("--spec", required=True)
    est.add_argument("--n", type=int, required=True)
    est.add_argument("--out", default=None)
    est.set_defaults(handler=run_estimate)
