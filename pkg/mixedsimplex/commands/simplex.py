"""``simplex``: faces of points and measures of face sets."""

from __future__ import annotations

import argparse

from mixedsimplex.commands._io import emit, read_json, read_vector
from mixedsimplex.errors import InvalidArgument
from mixedsimplex.models.simplex import Face, FaceLattice, FaceSet, SimplexPoint, exact_measure, face_of
from mixedsimplex.schemas.config import CliConfig


def run_face(args: argparse.Namespace, cfg: CliConfig) -> None:
    face = face_of(SimplexPoint(read_vector(args.input)), cfg.tol)
    emit({"face": face.to_json(), "dimension": face.dimension, "volume": face.volume})


def run_measure(args: argparse.Namespace, cfg: CliConfig) -> None:
    data = read_json(args.input)
    if not isinstance(data, list):
        raise InvalidArgument("expected a JSON array of faces")
    faces = [Face.from_indices(f, one_based=True) for f in data]
    s = FaceSet.of(args.K, faces)
    value = exact_measure(s)
    emit({"faces": s.to_json(), "measure": float(value), "exact": str(value)})


def run_lattice(args: argparse.Namespace, cfg: CliConfig) -> None:
    lattice = FaceLattice(args.K)
    emit([f.to_json() for f in lattice.enumerate()])


def register(subparsers, parent: argparse.ArgumentParser) -> None:
    p = subparsers.add_parser("simplex", help="faces and the direct-sum measure")
    verbs = p.add_subparsers(dest="verb", required=True)

    face = verbs.add_parser("face", parents=[parent], help="face of a point on stdin")
    face.add_argument("--in", dest="input", default=None)
    face.set_defaults(handler=run_face)

    meas = verbs.add_parser("measure", parents=[parent], help="measure of a face set on stdin")
    meas.add_argument("--K", type=int, required=True)
    meas.add_argument("--in", dest="input", default=None)
    meas.set_defaults(handler=run_measure)

    lat = verbs.add_parser("lattice", parents=[parent], help="enumerate the faces of Δ_{K-1}")
    lat.add_argument("--K", type=int, required=True)
    lat.set_defaults(handler=run_lattice)
