"""``fsa <verb>``: mixed automata in the JSON automaton format."""

from __future__ import annotations

import argparse
import logging

from mixedsimplex.commands._io import emit, load, read_json
from mixedsimplex.errors import InvalidArgument
from mixedsimplex.models.automaton import MixedString, Mfsa
from mixedsimplex.models.rng import RngState
from mixedsimplex.schemas.automaton import AutomatonSchema, FsaSchema
from mixedsimplex.schemas.config import CliConfig
from mixedsimplex.services.automaton_service import AutomatonService

logger = logging.getLogger("cli")

BINARY = {
    "union": AutomatonService.union,
    "intersect": AutomatonService.intersection,
    "concat": AutomatonService.concatenation,
}
UNARY = {
    "determinize": AutomatonService.determinize,
    "complement": AutomatonService.complement,
    "complete": AutomatonService.complete,
    "trim": AutomatonService.trim,
    "push": AutomatonService.weight_push,
    "epsilon-removal": AutomatonService.epsilon_removal,
}


def load_automaton(path: str | None) -> Mfsa:
    return load(AutomatonSchema, read_json(path)).to_model()


def load_string(path: str, K: int) -> MixedString:
    data = read_json(path)
    if not isinstance(data, list):
        raise InvalidArgument("a mixed string is a JSON array of simplex points")
    return MixedString.from_lists(data, K)


def _second(args: argparse.Namespace) -> Mfsa:
    if args.in2 is None:
        raise InvalidArgument(f"fsa {args.verb} needs --in2")
    return load_automaton(args.in2)


def run_fsa(args: argparse.Namespace, cfg: CliConfig) -> None:
    verb = args.verb
    a = load_automaton(args.input)
    logger.info("fsa verb=%s input=%r", verb, a)
    if verb == "accept":
        x = load_string(args.string, a.K)
        emit({"accepted": AutomatonService.accepts(a, x, cfg.tol)})
    elif verb == "weight":
        x = load_string(args.string, a.K)
        emit({"weight": AutomatonService.string_weight(a, x, cfg.tol)})
    elif verb in UNARY:
        emit(AutomatonSchema.from_model(UNARY[verb](a)), args.out)
    elif verb in BINARY:
        emit(AutomatonSchema.from_model(BINARY[verb](a, _second(args))), args.out)
    elif verb == "equivalent":
        emit({"equivalent": AutomatonService.equivalent(a, _second(args))})
    elif verb == "skeleton":
        if args.string is not None:
            faces = AutomatonService.skeleton_string(load_string(args.string, a.K), cfg.tol)
            emit([f.to_json() for f in faces])
        else:
            emit(FsaSchema.from_model(AutomatonService.skeleton_automaton(a)), args.out)
    elif verb == "project":
        if args.string is not None:
            words = AutomatonService.projection_string(load_string(args.string, a.K), cfg.tol)
            emit(sorted([k + 1 for k in w] for w in words))
        else:
            emit(FsaSchema.from_model(AutomatonService.projection_automaton(a)), args.out)
    elif verb == "minimize":
        fsa = AutomatonService.minimize_fsa(AutomatonService.skeleton_automaton(a))
        emit(FsaSchema.from_model(fsa), args.out)
    elif verb == "sample":
        x = AutomatonService.sample_string(a, RngState(cfg.seed), max_len=args.max_len)
        emit(None if x is None else x.to_json())
    else:  # pragma: no cover - argparse restricts choices
        raise InvalidArgument(f"unknown verb {verb!r}")


VERBS = ("accept", "weight", *UNARY, *BINARY, "equivalent", "skeleton", "project", "minimize", "sample")


def register(subparsers, parent: argparse.ArgumentParser) -> None:
    p = subparsers.add_parser("fsa", parents=[parent], help="mixed finite-state automata")
    p.add_argument("verb", choices=VERBS)
    p.add_argument("--in", dest="input", default=None, help="automaton JSON (default stdin)")
    p.add_argument("--in2", default=None, help="second automaton for binary verbs")
    p.add_argument("--string", default=None, help="mixed string JSON")
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.add_argument("--max-len", type=int, default=8)
    p.set_defaults(handler=run_fsa)
