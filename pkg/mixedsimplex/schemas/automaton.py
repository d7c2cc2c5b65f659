from __future__ import annotations

from typing import Hashable, Optional, Union

from sqlmodel import Field, SQLModel

from mixedsimplex.models.automaton import Edge, Fsa, Mfsa
from mixedsimplex.models.simplex import Face, FaceSet


class WeightedStateSchema(SQLModel):
    state: int = Field(ge=0)
    weight: float = Field(default=1.0, ge=0)


class EdgeSchema(SQLModel):
    src: int = Field(ge=0)
    dst: int = Field(ge=0)
    faces: list[list[int]] = Field(default_factory=list)
    weight: float = Field(default=1.0, ge=0)
    epsilon: bool = False


class AutomatonSchema(SQLModel):
    """``{"K", "states", "initial", "final", "edges"}``; faces use 1-based indices."""

    K: int = Field(ge=1)
    states: int = Field(ge=1)
    initial: list[WeightedStateSchema]
    final: list[WeightedStateSchema] = Field(default_factory=list)
    edges: list[EdgeSchema] = Field(default_factory=list)

    def to_model(self) -> Mfsa:
        edges = []
        for e in self.edges:
            if e.epsilon:
                support = None
            else:
                support = FaceSet.of(
                    self.K, (Face.from_indices(f, one_based=True) for f in e.faces)
                )
            edges.append(Edge(e.src, e.dst, support, e.weight))
        return Mfsa(
            self.K,
            self.states,
            {s.state: s.weight for s in self.initial},
            {s.state: s.weight for s in self.final},
            tuple(edges),
        )

    @classmethod
    def from_model(cls, a: Mfsa) -> AutomatonSchema:
        return cls(
            K=a.K,
            states=a.n_states,
            initial=[WeightedStateSchema(state=s, weight=w) for s, w in a.initial.items()],
            final=[WeightedStateSchema(state=s, weight=w) for s, w in a.final.items()],
            edges=[
                EdgeSchema(
                    src=e.src,
                    dst=e.dst,
                    faces=[] if e.support is None else e.support.to_json(),
                    weight=e.weight,
                    epsilon=e.is_epsilon,
                )
                for e in a.edges
            ],
        )


Symbol = Union[int, list[int]]


def _symbol_json(sym: Hashable) -> Symbol:
    # faces as 1-based index lists, letters as 1-based indices
    if isinstance(sym, Face):
        return sym.to_json()
    return int(sym) + 1  # type: ignore[call-overload]


class FsaSchema(SQLModel):
    """Classical automaton output (skeletons over faces, projections over letters)."""

    alphabet: list[Symbol]
    states: int
    initial: list[int]
    final: list[int]
    transitions: list[tuple[int, Symbol, int]]
    deterministic: Optional[bool] = None

    @classmethod
    def from_model(cls, fsa: Fsa) -> FsaSchema:
        ordered = sorted(fsa.alphabet, key=lambda s: (getattr(s, "mask", s)))
        return cls(
            alphabet=[_symbol_json(s) for s in ordered],
            states=fsa.n_states,
            initial=sorted(fsa.initial),
            final=sorted(fsa.final),
            transitions=[(s, _symbol_json(sym), t) for s, sym, t in fsa.transitions],
            deterministic=fsa.is_deterministic,
        )
