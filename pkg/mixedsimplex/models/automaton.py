"""Mixed strings and finite-state automata whose edges carry face-set supports."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from types import MappingProxyType
from typing import Hashable, Iterable, Iterator, Mapping, Sequence

from mixedsimplex import config
from mixedsimplex.errors import AlphabetMismatch, InvalidArgument, KTooLarge
from mixedsimplex.models.simplex import Face, FaceSet, SimplexPoint, face_of


@dataclass(frozen=True, eq=False)
class MixedString:
    """Sequence of simplex points over a shared alphabet size K."""

    K: int
    symbols: tuple[SimplexPoint, ...] = ()

    def __post_init__(self) -> None:
        if self.K < 1:
            raise InvalidArgument(f"alphabet size must be positive, got K={self.K}")
        symbols = tuple(s if isinstance(s, SimplexPoint) else SimplexPoint(s) for s in self.symbols)
        for s in symbols:
            if s.K != self.K:
                raise AlphabetMismatch(f"symbol {s!r} is not over K={self.K}")
        object.__setattr__(self, "symbols", symbols)

    @classmethod
    def from_lists(cls, rows: Sequence[Sequence[float]], K: int | None = None) -> MixedString:
        if K is None:
            if not rows:
                raise InvalidArgument("the alphabet size of an empty string must be given")
            K = len(rows[0])
        return cls(K, tuple(SimplexPoint(r) for r in rows))

    @classmethod
    def pure(cls, K: int, letters: Iterable[int]) -> MixedString:
        """String of vertices; ``letters`` are 0-based symbol indices."""
        return cls(K, tuple(SimplexPoint.vertex(K, k) for k in letters))

    def faces(self, tol: float = config.DEFAULT_FACE_TOL) -> tuple[Face, ...]:
        return tuple(face_of(s, tol) for s in self.symbols)

    def to_json(self) -> list[list[float]]:
        return [s.to_list() for s in self.symbols]

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[SimplexPoint]:
        return iter(self.symbols)

    def __getitem__(self, i: int) -> SimplexPoint:
        return self.symbols[i]

    def __repr__(self) -> str:
        return f"MixedString(K={self.K}, {self.to_json()!r})"


@dataclass(frozen=True)
class Edge:
    """Transition ``src -> dst``; ``support`` is None on ε-edges."""

    src: int
    dst: int
    support: FaceSet | None
    weight: float = 1.0

    @property
    def is_epsilon(self) -> bool:
        return self.support is None

    def density(self) -> float:
        """Uniform density over the support w.r.t. the direct-sum measure."""
        if self.support is None:
            return 1.0
        return 1.0 / self.support.total_measure


def _weights(values: Mapping[int, float] | Iterable[int]) -> dict[int, float]:
    if isinstance(values, Mapping):
        return {int(s): float(w) for s, w in values.items()}
    return {int(s): 1.0 for s in values}


@dataclass(frozen=True, eq=False)
class Mfsa:
    """Mixed weighted finite-state automaton.

    States are ``0 .. n_states - 1``. ``initial`` and ``final`` map states to
    their weights; a Boolean automaton has every weight equal to 1.
    """

    K: int
    n_states: int
    initial: Mapping[int, float]
    final: Mapping[int, float]
    edges: tuple[Edge, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        if self.K < 1:
            raise InvalidArgument(f"alphabet size must be positive, got K={self.K}")
        if self.K > config.MAX_K_AUTOMATA:
            raise KTooLarge(
                f"K={self.K} exceeds the automata cap {config.MAX_K_AUTOMATA} "
                "(set MIXEDSIMPLEX_MAX_K_AUTOMATA to raise it)"
            )
        if self.n_states < 1:
            raise InvalidArgument("an automaton needs at least one state")
        initial, final = _weights(self.initial), _weights(self.final)
        for name, weights in (("initial", initial), ("final", final)):
            for s, w in weights.items():
                self._check_state(s)
                if not (math.isfinite(w) and w >= 0):
                    raise InvalidArgument(f"{name} weight of state {s} must be non-negative")
        edges = tuple(self.edges)
        for e in edges:
            self._check_state(e.src)
            self._check_state(e.dst)
            if not (math.isfinite(e.weight) and e.weight >= 0):
                raise InvalidArgument(f"edge {e.src}->{e.dst} has weight {e.weight}")
            if e.support is not None and e.support.K != self.K:
                raise AlphabetMismatch(f"edge {e.src}->{e.dst} support is over K={e.support.K}")
        object.__setattr__(self, "initial", MappingProxyType(dict(sorted(initial.items()))))
        object.__setattr__(self, "final", MappingProxyType(dict(sorted(final.items()))))
        object.__setattr__(self, "edges", edges)

    def _check_state(self, s: int) -> None:
        if not 0 <= s < self.n_states:
            raise InvalidArgument(f"state {s} outside 0..{self.n_states - 1}")

    @classmethod
    def boolean(
        cls,
        K: int,
        n_states: int,
        initial: Iterable[int],
        final: Iterable[int],
        edges: Iterable[tuple[int, int, FaceSet | None]],
    ) -> Mfsa:
        """Boolean automaton from ``(src, dst, support)`` triples."""
        return cls(
            K, n_states, _weights(initial), _weights(final),
            tuple(Edge(s, t, support) for s, t, support in edges),
        )

    @property
    def states(self) -> range:
        return range(self.n_states)

    @cached_property
    def out_edges(self) -> tuple[tuple[Edge, ...], ...]:
        table: list[list[Edge]] = [[] for _ in self.states]
        for e in self.edges:
            table[e.src].append(e)
        return tuple(tuple(row) for row in table)

    @cached_property
    def is_boolean(self) -> bool:
        return (
            all(e.weight == 1.0 for e in self.edges)
            and all(w == 1.0 for w in self.initial.values())
            and all(w == 1.0 for w in self.final.values())
        )

    @property
    def has_epsilon(self) -> bool:
        return any(e.is_epsilon for e in self.edges)

    @cached_property
    def is_deterministic(self) -> bool:
        """One initial state, no ε-edges, pairwise disjoint outgoing supports."""
        if len(self.initial) != 1 or self.has_epsilon:
            return False
        for row in self.out_edges:
            seen = 0
            for e in row:
                if seen & e.support.bits:  # type: ignore[union-attr]
                    return False
                seen |= e.support.bits  # type: ignore[union-attr]
        return True

    @cached_property
    def is_complete(self) -> bool:
        if not self.is_deterministic:
            return False
        full = FaceSet.full(self.K).bits
        for row in self.out_edges:
            covered = 0
            for e in row:
                covered |= e.support.bits  # type: ignore[union-attr]
            if covered != full:
                return False
        return True

    def __repr__(self) -> str:
        return (
            f"Mfsa(K={self.K}, states={self.n_states}, initial={dict(self.initial)}, "
            f"final={dict(self.final)}, edges={len(self.edges)})"
        )


@dataclass(frozen=True, eq=False)
class Fsa:
    """Classical (Boolean) automaton over a finite alphabet of hashable symbols.

    Symbols missing from ``alphabet`` are rejected by every state.
    """

    alphabet: frozenset[Hashable]
    n_states: int
    initial: frozenset[int]
    final: frozenset[int]
    transitions: tuple[tuple[int, Hashable, int], ...] = ()

    def __post_init__(self) -> None:
        if self.n_states < 1:
            raise InvalidArgument("an automaton needs at least one state")
        transitions = tuple(dict.fromkeys(tuple(t) for t in self.transitions))
        alphabet = frozenset(self.alphabet) | {sym for _, sym, _ in transitions}
        for s, _, t in transitions:
            for q in (s, t):
                if not 0 <= q < self.n_states:
                    raise InvalidArgument(f"state {q} outside 0..{self.n_states - 1}")
        for q in (*self.initial, *self.final):
            if not 0 <= q < self.n_states:
                raise InvalidArgument(f"state {q} outside 0..{self.n_states - 1}")
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "initial", frozenset(self.initial))
        object.__setattr__(self, "final", frozenset(self.final))
        object.__setattr__(self, "transitions", transitions)

    @cached_property
    def delta(self) -> dict[tuple[int, Hashable], frozenset[int]]:
        table: dict[tuple[int, Hashable], set[int]] = {}
        for s, sym, t in self.transitions:
            table.setdefault((s, sym), set()).add(t)
        return {key: frozenset(v) for key, v in table.items()}

    @property
    def is_deterministic(self) -> bool:
        return len(self.initial) == 1 and all(len(v) == 1 for v in self.delta.values())

    def accepts(self, word: Iterable[Hashable]) -> bool:
        current = set(self.initial)
        for sym in word:
            current = {t for s in current for t in self.delta.get((s, sym), ())}
            if not current:
                return False
        return bool(current & self.final)

    def __repr__(self) -> str:
        return (
            f"Fsa(symbols={len(self.alphabet)}, states={self.n_states}, "
            f"initial={sorted(self.initial)}, final={sorted(self.final)}, "
            f"transitions={len(self.transitions)})"
        )
