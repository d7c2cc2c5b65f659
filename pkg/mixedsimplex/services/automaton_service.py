"""Acceptance, weights and closure constructions for mixed automata.

Edge supports are FaceSets, so every construction works on the finite
Boolean algebra of face atoms: a symbol y is consumable on an edge iff
face_of(y) belongs to the edge support.
"""

from __future__ import annotations

import itertools
import logging
import math
from collections import deque
from typing import Hashable, Iterable, Sequence

import numpy as np

from mixedsimplex import config
from mixedsimplex.errors import (
    AlphabetMismatch,
    InvalidArgument,
    NotDeterminizable,
    NotTrim,
    TooManyProjections,
)
from mixedsimplex.models.automaton import Edge, Fsa, Mfsa, MixedString
from mixedsimplex.models.rng import RngState
from mixedsimplex.models.simplex import Face, FaceSet, SimplexPoint
from mixedsimplex.monitoring.metrics import OperationTimer, automaton_states_created_total

logger = logging.getLogger("automata")


def _same_k(a: Mfsa, b: Mfsa) -> None:
    if a.K != b.K:
        raise AlphabetMismatch(f"automata over K={a.K} and K={b.K}")


def _check_string(a: Mfsa, x: MixedString) -> None:
    if x.K != a.K:
        raise AlphabetMismatch(f"string over K={x.K}, automaton over K={a.K}")


def _require_boolean(a: Mfsa, operation: str) -> None:
    if not a.is_boolean:
        raise NotDeterminizable(f"{operation} needs a Boolean automaton")


def _epsilon_closure(a: Mfsa, states: Iterable[int]) -> frozenset[int]:
    seen = set(states)
    stack = list(seen)
    while stack:
        s = stack.pop()
        for e in a.out_edges[s]:
            if e.is_epsilon and e.weight > 0 and e.dst not in seen:
                seen.add(e.dst)
                stack.append(e.dst)
    return frozenset(seen)


def _epsilon_matrix(a: Mfsa) -> np.ndarray:
    """(I - E)^-1 with E the ε-edge weights: sums over every ε-path."""
    n = a.n_states
    E = np.zeros((n, n))
    for e in a.edges:
        if e.is_epsilon:
            E[e.src, e.dst] += e.weight
    if not E.any():
        return np.eye(n)
    try:
        if np.max(np.abs(np.linalg.eigvals(E))) >= 1.0:
            raise NotTrim("ε-cycle weights diverge")
        return np.linalg.inv(np.eye(n) - E)
    except np.linalg.LinAlgError as exc:
        raise NotTrim(f"ε-closure is singular: {exc}") from exc


def _renumber(keep: Sequence[int]) -> dict[int, int]:
    return {old: new for new, old in enumerate(keep)}


def _interior_point(gen: np.random.Generator, face: Face, K: int) -> SimplexPoint:
    # coordinates stay above 0.1 / k so face_of recovers the face
    idx = list(face.indices)
    w = gen.uniform(0.1, 1.0, size=len(idx))
    coords = np.zeros(K)
    coords[idx] = w / w.sum()
    return SimplexPoint(coords)


def letters(word: Iterable[int]) -> str:
    """Render a pure string of 0-based indices as letters (a, b, ...)."""
    return "".join(chr(ord("a") + k) for k in word)


class AutomatonService:
    """Operations on :class:`Mfsa` and the classical :class:`Fsa`."""

    # -- membership and weights ---------------------------------------------------

    @staticmethod
    def accepts(a: Mfsa, x: MixedString, tol: float = config.DEFAULT_FACE_TOL) -> bool:
        """Subset simulation over the symbols' faces."""
        _check_string(a, x)
        current = _epsilon_closure(a, (s for s, w in a.initial.items() if w > 0))
        for face in x.faces(tol):
            step = {
                e.dst
                for s in current
                for e in a.out_edges[s]
                if not e.is_epsilon and e.weight > 0 and face in e.support
            }
            if not step:
                return False
            current = _epsilon_closure(a, step)
        return any(a.final.get(s, 0.0) > 0 for s in current)

    @staticmethod
    def string_weight(a: Mfsa, x: MixedString, tol: float = config.DEFAULT_FACE_TOL) -> float:
        """Forward algorithm: sum over paths of λ · Π w · Π density · ρ."""
        _check_string(a, x)
        n = a.n_states
        closure = _epsilon_matrix(a)
        alpha = np.zeros(n)
        for s, w in a.initial.items():
            alpha[s] = w
        alpha = alpha @ closure
        for face in x.faces(tol):
            step = np.zeros((n, n))
            for e in a.edges:
                if not e.is_epsilon and face in e.support:
                    step[e.src, e.dst] += e.weight * e.density()
            alpha = (alpha @ step) @ closure
        rho = np.zeros(n)
        for s, w in a.final.items():
            rho[s] = w
        return float(alpha @ rho)

    # -- structural operations -------------------------------------------------

    @staticmethod
    def epsilon_removal(a: Mfsa) -> Mfsa:
        """ε-free automaton with the same language (Boolean) or string weights."""
        if not a.has_epsilon:
            return a
        if a.is_boolean:
            edges = []
            final = {}
            for s in a.states:
                closure = _epsilon_closure(a, [s])
                if any(t in a.final for t in closure):
                    final[s] = 1.0
                targets = {
                    (e.dst, e.support.bits)  # type: ignore[union-attr]
                    for t in closure
                    for e in a.out_edges[t]
                    if not e.is_epsilon
                }
                edges.extend(Edge(s, d, FaceSet(a.K, bits)) for d, bits in sorted(targets))
            return Mfsa(a.K, a.n_states, dict(a.initial), final, tuple(edges))

        closure = _epsilon_matrix(a)
        rho = np.zeros(a.n_states)
        for s, w in a.final.items():
            rho[s] = w
        through = closure @ rho
        final = {s: float(through[s]) for s in a.states if through[s] > 0}
        edges = []
        for s in a.states:
            for t in np.flatnonzero(closure[s] > 0):
                for e in a.out_edges[int(t)]:
                    if not e.is_epsilon:
                        edges.append(Edge(s, e.dst, e.support, float(closure[s, t]) * e.weight))
        return Mfsa(a.K, a.n_states, dict(a.initial), final, tuple(edges))

    @staticmethod
    def determinize(a: Mfsa) -> Mfsa:
        """Powerset construction over face atoms.

        For a subset P the atoms are split by the out-edge supports of P
        (partition refinement), and atoms with the same successor subset
        share one edge.
        """
        _require_boolean(a, "determinize")
        with OperationTimer("fsa.determinize"):
            full = FaceSet.full(a.K).bits
            start = _epsilon_closure(a, a.initial)
            index = {start: 0}
            queue = deque([start])
            edges: list[Edge] = []
            final: dict[int, float] = {}
            while queue:
                subset = queue.popleft()
                src = index[subset]
                if any(s in a.final for s in subset):
                    final[src] = 1.0
                blocks: list[tuple[int, frozenset[int]]] = [(full, frozenset())]
                for s in sorted(subset):
                    for e in a.out_edges[s]:
                        if e.is_epsilon:
                            continue
                        refined = []
                        for bits, targets in blocks:
                            inside, outside = bits & e.support.bits, bits & ~e.support.bits  # type: ignore[union-attr]
                            if inside:
                                refined.append((inside, targets | {e.dst}))
                            if outside:
                                refined.append((outside, targets))
                        blocks = refined
                by_successor: dict[frozenset[int], int] = {}
                for bits, targets in blocks:
                    if targets:
                        succ = _epsilon_closure(a, targets)
                        by_successor[succ] = by_successor.get(succ, 0) | bits
                for succ, bits in sorted(by_successor.items(), key=lambda kv: sorted(kv[0])):
                    if succ not in index:
                        index[succ] = len(index)
                        queue.append(succ)
                    edges.append(Edge(src, index[succ], FaceSet(a.K, bits)))
        automaton_states_created_total.labels(operation="determinize").inc(len(index))
        logger.debug("Determinized states=%d -> %d", a.n_states, len(index))
        return Mfsa(a.K, len(index), {0: 1.0}, final, tuple(edges))

    @staticmethod
    def complete(a: Mfsa) -> Mfsa:
        """Deterministic automaton whose outgoing supports cover every face."""
        d = a if a.is_deterministic and a.is_boolean else AutomatonService.determinize(a)
        if d.is_complete:
            return d
        full = FaceSet.full(d.K).bits
        sink = d.n_states
        edges = list(d.edges)
        for s in d.states:
            covered = 0
            for e in d.out_edges[s]:
                covered |= e.support.bits  # type: ignore[union-attr]
            if covered != full:
                edges.append(Edge(s, sink, FaceSet(d.K, full & ~covered)))
        edges.append(Edge(sink, sink, FaceSet(d.K, full)))
        automaton_states_created_total.labels(operation="complete").inc()
        return Mfsa(d.K, d.n_states + 1, dict(d.initial), dict(d.final), tuple(edges))

    @staticmethod
    def complement(a: Mfsa) -> Mfsa:
        """Toggle final and non-final states of the completed determinization."""
        c = AutomatonService.complete(AutomatonService.determinize(a))
        final = {s: 1.0 for s in c.states if s not in c.final}
        return Mfsa(c.K, c.n_states, dict(c.initial), final, c.edges)

    @staticmethod
    def _disjoint_sum(a: Mfsa, b: Mfsa) -> tuple[list[Edge], int]:
        shift = a.n_states
        edges = list(a.edges) + [Edge(e.src + shift, e.dst + shift, e.support, e.weight) for e in b.edges]
        return edges, shift

    @staticmethod
    def union(a: Mfsa, b: Mfsa) -> Mfsa:
        """Merge the initial sets of the disjoint sum, then determinize."""
        _same_k(a, b)
        _require_boolean(a, "union")
        _require_boolean(b, "union")
        edges, shift = AutomatonService._disjoint_sum(a, b)
        initial = {**dict(a.initial), **{s + shift: 1.0 for s in b.initial}}
        final = {**dict(a.final), **{s + shift: 1.0 for s in b.final}}
        merged = Mfsa(a.K, a.n_states + b.n_states, initial, final, tuple(edges))
        return AutomatonService.determinize(merged)

    @staticmethod
    def intersection(a: Mfsa, b: Mfsa) -> Mfsa:
        """Product construction; edge supports are intersected."""
        _same_k(a, b)
        _require_boolean(a, "intersection")
        _require_boolean(b, "intersection")
        a = AutomatonService.epsilon_removal(a)
        b = AutomatonService.epsilon_removal(b)
        starts = [(p, q) for p in a.initial for q in b.initial]
        index = {pair: i for i, pair in enumerate(starts)}
        queue = deque(starts)
        edges: list[Edge] = []
        while queue:
            p, q = queue.popleft()
            for e1 in a.out_edges[p]:
                for e2 in b.out_edges[q]:
                    support = e1.support & e2.support  # type: ignore[operator]
                    if not support:
                        continue
                    pair = (e1.dst, e2.dst)
                    if pair not in index:
                        index[pair] = len(index)
                        queue.append(pair)
                    edges.append(Edge(index[(p, q)], index[pair], support))
        if not index:
            return Mfsa(a.K, 1, {}, {}, ())
        final = {i: 1.0 for (p, q), i in index.items() if p in a.final and q in b.final}
        automaton_states_created_total.labels(operation="intersection").inc(len(index))
        return Mfsa(a.K, len(index), {i: 1.0 for i in range(len(starts))}, final, tuple(edges))

    @staticmethod
    def concatenation(a: Mfsa, b: Mfsa) -> Mfsa:
        """ε-edges from the finals of ``a`` to the initials of ``b``, then ε-removal and determinize."""
        _same_k(a, b)
        _require_boolean(a, "concatenation")
        _require_boolean(b, "concatenation")
        edges, shift = AutomatonService._disjoint_sum(a, b)
        edges += [Edge(f, i + shift, None) for f in a.final for i in b.initial]
        joined = Mfsa(
            a.K, a.n_states + b.n_states, dict(a.initial), {s + shift: 1.0 for s in b.final}, tuple(edges)
        )
        return AutomatonService.determinize(AutomatonService.epsilon_removal(joined))

    @staticmethod
    def trim(a: Mfsa) -> Mfsa:
        """Keep only states both accessible and co-accessible."""
        forward = {s for s, w in a.initial.items() if w > 0}
        stack = list(forward)
        while stack:
            s = stack.pop()
            for e in a.out_edges[s]:
                if e.weight > 0 and e.dst not in forward:
                    forward.add(e.dst)
                    stack.append(e.dst)
        backward = {s for s, w in a.final.items() if w > 0}
        incoming: dict[int, list[Edge]] = {}
        for e in a.edges:
            incoming.setdefault(e.dst, []).append(e)
        stack = list(backward)
        while stack:
            t = stack.pop()
            for e in incoming.get(t, ()):
                if e.weight > 0 and e.src not in backward:
                    backward.add(e.src)
                    stack.append(e.src)
        keep = sorted(forward & backward)
        if not keep:
            return Mfsa(a.K, 1, {}, {}, ())
        new = _renumber(keep)
        edges = tuple(
            Edge(new[e.src], new[e.dst], e.support, e.weight)
            for e in a.edges
            if e.src in new and e.dst in new and e.weight > 0
        )
        initial = {new[s]: w for s, w in a.initial.items() if s in new}
        final = {new[s]: w for s, w in a.final.items() if s in new}
        return Mfsa(a.K, len(keep), initial, final, edges)

    @staticmethod
    def weight_push(a: Mfsa) -> Mfsa:
        """Stochastic form with the same string weights.

        With d = (I - W)^-1 ρ, the total weight leaving each state:
        w'(s, t) = w d(t) / d(s), ρ'(s) = ρ(s) / d(s), λ'(s) = λ(s) d(s).
        """
        n = a.n_states
        W = np.zeros((n, n))
        for e in a.edges:
            W[e.src, e.dst] += e.weight
        rho = np.zeros(n)
        for s, w in a.final.items():
            rho[s] = w
        try:
            if W.any() and np.max(np.abs(np.linalg.eigvals(W))) >= 1.0:
                raise NotTrim("total path weight diverges")
            d = np.linalg.solve(np.eye(n) - W, rho)
        except np.linalg.LinAlgError as exc:
            raise NotTrim(f"I - W is singular: {exc}") from exc
        if np.any(d <= 0):
            bad = [int(s) for s in np.flatnonzero(d <= 0)]
            raise NotTrim(f"states {bad} cannot reach a final state")
        edges = tuple(Edge(e.src, e.dst, e.support, e.weight * d[e.dst] / d[e.src]) for e in a.edges)
        initial = {s: w * float(d[s]) for s, w in a.initial.items()}
        final = {s: w / float(d[s]) for s, w in a.final.items()}
        return Mfsa(a.K, n, initial, final, edges)

    # -- skeletons and projections -------------------------------------------------

    @staticmethod
    def skeleton_string(x: MixedString, tol: float = config.DEFAULT_FACE_TOL) -> tuple[Face, ...]:
        return x.faces(tol)

    @staticmethod
    def projection_string(x: MixedString, tol: float = config.DEFAULT_FACE_TOL) -> set[tuple[int, ...]]:
        """Every pure string u with u_i in supp(x_i); symbols are 0-based."""
        supports = [f.indices for f in x.faces(tol)]
        count = math.prod(len(s) for s in supports)
        if count > config.MAX_PROJECTIONS:
            raise TooManyProjections(f"{count} projections exceed {config.MAX_PROJECTIONS}")
        return set(itertools.product(*supports))

    @staticmethod
    def skeleton_automaton(a: Mfsa) -> Fsa:
        """Classical DFA over faces accepting the skeletons of the language."""
        _require_boolean(a, "skeleton")
        a = AutomatonService.epsilon_removal(a)
        transitions = [(e.src, face, e.dst) for e in a.edges for face in e.support.faces]  # type: ignore[union-attr]
        fsa = Fsa(frozenset(), a.n_states, frozenset(a.initial), frozenset(a.final), tuple(transitions))
        return AutomatonService.determinize_fsa(fsa)

    @staticmethod
    def projection_automaton(a: Mfsa) -> Fsa:
        """Classical DFA over 0-based symbols accepting the projections of the language."""
        _require_boolean(a, "projection")
        a = AutomatonService.epsilon_removal(a)
        transitions = []
        for e in a.edges:
            used = 0
            for mask in e.support.masks():  # type: ignore[union-attr]
                used |= int(mask)
            transitions.extend((e.src, k, e.dst) for k in range(a.K) if used >> k & 1)
        fsa = Fsa(frozenset(range(a.K)), a.n_states, frozenset(a.initial), frozenset(a.final), tuple(transitions))
        return AutomatonService.determinize_fsa(fsa)

    # -- classical automata ----------------------------------------------------------

    @staticmethod
    def from_fsa(fsa: Fsa, K: int) -> Mfsa:
        """Embed a classical automaton over symbols 0..K-1: each edge supports one vertex."""
        for sym in fsa.alphabet:
            if not (isinstance(sym, (int, np.integer)) and 0 <= sym < K):
                raise AlphabetMismatch(f"symbol {sym!r} is not in 0..{K - 1}")
        edges = tuple(Edge(s, t, FaceSet.of(K, [1 << int(sym)])) for s, sym, t in fsa.transitions)
        return Mfsa(K, fsa.n_states, {s: 1.0 for s in fsa.initial}, {s: 1.0 for s in fsa.final}, edges)

    @staticmethod
    def determinize_fsa(fsa: Fsa) -> Fsa:
        """Classical powerset construction (reachable subsets only)."""
        symbols = sorted(fsa.alphabet, key=repr)
        start = frozenset(fsa.initial)
        index = {start: 0}
        queue = deque([start])
        transitions = []
        while queue:
            subset = queue.popleft()
            for sym in symbols:
                succ = frozenset(t for s in subset for t in fsa.delta.get((s, sym), ()))
                if not succ:
                    continue
                if succ not in index:
                    index[succ] = len(index)
                    queue.append(succ)
                transitions.append((index[subset], sym, index[succ]))
        final = frozenset(i for subset, i in index.items() if subset & fsa.final)
        return Fsa(fsa.alphabet, len(index), frozenset({0}), final, tuple(transitions))

    @staticmethod
    def minimize_fsa(fsa: Fsa) -> Fsa:
        """Moore partition refinement on the completed DFA, sink dropped when dead."""
        dfa = AutomatonService.determinize_fsa(fsa)
        symbols = sorted(dfa.alphabet, key=repr)
        sink = dfa.n_states
        n = dfa.n_states + 1

        def step(s: int, sym: Hashable) -> int:
            if s == sink:
                return sink
            succ = dfa.delta.get((s, sym))
            return next(iter(succ)) if succ else sink

        block = [1 if s in dfa.final else 0 for s in range(n)]
        while True:
            signatures = [(block[s], *(block[step(s, sym)] for sym in symbols)) for s in range(n)]
            ids: dict[tuple, int] = {}
            refined = [ids.setdefault(sig, len(ids)) for sig in signatures]
            if len(ids) == len(set(block)):
                block = refined
                break
            block = refined

        dead = block[sink]
        start_block = block[next(iter(dfa.initial))]
        if start_block == dead:
            return Fsa(dfa.alphabet, 1, frozenset({0}), frozenset(), ())
        live = sorted({b for b in block if b != dead}, key=block.index)
        order = [start_block] + [b for b in live if b != start_block]
        renum = {b: i for i, b in enumerate(order)}
        transitions = set()
        for s in range(dfa.n_states):
            for sym in symbols:
                t = step(s, sym)
                if block[s] != dead and block[t] != dead:
                    transitions.add((renum[block[s]], sym, renum[block[t]]))
        final = frozenset(renum[block[s]] for s in dfa.final)
        return Fsa(
            dfa.alphabet, len(order), frozenset({0}), final,
            tuple(sorted(transitions, key=lambda t: (t[0], repr(t[1]), t[2]))),
        )

    @staticmethod
    def fsa_equivalent(f: Fsa, g: Fsa) -> bool:
        """Same language, by a joint walk of the two determinizations."""
        df, dg = AutomatonService.determinize_fsa(f), AutomatonService.determinize_fsa(g)
        symbols = sorted(df.alphabet | dg.alphabet, key=repr)

        def step(fsa: Fsa, s: int | None, sym: Hashable) -> int | None:
            if s is None:
                return None
            succ = fsa.delta.get((s, sym))
            return next(iter(succ)) if succ else None

        start = (0, 0)
        seen = {start}
        queue = deque([start])
        while queue:
            p, q = queue.popleft()
            if (p is not None and p in df.final) != (q is not None and q in dg.final):
                return False
            for sym in symbols:
                pair = (step(df, p, sym), step(dg, q, sym))
                if pair != (None, None) and pair not in seen:
                    seen.add(pair)
                    queue.append(pair)
        return True

    @staticmethod
    def equivalent(a: Mfsa, b: Mfsa) -> bool:
        """Exact mixed-language equivalence over face atoms."""
        _same_k(a, b)
        ca = AutomatonService.complete(AutomatonService.determinize(a))
        cb = AutomatonService.complete(AutomatonService.determinize(b))
        start = (0, 0)
        seen = {start}
        queue = deque([start])
        while queue:
            p, q = queue.popleft()
            if (p in ca.final) != (q in cb.final):
                return False
            for e1 in ca.out_edges[p]:
                for e2 in cb.out_edges[q]:
                    if e1.support.bits & e2.support.bits:  # type: ignore[union-attr]
                        pair = (e1.dst, e2.dst)
                        if pair not in seen:
                            seen.add(pair)
                            queue.append(pair)
        return True

    # -- random strings ------------------------------------------------------------------

    @staticmethod
    def random_string(K: int, length: int, rng: RngState, chunk: int = 0) -> MixedString:
        """Mixed string whose faces are uniform over the lattice."""
        if length < 0:
            raise InvalidArgument(f"length must be >= 0, got {length}")
        gen = rng.generator(chunk)
        masks = gen.integers(1, 1 << K, size=length)
        return MixedString(K, tuple(_interior_point(gen, Face(int(m)), K) for m in masks))

    @staticmethod
    def sample_string(
        a: Mfsa, rng: RngState, max_len: int = 8, chunk: int = 0, attempts: int = 100
    ) -> MixedString | None:
        """Random accepted string: a walk on the trimmed automaton, uniform per choice.

        Returns None when no accepted string of length <= ``max_len`` is found.
        """
        t = AutomatonService.trim(a)
        if not t.initial:
            return None
        gen = rng.generator(chunk)
        starts = sorted(t.initial)
        for _ in range(attempts):
            state = starts[int(gen.integers(len(starts)))]
            symbols: list[SimplexPoint] = []
            for _step in range(4 * max_len + 4):
                options: list[Edge | None] = list(t.out_edges[state])
                if state in t.final:
                    options.append(None)
                if len(symbols) >= max_len:
                    options = [o for o in options if o is None or o.is_epsilon]
                if not options:
                    break
                choice = options[int(gen.integers(len(options)))]
                if choice is None:
                    return MixedString(a.K, tuple(symbols))
                if not choice.is_epsilon:
                    faces = choice.support.faces  # type: ignore[union-attr]
                    face = faces[int(gen.integers(len(faces)))]
                    symbols.append(_interior_point(gen, face, a.K))
                state = choice.dst
        return None
