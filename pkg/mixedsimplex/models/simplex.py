"""Points of the probability simplex, its faces and the direct-sum measure.

A face is identified by a bitmask over [K] (bit k set means coordinate k is
in the index set). A FaceSet is a finite union of face relative interiors,
stored as a Python integer whose bit ``m`` is set when the face with mask
``m`` belongs to the set, which makes union, intersection and complement
exact integer operations.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from mixedsimplex import config
from mixedsimplex.errors import (
    DegeneratePoint,
    InvalidArgument,
    InvalidSimplexPoint,
    KTooLarge,
)

logger = logging.getLogger("simplex")


@dataclass(frozen=True, eq=False)
class SimplexPoint:
    """A probability vector on the simplex of dimension K - 1.

    Inputs whose sum deviates from one by at most ``RENORMALIZE_TOL`` are
    renormalized; larger deviations are rejected.
    """

    coords: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.coords, dtype=float, copy=True)
        if arr.ndim != 1 or arr.size == 0:
            raise InvalidSimplexPoint(f"expected a non-empty vector, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise InvalidSimplexPoint("coordinates must be finite")
        if np.any(arr < 0):
            if np.any(arr < -config.SUM_TOL):
                raise InvalidSimplexPoint(f"negative coordinate {arr.min()!r}")
            arr = np.maximum(arr, 0.0)
        total = float(arr.sum())
        deviation = abs(total - 1.0)
        if deviation > config.RENORMALIZE_TOL:
            raise InvalidSimplexPoint(f"coordinates sum to {total!r}, not 1")
        if deviation > 0:
            arr = arr / total
        arr.setflags(write=False)
        object.__setattr__(self, "coords", arr)

    @classmethod
    def vertex(cls, K: int, k: int) -> SimplexPoint:
        """One-hot point on coordinate ``k`` (0-based)."""
        coords = np.zeros(K)
        coords[k] = 1.0
        return cls(coords)

    @classmethod
    def centroid(cls, face: Face, K: int) -> SimplexPoint:
        idx = list(face.indices)
        coords = np.zeros(K)
        coords[idx] = 1.0 / len(idx)
        return cls(coords)

    @property
    def K(self) -> int:
        return int(self.coords.size)

    def face(self, tol: float = config.DEFAULT_FACE_TOL) -> Face:
        return face_of(self, tol)

    def snapped(self, tol: float = config.DEFAULT_FACE_TOL) -> SimplexPoint:
        """Zero the coordinates at or below ``tol`` and renormalize."""
        arr = np.where(self.coords > tol, self.coords, 0.0)
        total = arr.sum()
        if total <= 0:
            raise DegeneratePoint(f"all coordinates <= {tol}")
        return SimplexPoint(arr / total)

    def to_list(self) -> list[float]:
        return [float(v) for v in self.coords]

    def __len__(self) -> int:
        return self.K

    def __iter__(self) -> Iterator[float]:
        return iter(self.to_list())

    def __getitem__(self, k: int) -> float:
        return float(self.coords[k])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplexPoint):
            return NotImplemented
        return bool(np.array_equal(self.coords, other.coords))

    def __hash__(self) -> int:
        return hash(self.coords.tobytes())

    def __repr__(self) -> str:
        return f"SimplexPoint({self.to_list()!r})"


@dataclass(frozen=True, order=True)
class Face:
    """Face of the simplex with index set given by a non-empty bitmask."""

    mask: int

    def __post_init__(self) -> None:
        if self.mask <= 0:
            raise InvalidArgument("the empty face is not part of the lattice")

    @classmethod
    def from_indices(cls, indices: Iterable[int], one_based: bool = False) -> Face:
        mask = 0
        for i in indices:
            k = int(i) - 1 if one_based else int(i)
            if k < 0:
                raise InvalidArgument(f"face index out of range: {i}")
            mask |= 1 << k
        return cls(mask)

    @property
    def indices(self) -> tuple[int, ...]:
        """Sorted 0-based coordinates of the index set."""
        return tuple(k for k in range(self.mask.bit_length()) if self.mask >> k & 1)

    @property
    def size(self) -> int:
        return self.mask.bit_count()

    @property
    def dimension(self) -> int:
        return self.size - 1

    @property
    def volume(self) -> float:
        return face_volume(self)

    def is_subface_of(self, other: Face) -> bool:
        return self.mask & other.mask == self.mask

    def fits(self, K: int) -> bool:
        return self.mask < 1 << K

    def to_json(self) -> list[int]:
        return [k + 1 for k in self.indices]

    def __str__(self) -> str:
        return "{" + ",".join(str(k + 1) for k in self.indices) + "}"


def check_lattice_k(K: int) -> None:
    if K < 1:
        raise InvalidArgument(f"alphabet size must be positive, got K={K}")
    if K > config.MAX_K:
        raise KTooLarge(
            f"K={K} exceeds the lattice enumeration cap {config.MAX_K} "
            "(set MIXEDSIMPLEX_MAX_K to raise it)"
        )


def _popcount(masks: np.ndarray) -> np.ndarray:
    as_bytes = masks.astype("<u8").view(np.uint8).reshape(-1, 8)
    return np.unpackbits(as_bytes, axis=1).sum(axis=1).astype(np.int64)


@dataclass(frozen=True)
class FaceSet:
    """Finite union of relative interiors of faces of the (K - 1)-simplex."""

    K: int
    bits: int = 0

    def __post_init__(self) -> None:
        check_lattice_k(self.K)
        if self.bits < 0 or self.bits & 1:
            raise InvalidArgument("face set bits must be non-negative and exclude the empty face")
        if self.bits >> (1 << self.K):
            raise InvalidArgument(f"face set contains faces outside K={self.K}")

    @classmethod
    def empty(cls, K: int) -> FaceSet:
        return cls(K, 0)

    @classmethod
    def full(cls, K: int) -> FaceSet:
        check_lattice_k(K)
        return cls(K, ((1 << (1 << K)) - 1) ^ 1)

    @classmethod
    def vertices(cls, K: int) -> FaceSet:
        return cls.of(K, (1 << k for k in range(K)))

    @classmethod
    def of(cls, K: int, faces: Iterable[Face | int | Sequence[int]]) -> FaceSet:
        """Build from Face objects, raw masks or 0-based index lists."""
        bits = 0
        for f in faces:
            if isinstance(f, Face):
                mask = f.mask
            elif isinstance(f, (int, np.integer)):
                mask = int(f)
            else:
                mask = Face.from_indices(f).mask
            if mask <= 0 or mask >= 1 << K:
                raise InvalidArgument(f"face mask {mask} invalid for K={K}")
            bits |= 1 << mask
        return cls(K, bits)

    @classmethod
    def from_masks(cls, K: int, masks: np.ndarray) -> FaceSet:
        check_lattice_k(K)
        flags = np.zeros(1 << K, dtype=bool)
        flags[np.asarray(masks, dtype=np.int64)] = True
        flags[0] = False
        packed = np.packbits(flags, bitorder="little").tobytes()
        return cls(K, int.from_bytes(packed, "little"))

    def masks(self) -> np.ndarray:
        """Sorted member masks."""
        if not self.bits:
            return np.zeros(0, dtype=np.int64)
        n_bytes = ((1 << self.K) + 7) // 8
        raw = np.frombuffer(self.bits.to_bytes(n_bytes, "little"), dtype=np.uint8)
        return np.flatnonzero(np.unpackbits(raw, bitorder="little")).astype(np.int64)

    @property
    def faces(self) -> tuple[Face, ...]:
        return tuple(Face(int(m)) for m in self.masks())

    @cached_property
    def total_measure(self) -> float:
        return measure(self)

    def __contains__(self, face: object) -> bool:
        if isinstance(face, Face):
            return bool(self.bits >> face.mask & 1)
        return False

    def __iter__(self) -> Iterator[Face]:
        return iter(self.faces)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __bool__(self) -> bool:
        return self.bits != 0

    def _same_k(self, other: FaceSet) -> None:
        if other.K != self.K:
            raise InvalidArgument(f"face sets over K={self.K} and K={other.K}")

    def union(self, other: FaceSet) -> FaceSet:
        self._same_k(other)
        return FaceSet(self.K, self.bits | other.bits)

    def intersection(self, other: FaceSet) -> FaceSet:
        self._same_k(other)
        return FaceSet(self.K, self.bits & other.bits)

    def difference(self, other: FaceSet) -> FaceSet:
        self._same_k(other)
        return FaceSet(self.K, self.bits & ~other.bits)

    def complement(self) -> FaceSet:
        return FaceSet(self.K, FaceSet.full(self.K).bits & ~self.bits)

    __or__ = union
    __and__ = intersection
    __sub__ = difference
    __invert__ = complement

    def isdisjoint(self, other: FaceSet) -> bool:
        self._same_k(other)
        return not self.bits & other.bits

    def issubset(self, other: FaceSet) -> bool:
        self._same_k(other)
        return self.bits & ~other.bits == 0

    def to_json(self) -> list[list[int]]:
        return [f.to_json() for f in self.faces]

    def __repr__(self) -> str:
        return f"FaceSet(K={self.K}, faces=[{', '.join(str(f) for f in self.faces)}])"


@dataclass(frozen=True)
class FaceLattice:
    """All non-empty faces of the (K - 1)-simplex, ordered by inclusion."""

    K: int

    def __post_init__(self) -> None:
        check_lattice_k(self.K)

    @property
    def size(self) -> int:
        return (1 << self.K) - 1

    def enumerate(self) -> Iterator[Face]:
        """Faces by increasing mask."""
        return (Face(m) for m in range(1, 1 << self.K))

    def faces_of_dimension(self, dimension: int) -> Iterator[Face]:
        for combo in itertools.combinations(range(self.K), dimension + 1):
            yield Face.from_indices(combo)

    @staticmethod
    def contains(f: Face, g: Face) -> bool:
        """Whether f is a face of g (index-set inclusion)."""
        return f.is_subface_of(g)

    def maximal_face(self) -> Face:
        return Face((1 << self.K) - 1)

    def full_set(self) -> FaceSet:
        return FaceSet.full(self.K)

    def __len__(self) -> int:
        return self.size


def face_of(p: SimplexPoint, tol: float = config.DEFAULT_FACE_TOL) -> Face:
    """Face whose relative interior holds ``p`` once coordinates <= tol are zeroed."""
    if not 0 <= tol < 1.0 / p.K:
        raise InvalidArgument(f"face tolerance must lie in [0, 1/K), got {tol}")
    above = np.flatnonzero(p.coords > tol)
    if above.size == 0:
        raise DegeneratePoint(f"all coordinates of {p!r} are <= {tol}")
    return Face.from_indices(above.tolist())


def face_volume(f: Face) -> float:
    """Direct-sum volume of ri(f): 1/(k-1)! in the dropped-coordinate chart."""
    return 1.0 / math.factorial(f.size - 1)


def exact_measure(s: FaceSet) -> Fraction:
    """Direct-sum measure as an exact rational."""
    masks = s.masks()
    if masks.size == 0:
        return Fraction(0)
    counts = np.bincount(_popcount(masks), minlength=s.K + 1)
    return sum(
        (Fraction(int(c), math.factorial(k - 1)) for k, c in enumerate(counts) if k and c),
        Fraction(0),
    )


def measure(s: FaceSet) -> float:
    """Direct-sum measure of a face set: the sum of its face volumes."""
    return float(exact_measure(s))
