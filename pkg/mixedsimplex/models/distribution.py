"""Mixed random variables: a face mass function plus per-face conditionals."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping, Union

import numpy as np

from mixedsimplex import config
from mixedsimplex.errors import InvalidArgument
from mixedsimplex.models.simplex import Face, FaceSet, face_volume

logger = logging.getLogger("distribution")

FULL_K2 = Face(0b11)


@dataclass(frozen=True)
class Flat:
    """Uniform conditional on a face: density 1/face_volume(f)."""

    def density(self, face: Face) -> float:
        return 1.0 / face_volume(face)


@dataclass(frozen=True)
class TruncatedGaussianK2:
    """N(y; z, sigma^2) restricted to y = p1 in (0, 1), on the edge of Δ1."""

    z: float
    sigma: float

    def __post_init__(self) -> None:
        if not self.sigma > 0 or not math.isfinite(self.sigma):
            raise InvalidArgument(f"sigma must be positive and finite, got {self.sigma}")
        if not math.isfinite(self.z):
            raise InvalidArgument(f"z must be finite, got {self.z}")

    @property
    def a(self) -> float:
        return -self.z / self.sigma

    @property
    def b(self) -> float:
        return (1.0 - self.z) / self.sigma


@dataclass(frozen=True, eq=False)
class Empirical:
    """Samples from the conditional, as an ``(n, K)`` array."""

    samples: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.samples, dtype=float, copy=True)
        if arr.ndim != 2 or arr.shape[0] == 0:
            raise InvalidArgument(f"empirical conditional needs an (n, K) array, got {arr.shape}")
        arr.setflags(write=False)
        object.__setattr__(self, "samples", arr)

    @property
    def n(self) -> int:
        return int(self.samples.shape[0])


Conditional = Union[Flat, TruncatedGaussianK2, Empirical]


@dataclass(frozen=True, eq=False)
class MixedDistribution:
    """Face mass ``P_F`` with a conditional density on each charged face.

    Faces without an explicit conditional are Flat. Zero-mass faces are
    dropped at construction.
    """

    K: int
    face_mass: Mapping[Face, float]
    conditionals: Mapping[Face, Conditional] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.K < 1:
            raise InvalidArgument(f"alphabet size must be positive, got K={self.K}")
        mass: dict[Face, float] = {}
        for face, value in self.face_mass.items():
            if not isinstance(face, Face):
                face = Face(int(face))
            if not face.fits(self.K):
                raise InvalidArgument(f"face {face} lies outside K={self.K}")
            value = float(value)
            if not math.isfinite(value) or value < -config.MASS_TOL:
                raise InvalidArgument(f"face mass of {face} must be non-negative, got {value}")
            if value > 0:
                mass[face] = mass.get(face, 0.0) + value
        total = math.fsum(mass.values())
        if abs(total - 1.0) > config.MASS_TOL:
            raise InvalidArgument(f"face masses sum to {total!r}, not 1")

        conditionals: dict[Face, Conditional] = {}
        for face in sorted(mass):
            cond = self.conditionals.get(face, Flat())
            if isinstance(cond, TruncatedGaussianK2) and (self.K != 2 or face != FULL_K2):
                raise InvalidArgument("truncated Gaussian conditionals live on the edge of K=2")
            if isinstance(cond, Empirical) and cond.samples.shape[1] != self.K:
                raise InvalidArgument(f"empirical samples for {face} are not K={self.K} points")
            conditionals[face] = cond
        object.__setattr__(self, "face_mass", MappingProxyType(dict(sorted(mass.items()))))
        object.__setattr__(self, "conditionals", MappingProxyType(conditionals))

    @classmethod
    def categorical(cls, probs) -> MixedDistribution:
        """Purely discrete: all mass on vertices."""
        arr = np.asarray(probs, dtype=float)
        return cls(int(arr.size), {Face(1 << k): float(v) for k, v in enumerate(arr) if v > 0})

    @classmethod
    def flat(cls, K: int) -> MixedDistribution:
        """Purely continuous: uniform on the maximal face."""
        return cls(K, {Face((1 << K) - 1): 1.0})

    @property
    def support(self) -> FaceSet:
        return FaceSet.of(self.K, self.face_mass)

    def mass(self, face: Face) -> float:
        return self.face_mass.get(face, 0.0)

    def conditional(self, face: Face) -> Conditional:
        return self.conditionals.get(face, Flat())

    @property
    def is_flat_family(self) -> bool:
        return all(isinstance(c, Flat) for c in self.conditionals.values())

    def expected_dimension(self) -> float:
        return math.fsum(m * face.dimension for face, m in self.face_mass.items())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MixedDistribution):
            return NotImplemented
        return (
            self.K == other.K
            and dict(self.face_mass) == dict(other.face_mass)
            and all(
                _same_conditional(self.conditional(f), other.conditional(f)) for f in self.face_mass
            )
        )

    __hash__ = None  # type: ignore[assignment]


def _same_conditional(a: Conditional, b: Conditional) -> bool:
    if isinstance(a, Empirical) or isinstance(b, Empirical):
        return isinstance(a, Empirical) and isinstance(b, Empirical) and np.array_equal(
            a.samples, b.samples
        )
    return a == b


@dataclass(frozen=True)
class FaceHistogram:
    """Monte Carlo face counts from ``face_of`` binning."""

    K: int
    counts: Mapping[Face, int]
    total: int
    tol: float = config.DEFAULT_FACE_TOL

    def __post_init__(self) -> None:
        if sum(self.counts.values()) != self.total:
            raise InvalidArgument("face counts do not add up to the total")
        object.__setattr__(self, "counts", MappingProxyType(dict(sorted(self.counts.items()))))

    def probability(self, face: Face) -> float:
        return self.counts.get(face, 0) / self.total

    def standard_error(self, face: Face) -> float:
        p = self.probability(face)
        return math.sqrt(p * (1.0 - p) / self.total)

    def probabilities(self) -> dict[Face, float]:
        return {face: c / self.total for face, c in self.counts.items()}
