"""Estimation, evaluation and sampling of mixed distributions on the simplex.

Every method is a static method so the command line and the information
service can call them without holding state.
"""

from __future__ import annotations

import logging
import math
from collections import Counter

import numpy as np
from scipy import stats

from mixedsimplex import config
from mixedsimplex.errors import DegeneratePoint, InvalidArgument, NoDensityForm
from mixedsimplex.models.distribution import (
    FULL_K2,
    Empirical,
    FaceHistogram,
    Flat,
    MixedDistribution,
    TruncatedGaussianK2,
)
from mixedsimplex.models.rng import RngState
from mixedsimplex.models.sampler_spec import SamplerSpec
from mixedsimplex.models.simplex import Face, FaceSet, SimplexPoint, face_of
from mixedsimplex.monitoring.metrics import OperationTimer, faces_binned_total
from mixedsimplex.services.sampler_service import SamplerService

logger = logging.getLogger("distribution")

# Vectorized binning packs a face into one int64
_MAX_VECTOR_K = 62


def face_masks(samples: np.ndarray, tol: float) -> np.ndarray | list[int]:
    """Face bitmask of every row of an ``(n, K)`` sample array."""
    n, K = samples.shape
    if not 0 <= tol < 1.0 / K:
        raise InvalidArgument(f"face tolerance must lie in [0, 1/K), got {tol}")
    above = samples > tol
    if not above.any(axis=1).all():
        raise DegeneratePoint(f"a sample has every coordinate <= {tol}")
    if K <= _MAX_VECTOR_K:
        weights = np.left_shift(np.int64(1), np.arange(K, dtype=np.int64))
        return above.astype(np.int64) @ weights
    return [sum(1 << int(k) for k in np.flatnonzero(row)) for row in above]


def truncated_normal(cond: TruncatedGaussianK2):
    """Frozen scipy truncated normal for y = p1 on (0, 1)."""
    return stats.truncnorm(cond.a, cond.b, loc=cond.z, scale=cond.sigma)


def gaussian_sparsemax_atoms(z: float, sigma: float) -> tuple[float, float, float]:
    """(P0, P1, continuous mass) of the K=2 Gaussian-sparsemax."""
    atoms = SamplerService.gaussian_sparsemax_density_k2(0.5, z, sigma)
    mass = 1.0 - atoms.p0 - atoms.p1
    return atoms.p0, atoms.p1, mass


def _flat_on_face(gen: np.random.Generator, face: Face, K: int, m: int) -> np.ndarray:
    idx = list(face.indices)
    out = np.zeros((m, K))
    e = gen.standard_exponential((m, len(idx)))
    out[:, idx] = e / e.sum(axis=1, keepdims=True)
    return out


class DistributionService:
    """Operations on :class:`MixedDistribution`."""

    @staticmethod
    def estimate_face_probs(
        spec: SamplerSpec,
        n: int,
        tol: float = config.DEFAULT_FACE_TOL,
        rng: RngState | None = None,
        workers: int | None = None,
    ) -> FaceHistogram:
        """Monte Carlo estimate of P_F for a sampler.

        Args:
            spec: Generative story to draw from.
            n: Number of draws.
            tol: Coordinates at or below ``tol`` count as zero.
            rng: Random stream; seed 0 when omitted.
            workers: Sampling threads (the result does not depend on it).

        Returns:
            A FaceHistogram whose counts add up to ``n``.
        """
        hist, _ = DistributionService._bin(spec, n, tol, rng or RngState(), workers)
        return hist

    @staticmethod
    def _bin(spec, n, tol, rng, workers) -> tuple[FaceHistogram, tuple[np.ndarray, np.ndarray]]:
        samples = SamplerService.sample_array(spec, rng, n, workers=workers)
        with OperationTimer("faces.bin"):
            masks = face_masks(samples, tol)
            counts = Counter(int(m) for m in masks)
        faces_binned_total.inc(n)
        hist = FaceHistogram(spec.K, {Face(m): c for m, c in counts.items()}, n, tol)
        logger.info("Binned n=%d spec=%s faces=%d", n, spec.kind, len(counts))
        return hist, (samples, np.asarray(masks))

    @staticmethod
    def estimate_distribution(
        spec: SamplerSpec,
        n: int,
        tol: float = config.DEFAULT_FACE_TOL,
        rng: RngState | None = None,
    ) -> MixedDistribution:
        """Face masses from binning plus Empirical conditionals from the draws."""
        hist, (samples, masks) = DistributionService._bin(spec, n, tol, rng or RngState(), None)
        return DistributionService.from_histogram(hist, samples, masks)

    @staticmethod
    def from_histogram(
        hist: FaceHistogram, samples: np.ndarray, masks: np.ndarray | None = None
    ) -> MixedDistribution:
        """MixedDistribution with Empirical conditionals; vertices need none."""
        samples = np.asarray(samples, dtype=float)
        if masks is None:
            masks = np.asarray(face_masks(samples, hist.tol))
        conditionals = {}
        for face in hist.counts:
            if face.size > 1:
                conditionals[face] = Empirical(samples[masks == face.mask])
        return MixedDistribution(hist.K, hist.probabilities(), conditionals)

    @staticmethod
    def from_gaussian_sparsemax_k2(z: float, sigma: float) -> MixedDistribution:
        """K=2 Gaussian-sparsemax as face masses plus a truncated Gaussian on the edge.

        ``z`` is the scalar location (see :func:`k2_location`).
        """
        p0, p1, mass = gaussian_sparsemax_atoms(z, sigma)
        return MixedDistribution(
            2,
            {Face(0b01): p1, Face(0b10): p0, FULL_K2: mass},
            {FULL_K2: TruncatedGaussianK2(z, sigma)},
        )

    @staticmethod
    def density(d: MixedDistribution, p: SimplexPoint, tol: float = config.DEFAULT_FACE_TOL) -> float:
        """Direct-sum density P_F(f) p(y | f) at ``p``, f = face_of(p)."""
        if p.K != d.K:
            raise InvalidArgument(f"point has K={p.K}, distribution has K={d.K}")
        face = face_of(p, tol)
        mass = d.mass(face)
        if mass == 0.0:
            return 0.0
        cond = d.conditional(face)
        if isinstance(cond, Flat):
            return mass * cond.density(face)
        if isinstance(cond, TruncatedGaussianK2):
            return mass * float(truncated_normal(cond).pdf(p[0]))
        raise NoDensityForm(f"conditional on {face} is empirical")

    @staticmethod
    def probability(
        d: MixedDistribution,
        faces: FaceSet,
        y1_interval: tuple[float, float] | None = None,
    ) -> float:
        """Pr{Y in the union of ri(f), f in ``faces``} by total probability.

        With ``y1_interval = (lo, hi)`` the event is further restricted to
        lo <= y1 <= hi, giving rectangle-like events.
        """
        if faces.K != d.K:
            raise InvalidArgument(f"face set has K={faces.K}, distribution has K={d.K}")
        total = []
        for face, mass in d.face_mass.items():
            if face not in faces:
                continue
            if y1_interval is None:
                total.append(mass)
            else:
                total.append(mass * _conditional_y1_probability(d, face, *y1_interval))
        return math.fsum(total)

    @staticmethod
    def expectation(d: MixedDistribution, n_mc: int = 10_000, rng: RngState | None = None) -> SimplexPoint:
        """E[Y] = sum_f P_F(f) E[Y | F = f]; Monte Carlo only for Empirical faces."""
        rng = rng or RngState()
        gen = rng.generator(0)
        mean = np.zeros(d.K)
        for face, mass in d.face_mass.items():
            cond = d.conditional(face)
            if isinstance(cond, Flat):
                inner = SimplexPoint.centroid(face, d.K).coords
            elif isinstance(cond, TruncatedGaussianK2):
                y = float(truncated_normal(cond).mean())
                inner = np.array([y, 1.0 - y])
            else:
                draws = cond.samples[gen.integers(0, cond.n, size=n_mc)]
                inner = draws.mean(axis=0)
            mean += mass * inner
        return SimplexPoint(mean / mean.sum())

    @staticmethod
    def sample(d: MixedDistribution, n: int, rng: RngState | None = None) -> np.ndarray:
        """``n`` draws as an ``(n, K)`` array: pick a face, then a point inside it."""
        if n < 1:
            raise InvalidArgument(f"sample count must be >= 1, got {n}")
        rng = rng or RngState()
        gen = rng.generator(0)
        faces = list(d.face_mass)
        probs = np.array([d.face_mass[f] for f in faces])
        choice = gen.choice(len(faces), size=n, p=probs / probs.sum())
        out = np.zeros((n, d.K))
        for i, face in enumerate(faces):
            rows = np.flatnonzero(choice == i)
            if rows.size == 0:
                continue
            cond = d.conditional(face)
            if isinstance(cond, Flat):
                out[rows] = _flat_on_face(gen, face, d.K, rows.size)
            elif isinstance(cond, TruncatedGaussianK2):
                y = truncated_normal(cond).rvs(size=rows.size, random_state=gen)
                out[rows] = np.column_stack([y, 1.0 - y])
            else:
                out[rows] = cond.samples[gen.integers(0, cond.n, size=rows.size)]
        return out


def _conditional_y1_probability(d: MixedDistribution, face: Face, lo: float, hi: float) -> float:
    if d.K != 2:
        raise InvalidArgument("interval events are defined for K=2")
    if lo > hi:
        return 0.0
    if face.size == 1:
        y = 1.0 if face.mask == 0b01 else 0.0
        return 1.0 if lo <= y <= hi else 0.0
    a, b = max(lo, 0.0), min(hi, 1.0)
    if a >= b:
        return 0.0
    cond = d.conditional(face)
    if isinstance(cond, Flat):
        return b - a
    if isinstance(cond, TruncatedGaussianK2):
        tn = truncated_normal(cond)
        return float(tn.cdf(b) - tn.cdf(a))
    y = cond.samples[:, 0]
    return float(np.mean((y >= a) & (y <= b)))

