"""Direct-sum information theory: entropies, maximum entropy, KL and MI.

All quantities are in nats; divide by ``log 2`` for bits.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np
from scipy import special, stats
from scipy.spatial import cKDTree

from mixedsimplex import config
from mixedsimplex.errors import (
    AlphabetMismatch,
    BadJoint,
    InsufficientSamples,
    InvalidArgument,
    NoDensityForm,
    Overflow,
)
from mixedsimplex.models.distribution import (
    Conditional,
    Empirical,
    Flat,
    MixedDistribution,
    TruncatedGaussianK2,
)
from mixedsimplex.models.simplex import Face, check_lattice_k
from mixedsimplex.services.distribution_service import gaussian_sparsemax_atoms, truncated_normal

logger = logging.getLogger("info")

LOG2 = math.log(2.0)


@dataclass(frozen=True)
class FaceEntropy:
    mass: float
    differential: float


@dataclass(frozen=True)
class EntropyReport:
    """H⊕ = H(F) + H(Y | F), with the per-face differential entropies."""

    discrete_part: float
    continuous_part: float
    total: float
    per_face: Mapping[Face, FaceEntropy] = field(default_factory=dict)

    def in_bits(self) -> EntropyReport:
        return EntropyReport(
            self.discrete_part / LOG2,
            self.continuous_part / LOG2,
            self.total / LOG2,
            {f: FaceEntropy(e.mass, e.differential / LOG2) for f, e in self.per_face.items()},
        )


@dataclass(frozen=True)
class CodingReport:
    """Code length split into face code, differential part and precision bits."""

    N: int
    face_code: float
    differential: float
    precision: float

    @property
    def total(self) -> float:
        return self.face_code + self.differential + self.precision

    def in_bits(self) -> CodingReport:
        return CodingReport(
            self.N, self.face_code / LOG2, self.differential / LOG2, self.precision / LOG2
        )


@dataclass(frozen=True, eq=False)
class MaxEntSolution:
    """Maximum coding-entropy distribution over the faces of Δ_{K-1}.

    ``g[k - 1]`` is the probability of picking a face with k vertices; the
    mass is spread evenly over the C(K, k) faces of that size.
    """

    K: int
    N: int
    g: np.ndarray
    value: float

    def distribution(self) -> MixedDistribution:
        check_lattice_k(self.K)
        mass: dict[Face, float] = {}
        for k in range(1, self.K + 1):
            share = float(self.g[k - 1]) / math.comb(self.K, k)
            if share == 0.0:
                continue
            for m in range(1, 1 << self.K):
                if m.bit_count() == k:
                    mass[Face(m)] = share
        return MixedDistribution(self.K, mass)


def shannon_entropy(probs: Iterable[float]) -> float:
    """-sum p log p with 0 log 0 = 0."""
    p = np.asarray(list(probs), dtype=float)
    if np.any(p < 0):
        raise InvalidArgument("probabilities must be non-negative")
    return float(-np.sum(special.xlogy(p, p)))


def dirichlet_entropy(alpha: Sequence[float]) -> float:
    """Differential entropy of Dir(alpha) in the dropped-coordinate chart."""
    a = np.asarray(alpha, dtype=float)
    if a.size < 2 or not np.all(a > 0):
        raise InvalidArgument("dirichlet entropy needs K >= 2 positive concentrations")
    a0 = a.sum()
    log_beta = special.gammaln(a).sum() - special.gammaln(a0)
    return float(
        log_beta + (a0 - a.size) * special.digamma(a0) - np.sum((a - 1.0) * special.digamma(a))
    )


def gaussian_sparsemax_continuous_integral(z: float, sigma: float) -> float:
    """-∫_0^1 N(y; z, sigma^2) log N(y; z, sigma^2) dy in closed form."""
    a, b = -z / sigma, (1.0 - z) / sigma
    m = stats.norm.cdf(b) - stats.norm.cdf(a)
    phi_a, phi_b = stats.norm.pdf(a), stats.norm.pdf(b)
    return float(
        m * math.log(math.sqrt(2.0 * math.pi) * sigma) + 0.5 * (m - b * phi_b + a * phi_a)
    )


def truncated_gaussian_entropy(cond: TruncatedGaussianK2) -> float:
    a, b = cond.a, cond.b
    m = stats.norm.cdf(b) - stats.norm.cdf(a)
    if m <= 0:
        raise Overflow(f"truncated Gaussian z={cond.z} sigma={cond.sigma} has no mass on (0, 1)")
    return float(
        math.log(math.sqrt(2.0 * math.pi) * cond.sigma * m)
        + 0.5 * (1.0 + (a * stats.norm.pdf(a) - b * stats.norm.pdf(b)) / m)
    )


def kozachenko_leonenko(points: np.ndarray) -> float:
    """Nearest-neighbour differential entropy estimate of an ``(n, d)`` sample."""
    n, d = points.shape
    if n < config.MIN_EMPIRICAL_SAMPLES:
        raise InsufficientSamples(
            f"{n} samples; the nearest-neighbour estimator needs {config.MIN_EMPIRICAL_SAMPLES}"
        )
    if d == 0:
        return 0.0
    distances, _ = cKDTree(points).query(points, k=2)
    radius = np.maximum(distances[:, 1], np.finfo(float).tiny)
    log_unit_ball = 0.5 * d * math.log(math.pi) - special.gammaln(0.5 * d + 1.0)
    return float(
        special.digamma(n) - special.digamma(1) + log_unit_ball + d * np.mean(np.log(radius))
    )


def conditional_entropy(face: Face, cond: Conditional) -> float:
    """Differential entropy of Y given F = face, w.r.t. the face's Lebesgue measure."""
    if isinstance(cond, Empirical) and cond.samples.shape[0] < config.MIN_EMPIRICAL_SAMPLES:
        raise InsufficientSamples(
            f"{cond.samples.shape[0]} samples on {face}; entropy estimates need {config.MIN_EMPIRICAL_SAMPLES}"
        )
    if face.size == 1:
        return 0.0
    if isinstance(cond, Flat):
        return -float(special.gammaln(face.size))
    if isinstance(cond, TruncatedGaussianK2):
        return truncated_gaussian_entropy(cond)
    # chart: the face's coordinates without the last one
    chart = cond.samples[:, list(face.indices)[:-1]]
    return kozachenko_leonenko(chart)


def _kl_conditional(p: Conditional, q: Conditional) -> float:
    if isinstance(p, Empirical) or isinstance(q, Empirical):
        raise NoDensityForm("KL divergence needs closed-form conditionals")
    if isinstance(p, Flat) and isinstance(q, Flat):
        return 0.0
    if isinstance(p, TruncatedGaussianK2) and isinstance(q, TruncatedGaussianK2):
        tn = truncated_normal(p)
        mean, var = float(tn.mean()), float(tn.var())
        mp = stats.norm.cdf(p.b) - stats.norm.cdf(p.a)
        mq = stats.norm.cdf(q.b) - stats.norm.cdf(q.a)
        second_p = var + (mean - p.z) ** 2
        second_q = var + (mean - q.z) ** 2
        return float(
            math.log(q.sigma * mq / (p.sigma * mp))
            - second_p / (2.0 * p.sigma**2)
            + second_q / (2.0 * q.sigma**2)
        )
    if isinstance(p, Flat) and isinstance(q, TruncatedGaussianK2):
        mq = stats.norm.cdf(q.b) - stats.norm.cdf(q.a)
        c = q.z
        return float(
            math.log(math.sqrt(2.0 * math.pi) * q.sigma * mq)
            + (1.0 / 3.0 - c + c * c) / (2.0 * q.sigma**2)
        )
    # truncated Gaussian against the flat density 1 on the edge
    return -truncated_gaussian_entropy(p)  # type: ignore[arg-type]


class InformationService:
    """Entropy, coding length, maximum entropy, KL divergence and MI."""

    @staticmethod
    def direct_sum_entropy(d: MixedDistribution) -> EntropyReport:
        """H⊕(Y) = H(F) + sum_f P_F(f) h(Y | F = f).

        Args:
            d: Distribution with Flat, TruncatedGaussianK2 or Empirical
                conditionals (Empirical faces need at least 1000 samples).

        Returns:
            EntropyReport in nats.
        """
        per_face = {
            face: FaceEntropy(mass, conditional_entropy(face, d.conditional(face)))
            for face, mass in d.face_mass.items()
        }
        discrete = shannon_entropy(d.face_mass.values())
        continuous = math.fsum(e.mass * e.differential for e in per_face.values())
        logger.debug("Entropy faces=%d discrete=%.6g continuous=%.6g", len(per_face), discrete, continuous)
        return EntropyReport(discrete, continuous, discrete + continuous, per_face)

    @staticmethod
    def coding_report(d: MixedDistribution, N: int) -> CodingReport:
        if N < 0:
            raise InvalidArgument(f"bit precision must be >= 0, got {N}")
        report = InformationService.direct_sum_entropy(d)
        return CodingReport(
            N, report.discrete_part, report.continuous_part, N * LOG2 * d.expected_dimension()
        )

    @staticmethod
    def coding_entropy(d: MixedDistribution, N: int, bits: bool = False) -> float:
        """H⊕ + N log 2 E[dim F]: code length for N-bit precision within faces."""
        report = InformationService.coding_report(d, N)
        return report.in_bits().total if bits else report.total

    @staticmethod
    def maxent_over_faces(K: int, N: int) -> MaxEntSolution:
        """g = softmax_k log[C(K, k) 2^(N (k - 1)) / (k - 1)!], in log space."""
        if K < 2:
            raise InvalidArgument(f"maximum entropy needs K >= 2, got {K}")
        if N < 0:
            raise InvalidArgument(f"bit precision must be >= 0, got {N}")
        k = np.arange(1, K + 1, dtype=float)
        log_weights = (
            special.gammaln(K + 1)
            - special.gammaln(k + 1)
            - special.gammaln(K - k + 1)
            + N * (k - 1) * LOG2
            - special.gammaln(k)
        )
        value = float(special.logsumexp(log_weights))
        g = np.exp(log_weights - value)
        g.setflags(write=False)
        return MaxEntSolution(K, N, g, value)

    @staticmethod
    def laguerre_maxent_value(K: int, N: int) -> float:
        """log L_{K-1}^{(1)}(-2^N) by the three-term recurrence.

        Raises Overflow past the float range; ``maxent_over_faces`` gives the
        same value in log space.
        """
        if K < 2:
            raise InvalidArgument(f"maximum entropy needs K >= 2, got {K}")
        if N < 0:
            raise InvalidArgument(f"bit precision must be >= 0, got {N}")
        alpha = 1.0
        try:
            x = -math.ldexp(1.0, N)
        except OverflowError as exc:
            raise Overflow(f"2^{N} is beyond the float range") from exc
        prev, cur = 1.0, 1.0 + alpha - x
        for n in range(1, K - 1):
            prev, cur = cur, ((2 * n + 1 + alpha - x) * cur - (n + alpha) * prev) / (n + 1)
        if not math.isfinite(cur) or cur <= 0:
            raise Overflow(f"Laguerre recurrence overflowed at K={K} N={N}")
        return math.log(cur)

    @staticmethod
    def kl_divergence(p: MixedDistribution, q: MixedDistribution) -> float:
        """KL(P_F || Q_F) + E_{P_F}[KL of the conditionals]; +inf off Q's support."""
        if p.K != q.K:
            raise AlphabetMismatch(f"K={p.K} against K={q.K}")
        discrete, continuous = [], []
        for face, mass in p.face_mass.items():
            q_mass = q.mass(face)
            p_cond, q_cond = p.conditional(face), q.conditional(face)
            if isinstance(p_cond, Empirical) or isinstance(q_cond, Empirical):
                raise NoDensityForm(f"conditional on {face} is empirical")
            if q_mass == 0.0:
                return math.inf
            discrete.append(mass * math.log(mass / q_mass))
            continuous.append(mass * _kl_conditional(p_cond, q_cond))
        return math.fsum(discrete) + math.fsum(continuous)

    @staticmethod
    def mutual_information(
        joint: Mapping[object, tuple[float, MixedDistribution]]
        | Sequence[tuple[float, MixedDistribution]],
    ) -> float:
        """I⊕(Y; Z) = I(F; Z) + I(Y; Z | F) for a finite Z.

        With flat conditionals Y given F does not depend on Z, so the second
        term is 0 and I(F; Z) = sum_z w_z KL(P_F^z || P_F).
        """
        components = list(joint.values()) if isinstance(joint, Mapping) else list(joint)
        if not components:
            raise BadJoint("joint distribution has no components")
        weights = np.array([float(w) for w, _ in components])
        if np.any(weights < 0) or not np.all(np.isfinite(weights)):
            raise BadJoint("joint weights must be non-negative")
        if abs(math.fsum(weights) - 1.0) > config.MASS_TOL:
            raise BadJoint(f"joint weights sum to {math.fsum(weights)!r}, not 1")
        K = components[0][1].K
        for _, dist in components:
            if dist.K != K:
                raise AlphabetMismatch(f"components over K={K} and K={dist.K}")
            if not dist.is_flat_family:
                raise BadJoint("mutual information needs flat conditionals")

        marginal: dict[Face, float] = {}
        for w, dist in components:
            for face, mass in dist.face_mass.items():
                marginal[face] = marginal.get(face, 0.0) + w * mass
        terms = []
        for w, dist in components:
            if w == 0.0:
                continue
            for face, mass in dist.face_mass.items():
                terms.append(w * mass * math.log(mass / marginal[face]))
        return math.fsum(terms)

    @staticmethod
    def gaussian_sparsemax_k2_entropy(z: float, sigma: float) -> EntropyReport:
        """Direct-sum entropy of the K=2 Gaussian-sparsemax from its closed form."""
        p0, p1, mass = gaussian_sparsemax_atoms(z, sigma)
        discrete = shannon_entropy([p0, p1, mass])
        integral = gaussian_sparsemax_continuous_integral(z, sigma)
        # P_F(edge) h(Y | edge) = -∫ N log N + m log m
        continuous = integral + float(special.xlogy(mass, mass))
        per_face = {}
        if mass > 0:
            per_face[Face(0b11)] = FaceEntropy(mass, continuous / mass)
        return EntropyReport(discrete, continuous, discrete + continuous, per_face)
