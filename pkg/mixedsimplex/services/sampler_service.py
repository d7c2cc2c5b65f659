"""Sampling from generative stories on the simplex and their closed-form densities."""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import NamedTuple, Sequence

import numpy as np
from scipy import special, stats

from mixedsimplex import config
from mixedsimplex.errors import BadSpec, BoundaryEvaluation, InvalidArgument
from mixedsimplex.models.rng import RngState
from mixedsimplex.models.sampler_spec import (
    DirichletSpec,
    GaussianSoftmaxSpec,
    GaussianSparsemaxSpec,
    GumbelSoftmaxSpec,
    HardConcreteSpec,
    SamplerSpec,
)
from mixedsimplex.models.simplex import SimplexPoint
from mixedsimplex.monitoring.metrics import OperationTimer, samples_drawn_total
from mixedsimplex.services.transform_service import softmax_rows, sparsemax_rows

logger = logging.getLogger("sampler")

_TINY = np.finfo(float).tiny


class GaussianSparsemaxK2(NamedTuple):
    """Atoms and interior density of the K=2 Gaussian-sparsemax.

    ``p0`` is the mass at y = 0 (vertex {2}), ``p1`` the mass at y = 1
    (vertex {1}); ``interior_density`` is N(y; z, sigma^2).
    """

    p0: float
    p1: float
    interior_density: float


def gaussian_sparsemax_noise_scale(K: int) -> float:
    """Factor giving the noise orthogonal to the ones vector per-coordinate std sigma."""
    return math.sqrt(K / (K - 1))


def k2_location(z: Sequence[float]) -> float:
    """Scalar location of the K=2 closed form for the logit pair (z1, z2)."""
    if len(z) != 2:
        raise InvalidArgument(f"expected two logits, got {len(z)}")
    return (float(z[0]) - float(z[1]) + 1.0) / 2.0


def _keep_interior(y: np.ndarray) -> np.ndarray:
    # exp underflow must not move interior samplers onto the boundary
    y = np.maximum(y, _TINY)
    return y / y.sum(axis=1, keepdims=True)


def _gumbel(gen: np.random.Generator, shape: tuple[int, int]) -> np.ndarray:
    u = np.clip(gen.random(shape), config.GUMBEL_EPS, 1.0 - config.GUMBEL_EPS)
    return -np.log(-np.log(u))


def _draw(spec: SamplerSpec, gen: np.random.Generator, m: int) -> np.ndarray:
    K = spec.K
    if isinstance(spec, DirichletSpec):
        g = gen.standard_gamma(np.asarray(spec.alpha), size=(m, K))
        total = g.sum(axis=1, keepdims=True)
        return _keep_interior(g / np.where(total > 0, total, 1.0))
    z = np.asarray(spec.z, dtype=float)
    if isinstance(spec, GaussianSoftmaxSpec):
        return _keep_interior(softmax_rows(z + spec.sigma * gen.standard_normal((m, K))))
    if isinstance(spec, GumbelSoftmaxSpec):
        return _keep_interior(softmax_rows(z + _gumbel(gen, (m, K)), spec.beta))
    if isinstance(spec, HardConcreteSpec):
        relaxed = softmax_rows(z + _gumbel(gen, (m, K)), spec.beta)
        return sparsemax_rows(spec.lam * relaxed)
    if isinstance(spec, GaussianSparsemaxSpec):
        scale = spec.sigma * gaussian_sparsemax_noise_scale(K)
        return sparsemax_rows(z + scale * gen.standard_normal((m, K)))
    raise BadSpec(f"unsupported sampler {type(spec).__name__}")


class SamplerService:
    """Monte Carlo draws and exact densities for the simplex distributions."""

    @staticmethod
    def sample_array(
        spec: SamplerSpec,
        rng: RngState,
        n: int,
        workers: int | None = None,
        chunk_size: int | None = None,
    ) -> np.ndarray:
        """Draw ``n`` points as an ``(n, K)`` array.

        Draws are split in chunks, chunk ``i`` using counter block ``i`` of
        ``rng``; the result does not depend on ``workers``.
        """
        if n < 1:
            raise InvalidArgument(f"sample count must be >= 1, got {n}")
        try:
            spec.check()
        except BadSpec:
            raise
        except Exception as exc:
            raise BadSpec(str(exc)) from exc
        workers = workers or config.WORKERS
        chunk_size = chunk_size or config.CHUNK_SIZE
        sizes = [min(chunk_size, n - start) for start in range(0, n, chunk_size)]

        def draw_chunk(i: int) -> np.ndarray:
            return _draw(spec, rng.generator(i), sizes[i])

        with OperationTimer(f"sample.{spec.kind}"):
            if workers > 1 and len(sizes) > 1:
                with ThreadPoolExecutor(max_workers=workers) as pool:
                    chunks = list(pool.map(draw_chunk, range(len(sizes))))
            else:
                chunks = [draw_chunk(i) for i in range(len(sizes))]
        samples_drawn_total.labels(sampler=spec.kind).inc(n)
        logger.debug("Sampled n=%d spec=%s chunks=%d", n, spec.kind, len(sizes))
        return np.concatenate(chunks, axis=0)

    @staticmethod
    def sample(spec: SamplerSpec, rng: RngState, n: int) -> list[SimplexPoint]:
        """``n`` independent draws as SimplexPoints."""
        return [SimplexPoint(row) for row in SamplerService.sample_array(spec, rng, n)]

    @staticmethod
    def binary_gumbel_sample(z: float, beta: float, rng: RngState, n: int) -> np.ndarray:
        """K=2 concrete draws through the logistic story, as an ``(n, 2)`` array."""
        if not beta > 0:
            raise BadSpec(f"temperature must be positive, got {beta}")
        if n < 1:
            raise InvalidArgument(f"sample count must be >= 1, got {n}")
        u = np.clip(rng.generator(0).random(n), config.GUMBEL_EPS, 1.0 - config.GUMBEL_EPS)
        logistic = np.log(u) - np.log1p(-u)
        y = special.expit((z + logistic) / beta)
        samples_drawn_total.labels(sampler="binary_gumbel").inc(n)
        return _keep_interior(np.column_stack([y, 1.0 - y]))

    @staticmethod
    def dirichlet_density(p: SimplexPoint, alpha: Sequence[float]) -> float:
        """Dirichlet density w.r.t. Lebesgue measure in the dropped-coordinate chart."""
        a = np.asarray(alpha, dtype=float)
        if a.shape != (p.K,):
            raise InvalidArgument(f"alpha has {a.size} entries for K={p.K}")
        if not np.all(a > 0):
            raise BadSpec("dirichlet concentrations must be positive")
        y = p.coords
        on_boundary = y <= 0
        if np.any(on_boundary & (a != 1.0)):
            raise BoundaryEvaluation(f"{p!r} lies on the boundary")
        if np.all(a == 1.0):
            # flat density: exactly (K-1)!
            return float(math.factorial(p.K - 1))
        log_beta = special.gammaln(a).sum() - special.gammaln(a.sum())
        active = a != 1.0
        log_density = -log_beta + np.sum((a[active] - 1.0) * np.log(y[active]))
        return float(np.exp(log_density))

    @staticmethod
    def gumbel_softmax_density(p: SimplexPoint, z: Sequence[float], beta: float) -> float:
        """Concrete density, evaluated in log space."""
        zz = np.asarray(z, dtype=float)
        if zz.shape != (p.K,):
            raise InvalidArgument(f"z has {zz.size} entries for K={p.K}")
        if not beta > 0:
            raise BadSpec(f"temperature must be positive, got {beta}")
        y = p.coords
        if np.any(y <= 0):
            raise BoundaryEvaluation(f"{p!r} lies on the boundary")
        K = p.K
        log_pi = zz - special.logsumexp(zz)
        log_y = np.log(y)
        log_density = (
            special.gammaln(K)
            + (K - 1) * math.log(beta)
            - K * special.logsumexp(log_pi - beta * log_y)
            + np.sum(log_pi - (beta + 1.0) * log_y)
        )
        return float(np.exp(log_density))

    @staticmethod
    def gaussian_sparsemax_density_k2(y: float, z: float, sigma: float) -> GaussianSparsemaxK2:
        """Atom masses P0, P1 and interior density N(y; z, sigma^2) for K=2."""
        if not sigma > 0:
            raise BadSpec(f"sigma must be positive, got {sigma}")
        p0 = (1.0 - special.erf(z / (math.sqrt(2.0) * sigma))) / 2.0
        p1 = (1.0 + special.erf((z - 1.0) / (math.sqrt(2.0) * sigma))) / 2.0
        density = float(stats.norm.pdf(y, loc=z, scale=sigma)) if 0.0 <= y <= 1.0 else 0.0
        return GaussianSparsemaxK2(float(p0), float(p1), density)
