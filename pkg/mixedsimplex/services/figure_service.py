"""Plot-ready tables for the entmax curve, maximum entropy and rectified densities."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import special, stats

from mixedsimplex.errors import InvalidArgument, UnknownFigure
from mixedsimplex.models.rng import RngState
from mixedsimplex.models.sampler_spec import HardConcreteSpec
from mixedsimplex.services.information_service import LOG2, InformationService
from mixedsimplex.services.sampler_service import SamplerService
from mixedsimplex.services.transform_service import TransformService

logger = logging.getLogger("figure")

FIGURES = ("entmax-curve", "maxent-vs-K", "rectify-density")
RECTIFY_SAMPLERS = ("gaussian-sparsemax", "hard-concrete")


@dataclass(frozen=True)
class FigureTable:
    header: tuple[str, ...]
    rows: tuple[tuple[float, ...], ...]

    def column(self, name: str) -> list[float]:
        i = self.header.index(name)
        return [row[i] for row in self.rows]


class FigureService:
    @staticmethod
    def entmax_curve(alpha: float = 1.5, resolution: int = 10, t_max: float = 3.0) -> FigureTable:
        """First coordinate of transform([t, 0]) on a grid of t.

        The grid is ``k / resolution`` for integer k, so t = 0 and integer t
        are hit exactly.
        """
        if resolution < 1:
            raise InvalidArgument(f"resolution must be >= 1, got {resolution}")
        steps = int(round(t_max * resolution))
        rows = []
        for k in range(-steps, steps + 1):
            t = k / resolution
            rows.append((
                t,
                TransformService.entmax([t, 0.0], alpha)[0],
                TransformService.softmax([t, 0.0])[0],
                TransformService.sparsemax([t, 0.0])[0],
            ))
        return FigureTable(("t", "y1", "softmax", "sparsemax"), tuple(rows))

    @staticmethod
    def maxent_vs_k(
        k_min: int = 2, k_max: int = 10, n_values: tuple[int, ...] = (0, 1, 2, 3), bits: bool = False
    ) -> FigureTable:
        """Maximum direct-sum entropy per K and precision N, with the
        purely discrete (log K) and purely continuous reference curves."""
        if k_min < 2 or k_max < k_min:
            raise InvalidArgument(f"need 2 <= k_min <= k_max, got {k_min}..{k_max}")
        scale = 1.0 / LOG2 if bits else 1.0
        header = ["K", "discrete"]
        header += [f"continuous_N{n}" for n in n_values]
        header += [f"maxent_N{n}" for n in n_values]
        rows = []
        for K in range(k_min, k_max + 1):
            row = [float(K), math.log(K) * scale]
            row += [(-float(special.gammaln(K)) + n * (K - 1) * LOG2) * scale for n in n_values]
            row += [InformationService.maxent_over_faces(K, n).value * scale for n in n_values]
            rows.append(tuple(row))
        return FigureTable(tuple(header), tuple(rows))

    @staticmethod
    def rectify_density(
        sampler: str = "gaussian-sparsemax",
        z: float = 0.5,
        sigma: float = 0.3,
        beta: float = 0.1,
        lam: float = 1.05,
        bins: int = 50,
        n: int = 100_000,
        seed: int = 0,
    ) -> FigureTable:
        """Boundary atoms P0 (y = 0), P1 (y = 1) and the interior density on a grid."""
        if bins < 1:
            raise InvalidArgument(f"bins must be >= 1, got {bins}")
        centers = (np.arange(bins) + 0.5) / bins
        if sampler == "gaussian-sparsemax":
            atoms = SamplerService.gaussian_sparsemax_density_k2(0.5, z, sigma)
            p0, p1 = atoms.p0, atoms.p1
            density = stats.norm.pdf(centers, loc=z, scale=sigma)
        elif sampler == "hard-concrete":
            spec = HardConcreteSpec(z=[z, 0.0], beta=beta, lam=lam)
            y = SamplerService.sample_array(spec, RngState(seed), n)[:, 0]
            p0, p1 = float(np.mean(y == 0.0)), float(np.mean(y == 1.0))
            inner = y[(y > 0.0) & (y < 1.0)]
            counts, _ = np.histogram(inner, bins=bins, range=(0.0, 1.0))
            density = counts / (n / bins)
        else:
            raise InvalidArgument(f"unknown sampler {sampler!r}; expected one of {RECTIFY_SAMPLERS}")
        logger.info("Rectify figure sampler=%s P0=%.6g P1=%.6g", sampler, p0, p1)
        rows = tuple((float(c), float(d), p0, p1) for c, d in zip(centers, density))
        return FigureTable(("y", "density", "P0", "P1"), rows)

    @staticmethod
    def build(name: str, **params) -> FigureTable:
        if name == "entmax-curve":
            return FigureService.entmax_curve(**params)
        if name == "maxent-vs-K":
            return FigureService.maxent_vs_k(**params)
        if name == "rectify-density":
            return FigureService.rectify_density(**params)
        raise UnknownFigure(f"unknown figure {name!r}; expected one of {FIGURES}")
