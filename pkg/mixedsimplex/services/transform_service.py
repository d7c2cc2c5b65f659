"""Deterministic maps from logits to the simplex.

The row-wise helpers (``*_rows``) work on ``(n, K)`` arrays and back the
samplers; the public methods take one logit vector and return a
:class:`SimplexPoint`.
"""

from __future__ import annotations

import logging
from typing import Sequence

import numpy as np

from mixedsimplex import config
from mixedsimplex.errors import InvalidArgument
from mixedsimplex.models.simplex import SimplexPoint

logger = logging.getLogger("transform")

LogitVector = Sequence[float] | np.ndarray

TRANSFORM_KINDS = ("softmax", "sparsemax", "entmax", "topk", "argmax")


def _as_logits(z: LogitVector) -> np.ndarray:
    arr = np.asarray(z, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise InvalidArgument(f"expected a non-empty logit vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidArgument("logits must be finite")
    return arr


def _check_beta(beta: float) -> None:
    if not beta > 0:
        raise InvalidArgument(f"temperature must be positive, got {beta}")


def softmax_rows(z: np.ndarray, beta: float = 1.0) -> np.ndarray:
    """Row-wise softmax; entries that underflow are clamped to the smallest normal float."""
    x = np.asarray(z, dtype=float) / beta
    x = x - x.max(axis=-1, keepdims=True)
    e = np.maximum(np.exp(x), np.finfo(float).tiny)
    return e / e.sum(axis=-1, keepdims=True)


def sparsemax_rows(z: np.ndarray) -> np.ndarray:
    """Euclidean projection of each row onto the simplex (sort and threshold)."""
    z = np.atleast_2d(np.asarray(z, dtype=float))
    n, K = z.shape
    z_sorted = -np.sort(-z, axis=1)
    cssv = np.cumsum(z_sorted, axis=1) - 1.0
    ks = np.arange(1, K + 1)
    support = (z_sorted - cssv / ks > 0).sum(axis=1)
    tau = cssv[np.arange(n), support - 1] / support
    return np.maximum(z - tau[:, None], 0.0)


class TransformService:
    """Softmax family, top-k softmax, sparsemax, entmax and argmax."""

    @staticmethod
    def softmax(z: LogitVector, beta: float = 1.0) -> SimplexPoint:
        """exp(z/beta) normalized, with max-subtraction against overflow."""
        _check_beta(beta)
        return SimplexPoint(softmax_rows(_as_logits(z), beta))

    @staticmethod
    def argmax_indicator(z: LogitVector) -> SimplexPoint:
        """Uniform over the coordinates tied (within TIE_TOL) at the maximum."""
        arr = _as_logits(z)
        winners = arr >= arr.max() - config.TIE_TOL
        return SimplexPoint(winners / winners.sum())

    @staticmethod
    def topk_softmax(z: LogitVector, k: int, beta: float = 1.0) -> SimplexPoint:
        """Softmax over the k largest logits; ties at the cut keep the lowest index."""
        arr = _as_logits(z)
        _check_beta(beta)
        if not 1 <= k <= arr.size:
            raise InvalidArgument(f"k must lie in [1, {arr.size}], got {k}")
        keep = np.argsort(-arr, kind="stable")[:k]
        out = np.zeros_like(arr)
        out[keep] = softmax_rows(arr[keep], beta)
        return SimplexPoint(out)

    @staticmethod
    def sparsemax(z: LogitVector) -> SimplexPoint:
        """Euclidean projection onto the simplex; may return exact zeros."""
        return SimplexPoint(sparsemax_rows(_as_logits(z))[0])

    @staticmethod
    def entmax_threshold(z: LogitVector, alpha: float) -> float:
        """Threshold tau with sum_k [(alpha-1)(z_k - tau)]_+^(1/(alpha-1)) = 1.

        Found by bisection on [max(z) - 1/(alpha-1), max(z)].
        """
        arr = _as_logits(z)
        if alpha <= 1.0 + config.ALPHA_ONE_TOL:
            raise InvalidArgument("the entmax threshold is defined for alpha > 1")
        am1 = alpha - 1.0
        lo = float(arr.max()) - 1.0 / am1
        hi = float(arr.max())
        for _ in range(config.BISECTION_MAX_ITER):
            if hi - lo <= config.BISECTION_TOL:
                break
            mid = 0.5 * (lo + hi)
            if not lo < mid < hi:
                break
            if _entmax_mass(arr, mid, am1).sum() >= 1.0:
                lo = mid
            else:
                hi = mid
        # upper end: coordinates at the saturation boundary come out exactly 0
        return hi

    @staticmethod
    def entmax(z: LogitVector, alpha: float) -> SimplexPoint:
        """alpha-entmax; alpha = 1 is softmax and alpha = 2 is sparsemax."""
        arr = _as_logits(z)
        if alpha < 1.0:
            raise InvalidArgument(f"entmax needs alpha >= 1, got {alpha}")
        if alpha <= 1.0 + config.ALPHA_ONE_TOL:
            return SimplexPoint(softmax_rows(arr))
        tau = TransformService.entmax_threshold(arr, alpha)
        p = _entmax_mass(arr, tau, alpha - 1.0)
        return SimplexPoint(p / p.sum())

    @staticmethod
    def apply(
        kind: str,
        z: LogitVector,
        alpha: float = 1.5,
        beta: float = 1.0,
        k: int | None = None,
    ) -> SimplexPoint:
        """Dispatch by transform name (used by the command line)."""
        if kind == "softmax":
            return TransformService.softmax(z, beta)
        if kind == "sparsemax":
            return TransformService.sparsemax(z)
        if kind == "entmax":
            return TransformService.entmax(z, alpha)
        if kind == "topk":
            if k is None:
                raise InvalidArgument("topk needs k")
            return TransformService.topk_softmax(z, k, beta)
        if kind == "argmax":
            return TransformService.argmax_indicator(z)
        raise InvalidArgument(f"unknown transform {kind!r}; expected one of {TRANSFORM_KINDS}")


def _entmax_mass(z: np.ndarray, tau: float, am1: float) -> np.ndarray:
    return np.maximum(am1 * (z - tau), 0.0) ** (1.0 / am1)
