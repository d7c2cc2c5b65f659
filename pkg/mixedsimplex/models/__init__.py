from .automaton import Edge, Fsa, Mfsa, MixedString
from .distribution import Empirical, FaceHistogram, Flat, MixedDistribution, TruncatedGaussianK2
from .rng import RngState
from .sampler_spec import (
    DirichletSpec,
    GaussianSoftmaxSpec,
    GaussianSparsemaxSpec,
    GumbelSoftmaxSpec,
    HardConcreteSpec,
    SamplerSpec,
    parse_sampler_spec,
)
from .simplex import Face, FaceLattice, FaceSet, SimplexPoint, face_of, face_volume, measure

__all__ = [
    "DirichletSpec",
    "Edge",
    "Empirical",
    "Face",
    "FaceHistogram",
    "FaceLattice",
    "FaceSet",
    "Flat",
    "Fsa",
    "GaussianSoftmaxSpec",
    "GaussianSparsemaxSpec",
    "GumbelSoftmaxSpec",
    "HardConcreteSpec",
    "Mfsa",
    "MixedDistribution",
    "MixedString",
    "RngState",
    "SamplerSpec",
    "SimplexPoint",
    "TruncatedGaussianK2",
    "face_of",
    "face_volume",
    "measure",
    "parse_sampler_spec",
]
