from .automaton_service import AutomatonService
from .distribution_service import DistributionService
from .figure_service import FigureService
from .information_service import InformationService
from .sampler_service import SamplerService
from .transform_service import TransformService

__all__ = [
    "AutomatonService",
    "DistributionService",
    "FigureService",
    "InformationService",
    "SamplerService",
    "TransformService",
]
