from .automaton import AutomatonSchema, EdgeSchema, FsaSchema, WeightedStateSchema
from .config import CliConfig
from .distribution import (
    ConditionalSchema,
    FaceMassSchema,
    JointComponentSchema,
    JointSchema,
    MixedDistributionSchema,
)
from .responses import (
    CodingEntropyResponse,
    EntropyResponse,
    FaceEntropySchema,
    FaceHistogramResponse,
    FaceProbabilitySchema,
    MaxEntResponse,
    ValueResponse,
)

__all__ = [
    "AutomatonSchema",
    "CliConfig",
    "CodingEntropyResponse",
    "ConditionalSchema",
    "EdgeSchema",
    "EntropyResponse",
    "FaceEntropySchema",
    "FaceHistogramResponse",
    "FaceMassSchema",
    "FaceProbabilitySchema",
    "FsaSchema",
    "JointComponentSchema",
    "JointSchema",
    "MaxEntResponse",
    "MixedDistributionSchema",
    "ValueResponse",
    "WeightedStateSchema",
]
