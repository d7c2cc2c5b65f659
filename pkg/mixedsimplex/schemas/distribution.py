from __future__ import annotations

from typing import Literal, Optional

import numpy as np
from sqlmodel import Field, SQLModel

from mixedsimplex.errors import InvalidArgument
from mixedsimplex.models.distribution import (
    Conditional,
    Empirical,
    Flat,
    MixedDistribution,
    TruncatedGaussianK2,
)
from mixedsimplex.models.simplex import Face


class ConditionalSchema(SQLModel):
    kind: Literal["flat", "truncated_gaussian", "empirical"] = "flat"
    z: Optional[float] = None
    sigma: Optional[float] = Field(default=None, gt=0)
    samples: Optional[list[list[float]]] = None

    def to_model(self) -> Conditional:
        if self.kind == "truncated_gaussian":
            if self.z is None or self.sigma is None:
                raise InvalidArgument("truncated_gaussian needs z and sigma")
            return TruncatedGaussianK2(self.z, self.sigma)
        if self.kind == "empirical":
            if not self.samples:
                raise InvalidArgument("empirical needs samples")
            return Empirical(np.asarray(self.samples, dtype=float))
        return Flat()

    @classmethod
    def from_model(cls, cond: Conditional) -> ConditionalSchema:
        if isinstance(cond, TruncatedGaussianK2):
            return cls(kind="truncated_gaussian", z=cond.z, sigma=cond.sigma)
        if isinstance(cond, Empirical):
            return cls(kind="empirical", samples=cond.samples.tolist())
        return cls()


class FaceMassSchema(SQLModel):
    indices: list[int] = Field(min_length=1)
    mass: float = Field(ge=0)
    conditional: Optional[ConditionalSchema] = None


class MixedDistributionSchema(SQLModel):
    K: int = Field(ge=1)
    faces: list[FaceMassSchema]

    def to_model(self) -> MixedDistribution:
        mass: dict[Face, float] = {}
        conditionals: dict[Face, Conditional] = {}
        for entry in self.faces:
            face = Face.from_indices(entry.indices, one_based=True)
            mass[face] = mass.get(face, 0.0) + entry.mass
            if entry.conditional is not None:
                conditionals[face] = entry.conditional.to_model()
        return MixedDistribution(self.K, mass, conditionals)

    @classmethod
    def from_model(cls, d: MixedDistribution) -> MixedDistributionSchema:
        faces = []
        for face, mass in d.face_mass.items():
            cond = d.conditional(face)
            faces.append(
                FaceMassSchema(
                    indices=face.to_json(),
                    mass=mass,
                    conditional=None if isinstance(cond, Flat) else ConditionalSchema.from_model(cond),
                )
            )
        return cls(K=d.K, faces=faces)


class JointComponentSchema(SQLModel):
    weight: float = Field(ge=0)
    label: Optional[str] = None
    distribution: MixedDistributionSchema


class JointSchema(SQLModel):
    components: list[JointComponentSchema] = Field(min_length=1)

    def to_model(self) -> list[tuple[float, MixedDistribution]]:
        return [(c.weight, c.distribution.to_model()) for c in self.components]
