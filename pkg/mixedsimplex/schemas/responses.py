from __future__ import annotations

from typing import Literal, Optional

from sqlmodel import SQLModel

Units = Literal["nats", "bits"]


class FaceEntropySchema(SQLModel):
    indices: list[int]
    mass: float
    differential: float


class EntropyResponse(SQLModel):
    units: Units
    discrete_part: float
    continuous_part: float
    total: float
    faces: list[FaceEntropySchema]


class CodingEntropyResponse(SQLModel):
    units: Units
    N: int
    face_code: float
    differential: float
    precision: float
    total: float


class MaxEntResponse(SQLModel):
    units: Units
    K: int
    N: int
    g: list[float]
    value: float
    laguerre: Optional[float] = None


class FaceProbabilitySchema(SQLModel):
    indices: list[int]
    count: int
    probability: float
    standard_error: float


class FaceHistogramResponse(SQLModel):
    K: int
    n: int
    tol: float
    faces: list[FaceProbabilitySchema]


class ValueResponse(SQLModel):
    value: float
    units: Optional[Units] = None
