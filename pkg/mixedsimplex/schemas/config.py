from __future__ import annotations

from typing import Literal

from sqlmodel import Field, SQLModel

from mixedsimplex import config


class CliConfig(SQLModel):
    """Settings shared by every subcommand, from the global flags."""

    seed: int = Field(default=config.DEFAULT_SEED, ge=0)
    tol: float = Field(default=config.DEFAULT_FACE_TOL, ge=0)
    output_format: Literal["json", "csv"] = "json"
    units: Literal["nats", "bits"] = "nats"

    @property
    def bits(self) -> bool:
        return self.units == "bits"
