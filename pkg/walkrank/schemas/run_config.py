from pathlib import Path
from typing import List, Optional
from pydantic import BaseModel, Field, model_validator
import enum

from walkrank.core.config import settings
from walkrank.models.measure import Measure, Side


class GraphFormat(str, enum.Enum):
    EDGELIST = "edgelist"
    MTX = "mtx"


class OutputFormat(str, enum.Enum):
    CSV = "csv"
    JSON = "json"
    TABLE = "table"


class Fixture(str, enum.Enum):
    KARATE = "karate"
    SIX_NODE = "six-node"


class RunConfig(BaseModel):
    # Input
    input: Optional[Path] = None
    fixture: Optional[Fixture] = None
    format: GraphFormat = GraphFormat.EDGELIST
    directed: bool = False
    index_base: int = Field(default=1, ge=0)
    allow_loops: bool = False

    # Measure
    measure: Optional[Measure] = None
    side: Side = Side.BROADCAST
    alpha: Optional[float] = None
    beta: Optional[float] = None
    t: Optional[float] = None
    preference: Optional[str] = None  # path or "uniform"

    # Sweep / comparison
    grid: Optional[List[float]] = None
    k: Optional[int] = Field(default=None, ge=1)
    threshold: float = Field(default_factory=lambda: settings.ISIM_THRESHOLD, gt=0, lt=1)

    # Numerics and output
    tol: float = Field(default_factory=lambda: settings.DEFAULT_TOL, gt=0)
    out: Optional[Path] = None
    output_format: OutputFormat = OutputFormat.CSV
    seed: int = Field(default_factory=lambda: settings.SEED)

    @model_validator(mode="after")
    def one_source(self) -> "RunConfig":
        if self.input is not None and self.fixture is not None:
            raise ValueError("use either --input or --fixture, not both")
        return self

    @property
    def uniform_preference(self) -> bool:
        return self.preference is None or self.preference == "uniform"
