from typing import Any, List, Optional, Tuple
from pydantic import BaseModel, Field, field_validator, model_validator
import numpy as np
import pandas as pd

from walkrank.models.measure import Family, Side


class Ranking(BaseModel):
    """Descending permutation of node indices with its tie groups (as positions)."""

    order: np.ndarray
    scores: np.ndarray
    tie_groups: List[List[int]]
    tie_tol: float = 1e-9
    node_labels: Optional[List[Any]] = None

    class Config:
        arbitrary_types_allowed = True

    @property
    def n(self) -> int:
        return int(self.order.size)

    def positions(self) -> np.ndarray:
        pos = np.empty(self.n, dtype=int)
        pos[self.order] = np.arange(self.n)
        return pos

    def group_index(self) -> np.ndarray:
        """Tie group index of each position."""
        idx = np.empty(self.n, dtype=int)
        for g, members in enumerate(self.tie_groups):
            idx[members] = g
        return idx

    def labelled_order(self) -> List[Any]:
        if self.node_labels is None:
            return [int(i) for i in self.order]
        return [self.node_labels[i] for i in self.order]

    def has_ties(self) -> bool:
        return any(len(g) > 1 for g in self.tie_groups)


class SweepResult(BaseModel):
    family: Family
    side: Side = Side.SYMMETRIC
    parameters: List[float]
    relative_grid: Optional[List[float]] = None
    lambda1: Optional[float] = None
    isim_degree: List[float]
    isim_eigenvector: List[float]
    isim_successive: List[Optional[float]]
    # same distances with the id tie-break of the references kept
    raw_isim_degree: Optional[List[float]] = None
    raw_isim_eigenvector: Optional[List[float]] = None
    k: int = Field(..., ge=1)
    n: int = Field(..., ge=1)
    ties_resolved: bool = True

    @field_validator("parameters")
    @classmethod
    def strictly_increasing(cls, v: List[float]) -> List[float]:
        if any(b <= a for a, b in zip(v, v[1:])):
            raise ValueError("parameter grid must be strictly increasing")
        return v

    @model_validator(mode="after")
    def check_series(self) -> "SweepResult":
        m = len(self.parameters)
        for name in (
            "isim_degree", "isim_eigenvector", "isim_successive", "raw_isim_degree", "raw_isim_eigenvector"
        ):
            values = getattr(self, name)
            if values is None:
                continue
            if len(values) != m:
                raise ValueError(f"{name} must have one entry per grid point")
            if any(x is not None and not -1e-12 <= x <= 1 + 1e-12 for x in values):
                raise ValueError(f"{name} values must lie in [0, 1]")
        return self

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "parameter": self.parameters,
                "isim_degree": self.isim_degree,
                "isim_eigenvector": self.isim_eigenvector,
                "isim_successive": self.isim_successive,
            }
        )

    def to_csv(self, path=None, digits: int = 12) -> Optional[str]:
        return self.to_frame().to_csv(path, index=False, float_format=f"%.{digits}g")

    def to_json(self) -> str:
        return self.model_dump_json(indent=2)


class MonotoneViolation(BaseModel):
    reference: str  # "degree" or "eigenvector"
    index: int
    parameter: float
    previous: float
    current: float


class ConvergenceReport(BaseModel):
    family: Family
    threshold: float
    band: Optional[Tuple[float, float]] = None
    band_relative: Optional[Tuple[float, float]] = None
    informative_points: List[float] = []
    monotone_violations: List[MonotoneViolation] = []
    degenerate: bool = False
    recommendation: str = ""


class LimitCheck(BaseModel):
    family: Family
    end: str  # "small" or "large"
    side: Side = Side.SYMMETRIC
    reference: str
    parameter: float
    relative_parameter: Optional[float] = None
    escalations: int = 0
    matched: bool
    isim: float
