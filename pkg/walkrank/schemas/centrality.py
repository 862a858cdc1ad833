from typing import Any, Dict, List, Optional
from pydantic import BaseModel, Field, model_validator
import numpy as np
import pandas as pd

from walkrank.models.measure import Measure, Side


class CentralityVector(BaseModel):
    measure: Measure
    side: Side = Side.SYMMETRIC
    parameter: Optional[float] = None
    preference: str = "uniform"  # "uniform" or "custom"
    scores: np.ndarray
    node_labels: Optional[List[Any]] = None
    solver_meta: Dict[str, Any] = Field(default_factory=dict)

    class Config:
        arbitrary_types_allowed = True

    @model_validator(mode="after")
    def check_lengths(self) -> "CentralityVector":
        if self.scores.ndim != 1:
            raise ValueError("scores must be a vector")
        if self.node_labels is not None and len(self.node_labels) != self.scores.size:
            raise ValueError("node_labels and scores differ in length")
        return self

    @property
    def n(self) -> int:
        return int(self.scores.size)

    def labels(self) -> List[Any]:
        if self.node_labels is None:
            return list(range(self.n))
        return list(self.node_labels)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"node": self.labels(), "score": self.scores})
