from typing import Optional
from pydantic import BaseModel, Field
import numpy as np

from walkrank.models.measure import EigenSide


class SpectralInfo(BaseModel):
    lambda1: float = Field(..., gt=0)
    dominant_vector: np.ndarray
    side: EigenSide = EigenSide.RIGHT
    lambda2: Optional[float] = None  # signed
    lambda2_abs: Optional[float] = Field(default=None, ge=0)
    gap: Optional[float] = None
    relative_gap: Optional[float] = None
    iterations: int = 0
    residual: float = Field(default=0.0, ge=0)
    tol: Optional[float] = None

    class Config:
        arbitrary_types_allowed = True

    def with_second(self, lambda2: float) -> "SpectralInfo":
        gap = self.lambda1 - lambda2
        return self.model_copy(
            update={
                "lambda2": lambda2,
                "lambda2_abs": abs(lambda2),
                "gap": gap,
                "relative_gap": gap / self.lambda1,
            }
        )
