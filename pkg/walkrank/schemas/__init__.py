from walkrank.schemas.spectral import SpectralInfo
from walkrank.schemas.centrality import CentralityVector
from walkrank.schemas.ranking import (
    Ranking,
    SweepResult,
    ConvergenceReport,
    MonotoneViolation,
    LimitCheck,
)
from walkrank.schemas.run_config import RunConfig, GraphFormat, OutputFormat, Fixture
