"""Walk-based centrality measures, their limiting rankings and parameter sweeps."""

__version__ = "1.0.0"
