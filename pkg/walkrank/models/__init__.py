from walkrank.models.graph import Graph, DegreeSide
from walkrank.models.series import SeriesFunction, SeriesKind, ClassTag
from walkrank.models.google import GoogleModel
from walkrank.models.measure import Measure, Side, EigenSide, Family

__all__ = [
    "Graph",
    "DegreeSide",
    "SeriesFunction",
    "SeriesKind",
    "ClassTag",
    "GoogleModel",
    "Measure",
    "Side",
    "EigenSide",
    "Family",
]
