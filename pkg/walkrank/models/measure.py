import enum


class Measure(str, enum.Enum):
    DEGREE = "degree"
    EIGENVECTOR = "eigenvector"
    KATZ = "katz"
    RESOLVENT_SUBGRAPH = "resolvent-subgraph"
    EXP_SUBGRAPH = "exp-subgraph"
    TOTAL_COMMUNICABILITY = "total-communicability"
    PAGERANK = "pagerank"
    HEAT_KERNEL = "heat-kernel"
    HITS_HUB = "hits-hub"
    HITS_AUTHORITY = "hits-authority"
    SUBGRAPH = "subgraph"
    COMMUNICABILITY = "communicability"


class Side(str, enum.Enum):
    BROADCAST = "broadcast"
    RECEIVE = "receive"
    SYMMETRIC = "symmetric"


class EigenSide(str, enum.Enum):
    RIGHT = "right"
    LEFT = "left"


class Family(str, enum.Enum):
    """Parameterised measures a limit sweep can run over."""

    EXP_SUBGRAPH = "exp-subgraph"
    TOTAL_COMMUNICABILITY = "total-communicability"
    RESOLVENT_SUBGRAPH = "resolvent-subgraph"
    KATZ = "katz"
    PAGERANK = "pagerank"

    @property
    def is_diagonal(self) -> bool:
        return self in (Family.EXP_SUBGRAPH, Family.RESOLVENT_SUBGRAPH)

    @property
    def is_resolvent(self) -> bool:
        # parameter is alpha = tau / lambda1
        return self in (Family.RESOLVENT_SUBGRAPH, Family.KATZ)

    @property
    def measure(self) -> Measure:
        return Measure(self.value)
