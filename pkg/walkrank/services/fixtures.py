"""
Built-in graphs with published reference values.
"""
from walkrank.models.graph import Graph

# Zachary karate club, 0-based, each undirected edge once
KARATE_ADJACENCY = {
    0: [1, 2, 3, 4, 5, 6, 7, 8, 10, 11, 12, 13, 17, 19, 21, 31],
    1: [2, 3, 7, 13, 17, 19, 21, 30],
    2: [3, 7, 8, 9, 13, 27, 28, 32],
    3: [7, 12, 13],
    4: [6, 10],
    5: [6, 10, 16],
    6: [16],
    8: [30, 32, 33],
    9: [33],
    13: [33],
    14: [32, 33],
    15: [32, 33],
    18: [32, 33],
    19: [33],
    20: [32, 33],
    22: [32, 33],
    23: [25, 27, 29, 32, 33],
    24: [25, 27, 31],
    25: [31],
    26: [29, 33],
    27: [33],
    28: [31, 33],
    29: [32, 33],
    30: [32, 33],
    31: [32, 33],
    32: [33],
}

KARATE_LAMBDA1 = 6.726
KARATE_LAMBDA2 = 4.977

# Six-node PageRank example, 1-based as published; node 2 is dangling
SIX_NODE_EDGES = [(1, 2), (1, 3), (3, 1), (3, 2), (3, 5), (4, 5), (4, 6), (5, 4), (5, 6), (6, 4)]

SIX_NODE_ROW_SUMS = (1 / 3, 5 / 6, 1 / 2, 3 / 2, 5 / 6, 1.0)
SIX_NODE_RANKING = (4, 6, 5, 2, 3, 1)

# alpha -> (published p(alpha), per-entry tolerance); the five-digit vectors
# are rounded loosely, e.g. 0.28620 for 0.2862459
SIX_NODE_PAGERANK = {
    0.9: ((0.03721, 0.05396, 0.04151, 0.37510, 0.20600, 0.28620), 5e-5),
    0.1: ((0.15812, 0.16603, 0.16067, 0.17812, 0.16703, 0.17002), 5e-5),
    0.01: ((0.16583, 0.16666, 0.16610, 0.16778, 0.16667, 0.16695), 5e-5),
    0.001: ((0.1665833, 0.1666666, 0.1666111, 0.1667778, 0.1666667, 0.1666945), 5e-8),
}


def karate_club() -> Graph:
    edges = [(u, v, 1.0) for u, targets in KARATE_ADJACENCY.items() for v in targets]
    return Graph.from_edges(34, edges, directed=False, node_labels=list(range(1, 35)))


def six_node_digraph() -> Graph:
    edges = [(u - 1, v - 1, 1.0) for u, v in SIX_NODE_EDGES]
    return Graph.from_edges(6, edges, directed=True, node_labels=list(range(1, 7)))


FIXTURES = {
    "karate": karate_club,
    "six-node": six_node_digraph,
}
