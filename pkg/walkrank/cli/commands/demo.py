"""
Six-node PageRank walk-through: the link matrix, p(alpha) for shrinking
damping factors, the row sums of H and the rankings they induce, each
checked against the published values.
"""
from argparse import Namespace
from typing import List
import logging

import numpy as np
import pandas as pd

from walkrank.cli.common import write_text
from walkrank.services.fixtures import (
    SIX_NODE_PAGERANK,
    SIX_NODE_RANKING,
    SIX_NODE_ROW_SUMS,
    six_node_digraph,
)
from walkrank.services.pagerank import pagerank_service
from walkrank.services.ranking import RankingService

logger = logging.getLogger(__name__)


def register(subparsers):
    parser = subparsers.add_parser("pagerank-demo", help="six-node PageRank example with published values")
    parser.add_argument("--tol", type=float, default=1e-12)
    parser.set_defaults(func=run)


def _format_vector(labels, values, digits: int = 7) -> str:
    return "  ".join(f"{label}:{value:.{digits}f}" for label, value in zip(labels, values))


def run(args: Namespace) -> int:
    g = six_node_digraph()
    labels = list(g.node_labels)
    h, _ = pagerank_service.link_matrix(g)
    mismatches: List[str] = []
    lines: List[str] = []

    frame = pd.DataFrame(h.toarray(), index=labels, columns=labels)
    lines.append("H (column j spreads node j's out-links; node 2 is dangling)")
    lines.append(frame.to_string(float_format=lambda x: f"{x:.4f}"))
    lines.append("")

    vectors = {}
    for alpha, (published, tol) in SIX_NODE_PAGERANK.items():
        model = pagerank_service.build_model(g, alpha)
        p = pagerank_service.pagerank_power(model, tol=args.tol)
        vectors[alpha] = p
        lines.append(f"p({alpha:g})  {_format_vector(labels, p)}")
        for label, got, want in zip(labels, p, published):
            if abs(got - want) > tol:
                mismatches.append(f"p({alpha:g})[{label}] = {got:.8f}, published {want}")
    lines.append("")

    row_sums = pagerank_service.small_alpha_limit(g)
    lines.append(f"H1        {_format_vector(labels, row_sums, 4)}")
    for label, got, want in zip(labels, row_sums, SIX_NODE_ROW_SUMS):
        if abs(got - want) > 1e-12:
            mismatches.append(f"H1[{label}] = {got:.12g}, expected {want:.12g}")

    # published order as a ranking: earlier nodes score higher
    expected_scores = np.zeros(g.n)
    for position, label in enumerate(SIX_NODE_RANKING):
        expected_scores[labels.index(label)] = g.n - position
    expected = RankingService.rank(expected_scores, node_labels=labels)

    candidates = [(f"p({alpha:g})", p) for alpha, p in vectors.items()] + [("H1", row_sums)]
    for name, scores in candidates:
        ranking = RankingService.rank(scores, node_labels=labels)
        groups = [" ".join(str(labels[i]) for i in ranking.order[group]) for group in ranking.tie_groups]
        lines.append(f"ranking by {name:<9} " + " | ".join(groups))
        if not RankingService.equivalent(expected, ranking):
            mismatches.append(
                f"ranking by {name} is {ranking.labelled_order()}, expected {list(SIX_NODE_RANKING)} modulo ties"
            )
    lines.append(f"published  {' '.join(str(label) for label in SIX_NODE_RANKING)}")

    write_text("\n".join(lines) + "\n", None)
    if mismatches:
        for mismatch in mismatches:
            logger.error(mismatch)
        write_text("MISMATCH\n" + "\n".join(mismatches) + "\n", None)
        return 1
    return 0
