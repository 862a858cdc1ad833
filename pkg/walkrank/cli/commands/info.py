from argparse import Namespace
from typing import Any, Dict
import json

import numpy as np

from walkrank.cli.common import add_input_arguments, build_config, load_graph, write_text
from walkrank.core.exceptions import DisconnectedGraphError
from walkrank.models.graph import Graph
from walkrank.services.graph import GraphService
from walkrank.services.spectral import spectral_service


def register(subparsers):
    parser = subparsers.add_parser("info", help="size, connectivity and spectral summary of a graph")
    add_input_arguments(parser)
    parser.add_argument("--tol", type=float, default=None)
    parser.add_argument("--json", action="store_true")
    parser.set_defaults(func=run)


def summarize(g: Graph, tol=None) -> Dict[str, Any]:
    summary: Dict[str, Any] = {
        "nodes": g.n,
        "edges": int(g.edge_count),
        "directed": g.directed,
        "weighted": bool(g.is_weighted),
        "loops": bool(g.has_loops),
        "lambda1": spectral_service.spectral_radius(g, tol=tol),
    }
    count, labels = g.components()
    if g.directed:
        summary["strong_components"] = int(count)
        summary["largest_strong_component"] = int(np.bincount(labels).max()) if g.n else 0
        return summary

    summary["components"] = int(count)
    if count == 1 and g.n >= 2 and g.adjacency.nnz:
        info = spectral_service.analyze(g, tol=tol)
        summary.update(
            lambda1=info.lambda1,
            lambda2=info.lambda2,
            gap=info.gap,
            relative_gap=info.relative_gap,
        )
    _, average = GraphService.clustering_coefficient(g)
    summary["mean_clustering"] = None if np.isnan(average) else average
    return summary


def run(args: Namespace) -> int:
    config = build_config(args)
    g = load_graph(config)
    if g.n == 0:
        raise DisconnectedGraphError("graph is empty")
    summary = summarize(g, tol=config.tol)
    if args.json:
        text = json.dumps(summary, indent=2) + "\n"
    else:
        width = max(len(key) for key in summary)
        rows = []
        for key, value in summary.items():
            shown = "%.12g" % value if isinstance(value, float) else str(value)
            rows.append(f"{key:<{width}}  {shown}")
        text = "\n".join(rows) + "\n"
    write_text(text, None)
    return 0
