"""
Argument groups and helpers shared by the CLI commands.
"""
from argparse import ArgumentParser, Namespace
from pathlib import Path
from typing import List, Optional
import json
import sys

import numpy as np
import pandas as pd

from walkrank.core.config import settings
from walkrank.core.exceptions import GraphValidationError, InvalidInputError, MismatchError
from walkrank.models.graph import Graph
from walkrank.models.measure import Side
from walkrank.schemas.centrality import CentralityVector
from walkrank.schemas.run_config import Fixture, GraphFormat, OutputFormat, RunConfig
from walkrank.services.fixtures import FIXTURES
from walkrank.services.graph import GraphService
from walkrank.services.ranking import RankingService


def add_input_arguments(parser: ArgumentParser, fixtures: bool = True):
    group = parser.add_argument_group("input")
    group.add_argument("--input", type=Path, help="graph file")
    if fixtures:
        group.add_argument("--fixture", choices=[f.value for f in Fixture], help="built-in graph")
    group.add_argument("--format", choices=[f.value for f in GraphFormat], default=GraphFormat.EDGELIST.value)
    group.add_argument("--directed", action="store_true")
    group.add_argument("--index-base", type=int, default=1, dest="index_base")
    group.add_argument("--allow-loops", action="store_true", dest="allow_loops")


def add_output_arguments(parser: ArgumentParser):
    group = parser.add_argument_group("output")
    group.add_argument("--out", type=Path, help="write results here instead of stdout")
    group.add_argument("--json", action="store_true", help="JSON output")
    group.add_argument("--table", action="store_true", help="aligned text table")
    group.add_argument("--tol", type=float, default=None)
    group.add_argument("--seed", type=int, default=None)


def parse_grid(text: Optional[str]) -> Optional[List[float]]:
    if text is None:
        return None
    try:
        return [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise InvalidInputError(f"--grid must be a comma separated list of numbers, got {text!r}")


def build_config(args: Namespace) -> RunConfig:
    output = OutputFormat.CSV
    if getattr(args, "json", False):
        output = OutputFormat.JSON
    elif getattr(args, "table", False):
        output = OutputFormat.TABLE

    values = {
        "input": getattr(args, "input", None),
        "fixture": getattr(args, "fixture", None),
        "format": getattr(args, "format", GraphFormat.EDGELIST.value),
        "directed": getattr(args, "directed", False),
        "index_base": getattr(args, "index_base", 1),
        "allow_loops": getattr(args, "allow_loops", False),
        "measure": getattr(args, "measure", None),
        "side": getattr(args, "side", Side.BROADCAST.value),
        "alpha": getattr(args, "alpha", None),
        "beta": getattr(args, "beta", None),
        "t": getattr(args, "t", None),
        "preference": getattr(args, "preference", None),
        "grid": parse_grid(getattr(args, "grid", None)),
        "k": getattr(args, "k", None),
        "out": getattr(args, "out", None),
        "output_format": output,
    }
    for optional in ("tol", "seed", "threshold"):
        value = getattr(args, optional, None)
        if value is not None:
            values[optional] = value
    return RunConfig(**values)


def load_graph(config: RunConfig) -> Graph:
    if config.fixture is not None:
        return FIXTURES[config.fixture.value]()
    if config.input is None:
        raise InvalidInputError("no graph given: use --input or --fixture")
    if not config.input.exists():
        raise InvalidInputError(f"input file not found: {config.input}")
    return GraphService.read_graph(
        config.input,
        format=config.format,
        directed=config.directed,
        index_base=config.index_base,
        allow_loops=config.allow_loops,
    )


def load_preference(config: RunConfig, g: Graph) -> Optional[np.ndarray]:
    """
    Read a preference file: one value per line in node order, or
    ``node value`` pairs using the graph's node labels.
    """
    if config.uniform_preference:
        return None
    path = Path(config.preference)
    if not path.exists():
        raise InvalidInputError(f"preference file not found: {path}")
    frame = pd.read_csv(path, sep=r"[\s,]+", header=None, comment="#", engine="python")
    if frame.shape[1] == 1:
        values = frame.iloc[:, 0].to_numpy(dtype=float)
        if values.size != g.n:
            raise GraphValidationError(f"preference file has {values.size} values, graph has {g.n} nodes")
        return values
    mapping = dict(zip(frame.iloc[:, 0].tolist(), frame.iloc[:, 1].astype(float).tolist()))
    missing = [label for label in g.node_labels if label not in mapping]
    if missing:
        raise GraphValidationError(f"preference file misses nodes {missing[:5]}")
    return np.array([mapping[label] for label in g.node_labels])


def score_frame(vector: CentralityVector) -> pd.DataFrame:
    ranking = RankingService.rank(vector.scores)
    ranks = ranking.positions() + 1
    return pd.DataFrame({"node": vector.labels(), "score": vector.scores, "rank": ranks})


def emit_scores(vector: CentralityVector, config: RunConfig):
    frame = score_frame(vector)
    fmt = f"%.{settings.SCORE_DIGITS}g"
    if config.output_format == OutputFormat.JSON:
        payload = {
            "measure": vector.measure.value,
            "side": vector.side.value,
            "parameter": vector.parameter,
            "preference": vector.preference,
            "scores": [
                {"node": _plain(node), "score": float(fmt % score), "rank": int(rank)}
                for node, score, rank in frame.itertuples(index=False)
            ],
        }
        text = json.dumps(payload, indent=2) + "\n"
    elif config.output_format == OutputFormat.TABLE:
        text = frame.to_string(index=False, float_format=lambda x: fmt % x) + "\n"
    else:
        text = frame.to_csv(index=False, float_format=fmt)
    write_text(text, config.out)


def read_scores(path: Path) -> pd.Series:
    """Scores indexed by node from a ``node,score[,rank]`` CSV (header optional)."""
    if not Path(path).exists():
        raise InvalidInputError(f"score file not found: {path}")
    frame = pd.read_csv(path)
    if not {"node", "score"} <= set(frame.columns):
        frame = pd.read_csv(path, header=None).iloc[:, :2]
        frame.columns = ["node", "score"]
    if frame["node"].duplicated().any():
        raise MismatchError(f"duplicate nodes in {path}")
    return frame.set_index("node")["score"].astype(float)


def write_text(text: str, out: Optional[Path]):
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _plain(value):
    return value.item() if isinstance(value, np.generic) else value
