from argparse import Namespace
from pathlib import Path
import json
import logging
import sys

from walkrank.cli.common import (
    add_input_arguments,
    add_output_arguments,
    build_config,
    load_graph,
    load_preference,
    write_text,
)
from walkrank.core.config import settings
from walkrank.models.measure import Family, Side
from walkrank.services.ranking import SweepService

logger = logging.getLogger(__name__)


def register(subparsers):
    parser = subparsers.add_parser(
        "sweep", help="intersection distance to the limiting rankings over a parameter grid"
    )
    add_input_arguments(parser)
    parser.add_argument("--measure", required=True, choices=[f.value for f in Family])
    parser.add_argument(
        "--grid",
        help="comma separated parameters (alpha for katz/resolvent-subgraph, beta, or damping)",
    )
    parser.add_argument("--k", type=int, help="depth of the top-k comparison (default: n)")
    parser.add_argument("--side", choices=[Side.BROADCAST.value, Side.RECEIVE.value], default=Side.BROADCAST.value)
    parser.add_argument("--threshold", type=float, help="informative-band threshold")
    parser.add_argument("--preference", help="preference file or 'uniform'")
    parser.add_argument("--workers", type=int, help="grid points evaluated in parallel")
    add_output_arguments(parser)
    parser.set_defaults(func=run)


def run(args: Namespace) -> int:
    config = build_config(args)
    g = load_graph(config)
    preference = load_preference(config, g)
    family = Family(config.measure.value)

    service = SweepService(workers=getattr(args, "workers", None), tol=config.tol)
    result = service.limit_sweep(g, family, config.grid, config.k, config.side, preference)
    report = SweepService.convergence_report(result, config.threshold)

    if config.out is not None:
        csv_path = Path(f"{config.out}.csv")
        report_path = Path(f"{config.out}.report.json")
        result.to_csv(csv_path, digits=settings.SCORE_DIGITS)
        report_path.write_text(report.model_dump_json(indent=2) + "\n")
        logger.info("Wrote %s and %s", csv_path, report_path)
        sys.stdout.write(report.recommendation + "\n")
    elif args.json:
        payload = {
            "sweep": json.loads(result.to_json()),
            "report": json.loads(report.model_dump_json()),
        }
        write_text(json.dumps(payload, indent=2) + "\n", None)
    else:
        write_text(result.to_csv(digits=settings.SCORE_DIGITS), None)
        sys.stdout.write(f"# {report.recommendation}\n")
    return 0
