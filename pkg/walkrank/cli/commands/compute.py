from argparse import Namespace
import logging

from walkrank.cli.common import (
    add_input_arguments,
    add_output_arguments,
    build_config,
    emit_scores,
    load_graph,
    load_preference,
)
from walkrank.core.config import settings
from walkrank.core.exceptions import DomainError, InvalidInputError
from walkrank.models.graph import Graph
from walkrank.models.measure import Measure, Side
from walkrank.models.series import SeriesFunction
from walkrank.schemas.centrality import CentralityVector
from walkrank.schemas.run_config import RunConfig
from walkrank.services.centrality import centrality_service
from walkrank.services.matfunc import matfunc_service
from walkrank.services.spectral import spectral_service

logger = logging.getLogger(__name__)

MEASURES = [
    Measure.DEGREE,
    Measure.EIGENVECTOR,
    Measure.KATZ,
    Measure.RESOLVENT_SUBGRAPH,
    Measure.EXP_SUBGRAPH,
    Measure.TOTAL_COMMUNICABILITY,
    Measure.PAGERANK,
    Measure.HEAT_KERNEL,
    Measure.HITS_HUB,
    Measure.HITS_AUTHORITY,
]


def register(subparsers):
    parser = subparsers.add_parser("compute", help="compute a centrality measure")
    add_input_arguments(parser)
    parser.add_argument("--measure", required=True, choices=[m.value for m in MEASURES])
    parser.add_argument("--side", choices=[Side.BROADCAST.value, Side.RECEIVE.value], default=Side.BROADCAST.value)
    parser.add_argument("--alpha", type=float, help="Katz/resolvent parameter or PageRank damping")
    parser.add_argument("--beta", type=float, help="exponential parameter")
    parser.add_argument("--t", type=float, help="heat-kernel time")
    parser.add_argument("--preference", help="preference file or 'uniform'")
    add_output_arguments(parser)
    parser.set_defaults(func=run)


def validate_parameters(config: RunConfig, g: Graph):
    """Reject infeasible parameters before any measure is computed."""
    measure = config.measure
    if measure in (Measure.KATZ, Measure.RESOLVENT_SUBGRAPH) and config.alpha is not None:
        lambda1 = spectral_service.spectral_radius(g)
        matfunc_service.check_parameter(SeriesFunction.resolvent(), config.alpha, lambda1, name="alpha")
    if measure in (Measure.EXP_SUBGRAPH, Measure.TOTAL_COMMUNICABILITY) and config.beta is not None:
        if config.beta < 0:
            raise DomainError(f"beta must be nonnegative, got {config.beta}", bound=0.0)
    if measure in (Measure.PAGERANK, Measure.HEAT_KERNEL) and config.alpha is not None:
        if not 0 <= config.alpha <= settings.MAX_DAMPING:
            raise DomainError(
                f"alpha must lie in [0, {settings.MAX_DAMPING}], got {config.alpha}",
                bound=settings.MAX_DAMPING,
            )
    if measure == Measure.HEAT_KERNEL and (config.t is None or config.t < 0):
        raise InvalidInputError("heat-kernel needs --t >= 0")


def compute(config: RunConfig, g: Graph) -> CentralityVector:
    validate_parameters(config, g)
    preference = load_preference(config, g)
    side = config.side
    tol = config.tol
    measure = config.measure

    if measure == Measure.DEGREE:
        return centrality_service.degree_centrality(g, side)
    if measure == Measure.EIGENVECTOR:
        return centrality_service.eigenvector_centrality(g, side, tol=tol)
    if measure == Measure.KATZ:
        return centrality_service.katz(g, config.alpha, preference, side, tol=tol)
    if measure == Measure.RESOLVENT_SUBGRAPH:
        return centrality_service.resolvent_subgraph(g, config.alpha)
    if measure == Measure.EXP_SUBGRAPH:
        return centrality_service.exp_subgraph(g, config.beta)
    if measure == Measure.TOTAL_COMMUNICABILITY:
        return centrality_service.total_communicability(g, config.beta, preference, side, tol=tol)
    if measure == Measure.PAGERANK:
        return centrality_service.pagerank(g, config.alpha, preference, tol=tol)
    if measure == Measure.HEAT_KERNEL:
        return centrality_service.heat_kernel(g, config.t, config.alpha, preference, tol=tol)
    hub, authority = centrality_service.hits(g, tol=tol)
    return hub if measure == Measure.HITS_HUB else authority


def run(args: Namespace) -> int:
    config = build_config(args)
    g = load_graph(config)
    logger.info("compute %s on %r", config.measure.value, g)
    vector = compute(config, g)
    emit_scores(vector, config)
    return 0
