from argparse import ArgumentParser

from walkrank import __version__
from walkrank.cli.commands import compare, compute, demo, info, sweep

COMMANDS = (compute, sweep, compare, info, demo)


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(
        prog="walkrank",
        description="Walk-based centrality measures and their limiting rankings",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", dest="log_level", help="override LOG_LEVEL")
    subparsers = parser.add_subparsers(dest="command", metavar="command")
    subparsers.required = True
    for command in COMMANDS:
        command.register(subparsers)
    return parser
