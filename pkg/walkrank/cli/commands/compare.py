from argparse import Namespace
from pathlib import Path
import json

from walkrank.cli.common import read_scores, write_text
from walkrank.core.exceptions import MismatchError
from walkrank.services.ranking import RankingService


def register(subparsers):
    parser = subparsers.add_parser("compare", help="intersection distance between two score files")
    parser.add_argument("file_a", type=Path)
    parser.add_argument("file_b", type=Path)
    parser.add_argument("--k", type=int, help="depth of the top-k comparison (default: n)")
    parser.add_argument("--tie-tol", type=float, dest="tie_tol")
    parser.add_argument("--resolve-ties", action="store_true", dest="resolve_ties",
                        help="let tied nodes of file_b follow file_a")
    parser.add_argument("--json", action="store_true")
    parser.set_defaults(func=run)


def compare_scores(a, b, k=None, tie_tol=None, resolve_ties=False) -> float:
    """isim between two node-indexed score series after aligning them by node."""
    if set(a.index) != set(b.index):
        only_a = sorted(set(a.index) - set(b.index), key=str)[:5]
        only_b = sorted(set(b.index) - set(a.index), key=str)[:5]
        raise MismatchError(f"score files cover different nodes (only in first: {only_a}, only in second: {only_b})")
    b = b.reindex(a.index)
    labels = list(a.index)
    x = RankingService.rank(a.to_numpy(), tie_tol, labels)
    y = RankingService.rank(b.to_numpy(), tie_tol, labels)
    return RankingService.intersection_distance(x, y, k, resolve_ties=resolve_ties)


def run(args: Namespace) -> int:
    a = read_scores(args.file_a)
    b = read_scores(args.file_b)
    k = args.k if args.k is not None else len(a)
    value = compare_scores(a, b, k, args.tie_tol, args.resolve_ties)
    if args.json:
        write_text(json.dumps({"k": k, "n": len(a), "isim": value}) + "\n", None)
    else:
        write_text("%.12g\n" % value, None)
    return 0
