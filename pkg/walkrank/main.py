from typing import List, Optional
import logging
import sys

from pydantic import ValidationError

from walkrank.cli import build_parser
from walkrank.core.config import reload_settings
from walkrank.core.exceptions import ConvergenceError, InvalidInputError, WalkrankError
from walkrank.core.logging_config import configure_logging, init_monitoring

logger = logging.getLogger("walkrank")


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    settings = reload_settings()
    configure_logging(args.log_level or settings.LOG_LEVEL)
    init_monitoring()

    try:
        return args.func(args)
    except ConvergenceError as e:
        sys.stderr.write(f"error: {e.detail}\n")
        if e.residual is not None:
            sys.stderr.write(f"best residual {e.residual:.3e} after {e.iterations} iterations\n")
        return e.exit_code
    except WalkrankError as e:
        sys.stderr.write(f"error: {e.detail}\n")
        return e.exit_code
    except ValidationError as e:
        message = "; ".join(err["msg"] for err in e.errors())
        sys.stderr.write(f"error: {message}\n")
        return InvalidInputError.exit_code
    except Exception:
        logger.exception("Unexpected failure")
        return 1


if __name__ == "__main__":
    sys.exit(main())
