import argparse
import logging
import sys

import config
from errors import CayleyDicksonError, NoSolutionError, ParseError, ZeroElementError
from handlers import decompose, search, solve, spectrum, subalgebra, verify

logger = logging.getLogger("cli")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_PARSE = 2
EXIT_ZERO = 3
EXIT_NO_SOLUTION = 4


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-n", "--level", type=int, default=4, help="algebra level n (A_n has dimension 2^n)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=100)
    common.add_argument("--tol", type=float, default=None, help="override the command's tolerance")
    common.add_argument("--json", action="store_true", help="machine-readable JSON instead of CSV")
    common.add_argument("--bases", action="store_true", help="include eigenspace bases")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = argparse.ArgumentParser(
        prog="cdeigen",
        description="Eigenvalues and zero-divisors of Cayley-Dickson algebras",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    # every subcommand takes the common flags after its name
    spectrum.register(subparsers, common)
    decompose.register(subparsers, common)
    solve.register(subparsers, common)
    subalgebra.register(subparsers, common)
    verify.register(subparsers, common)
    search.register(subparsers, common)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(
        level=config.LOG_LEVEL,
        format="%(asctime)s - %(levelname)s - %(name)s - %(message)s"
    )

    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except ParseError as e:
        logger.error("parse error: %s", e)
        return EXIT_PARSE
    except ZeroElementError as e:
        logger.error("zero element: %s", e)
        return EXIT_ZERO
    except NoSolutionError as e:
        logger.error("%s", e)
        return EXIT_NO_SOLUTION
    except CayleyDicksonError as e:
        logger.error("%s", e)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
