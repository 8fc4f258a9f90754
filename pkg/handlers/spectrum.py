"""`spectrum`: eigenvalues of one element as Spectrum JSON."""
import logging
from pathlib import Path

from algebra_core import parse_element
from eigentheory import spectrum
from linops import m_operator

logger = logging.getLogger(__name__)


def register(subparsers, common):
    parser = subparsers.add_parser(
        "spectrum", parents=[common], help="eigenvalues and multiplicities of an element"
    )
    parser.add_argument("expr", help='element expression, e.g. "(i,j)" or "1+2i"')
    parser.add_argument("--dump-matrix", metavar="PATH", help="also write M_a as matrix JSON")
    parser.set_defaults(handler=handle)


def handle(args) -> int:
    a = parse_element(args.expr, args.level)
    if args.dump_matrix:
        Path(args.dump_matrix).write_text(m_operator(a).to_json())
        logger.info("matrix of M_a written to %s", args.dump_matrix)
    spec = spectrum(a, args.tol)
    print(spec.to_json(bases=args.bases))
    return 0
