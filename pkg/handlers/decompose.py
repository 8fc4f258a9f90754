import json

from algebra_core import parse_element
from eigentheory import eigendecompose, spectrum


def register(subparsers, common):
    parser = subparsers.add_parser(
        "decompose", parents=[common], help="split x along the eigenspaces of a"
    )
    parser.add_argument("x")
    parser.add_argument("a")
    parser.set_defaults(handler=handle)


def handle(args) -> int:
    x = parse_element(args.x, args.level)
    a = parse_element(args.a, args.level)
    parts = eigendecompose(x, a, spectrum(a, args.tol))
    print(json.dumps([{"value": value, "coeffs": [float(c) for c in part.coeffs]} for value, part in parts]))
    return 0
