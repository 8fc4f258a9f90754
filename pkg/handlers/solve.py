import json

from algebra_core import multiply, norm, parse_element
from eigentheory import SOLVE_TOL, cancel_solve


def register(subparsers, common):
    parser = subparsers.add_parser("solve", parents=[common], help="solve a x = b for x")
    parser.add_argument("a")
    parser.add_argument("b")
    parser.set_defaults(handler=handle)


def handle(args) -> int:
    a = parse_element(args.a, args.level)
    b = parse_element(args.b, args.level)
    x = cancel_solve(a, b, tol=SOLVE_TOL if args.tol is None else args.tol)
    residual = norm(multiply(a, x) - b)
    print(json.dumps({"level": x.level, "coeffs": [float(c) for c in x.coeffs], "residual": residual}))
    return 0
