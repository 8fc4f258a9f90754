from algebra_core import parse_element
from subalgebra import RANK_TOL, generated_subalgebra


def register(subparsers, common):
    parser = subparsers.add_parser(
        "subalgebra", parents=[common], help="basis of the subalgebra generated by the given elements"
    )
    parser.add_argument("gens", nargs="+")
    parser.set_defaults(handler=handle)


def handle(args) -> int:
    gens = [parse_element(text, args.level) for text in args.gens]
    sub = generated_subalgebra(gens, RANK_TOL if args.tol is None else args.tol)
    print(sub.to_json())
    return 0
