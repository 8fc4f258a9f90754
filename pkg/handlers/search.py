"""`search`: tabulate samples bearing on the open questions."""
from reports import export_xlsx, frame_to_csv
from search import SEARCHES, run_search


def register(subparsers, common):
    parser = subparsers.add_parser(
        "search", parents=[common], help="sample spectra for one of the open questions"
    )
    parser.add_argument("question", choices=list(SEARCHES))
    parser.add_argument("--samples", type=int, default=1000)
    parser.add_argument("--xlsx", metavar="PATH", help="also save the table as an Excel sheet")
    parser.set_defaults(handler=handle)


def handle(args) -> int:
    frame = run_search(args.question, args.level, args.samples, args.seed)
    if args.json:
        print(frame.to_json(orient="records", double_precision=15))
    else:
        print(frame_to_csv(frame), end="")
    if args.xlsx:
        export_xlsx(frame, args.xlsx, sheet_name=args.question)
    return 0
