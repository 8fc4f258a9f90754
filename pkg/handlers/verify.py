"""`verify`: run the property suites and report residuals per statement."""
import logging

from reports import export_xlsx, frame_to_csv
from verification import run_suite, suite_names

logger = logging.getLogger(__name__)


def register(subparsers, common):
    parser = subparsers.add_parser(
        "verify", parents=[common], help="check the eigentheory on seeded random instances"
    )
    parser.add_argument("suite", choices=suite_names())
    parser.add_argument("--xlsx", metavar="PATH", help="also save the report as an Excel sheet")
    parser.set_defaults(handler=handle)


def handle(args) -> int:
    report = run_suite(args.suite, seed=args.seed, trials=args.trials)
    frame = report.as_frame()
    if args.json:
        print(report.to_json())
    else:
        print(frame_to_csv(frame), end="")
    if args.xlsx:
        export_xlsx(frame, args.xlsx, sheet_name=args.suite)

    failed = [c.statement for c in report.checks if not c.passed]
    if failed:
        logger.error("%d check(s) failed: %s", len(failed), ", ".join(failed))
        return 1
    logger.info("suite %s passed in %.1fs", args.suite, report.wall_time)
    return 0
