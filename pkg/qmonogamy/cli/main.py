import argparse
import sys
from typing import List, Optional

from qmonogamy.cli.check import MonogamyCheck, SelfTest
from qmonogamy.cli.indicators import Q3, Q4
from qmonogamy.cli.measure import Measure
from qmonogamy.cli.sweep import Figure, Sweep
from qmonogamy.cli.version import Version
from qmonogamy.utils.log import get_logger

logger = get_logger("[QMono]")


def _usage():
    usage = [
        "qmono <command> [<args>]\n",
        "Commands:",
        "\tmeasure          Evaluate one measure on one state",
        "\tq3               Tripartite SQD indicators",
        "\tq4               Four-body SQD and entanglement indicators",
        "\tmonogamy-check   SQD monogamy over random pure states",
        "\tsweep            Indicator sweep written as CSV",
        "\tfigure           Reproduce the data of figure 1, 2, 4 or 5",
        "\tselftest         Cross-check the discord routes",
        "\tversion          Obtain the version of QMonogamy",
    ]
    return "\n".join(usage) + "\n"


class QMonogamyCLI:
    def __init__(self, argv: Optional[List[str]] = None):
        argv = sys.argv[1:] if argv is None else list(argv)
        parser = argparse.ArgumentParser(
            description="Quantum discord monogamy CLI", usage=_usage()
        )

        parser.add_argument("command", help="Subcommand to run")

        if len(argv) < 1:
            parser.print_help()
            sys.exit(0)

        args = parser.parse_args(argv[0:1])
        command = args.command.replace("-", "_")
        if command.startswith("_") or not hasattr(self, command):
            parser.print_help()
            logger.error(f"Unknown command: {args.command}")
            sys.exit(2)
        getattr(self, command)(argv[1:])

    def measure(self, argv: List[str]):
        Measure(argv)

    def q3(self, argv: List[str]):
        Q3(argv)

    def q4(self, argv: List[str]):
        Q4(argv)

    def monogamy_check(self, argv: List[str]):
        MonogamyCheck(argv)

    def sweep(self, argv: List[str]):
        Sweep(argv)

    def figure(self, argv: List[str]):
        Figure(argv)

    def selftest(self, argv: List[str]):
        SelfTest(argv)

    def version(self, argv: List[str]):
        Version(argv)


def dispatch(argv: Optional[List[str]] = None) -> int:
    """Run one command and return its exit code.

    0 on success, 1 when a checked claim or numerical invariant fails,
    2 on usage errors and invalid input.
    """
    try:
        QMonogamyCLI(argv)
    except SystemExit as e:
        if e.code is None:
            return 0
        return e.code if isinstance(e.code, int) else 2
    except (ValueError, TypeError, OSError) as e:
        logger.error(e)
        return 2
    except RuntimeError as e:
        logger.error(e)
        return 1
    return 0
