import argparse
import sys
from argparse import Namespace
from typing import List, Optional

from qmonogamy.cli.utils import add_format_option, display_rows
from qmonogamy.monogamy.harness import run_monogamy_check, run_selftest
from qmonogamy.utils.log import get_logger

logger = get_logger("[QMono]")


class MonogamyCheck:
    usage = "\n".join(
        [
            "qmono monogamy-check --samples <N> --seed <S>\n",
            "SQD monogamy over Haar-random three-qubit pure states.",
            "\n",
        ]
    )

    def __init__(self, argv: Optional[List[str]] = None):
        parser = argparse.ArgumentParser(usage=self.usage, allow_abbrev=False)
        parser.add_argument(
            "--samples", help="Number of random states", type=int, default=2000
        )
        parser.add_argument(
            "--seed", help="Random seed (required)", type=int, required=True
        )
        parser.add_argument(
            "--pivot",
            help="Pivot qubit index",
            type=int,
            default=0,
            choices=[0, 1, 2],
        )
        parser = add_format_option(parser)
        args = parser.parse_args(argv)
        self.check(args)

    def check(self, args: Namespace):
        """Run the harness and exit 1 if any inequality is violated."""
        result = run_monogamy_check(args.samples, args.seed, args.pivot)
        rows = [
            ["min distribution", result.min_distribution],
            ["min T1", result.min_t1],
            ["min T2", result.min_t2],
            ["min CKW margin", result.min_ckw_margin],
            ["min T2'", result.min_t2_prime],
            ["same-sign violations", result.same_sign_violations],
            ["corollary violations", result.corollary_violations],
            ["passed", str(result.passed)],
        ]
        display_rows(
            f"Monogamy check ({result.samples} samples, seed {result.seed})",
            rows,
            ["Quantity", "Value"],
            args.format,
        )
        if not result.passed:
            logger.error(f"Monogamy violated; worst sample index {result.worst_sample}")
            sys.exit(1)


class SelfTest:
    usage = "\n".join(
        [
            "qmono selftest --seed <S> [--samples N] [--xstate-samples M]\n",
            "Cross-check the numeric discord route against the analytic routes.",
            "\n",
        ]
    )

    def __init__(self, argv: Optional[List[str]] = None):
        parser = argparse.ArgumentParser(usage=self.usage, allow_abbrev=False)
        parser.add_argument(
            "--seed", help="Random seed (required)", type=int, required=True
        )
        parser.add_argument(
            "--samples",
            help="Random pure states for the KW check",
            type=int,
            default=200,
        )
        parser.add_argument(
            "--xstate-samples",
            help="Cavity reductions for the X-state check",
            type=int,
            default=50,
        )
        parser = add_format_option(parser)
        args = parser.parse_args(argv)
        self.selftest(args)

    def selftest(self, args: Namespace):
        report = run_selftest(args.seed, args.samples, args.xstate_samples)
        rows = [
            ["max |numeric - koashi_winter|", report.max_kw_gap],
            ["max |numeric - xstate|", report.max_xstate_gap],
            ["max |D + J - I|", report.max_balance_gap],
            ["criterion failures", report.criterion_failures],
            ["passed", str(report.passed)],
        ]
        display_rows("Self test", rows, ["Check", "Value"], args.format)
        if not report.passed:
            logger.error("Route agreement failed")
            sys.exit(1)
