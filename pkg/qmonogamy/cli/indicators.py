import argparse
from argparse import Namespace
from typing import List, Optional

from qmonogamy.cli.utils import (
    add_format_option,
    add_state_parsing_options,
    build_state,
    display_rows,
)
from qmonogamy.constants import CAVITY_LABELS
from qmonogamy.dynamics.cavity import cavity_indicators
from qmonogamy.monogamy.indicators import (
    entanglement_indicators,
    monogamy_condition,
    q3_mean,
    q3_mixed_indicator,
    q3_pure,
    q3_symmetric_mixed,
    q4_components,
    sqd_decomposition,
)
from qmonogamy.state.state import PureState
from qmonogamy.utils.log import get_logger

logger = get_logger("[QMono]")


class Q3:
    usage = "\n".join(
        [
            "qmono q3 --state <family> [<params>] [--pivot A] [--route <route>]\n",
            "Pure three-qubit states report Q3 with the T1/T2 split;",
            "mixed states report the tripartite indicator (may be negative).",
            "\n",
        ]
    )

    def __init__(self, argv: Optional[List[str]] = None):
        parser = argparse.ArgumentParser(usage=self.usage, allow_abbrev=False)
        parser.add_argument(
            "--pivot", help="Pivot qubit label (all pivots if omitted)", type=str
        )
        parser.add_argument(
            "--route",
            help="Q3 route for pure states",
            choices=["distribution", "analytic"],
            default="distribution",
        )
        parser = add_format_option(parser)
        parser = add_state_parsing_options(parser)
        args = parser.parse_args(argv)
        self.q3(args)

    def q3(self, args: Namespace):
        """Tripartite correlation indicators of a three-party state.

        Usage:
            qmono q3 --state w3 --a 0.5 --b 0.5 --c 0.70710678 --pivot A
        """
        state, _ = build_state(args)
        if state.n != 3:
            raise ValueError(
                f"q3 needs a three-qubit state; {args.state} has {state.n} qubits"
            )
        pivots = [args.pivot] if args.pivot else list(state.labels)
        rows = []
        if isinstance(state, PureState):
            for pivot in pivots:
                report = sqd_decomposition(state, pivot)
                rows += [
                    [f"Q3({pivot})", q3_pure(state, pivot, route=args.route)],
                    [f"T1({pivot})", report.t1],
                    [f"T2({pivot})", report.t2],
                    [f"monogamous({pivot})", str(monogamy_condition(report))],
                ]
            if not args.pivot:
                rows.append(["Q3 mean", q3_mean(state)])
        else:
            for pivot in pivots:
                value = q3_mixed_indicator(state, pivot)
                rows.append([f"Q3 indicator({pivot})", value])
            if not args.pivot:
                rows.append(["Q3 symmetric", q3_symmetric_mixed(state)])
        display_rows("Q3", rows, ["Quantity", "Value"], args.format)


class Q4:
    usage = "\n".join(
        [
            "qmono q4 --state <family> [<params>]\n",
            "Four-body SQD indicators and their squared-concurrence counterparts.",
            "\n",
        ]
    )

    def __init__(self, argv: Optional[List[str]] = None):
        parser = argparse.ArgumentParser(usage=self.usage, allow_abbrev=False)
        parser = add_format_option(parser)
        parser = add_state_parsing_options(parser)
        args = parser.parse_args(argv)
        self.q4(args)

    def q4(self, args: Namespace):
        """Q4 / E4 components (plus Q3 / E3 marginals on the cavity register).

        Usage:
            qmono q4 --state cavity --kt 0.5 --alpha 0.3162
        """
        state, _ = build_state(args)
        if not isinstance(state, PureState) or state.n != 4:
            raise ValueError(f"q4 needs a four-qubit pure state; got {args.state}")
        if list(state.labels) == list(CAVITY_LABELS):
            indicators = cavity_indicators(state)
        else:
            indicators = q4_components(state).merge(entanglement_indicators(state))
        rows = [
            [kind, key, value]
            for kind, components in indicators.dict().items()
            for key, value in components.items()
        ]
        headers = ["Indicator", "Partition", "Value"]
        display_rows("Indicators", rows, headers, args.format)
