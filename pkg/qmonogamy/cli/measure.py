import argparse
from argparse import Namespace
from typing import List, Optional

from qmonogamy.cli.utils import (
    add_format_option,
    add_state_parsing_options,
    build_state,
    display_rows,
    parse_block,
    parse_cut,
)
from qmonogamy.measures.discord import (
    conditional_entropy,
    is_xstate,
    mutual_information,
    quantum_discord,
    xstate_criterion,
)
from qmonogamy.measures.entanglement import (
    concurrence_pure,
    eof_pair,
    pair_concurrence,
    three_tangle,
)
from qmonogamy.state.state import PureState, block_entropy, partial_trace
from qmonogamy.utils.log import get_logger

logger = get_logger("[QMono]")

MEASURES = [
    "entropy",
    "concurrence",
    "eof",
    "tangle",
    "mutual",
    "conditional",
    "discord",
    "xcriterion",
]


class Measure:
    usage = "\n".join(
        [
            "qmono measure --measure <name> --state <family> [<params>] [--cut A|BC]\n",
            "Measures:",
            "\tentropy       von Neumann entropy of the left block of --cut",
            "\tconcurrence   pure-cut or Wootters pair concurrence across --cut",
            "\teof           entanglement of formation across --cut",
            "\ttangle        residual three-tangle (--pivot)",
            "\tmutual        mutual information across --cut",
            "\tconditional   conditional entropy S(left|right)",
            "\tdiscord       quantum discord measuring the right block (--route)",
            "\txcriterion    sigma_x optimality criterion of a two-qubit reduction",
            "\n",
        ]
    )

    def __init__(self, argv: Optional[List[str]] = None):
        parser = argparse.ArgumentParser(usage=self.usage, allow_abbrev=False)
        parser.add_argument(
            "--measure", help="Measure to evaluate", choices=MEASURES, required=True
        )
        parser.add_argument(
            "--cut", help="Bipartition such as A|BC", type=str, default="A|B"
        )
        parser.add_argument("--pivot", help="Pivot qubit label", type=str, default="A")
        parser.add_argument(
            "--route",
            help="Discord route",
            choices=["auto", "numeric", "xstate", "koashi_winter", "pure_cut"],
            default="auto",
        )
        parser = add_format_option(parser)
        parser = add_state_parsing_options(parser)
        args = parser.parse_args(argv)
        self.measure(args)

    def measure(self, args: Namespace):
        """Evaluate one measure on one state.

        Usage:
            qmono measure --measure discord --state ghz3 --alpha 0.6 --cut "A|BC"
        """
        state, params = build_state(args)
        rows = []
        name = args.measure
        if name == "tangle":
            rows.append([f"tau3({args.pivot})", three_tangle(state, args.pivot)])
        elif name == "entropy" and "|" not in args.cut:
            block = parse_block(args.cut, state)
            rows.append([f"S({state.block_label(block)})", block_entropy(state, block)])
        else:
            a, b = parse_cut(args.cut, state)
            la, lb = state.block_label(a), state.block_label(b)
            if name == "entropy":
                rows.append([f"S({la})", block_entropy(state, a)])
            elif name == "concurrence":
                full_cut = sorted(a + b) == list(range(state.n))
                if isinstance(state, PureState) and full_cut:
                    rows.append([f"C({la}|{lb})", concurrence_pure(state, a)])
                else:
                    rows.append([f"C({la},{lb})", pair_concurrence(state, a, b)])
            elif name == "eof":
                rows.append([f"E_f({la},{lb})", eof_pair(state, a, b)])
            elif name == "mutual":
                rows.append([f"I({la}:{lb})", mutual_information(state, a, b)])
            elif name == "conditional":
                rows.append([f"S({la}|{lb})", conditional_entropy(state, a, b)])
            elif name == "discord":
                result = quantum_discord(state, a, b, route=args.route)
                rows += [
                    [f"D({la}|{lb})", result.discord],
                    [f"D^2({la}|{lb})", result.discord_sq],
                    [f"J({la}|{lb})", result.classical],
                    [f"I({la}:{lb})", result.mutual],
                    ["route", result.route.value],
                ]
                if result.optimal_setting is not None:
                    setting = result.optimal_setting
                    rows += [["theta", setting.theta], ["phi", setting.phi]]
            elif name == "xcriterion":
                rho = partial_trace(state, a + b)
                holds = is_xstate(rho) and xstate_criterion(rho)
                rows.append([f"sigma_x optimal ({la}{lb})", str(holds)])
        logger.info(f"{name} on {args.state} {params}")
        display_rows("Measure", rows, ["Quantity", "Value"], args.format)
