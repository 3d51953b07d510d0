import csv
import math
from argparse import ArgumentParser, Namespace
from pathlib import Path
from typing import Any, Dict, List, Sequence, Tuple

from tabulate import tabulate

from qmonogamy.dynamics.sweep import SweepTable
from qmonogamy.state.families import StateFactory
from qmonogamy.state.state import State
from qmonogamy.utils.log import get_logger

logger = get_logger("[QMono]")

# every named family parameter, exposed as --<name>
PARAM_FLAGS = [
    "theta",
    "phi",
    "p",
    "epsilon",
    "theta0",
    "theta1",
    "theta2",
    "theta3",
    "alpha",
    "a",
    "b",
    "c",
]


def add_state_parsing_options(parser: ArgumentParser) -> ArgumentParser:
    parser.add_argument(
        "--state",
        help=f"State family, one of {StateFactory.families()}",
        type=str,
        required=True,
    )
    parser.add_argument(
        "--params", help="Family parameters in positional order", type=float, nargs="+"
    )
    for name in PARAM_FLAGS:
        parser.add_argument(f"--{name}", help=f"Family parameter {name}", type=float)
    parser.add_argument("--kt", help="Cavity evolution parameter kappa t", type=float)
    parser.add_argument(
        "--times-pi", help="Angles are given in units of pi", action="store_true"
    )
    return parser


def add_format_option(parser: ArgumentParser) -> ArgumentParser:
    parser.add_argument(
        "-f",
        "--format",
        help="Output format for summaries",
        type=str,
        default="rounded_outline",
    )
    return parser


def state_params(args: Namespace) -> Dict[str, float]:
    """Collect family parameters from positional and named flags."""
    family = args.state
    names = StateFactory.param_names(family)
    params: Dict[str, float] = {}
    if args.params:
        if len(args.params) > len(names):
            raise ValueError(f"--params: {family} takes {len(names)} values {names}")
        params.update(zip(names, args.params))
    named = {name: getattr(args, name, None) for name in PARAM_FLAGS}
    named["kappa_t"] = args.kt
    for name, value in named.items():
        if value is None:
            continue
        if name not in names:
            flag = "kt" if name == "kappa_t" else name
            raise ValueError(f"--{flag} is not a parameter of {family}")
        params[name] = value
    if args.times_pi:
        angles = StateFactory.params_class(family).ANGLES
        params = {k: v * math.pi if k in angles else v for k, v in params.items()}
    return params


def build_state(args: Namespace) -> Tuple[State, Dict[str, float]]:
    """Build the state named on the command line."""
    params = state_params(args)
    return StateFactory.create_state(args.state, params), params


def parse_cut(token: str, state: State) -> Tuple[List[int], List[int]]:
    """Parse a cut such as ``A|BC`` or ``c1|c2,r2`` into two index blocks."""
    if token.count("|") != 1:
        raise ValueError(f"--cut must look like A|BC, got {token!r}")
    left, right = token.split("|")
    return parse_block(left, state), parse_block(right, state)


def parse_block(token: str, state: State) -> List[int]:
    """Parse a block given as labels (``BC``, ``c2,r2``) or indices (``1,2``)."""
    items: List[Any] = [item for item in token.split(",") if item]
    if len(items) > 1 or (items and items[0].isdigit()):
        items = [int(item) if item.isdigit() else item for item in items]
        return state.block(items)
    return state.block(token)


def format_value(value: float) -> str:
    return f"{value:.9g}"


def emit_csv(table: SweepTable, path: str) -> Path:
    """Write a sweep table as CSV: axis columns then indicator columns.

    UTF-8, LF line endings, values with 9 significant digits, rows in
    row-major axis order.
    """
    fp = Path(path)
    with open(fp, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(table.axis_names + table.indicator_names)
        for point, values in zip(table.points, table.values):
            writer.writerow([format_value(v) for v in list(point) + list(values)])
    logger.info(f"Wrote {len(table)} rows to {fp}")
    return fp


def panel_path(path: str, panel: str, panels: int) -> str:
    """Output path of one panel.

    Multi-panel figures append the panel name to the file stem.
    """
    if panels == 1:
        return path
    fp = Path(path)
    return str(fp.with_name(f"{fp.stem}_{panel}{fp.suffix or '.csv'}"))


def display_rows(
    title: str,
    rows: Sequence[Sequence[Any]],
    headers: Sequence[str],
    output_format: str,
) -> None:
    print(f"\n{title}:")
    print(
        tabulate(
            [
                [format_value(v) if isinstance(v, float) else v for v in row]
                for row in rows
            ],
            headers=list(headers),
            tablefmt=output_format,
            colalign=("left",) * len(headers),
        )
    )
