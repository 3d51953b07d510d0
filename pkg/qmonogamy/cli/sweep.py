import argparse
import sys
from argparse import Namespace
from typing import Dict, List, Optional

from qmonogamy.cli.utils import add_format_option, display_rows, emit_csv, panel_path
from qmonogamy.dynamics.figures import FIGURES, check_figure, figure_sweeps
from qmonogamy.dynamics.sweep import IndicatorRegistry, SweepAxis, SweepSpec, run_sweep
from qmonogamy.utils.log import get_logger

logger = get_logger("[QMono]")


def _parse_param(token: str) -> Dict[str, float]:
    if "=" not in token:
        raise ValueError(f"--param must look like name=value, got {token!r}")
    name, value = token.split("=", 1)
    return {name: float(value)}


def _parse_axis(token: str, times_pi: bool) -> SweepAxis:
    parts = token.split(":")
    if len(parts) != 4:
        raise ValueError(f"--axis must look like name:start:stop:step, got {token!r}")
    name, start, stop, step = parts
    return SweepAxis(
        name=name,
        start=float(start),
        stop=float(stop),
        step=float(step),
        times_pi=times_pi,
    )


class Sweep:
    usage = "\n".join(
        [
            "qmono sweep --config <sweep.yaml> --out <table.csv>",
            "qmono sweep --family <F> --axis name:start:stop:step [--param k=v]",
            "            --indicators <names> --out <table.csv>\n",
            f"Indicators: {', '.join(IndicatorRegistry.names())}",
            "\n",
        ]
    )

    def __init__(self, argv: Optional[List[str]] = None):
        parser = argparse.ArgumentParser(usage=self.usage, allow_abbrev=False)
        parser.add_argument(
            "-c", "--config", help="Path to a sweep YAML file", type=str
        )
        parser.add_argument("--family", help="State family", type=str)
        parser.add_argument(
            "--param",
            help="Fixed parameter name=value",
            action="append",
            default=[],
        )
        parser.add_argument(
            "--axis",
            help="Grid axis name:start:stop:step",
            action="append",
            default=[],
        )
        parser.add_argument(
            "--indicators", help="Indicator names", nargs="+", default=[]
        )
        parser.add_argument(
            "--times-pi",
            help="Axis bounds and steps in units of pi",
            action="store_true",
        )
        parser.add_argument(
            "--max-points", help="Subsample grids larger than this", type=int
        )
        parser.add_argument(
            "-o", "--out", help="CSV output path", type=str, required=True
        )
        parser = add_format_option(parser)
        args = parser.parse_args(argv)
        self.sweep(args)

    def sweep(self, args: Namespace):
        """Run one sweep and write its table.

        Usage:
            qmono sweep --config sweeps/fig5.yaml --out fig5.csv
        """
        spec = self._spec(args)
        table = run_sweep(spec)
        emit_csv(table, args.out)
        display_rows(
            f"Sweep {spec.name}",
            table.summary(),
            ["Indicator", "Min", "Max"],
            args.format,
        )

    def _spec(self, args: Namespace) -> SweepSpec:
        if args.config:
            return SweepSpec.from_yaml(args.config)
        if not args.family or not args.axis or not args.indicators:
            raise ValueError(
                "Provide --config or all of --family, --axis and --indicators"
            )
        params: Dict[str, float] = {}
        for token in args.param:
            params.update(_parse_param(token))
        return SweepSpec(
            name=args.family,
            family=args.family,
            params=params,
            axes=[_parse_axis(token, args.times_pi) for token in args.axis],
            indicators=args.indicators,
            max_points=args.max_points,
        )


class Figure:
    usage = "\n".join(
        [
            "qmono figure {1|2|4|5} --out <figure.csv> [<grid overrides>]\n",
            "Runs the canned sweeps of one figure, writes one CSV per panel and",
            "checks the figure's claims (exit 1 when a claim fails).",
            "\n",
        ]
    )

    def __init__(self, argv: Optional[List[str]] = None):
        parser = argparse.ArgumentParser(usage=self.usage, allow_abbrev=False)
        parser.add_argument(
            "number", help="Figure number", type=int, choices=FIGURES
        )
        parser.add_argument(
            "-o", "--out", help="CSV output path", type=str, required=True
        )
        parser.add_argument(
            "--kt-step", help="kappa t step (figures 4, 5)", type=float, default=0.05
        )
        parser.add_argument(
            "--kt-max", help="Largest kappa t (figures 4, 5)", type=float, default=6.0
        )
        parser.add_argument(
            "--alpha-step", help="alpha step (figure 4)", type=float, default=0.05
        )
        parser.add_argument(
            "--phi-points", help="phi grid points (figure 1)", type=int, default=101
        )
        parser.add_argument(
            "--p-step", help="p step (figure 1)", type=float, default=0.01
        )
        parser.add_argument(
            "--max-points", help="Point cap (figure 2)", type=int, default=100_000
        )
        parser = add_format_option(parser)
        args = parser.parse_args(argv)
        self.figure(args)

    def figure(self, args: Namespace):
        specs = figure_sweeps(
            args.number,
            kt_step=args.kt_step,
            kt_max=args.kt_max,
            alpha_step=args.alpha_step,
            phi_points=args.phi_points,
            p_step=args.p_step,
            max_points=args.max_points,
        )
        tables = []
        for spec in specs:
            table = run_sweep(spec)
            emit_csv(table, panel_path(args.out, spec.name, len(specs)))
            tables.append(table)
        check = check_figure(args.number, tables)
        rows = [[name, value] for name, value in check.findings.items()]
        rows.append(["passed", str(check.passed)])
        headers = ["Finding", "Value"]
        display_rows(f"Figure {args.number}", rows, headers, args.format)
        if not check.passed:
            sys.exit(1)
