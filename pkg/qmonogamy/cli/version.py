import argparse
from argparse import Namespace
from typing import List, Optional

import numpy
import scipy

from qmonogamy import __version__
from qmonogamy.cli.utils import add_format_option, display_rows
from qmonogamy.utils.log import get_logger

logger = get_logger("[QMono]")


class Version:
    usage = "\n".join(
        [
            "qmono version [--short]\n",
            "Prints the package version and the numerical stack it runs on.",
            "\n",
        ]
    )

    def __init__(self, argv: Optional[List[str]] = None):
        parser = argparse.ArgumentParser(usage=self.usage, allow_abbrev=False)
        parser.add_argument(
            "-s", "--short", help="Print only the version number", action="store_true"
        )
        parser = add_format_option(parser)
        args = parser.parse_args(argv)
        self.version(args)

    def version(self, args: Namespace):
        if args.short:
            print(__version__)
            return
        logger.info(f"QMonogamy version {__version__}")
        rows = [
            ["qmonogamy", __version__],
            ["numpy", numpy.__version__],
            ["scipy", scipy.__version__],
        ]
        display_rows("Versions", rows, ["Package", "Version"], args.format)
