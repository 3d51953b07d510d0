import sys

from qmonogamy.cli.main import dispatch


def main():
    """Main call to init the QMonogamy CLI tool."""
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
