import subprocess

SOURCES = ["./qmonogamy", "./tests/", "./conftest.py"]
PYTEST = ["python", "-m", "pytest", "--log-level=CRITICAL"]
FAST = ["-m", "not slow"]


def _run(*args: str):
    subprocess.run(list(args), check=True)


def format():
    _run("isort", *SOURCES, "--profile", "black")
    _run("black", *SOURCES)


def check_format():
    _run("black", "--check", *SOURCES)


def sort_imports():
    _run("isort", *SOURCES, "--profile", "black")


def check_sort_imports():
    _run("isort", *SOURCES, "--check-only", "--profile", "black")


def check_lint():
    _run("pylint", "./qmonogamy")


def mypy():
    _run("python", "-m", "mypy", "./qmonogamy")


def test():
    _run(*PYTEST, *FAST)


def test_all():
    # includes the long-running reproduction checks
    _run(*PYTEST)


def test_verbose():
    _run(*PYTEST, *FAST, "-vv", "-s")


def test_cov():
    _run(*PYTEST, "-vv", "--cov=./qmonogamy", "--cov-report=xml")


def cov():
    _run("coverage", "html")
    print("If data was present, coverage report is in ./htmlcov/index.html")
