from fractions import Fraction

import pytest

from toric_hk.catalog import hirzebruch, pair_from_spec, parse_shorthand, simplex
from toric_hk.density import density_report
from toric_hk.polytope import convex_hull

_pairs = {}
_reports = {}


def get_pair(shorthand):
    if shorthand not in _pairs:
        _pairs[shorthand] = pair_from_spec(parse_shorthand(shorthand))
    return _pairs[shorthand]


def get_report(shorthand):
    if shorthand not in _reports:
        _reports[shorthand] = density_report(get_pair(shorthand))
    return _reports[shorthand]


@pytest.fixture
def pair():
    return get_pair


@pytest.fixture
def report():
    return get_report


def F(*args):
    return Fraction(*args)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
