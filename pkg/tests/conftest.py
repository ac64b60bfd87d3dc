from fractions import Fraction

from hypothesis import settings
from hypothesis import strategies as st

from cfconv.scalars import RationalComplex

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def rationals(bound=10, max_den=12, nonzero=False):
    s = st.builds(Fraction, st.integers(-bound * max_den, bound * max_den), st.integers(1, max_den))
    return s.filter(bool) if nonzero else s


def gaussian(bound=10, max_den=12, nonzero=False):
    s = st.builds(RationalComplex, rationals(bound, max_den), rationals(bound, max_den))
    return s.filter(bool) if nonzero else s


ACCEPTANCE_RESULTS = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(ACCEPTANCE_RESULTS[key])
