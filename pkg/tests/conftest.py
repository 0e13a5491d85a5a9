from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from liediff.linalg import RationalMatrix

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
small_rationals = st.sampled_from([Fraction(0)] * 4 + [Fraction(v) for v in (-2, -1, 1, 2)] + [Fraction(1, 2)])


@st.composite
def matrices(draw, max_rows=6, max_cols=6, entries=small_rationals):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    return RationalMatrix([[draw(entries) for _ in range(c)] for _ in range(r)])


@st.composite
def square_matrices(draw, n, entries=small_rationals):
    return RationalMatrix([[draw(entries) for _ in range(n)] for _ in range(n)])


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[number].line())
