import os
import sys

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from stabclass.ring import LaurentMatrix, LaurentPoly

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.register_profile("ci", deadline=None, max_examples=25,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def polys(draw, p, m, max_terms=4, radius=3):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        e = tuple(draw(st.integers(-radius, radius)) for _ in range(m))
        terms[e] = draw(st.integers(1, p - 1))
    return LaurentPoly(p, m, terms)


@st.composite
def rings(draw, primes=(2, 3, 5), max_m=2):
    return draw(st.sampled_from(primes)), draw(st.integers(1, max_m))


@st.composite
def matrices(draw, p, m, rows, cols, max_terms=2, radius=2):
    entries = [[draw(polys(p, m, max_terms, radius)) for _ in range(cols)] for _ in range(rows)]
    return LaurentMatrix(p, m, entries, rows, cols)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
