from __future__ import annotations

import os

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from sgwb.corpus import named_semigroups, small_semigroups

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=400, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# order <= 3 tables plus the named catalogue; used by several property tests
POOL = small_semigroups(3) + [S for S in named_semigroups() if S.order <= 8]


def semigroups():
    return st.sampled_from(POOL)


@st.composite
def semigroup_with_pairs(draw, max_pairs=4):
    S = draw(semigroups())
    idx = st.integers(0, S.order - 1)
    pairs = draw(st.lists(st.tuples(idx, idx), max_size=max_pairs))
    return S, pairs


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number, name, ok, secs, bound, detail in sorted(results):
        terminalreporter.write_line(
            f"{'PASS' if ok else 'FAIL'} {number:2d} {name}: {secs:.2f}s / {bound:.0f}s  {detail}")
