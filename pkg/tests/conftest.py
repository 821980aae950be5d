import random
from pathlib import Path

import pytest
from hypothesis import settings, strategies as st

from realab.randgen import random_lattice

DATA = Path(__file__).parent / "data"

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def lattices(draw, max_g=3, fields=(None, 2, 3, 5)):
    g = draw(st.integers(1, max_g))
    d = draw(st.sampled_from(fields))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_lattice(random.Random(seed), g, d)


@pytest.fixture
def data_dir():
    return DATA


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed", "xfailed", "xpassed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            if "test_acceptance.py" not in getattr(rep, "nodeid", "") or rep.when != "call" and outcome != "error":
                continue
            label = rep.nodeid.split("::")[-1]
            verdict = {"passed": "PASS", "xpassed": "PASS (unexpected)"}.get(outcome, "FAIL")
            if outcome == "xfailed":
                verdict = "FAIL (recorded as unattainable)"
            lines.append((label, verdict))
    if lines:
        terminalreporter.section("acceptance criteria")
        for label, verdict in sorted(lines):
            terminalreporter.write_line(f"{verdict:32} {label}")
