import random
import time
from contextlib import contextmanager

import pytest
from hypothesis import settings, strategies as st

from collatz_f.randmaps import random_bijection, random_map

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

_ACCEPTANCE: list[tuple[str, str, bool, float, float]] = []


@pytest.fixture
def criterion():
    """Context manager recording one acceptance line: id, text, pass/fail, seconds."""

    @contextmanager
    def run(cid: str, text: str, budget: float):
        t0 = time.perf_counter()
        ok = False
        try:
            yield
            elapsed = time.perf_counter() - t0
            assert elapsed < budget, f"{cid} took {elapsed:.1f}s, budget {budget}s"
            ok = True
        finally:
            _ACCEPTANCE.append((cid, text, ok, time.perf_counter() - t0, budget))

    return run


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for cid, text, ok, secs, budget in sorted(_ACCEPTANCE, key=lambda r: int(r[0][2:])):
        terminalreporter.write_line(
            f"{'PASS' if ok else 'FAIL'}  {cid:<5} {text}  ({secs:.2f}s / {budget:g}s)")


seeds = st.integers(min_value=0, max_value=2**32 - 1)
maps = seeds.map(lambda s: random_map(random.Random(s)))
bijections = seeds.map(lambda s: random_bijection(random.Random(s)))
