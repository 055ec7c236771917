import pytest

from imark.game import validate_spec


def brute_sg(S, D, N):
    """Reference SG sequence straight from the mex recursion, no shared code."""
    vals = []
    for n in range(N + 1):
        opts = {n - s for s in S if n - s >= 0}
        if n > 0:
            opts |= {n // d for d in D if n % d == 0}
        seen = {vals[w] for w in opts}
        m = 0
        while m in seen:
            m += 1
        vals.append(m)
    return vals


@pytest.fixture(scope="session")
def mark123():
    return validate_spec([1], [2, 3])


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
