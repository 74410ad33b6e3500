import pytest

_ACCEPTANCE = {}


def pytest_addoption(parser):
    parser.addoption(
        "--mc-n",
        type=int,
        default=10**6,
        help="Monte Carlo trajectories per reset site for the acceptance suite (10**7 for full scale)",
    )
    parser.addoption("--mc-seed", type=int, default=20240917, help="base seed for acceptance runs")


@pytest.fixture(scope="session")
def mc_n(request):
    return request.config.getoption("--mc-n")


@pytest.fixture(scope="session")
def mc_seed(request):
    return request.config.getoption("--mc-seed")


@pytest.fixture
def criterion():
    """Record one acceptance line, then assert on it."""

    def record(number, title, ok, detail):
        _ACCEPTANCE[number] = (title, bool(ok), detail)
        assert ok, f"criterion {number} ({title}): {detail}"

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, ok, detail = _ACCEPTANCE[number]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {number:>2}. {title}: {detail}")
