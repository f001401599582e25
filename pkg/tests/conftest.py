import pytest

from mbent import basis_state, generalized_ghz, product_state

_acceptance_outcomes: dict[int, tuple[str, str]] = {}


@pytest.fixture
def ghz3():
    return generalized_ghz(3, 0.5)


@pytest.fixture
def ghz4():
    return generalized_ghz(4, 0.5)


@pytest.fixture
def bell_pair():
    return generalized_ghz(2, 0.5)


@pytest.fixture
def psi4_vacuum_times_ghz3():
    """|0> on mode 0 times a three-mode GHZ state: not 4-way entangled."""
    return product_state([basis_state((0,), local_cutoff=1), generalized_ghz(3, 0.5)])


@pytest.fixture
def psi4_two_bell_pairs():
    """Product of two Bell pairs on modes (0,1) and (2,3): not 4-way entangled."""
    bell = generalized_ghz(2, 0.5)
    return product_state([bell, bell])


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    num, label = marker.args
    if report.when == "call":
        _acceptance_outcomes[num] = (label, "PASS" if report.passed else "FAIL")
    elif report.when == "setup" and report.skipped:
        _acceptance_outcomes[num] = (label, "SKIP")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _acceptance_outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_acceptance_outcomes):
        label, verdict = _acceptance_outcomes[num]
        terminalreporter.write_line(f"criterion {num:>2}  {label:<42} {verdict}")
