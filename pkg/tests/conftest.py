import pytest

from qmod import CavityParams

_ACCEPTANCE = []


@pytest.fixture
def fig2():
    """Cavity preset shared by the fig2, fig3 and fig4 datasets (chi set per test)."""
    return CavityParams(g=0.3, kappa=1.0, delta_c=0.0, omega=0.12)


@pytest.fixture
def record():
    def _record(criterion, passed, detail):
        _ACCEPTANCE.append((criterion, bool(passed), detail))
        return passed
    return _record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, passed, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] {criterion}: {detail}")
