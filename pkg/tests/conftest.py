import pytest

from hnoma.params import SystemParams

# (r_m, eta) regimes used across the figures
REGIMES = [(0.2, 5.0), (1.0, 5.0), (0.1, 1.0), (1.0, 10.0), (0.1, 10.0)]
BETAS = [0.25, 1.0 / 3.0]
SNR_GRID = [float(s) for s in range(0, 61, 5)]


def grid_points(snrs=SNR_GRID):
    for beta in BETAS:
        for r_m, eta in REGIMES:
            for snr in snrs:
                yield SystemParams.from_snr_db(snr, eta, beta, r_m)


_CRITERIA: list[str] = []


@pytest.fixture
def report_criterion():
    def record(number: int, passed: bool, detail: str) -> None:
        line = f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {detail}"
        _CRITERIA.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_CRITERIA):
            terminalreporter.write_line(line)
