import numpy as np
import pytest

_ACCEPTANCE_LINES: list[tuple[int, str]] = []


def random_points(rng: np.random.Generator, n: int, d: int, kind: str = "uniform") -> np.ndarray:
    """Points in [0, 1]^d; ``front`` gives mutually nondominated sphere points."""
    if kind == "uniform":
        return rng.random((n, d))
    x = np.abs(rng.standard_normal((n, d)))
    return x / np.linalg.norm(x, axis=1, keepdims=True)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def report():
    def _report(criterion: int, passed: bool, detail: str) -> None:
        line = f"criterion {criterion:>2}: {'PASS' if passed else 'FAIL'}  {detail}"
        _ACCEPTANCE_LINES.append((criterion, line))
        print(line)

    return _report


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(_ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
