import pytest

from sishd.config import bundled_config_path, load_config


@pytest.fixture(scope="session")
def paper_scenarios():
    return {s.name: s for s in load_config(bundled_config_path())}


@pytest.fixture(scope="session")
def paper_params(paper_scenarios):
    return {name: s.params for name, s in paper_scenarios.items()}


@pytest.fixture(scope="session")
def initials(paper_scenarios):
    return paper_scenarios["A1"].initials


_CRITERIA: dict[int, str] = {}


@pytest.fixture
def criterion():
    """Record one PASS/FAIL line for an acceptance criterion, then assert."""

    def record(number: int, title: str, ok: bool, detail: str = "") -> None:
        line = f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {title}"
        if detail:
            line += f"  [{detail}]"
        _CRITERIA[number] = line
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for n in sorted(_CRITERIA):
            terminalreporter.write_line(_CRITERIA[n])
