import pytest

from polyconj.polycore import RatPoly


@pytest.fixture(autouse=True)
def _isolated_ledger(tmp_path, monkeypatch):
    # keep findings written by the CLI out of the working directory
    monkeypatch.setenv("POLYCONJ_LEDGER", str(tmp_path / "ledger.jsonl"))


def P(text: str) -> RatPoly:
    return RatPoly.parse(text)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
