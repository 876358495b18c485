import pytest

from causalgap import catalog


def pytest_sessionstart(session):
    failures = catalog.check_all()
    if failures:
        lines = [f"{name}: {prop} -> {why}" for name, fails in failures.items() for prop, why in fails]
        raise pytest.UsageError("catalog property check failed:\n" + "\n".join(lines))


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(test_acceptance.LINES):
            terminalreporter.write_line(test_acceptance.LINES[n])
