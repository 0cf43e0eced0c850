import pytest

from noether_forge.corpus import non_gorenstein, numerical_corpus


@pytest.fixture(scope="session")
def corpus8():
    return numerical_corpus(8)


@pytest.fixture(scope="session")
def non_gor8(corpus8):
    return non_gorenstein(corpus8)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = next((m for k, m in sys.modules.items() if k.endswith("test_acceptance")), None)
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
