import pytest

from matcomonad.corpus import build_corpus, load_bundled
from matcomonad.linalg import QQ, Field


@pytest.fixture(scope="session")
def corpus():
    return build_corpus(QQ)


@pytest.fixture(scope="session")
def bundled():
    return load_bundled()


@pytest.fixture(scope="session")
def corpus_f2():
    return build_corpus(Field.prime(2))


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import RESULTS, line
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(line(n))
