import pytest


def pytest_addoption(parser):
    parser.addoption("--extended", action="store_true", default=False, help="run opt-in long scans")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--extended"):
        return
    skip = pytest.mark.skip(reason="needs --extended")
    for item in items:
        if "extended" in item.keywords:
            item.add_marker(skip)


_ACCEPTANCE = []


class _Recorder:
    def __call__(self, number, title, ok, seconds, limit, tolerance, detail=""):
        within = limit is None or seconds <= limit
        verdict = "PASS" if ok and within else "FAIL"
        budget = f"limit {limit:g}s" if limit is not None else "no time limit"
        line = f"{verdict} [{number:>3}] {title}: {seconds:.2f}s ({budget}), tolerance {tolerance}"
        if detail:
            line += f"; {detail}"
        _ACCEPTANCE.append(line)
        print(line)
        return ok and within


@pytest.fixture(scope="session")
def criterion():
    return _Recorder()


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
