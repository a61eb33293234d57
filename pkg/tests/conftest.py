import pytest

_ACCEPTANCE: dict[str, str] = {}


class AcceptanceRecorder:
    def __init__(self, key):
        self.key = key
        self.detail = ""

    def note(self, detail):
        self.detail = detail


@pytest.fixture
def criterion(request):
    marker = request.node.get_closest_marker("criterion")
    rec = AcceptanceRecorder(marker.args[0] if marker else request.node.name)
    yield rec
    failed = getattr(request.node, "rep_call", None)
    status = "PASS" if failed is not None and failed.passed else "FAIL"
    _ACCEPTANCE[rec.key] = f"{status}  {rec.key}  {rec.detail}".rstrip()


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(name): acceptance criterion label")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_ACCEPTANCE, key=lambda k: int(k.split()[0][1:])):
        terminalreporter.write_line(_ACCEPTANCE[key])
