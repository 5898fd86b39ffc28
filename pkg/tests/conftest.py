import sys
import json

import pytest


@pytest.fixture
def write_config(tmp_path):
    def _write(data, name="cfg.json"):
        path = tmp_path / name
        path.write_text(json.dumps(data), encoding="utf-8")
        return path

    return _write


DESK = {"n": 1, "beta": 1.0, "b0": 0.05, "delta": 0.02}


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[num])
