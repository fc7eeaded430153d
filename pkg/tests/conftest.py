import os
import sys

import pytest
from hypothesis import settings

settings.register_profile("ci", max_examples=40, deadline=None)
settings.load_profile("ci")


@pytest.fixture(scope="session")
def cache_dir(tmp_path_factory):
    """One census cache shared by the whole session (env override wins, as in the CLI)."""
    return os.environ.get("SURFACE_CENSUS_CACHE") or str(tmp_path_factory.mktemp("census"))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if not mod or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.line(k))
