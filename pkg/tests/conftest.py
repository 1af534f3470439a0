"""
Shared pytest setup: project root on sys.path, cache and log files in a
throwaway directory so test runs never touch data/ or logs/.
"""

import os
import sys
import tempfile
from pathlib import Path

import pytest

project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

_scratch = tempfile.mkdtemp(prefix="replab-tests-")
os.environ.setdefault("REPMATCH_CACHE_DIR", os.path.join(_scratch, "schur_cache"))
os.environ.setdefault("REPMATCH_LOG_FILE", os.path.join(_scratch, "repmatch.log"))


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="Also run cap-sized basis checks")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: builds bases at the dimension cap (minutes per case)")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)
