import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import pytest

from config.search_config import SearchConfig


@pytest.fixture(autouse=True, scope='session')
def no_log_files():
    """Keep test runs from writing into logs/."""
    previous = SearchConfig.LOG_TO_FILE
    SearchConfig.LOG_TO_FILE = False
    yield
    SearchConfig.LOG_TO_FILE = previous
