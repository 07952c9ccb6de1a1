"""
Checks that configuration values are read from the environment with
their documented defaults.
"""

import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from config.search_config import SearchConfig, _int_env
from tests.case_report import raises, report_cases, run_tests

REQUIRED_ATTRIBUTES = [
    'CODEWORD_GUARD',
    'PERMUTATION_GUARD',
    'INCIDENCE_GUARD',
    'EQUIVALENCE_GUARD',
    'SEARCH_NODE_GUARD',
    'RANDOM_SEED',
    'HODGE_SAMPLES',
    'MACWILLIAMS_TRIALS',
    'DELTA_SAMPLES',
    'LOG_DIR',
    'LOG_LEVEL',
    'LOG_TO_FILE',
    'LOG_RETENTION_DAYS',
]


def _with_env(name, value, fn):
    old = os.environ.get(name)
    if value is None:
        os.environ.pop(name, None)
    else:
        os.environ[name] = value
    try:
        return fn()
    finally:
        if old is None:
            os.environ.pop(name, None)
        else:
            os.environ[name] = old


def test_config_attributes():
    """Every documented setting exists with the right type."""
    missing = [name for name in REQUIRED_ATTRIBUTES if not hasattr(SearchConfig, name)]
    ints = [name for name in REQUIRED_ATTRIBUTES[:9] + ['LOG_RETENTION_DAYS']
            if not isinstance(getattr(SearchConfig, name), int)]
    cases = [
        ("missing settings", missing, []),
        ("integer settings", ints, []),
        ("guards are positive", all(getattr(SearchConfig, n) > 0 for n in REQUIRED_ATTRIBUTES[:5]), True),
    ]
    report_cases("Testing configuration attributes:", cases)


def test_int_env():
    """Integers from the environment; unset or blank falls back to the default."""
    name = 'GRASSCODES_TEST_VALUE'
    cases = [
        ("unset", _with_env(name, None, lambda: _int_env(name, 7)), 7),
        ("blank", _with_env(name, '  ', lambda: _int_env(name, 7)), 7),
        ("padded value", _with_env(name, ' 300 ', lambda: _int_env(name, 7)), 300),
        ("not an integer", _with_env(name, 'many', lambda: raises(lambda: _int_env(name, 7), ValueError)), True),
    ]
    report_cases("Testing integer environment values:", cases)


def run_all_tests():
    """Run all configuration tests."""
    return run_tests("CONFIGURATION TESTS", [
        test_config_attributes,
        test_int_env,
    ])


if __name__ == "__main__":
    run_all_tests()
