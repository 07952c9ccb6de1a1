import os
from dotenv import load_dotenv

load_dotenv()


def _int_env(name, default):
    value = os.getenv(name)
    if value is None or not str(value).strip():
        return default
    return int(str(value).strip())


class SearchConfig:
    # Enumeration guards
    CODEWORD_GUARD = _int_env('CODEWORD_GUARD', 2 ** 20)  # max q^k for codeword sweeps
    PERMUTATION_GUARD = _int_env('PERMUTATION_GUARD', 24)  # max n for PAut backtracking
    INCIDENCE_GUARD = _int_env('INCIDENCE_GUARD', 300)  # max points + lines for the Chow oracle
    EQUIVALENCE_GUARD = _int_env('EQUIVALENCE_GUARD', 400)  # max n for equivalence search
    SEARCH_NODE_GUARD = _int_env('SEARCH_NODE_GUARD', 200000)  # max backtracking nodes per search

    # Sampled checks
    RANDOM_SEED = _int_env('RANDOM_SEED', 20240601)
    HODGE_SAMPLES = _int_env('HODGE_SAMPLES', 100)
    MACWILLIAMS_TRIALS = _int_env('MACWILLIAMS_TRIALS', 50)
    DELTA_SAMPLES = _int_env('DELTA_SAMPLES', 20)

    # Logging
    LOG_DIR = os.getenv('LOG_DIR', 'logs')
    LOG_LEVEL = os.getenv('LOG_LEVEL', 'INFO')
    LOG_TO_FILE = os.getenv('LOG_TO_FILE', '1') not in ('0', 'false', 'False', '')
    LOG_RETENTION_DAYS = _int_env('LOG_RETENTION_DAYS', 3)
