"""
Enumeration guards shared by the brute-force oracles.
"""

import logging

logger = logging.getLogger(__name__)

# Fraction of a guard at which a run is reported as a near miss
NEAR_MISS = 0.8


class GuardExceeded(RuntimeError):
    """Raised when an exhaustive search would exceed its desk-scale threshold."""

    def __init__(self, what, value, limit):
        self.what = what
        self.value = value
        self.limit = limit
        super().__init__(f"{what}: {value} exceeds guard {limit}")


def check_guard(what, value, limit):
    if value > limit:
        raise GuardExceeded(what, value, limit)
    if value > NEAR_MISS * limit:
        logger.warning(f"{what}: {value} is close to the guard {limit}")
    return value
