"""Shared test configuration.

Hypothesis runs derandomized so repeated invocations of the suite produce
byte-identical reports; deadlines are disabled because several operations
populate process-wide caches on first use.
"""

from hypothesis import HealthCheck, settings

settings.register_profile(
    "suite",
    max_examples=50,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("suite")
