from __future__ import annotations

import os

from hypothesis import HealthCheck, settings

# fixed seed for every randomized test; override with COINCIDENCE_TEST_SEED
SEED = int(os.environ.get("COINCIDENCE_TEST_SEED", "20240521"))

settings.register_profile(
    "default",
    deadline=None,
    max_examples=40,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))
