"""Shared numerical policy.

Tolerances are stated once here and referenced everywhere else.  Closed-form
algebraic identities (interval preservation, group laws) are checked at
REL_TOL_ALGEBRA; sampled geometric checks (random null rays, polyline
intersection tests) at the looser REL_TOL_SAMPLED.
"""

# Speed of light in natural units; every formula keeps c explicit so other
# unit systems work by passing c.
DEFAULT_C = 1.0

# Relative tolerance for closed-form algebraic identities.
REL_TOL_ALGEBRA = 1e-12

# Relative tolerance for sampled / geometric checks.
REL_TOL_SAMPLED = 1e-9

# Velocities within this relative band of c are rejected for both boost
# branches: the stretch factors diverge and no limiting map is defined.
SPEED_GUARD_BAND = 1e-12

# Default seed for randomized property trials (overridable per run).
DEFAULT_SEED = 1234

# Default iteration count for randomized property trials.
DEFAULT_TRIALS = 1000
