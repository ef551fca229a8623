"""Certified equidistribution and oscillation experiments for power sequences modulo one."""

__version__ = "1.0.0"

from .analysis import oscillation_avg, oscillation_profile, star_discrepancy, ud_test, weyl_sum  # noqa: E402
from .config import EquidistSettings, get_settings  # noqa: E402
from .errors import EquidistError, PrecisionExhausted  # noqa: E402
from .mobius import mobius_sequence, mobius_sieve  # noqa: E402
from .sequences import ModOneSample, SequenceSpec, generate_power_sequence, poly_mod_one  # noqa: E402

__all__ = [
    "EquidistError",
    "EquidistSettings",
    "ModOneSample",
    "PrecisionExhausted",
    "SequenceSpec",
    "__version__",
    "generate_power_sequence",
    "get_settings",
    "mobius_sequence",
    "mobius_sieve",
    "oscillation_avg",
    "oscillation_profile",
    "poly_mod_one",
    "star_discrepancy",
    "ud_test",
    "weyl_sum",
]
