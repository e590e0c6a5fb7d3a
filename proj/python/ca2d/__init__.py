"""Two-dimensional cellular automata: directional Lyapunov exponents,
trajectory entropy (rank-exact and empirical) and shift-entropy bounds.

The heavy lifting lives in the C++ extension; this package re-exports it.
"""

from ._core import (  # noqa: F401
    __version__,
    DomainError,
    RuleParseError,
    afe_rank,
    bound_report,
    profile,
    rule_info,
    shift_entropy,
    step_delta,
    step_random,
    surfaces,
    trajectory_rank,
)

__all__ = [
    "__version__",
    "DomainError",
    "RuleParseError",
    "afe_rank",
    "bound_report",
    "profile",
    "rule_info",
    "shift_entropy",
    "step_delta",
    "step_random",
    "surfaces",
    "trajectory_rank",
]
