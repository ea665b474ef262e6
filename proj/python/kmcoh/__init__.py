from ._kmcoh import (
    classify,
    gamma,
    is_zero,
    normalize,
    reciprocity,
    run_suite,
    suites,
    transfer,
    witt_equal,
)

__all__ = [
    "classify",
    "gamma",
    "is_zero",
    "normalize",
    "reciprocity",
    "run_suite",
    "suites",
    "transfer",
    "witt_equal",
]
