"""Global size caps.

Everything downstream is exact, so the only resource to guard is combinatorial
growth: the number of noncrossing partitions of n points (Catalan) and the
d^(n-1) coefficient tables of degree-n series over a d-dimensional base.
Caps can be raised per process via the CLI flags or NCPROB_MAX_N.
"""

import os

DEFAULT_MAX_N = 8

max_n = int(os.environ.get("NCPROB_MAX_N", DEFAULT_MAX_N))

# Degree caps for truncated series / coefficient families.
max_degree_scalar = 5
max_degree_operator = 4


def check_n(n):
    from .errors import RangeError

    if not (1 <= n <= max_n):
        raise RangeError(f"ground-set size {n} outside 1..{max_n} (raise with --max-n or NCPROB_MAX_N)")


def check_degree(n_degree, b_dim):
    from .errors import DegreeError

    cap = max_degree_scalar if b_dim <= 1 else max_degree_operator
    if n_degree > cap:
        raise DegreeError(
            f"degree {n_degree} exceeds cap {cap} for base dimension {b_dim} (raise with --max-degree)"
        )


def set_max_n(n):
    global max_n
    max_n = int(n)


def set_max_degree(n_degree):
    global max_degree_scalar, max_degree_operator
    max_degree_scalar = int(n_degree)
    max_degree_operator = int(n_degree)
