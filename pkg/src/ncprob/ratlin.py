"""Exact linear algebra over the rationals.

Matrices are tuples of tuples of Fraction; vectors are tuples of Fraction.
Sizes here are tiny (ambient matrix models up to ~16x16, incidence matrices
up to a few hundred), so plain Gaussian elimination is both exact and fast.
"""

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def frozen(rows):
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def shape(a):
    return (len(a), len(a[0]) if a else 0)


def zeros(r, c):
    return tuple(tuple(ZERO for _ in range(c)) for _ in range(r))


def eye(n):
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def add(a, b):
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def sub(a, b):
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def scale(c, a):
    c = Fraction(c)
    return tuple(tuple(c * x for x in row) for row in a)


def mulmm(a, b):
    rb = len(b)
    cb = len(b[0]) if rb else 0
    bt = tuple(zip(*b)) if rb else ()
    out = []
    for row in a:
        out.append(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) if rb else tuple())
    return tuple(out)


def mulmv(a, v):
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def transpose(a):
    return tuple(zip(*a)) if a else ()


def flatten(a):
    return tuple(x for row in a for x in row)


def unflatten(v, r, c):
    return tuple(tuple(v[i * c + j] for j in range(c)) for i in range(r))


def _eliminate(aug, rows, cols):
    """In-place forward elimination; returns list of pivot column indices."""
    pivots = []
    pr = 0
    for pc in range(cols):
        pivot_row = None
        for r in range(pr, rows):
            if aug[r][pc] != 0:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        aug[pr], aug[pivot_row] = aug[pivot_row], aug[pr]
        inv = ONE / aug[pr][pc]
        aug[pr] = [x * inv for x in aug[pr]]
        for r in range(rows):
            if r != pr and aug[r][pc] != 0:
                f = aug[r][pc]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[pr])]
        pivots.append(pc)
        pr += 1
        if pr == rows:
            break
    return pivots


def solve_columns(a, b):
    """Solve a @ X = b column-by-column; return X or None if any column is inconsistent.

    ``a`` is r x c, ``b`` is r x k; the result is c x k.  When the system is
    underdetermined the free variables are set to zero (callers in this
    package only solve against genuinely independent column sets).
    """
    r, c = shape(a)
    k = len(b[0]) if b else 0
    aug = [list(a[i]) + list(b[i]) for i in range(r)]
    pivots = _eliminate(aug, r, c + k)
    # Any pivot landing in the b-block means inconsistency.
    for pc in pivots:
        if pc >= c:
            return None
    pivrows = {pc: i for i, pc in enumerate(pivots)}
    x = [[ZERO] * k for _ in range(c)]
    for pc, pr in pivrows.items():
        for j in range(k):
            x[pc][j] = aug[pr][c + j]
    return tuple(tuple(row) for row in x)


def solve_vector(a, v):
    sol = solve_columns(a, tuple((x,) for x in v))
    if sol is None:
        return None
    return tuple(row[0] for row in sol)


def inverse(a):
    n = len(a)
    sol = solve_columns(a, eye(n))
    if sol is None:
        raise ZeroDivisionError("matrix is singular")
    return sol


def rank(a):
    r, c = shape(a)
    aug = [list(row) for row in a]
    return len(_eliminate(aug, r, c))


def independent_columns(a):
    """Indices of a deterministic maximal independent subset of the columns of a."""
    r, c = shape(a)
    aug = [list(row) for row in a]
    return _eliminate(aug, r, c)


def is_zero(a):
    return all(x == 0 for row in a for x in row)
