"""Noncrossing partitions of {1..n}: enumeration, lattice order, zeta/Moebius/delta
incidence functions with convolution, complements, and the alternating embedding
of a pair of partitions on 2n points.

All scalars are exact rationals.  Per-n data (enumeration, order structure,
Moebius values) is cached after first use; caches are built once and then only
read, so concurrent readers are safe after warm-up.
"""

import threading
from fractions import Fraction

from . import config
from .errors import DimensionError, StructureError

_build_lock = threading.RLock()


class NCPartition:
    """A noncrossing partition of {1..n} in canonical form.

    Blocks are tuples of increasing integers, ordered by least element, so
    structural equality coincides with value equality and instances can be
    used as table keys.
    """

    __slots__ = ("n", "blocks", "_point_block", "_hash")

    def __init__(self, n, blocks):
        blocks = tuple(tuple(sorted(b)) for b in blocks)
        blocks = tuple(sorted(blocks, key=lambda b: b[0])) if blocks else ()
        seen = [x for b in blocks for x in b]
        if sorted(seen) != list(range(1, n + 1)):
            raise StructureError(f"blocks {blocks} do not partition 1..{n}")
        self.n = n
        self.blocks = blocks
        pb = [0] * (n + 1)
        for bi, b in enumerate(blocks):
            for x in b:
                pb[x] = bi
        self._point_block = tuple(pb)
        if not _labels_noncrossing([pb[i] for i in range(1, n + 1)]):
            raise StructureError(f"blocks {blocks} cross")
        self._hash = hash((n, blocks))

    @classmethod
    def zero(cls, n):
        return cls(n, [(i,) for i in range(1, n + 1)])

    @classmethod
    def one(cls, n):
        return cls(n, [tuple(range(1, n + 1))])

    def block_of(self, point):
        return self.blocks[self._point_block[point]]

    def block_index(self, point):
        return self._point_block[point]

    @property
    def block_count(self):
        return len(self.blocks)

    def __eq__(self, other):
        return isinstance(other, NCPartition) and self.n == other.n and self.blocks == other.blocks

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "NC(" + ",".join("(" + ",".join(map(str, b)) + ")" for b in self.blocks) + ")"

    def to_lists(self):
        return [list(b) for b in self.blocks]


def _labels_noncrossing(labels):
    """Stack check: a label sequence is noncrossing iff blocks open/close like
    well-nested brackets with gaps allowed only for the top of the stack."""
    last = {}
    for i, b in enumerate(labels):
        last[b] = i
    stack = []
    is_open = set()
    for i, b in enumerate(labels):
        if stack and stack[-1] == b:
            pass
        elif b in is_open:
            return False
        else:
            stack.append(b)
            is_open.add(b)
        if last[b] == i:
            if stack[-1] != b:
                return False
            stack.pop()
            is_open.discard(b)
    return True


def _generate(points):
    """All noncrossing partitions of an increasing tuple of points, as block lists.

    The block of the smallest point is chosen as an arbitrary subset; the
    noncrossing condition forces every other block into one of the gaps, which
    are filled independently.
    """
    if not points:
        return [[]]
    first, rest = points[0], points[1:]
    out = []
    m = len(rest)
    for mask in range(1 << m):
        chosen = [rest[i] for i in range(m) if (mask >> i) & 1]
        block = (first, *chosen)
        bounds = list(block[1:]) + [None]
        gaps = []
        prev = first
        for b in bounds:
            gaps.append(tuple(p for p in rest if prev < p and (b is None or p < b)))
            prev = b if b is not None else prev
        partial = [[block]]
        for gap in gaps:
            if not gap:
                continue
            partial = [pp + sub for pp in partial for sub in _generate(gap)]
        out.extend(partial)
    return out


_enum_cache = {}


def enumerate_nc(n):
    """Every noncrossing partition of {1..n}, lexicographic on canonical block lists."""
    config.check_n(n)
    cached = _enum_cache.get(n)
    if cached is not None:
        return cached
    with _build_lock:
        cached = _enum_cache.get(n)
        if cached is not None:
            return cached
        parts = [NCPartition(n, blocks) for blocks in _generate(tuple(range(1, n + 1)))]
        parts.sort(key=lambda p: p.blocks)
        result = tuple(parts)
        _enum_cache[n] = result
    return result


def leq(theta, pi):
    """Refinement order: every block of theta lies inside a single block of pi."""
    if theta.n != pi.n:
        raise DimensionError(f"ground sets differ: {theta.n} vs {pi.n}")
    pb = pi._point_block
    for block in theta.blocks:
        target = pb[block[0]]
        for x in block[1:]:
            if pb[x] != target:
                return False
    return True


class _Lattice:
    """Order structure for NC(n): index map, per-element up-sets, Moebius memo."""

    def __init__(self, n):
        self.n = n
        self.parts = enumerate_nc(n)
        self.index = {p: i for i, p in enumerate(self.parts)}
        self._upsets = {}
        self._mobius = {}

    def upset(self, i):
        ups = self._upsets.get(i)
        if ups is None:
            theta = self.parts[i]
            ups = tuple(j for j, pi in enumerate(self.parts) if leq(theta, pi))
            self._upsets[i] = ups
        return ups

    def mobius_row(self, i):
        """All Moebius values mu(theta_i, .) by upward recursion over the up-set."""
        row = self._mobius.get(i)
        if row is not None:
            return row
        ups = self.upset(i)
        order = sorted(ups, key=lambda j: -self.parts[j].block_count)
        row = {}
        for j in order:
            pi = self.parts[j]
            if j == i:
                row[j] = 1
                continue
            acc = 0
            for s in ups:
                if s != j and s in row and leq(self.parts[s], pi):
                    acc += row[s]
            row[j] = -acc
        self._mobius[i] = row
        return row


_lattice_cache = {}


def _lattice(n):
    config.check_n(n)
    lat = _lattice_cache.get(n)
    if lat is None:
        with _build_lock:
            lat = _lattice_cache.get(n)
            if lat is None:
                lat = _Lattice(n)
                _lattice_cache[n] = lat
    return lat


def mobius(theta, pi):
    """Moebius function of the NC(n) lattice; 0 unless theta <= pi."""
    if theta.n != pi.n:
        raise DimensionError(f"ground sets differ: {theta.n} vs {pi.n}")
    if not leq(theta, pi):
        return Fraction(0)
    lat = _lattice(theta.n)
    with _build_lock:
        row = lat.mobius_row(lat.index[theta])
    return Fraction(row[lat.index[pi]])


def mobius_to_top(n):
    """The column mu(pi, 1_n) for every pi in enumeration order."""
    lat = _lattice(n)
    top = NCPartition.one(n)
    return tuple(mobius(p, top) for p in lat.parts)


class IncidenceFunction:
    """A rational-valued function on comparable pairs of NC(n), zero elsewhere."""

    def __init__(self, n, values):
        self.n = n
        self.values = dict(values)
        for (theta, pi), _ in self.values.items():
            if theta.n != n or pi.n != n:
                raise DimensionError("incidence entry on wrong ground set")
            if not leq(theta, pi):
                raise StructureError("incidence entry on incomparable pair")

    def value(self, theta, pi):
        if theta.n != self.n or pi.n != self.n:
            raise DimensionError("ground sets differ")
        if not leq(theta, pi):
            return Fraction(0)
        return self.values.get((theta, pi), Fraction(0))


def zeta_fn(n):
    lat = _lattice(n)
    vals = {}
    for i, theta in enumerate(lat.parts):
        for j in lat.upset(i):
            vals[(theta, lat.parts[j])] = Fraction(1)
    return IncidenceFunction(n, vals)


def delta_fn(n):
    parts = enumerate_nc(n)
    return IncidenceFunction(n, {(p, p): Fraction(1) for p in parts})


def mobius_fn(n):
    lat = _lattice(n)
    vals = {}
    for i, theta in enumerate(lat.parts):
        with _build_lock:
            row = lat.mobius_row(i)
        for j, v in row.items():
            vals[(theta, lat.parts[j])] = Fraction(v)
    return IncidenceFunction(n, vals)


def convolve(eta1, eta2):
    """(eta1 * eta2)(theta, pi) = sum over theta <= sigma <= pi of products."""
    if eta1.n != eta2.n:
        raise DimensionError("ground sets differ")
    n = eta1.n
    lat = _lattice(n)
    vals = {}
    for i, theta in enumerate(lat.parts):
        ups = lat.upset(i)
        for j in ups:
            pi = lat.parts[j]
            acc = Fraction(0)
            for s in ups:
                sigma = lat.parts[s]
                if leq(sigma, pi):
                    acc += eta1.value(theta, sigma) * eta2.value(sigma, pi)
            if acc:
                vals[(theta, pi)] = acc
    return IncidenceFunction(n, vals)


def _interleave_labels(pi, sigma):
    """Block-label sequence of pi on odd and sigma on even positions of 1..2n."""
    n = pi.n
    labels = []
    for i in range(1, n + 1):
        labels.append(("a", pi.block_index(i)))
        labels.append(("b", sigma.block_index(i)))
    return labels


def alternating_union(pi, sigma):
    """Partition of {1..2n} with pi on positions 2i-1 and sigma on positions 2i.

    Raises StructureError when the interleaving crosses, which signals that
    sigma is not below the complement of pi.
    """
    if pi.n != sigma.n:
        raise DimensionError(f"ground sets differ: {pi.n} vs {sigma.n}")
    if not _labels_noncrossing(_interleave_labels(pi, sigma)):
        raise StructureError("interleaving of the two partitions crosses")
    n = pi.n
    blocks = [tuple(2 * i - 1 for i in b) for b in pi.blocks]
    blocks += [tuple(2 * i for i in b) for b in sigma.blocks]
    return NCPartition(2 * n, blocks)


_kreweras_cache = {}


def kreweras(pi):
    """The complement: the unique maximal sigma whose interleaving with pi is
    noncrossing on 2n points (pi odd, sigma even)."""
    n = pi.n
    cache = _kreweras_cache.setdefault(n, {})
    hit = cache.get(pi)
    if hit is not None:
        return hit
    candidates = [s for s in enumerate_nc(n) if _labels_noncrossing(_interleave_labels(pi, s))]
    best = min(candidates, key=lambda s: (s.block_count, s.blocks))
    for c in candidates:
        if not leq(c, best):
            raise StructureError(f"complement of {pi} is not unique; lattice corrupted")
    with _build_lock:
        cache[pi] = best
    return best


def nc_prime(n):
    """All partitions of {1..n+1} having {1} as a singleton block."""
    return tuple(theta for theta, _ in nc_prime_pairs(n))


def nc_prime_pairs(n):
    """The bijection with NC(n): pairs (theta, pi) where theta is pi shifted up
    by one with the singleton {1} adjoined."""
    config.check_n(n + 1)
    out = []
    for pi in enumerate_nc(n):
        blocks = [(1,)] + [tuple(x + 1 for x in b) for b in pi.blocks]
        out.append((NCPartition(n + 1, blocks), pi))
    return tuple(out)
