"""Finite-dimensional algebras over the rationals realized as matrix subalgebras,
elements, conditional expectations, towers and ladders.

An algebra is a basis of ambient m x m rational matrices whose span is closed
under the matrix product.  Subalgebra inclusions, bimodule laws and commuting
squares then all reduce to exact linear algebra over the bases.
"""

from fractions import Fraction

from . import ratlin
from .errors import DimensionError, InvariantError, MembershipError, ModelError
from .reports import VerifyReport, fmt_coords


class FiniteAlgebra:
    """A unital subalgebra of M_m(Q) given by a linearly independent basis."""

    def __init__(self, basis, unit_coords=None, label=None, check=True):
        basis = tuple(ratlin.frozen(b) for b in basis)
        if not basis:
            raise InvariantError("algebra needs at least one basis element")
        m = len(basis[0])
        for b in basis:
            if ratlin.shape(b) != (m, m):
                raise InvariantError("basis matrices must share one square ambient size")
        self.basis = basis
        self.ambient = m
        self.dim = len(basis)
        self.label = label
        # columns = flattened basis matrices; used to solve for coordinates
        self._colmat = ratlin.transpose(tuple(ratlin.flatten(b) for b in basis))
        self._mul_table = None
        if check:
            if ratlin.rank(self._colmat) != self.dim:
                raise InvariantError("basis matrices are linearly dependent")
        if unit_coords is None:
            unit_coords = self.coords_of(ratlin.eye(m))
            if unit_coords is None:
                raise InvariantError("ambient identity is not in the span; pass unit_coords")
        self.unit_coords = tuple(Fraction(c) for c in unit_coords)
        if check:
            got = self._combine(self.unit_coords)
            expect = self._combine(self.coords_of(got) or ())
            if self.coords_of(got) is None or got != expect:
                raise InvariantError("unit coordinates are inconsistent")

    def _combine(self, coords):
        m = self.ambient
        out = [[Fraction(0)] * m for _ in range(m)]
        for c, b in zip(coords, self.basis):
            if c:
                for i in range(m):
                    row = b[i]
                    oi = out[i]
                    for j in range(m):
                        if row[j]:
                            oi[j] += c * row[j]
        return tuple(tuple(r) for r in out)

    def coords_of(self, matrix):
        return ratlin.solve_vector(self._colmat, ratlin.flatten(matrix))

    def element(self, coords):
        coords = tuple(Fraction(c) for c in coords)
        if len(coords) != self.dim:
            raise DimensionError(f"expected {self.dim} coordinates, got {len(coords)}")
        return AlgebraElement(self, coords)

    def from_matrix(self, matrix):
        coords = self.coords_of(ratlin.frozen(matrix))
        if coords is None:
            raise MembershipError("matrix is not in the span of the algebra")
        return AlgebraElement(self, coords)

    def unit(self):
        return AlgebraElement(self, self.unit_coords)

    def zero(self):
        return AlgebraElement(self, tuple(Fraction(0) for _ in range(self.dim)))

    def basis_element(self, i):
        coords = [Fraction(0)] * self.dim
        coords[i] = Fraction(1)
        return AlgebraElement(self, tuple(coords))

    def elements(self):
        return [self.basis_element(i) for i in range(self.dim)]

    def mul_table(self):
        """Structure constants; computing them verifies closure under product."""
        if self._mul_table is None:
            table = []
            for bi in self.basis:
                row = []
                for bj in self.basis:
                    coords = self.coords_of(ratlin.mulmm(bi, bj))
                    if coords is None:
                        raise InvariantError("span is not closed under the matrix product")
                    row.append(coords)
                table.append(tuple(row))
            self._mul_table = tuple(table)
        return self._mul_table

    def contains_algebra(self, other):
        return all(self.coords_of(b) is not None for b in other.basis)

    def same_span(self, other):
        return self.ambient == other.ambient and self.contains_algebra(other) and other.contains_algebra(self)

    def __eq__(self, other):
        return (
            isinstance(other, FiniteAlgebra)
            and self.ambient == other.ambient
            and self.basis == other.basis
            and self.unit_coords == other.unit_coords
        )

    def __hash__(self):
        return hash((self.ambient, self.basis, self.unit_coords))

    def __repr__(self):
        name = self.label or "algebra"
        return f"<{name}: dim {self.dim} in M_{self.ambient}>"


class AlgebraElement:
    """An element of a FiniteAlgebra, stored as exact coordinates."""

    __slots__ = ("algebra", "coords")

    def __init__(self, algebra, coords):
        self.algebra = algebra
        self.coords = tuple(Fraction(c) for c in coords)
        if len(self.coords) != algebra.dim:
            raise DimensionError("coordinate length does not match algebra dimension")

    def matrix(self):
        return self.algebra._combine(self.coords)

    def is_zero(self):
        return all(c == 0 for c in self.coords)

    def __add__(self, other):
        self._same(other)
        return AlgebraElement(self.algebra, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._same(other)
        return AlgebraElement(self.algebra, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return AlgebraElement(self.algebra, tuple(-a for a in self.coords))

    def scale(self, c):
        c = Fraction(c)
        return AlgebraElement(self.algebra, tuple(c * a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def _same(self, other):
        if self.algebra != other.algebra:
            raise DimensionError("elements of different algebras")

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraElement)
            and self.algebra == other.algebra
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return f"El{fmt_coords(self.coords)}"


def mul(x, y):
    """Ring product, computed through the cached structure constants."""
    if x.algebra != y.algebra:
        raise DimensionError("elements of different algebras")
    table = x.algebra.mul_table()
    dim = x.algebra.dim
    out = [Fraction(0)] * dim
    for i, ci in enumerate(x.coords):
        if not ci:
            continue
        for j, cj in enumerate(y.coords):
            if not cj:
                continue
            c = ci * cj
            for k, t in enumerate(table[i][j]):
                if t:
                    out[k] += c * t
    return AlgebraElement(x.algebra, tuple(out))


def is_projection(p):
    """Nonzero idempotent."""
    return not p.is_zero() and mul(p, p) == p


class ConditionalExpectation:
    """An exact linear map source -> target fixing the (embedded) target and
    satisfying the target-bimodule law.

    ``embed`` gives the source coordinates of each target basis element; by
    default the target basis matrices are solved inside the source span.  A
    nonstandard embedding (for instance b -> p*b*p into a corner) may be
    passed explicitly.
    """

    def __init__(self, source, target, matrix, embed=None, label=None, check=True):
        self.source = source
        self.target = target
        self.matrix = ratlin.frozen(matrix)
        self.label = label
        if ratlin.shape(self.matrix) != (target.dim, source.dim):
            raise DimensionError("expectation matrix must be target.dim x source.dim")
        if embed is None:
            cols = []
            for b in target.basis:
                coords = source.coords_of(b)
                if coords is None:
                    raise MembershipError("target basis does not lie inside the source span")
                cols.append(coords)
            embed = ratlin.transpose(tuple(cols))
        self.embed = ratlin.frozen(embed)
        if ratlin.shape(self.embed) != (source.dim, target.dim):
            raise DimensionError("embedding matrix must be source.dim x target.dim")
        if check:
            rep = self.verify()
            if not rep.passed:
                raise InvariantError(
                    "conditional expectation invariants fail: "
                    + "; ".join(i.key for i in rep.failures())
                )

    def embed_element(self, b):
        if b.algebra != self.target:
            raise DimensionError("element is not in the target algebra")
        return AlgebraElement(self.source, ratlin.mulmv(self.embed, b.coords))

    def apply(self, x):
        if x.algebra != self.source:
            raise MembershipError("element is not in the source algebra")
        return AlgebraElement(self.target, ratlin.mulmv(self.matrix, x.coords))

    def verify(self):
        """Exact full-basis sweep of the fixing and bimodule laws."""
        rep = VerifyReport(f"conditional expectation {self.label or ''}".strip())
        tb = self.target.elements()
        sb = self.source.elements()
        for i, b in enumerate(tb):
            got = self.apply(self.embed_element(b))
            rep.add(f"fixes target basis {i}", fmt_coords(got.coords), fmt_coords(b.coords))
        for i, b in enumerate(tb):
            eb = self.embed_element(b)
            for k, bp in enumerate(tb):
                ebp = self.embed_element(bp)
                for j, x in enumerate(sb):
                    lhs = self.apply(mul(mul(eb, x), ebp))
                    rhs = mul(mul(b, self.apply(x)), bp)
                    if lhs != rhs:
                        rep.add(
                            f"bimodule b{i} x{j} b'{k}",
                            fmt_coords(lhs.coords),
                            fmt_coords(rhs.coords),
                        )
        rep.add_bool("bimodule law on full basis", not rep.failures())
        return rep

    def then(self, outer):
        """outer o self, resolving the inclusion of self.target into outer.source."""
        if outer.source == self.target:
            trans = ratlin.eye(self.target.dim)
        else:
            cols = []
            for b in self.target.basis:
                coords = outer.source.coords_of(b)
                if coords is None:
                    raise DimensionError("maps do not compose: intermediate algebra mismatch")
            # embed target basis matrices into outer source coordinates
            cols = [outer.source.coords_of(b) for b in self.target.basis]
            trans = ratlin.transpose(tuple(cols))
        matrix = ratlin.mulmm(outer.matrix, ratlin.mulmm(trans, self.matrix))
        return ConditionalExpectation(self.source, outer.target, matrix, check=False)

    def ambient_images(self):
        """Flattened ambient image of each source basis element; basis-free view
        of the map, used to compare maps that share source and target spans."""
        out = []
        for i in range(self.source.dim):
            coords = tuple(self.matrix[r][i] for r in range(self.target.dim))
            out.append(ratlin.flatten(self.target._combine(coords)))
        return tuple(out)

    def same_map(self, other):
        return (
            self.source.basis == other.source.basis
            and self.ambient_images() == other.ambient_images()
        )

    def __repr__(self):
        return f"<CE {self.label or ''} {self.source!r} -> {self.target!r}>"


def apply(phi, x):
    return phi.apply(x)


def scalar_span(unit_matrix, label="scalars"):
    """The one-dimensional algebra spanned by a unit (idempotent) matrix."""
    return FiniteAlgebra([unit_matrix], unit_coords=(Fraction(1),), label=label)


class Tower:
    """A chain A_0 c A_1 c ... c A_T with a conditional expectation down each
    step and a scalar functional at the bottom.

    ``maps[0]`` sends A_0 onto the span of its own unit (the copy of the
    scalars inside A_0); ``maps[j]`` sends A_j onto A_{j-1} for j >= 1.
    Levels may carry increasing units (corner towers); each level's unit must
    lie inside the next level.
    """

    def __init__(self, levels, maps, label=None, check=True):
        self.levels = list(levels)
        self.maps = list(maps)
        self.label = label
        if check:
            rep = self.verify()
            if not rep.passed:
                raise InvariantError(
                    "tower invariants fail: " + "; ".join(i.key for i in rep.failures())
                )

    @property
    def depth(self):
        return len(self.levels) - 1

    def verify(self):
        rep = VerifyReport(f"tower {self.label or ''}".strip())
        rep.add_bool("one map per level", len(self.maps) == len(self.levels))
        if len(self.maps) != len(self.levels):
            return rep
        rep.add_bool("scalar map source", self.maps[0].source == self.levels[0])
        rep.add_bool("scalar map target is the unit span", self.maps[0].target.dim == 1)
        for j in range(1, len(self.levels)):
            lower, upper = self.levels[j - 1], self.levels[j]
            rep.add_bool(f"level {j-1} inside level {j}", upper.contains_algebra(lower))
            unit_in = upper.coords_of(lower._combine(lower.unit_coords)) is not None
            rep.add_bool(f"unit of level {j-1} inside level {j}", unit_in)
            rep.add_bool(
                f"map {j} endpoints",
                self.maps[j].source == upper and self.maps[j].target == lower,
            )
        for j, phi in enumerate(self.maps):
            rep.add_bool(f"map {j} is a conditional expectation", phi.verify().passed)
        return rep

    def expectation(self, k, j):
        """The composition of the step maps from level j down to level k-1."""
        if not (1 <= k <= j <= self.depth):
            raise DimensionError(f"need 1 <= k <= j <= {self.depth}, got k={k}, j={j}")
        ce = self.maps[j]
        for i in range(j - 1, k - 1, -1):
            ce = ce.then(self.maps[i])
        return ce

    def scalar_functional(self, n_level):
        """The full composition from level n down to the scalars."""
        if not (0 <= n_level <= self.depth):
            raise DimensionError(f"level {n_level} outside 0..{self.depth}")
        if n_level == 0:
            return self.maps[0]
        return self.expectation(1, n_level).then(self.maps[0])

    def scalar_value(self, x):
        """Numeric value of an element of the scalar span."""
        if x.algebra.dim != 1:
            raise DimensionError("not a scalar-span element")
        return x.coords[0]


def compose_expectations(tower, k, j):
    return tower.expectation(k, j)


def scalar_functional(tower, n_level):
    return tower.scalar_functional(n_level)


def compress(algebra, p):
    """The corner p*A*p with its computed basis; its unit is p."""
    if p.algebra != algebra:
        raise MembershipError("projection is not an element of the algebra")
    if not is_projection(p):
        raise ModelError("compress needs a nonzero idempotent")
    pm = p.matrix()
    images = [ratlin.mulmm(ratlin.mulmm(pm, b), pm) for b in algebra.basis]
    colmat = ratlin.transpose(tuple(ratlin.flatten(img) for img in images))
    keep = ratlin.independent_columns(colmat)
    basis = [images[i] for i in keep]
    corner = FiniteAlgebra(basis, unit_coords=None, label=f"corner({algebra.label or 'A'})", check=True) \
        if ratlin.solve_vector(ratlin.transpose(tuple(ratlin.flatten(b) for b in basis)), ratlin.flatten(pm)) is None \
        else FiniteAlgebra(
            basis,
            unit_coords=ratlin.solve_vector(
                ratlin.transpose(tuple(ratlin.flatten(b) for b in basis)), ratlin.flatten(pm)
            ),
            label=f"corner({algebra.label or 'A'})",
        )
    return corner


def compressed_expectation(phi, p):
    """Rescaled restriction of phi to the corner of p, onto the same base.

    Requires phi(p) invertible in the base and central there, and p commuting
    with the (embedded) base, so that b -> p*b*p is an injective unital map of
    the base into the corner.
    """
    if not is_projection(p):
        raise ModelError("compressed expectation needs a nonzero idempotent")
    source = phi.source
    target = phi.target
    b0 = phi.apply(p)
    table_unit = target.unit()
    # invertibility: solve b0 * c = 1 in the base and confirm two-sidedness
    left_mul = ratlin.transpose(tuple(mul(b0, target.basis_element(j)).coords for j in range(target.dim)))
    c_coords = ratlin.solve_vector(left_mul, table_unit.coords)
    if c_coords is None:
        raise ModelError("phi(p) is not invertible in the base")
    b0_inv = target.element(c_coords)
    if mul(b0_inv, b0) != table_unit or mul(b0, b0_inv) != table_unit:
        raise ModelError("phi(p) is not two-sided invertible in the base")
    for j in range(target.dim):
        e = target.basis_element(j)
        if mul(b0, e) != mul(e, b0):
            raise ModelError("phi(p) is not central in the base")
    pm = p.matrix()
    for b in target.basis:
        emb = phi.embed_element(target.from_matrix(b)) if False else None
    # p must commute with the embedded base
    for j in range(target.dim):
        eb = phi.embed_element(target.basis_element(j))
        if mul(p, eb) != mul(eb, p):
            raise ModelError("projection does not commute with the base")
    corner = compress(source, p)
    # embedding of the base into the corner: b -> p b p
    cols = []
    for j in range(target.dim):
        eb = phi.embed_element(target.basis_element(j))
        img = mul(mul(p, eb), p).matrix()
        coords = corner.coords_of(img)
        if coords is None:
            raise ModelError("base does not embed into the corner")
        cols.append(coords)
    embed = ratlin.transpose(tuple(cols))
    if ratlin.rank(embed) != target.dim:
        raise ModelError("base embeds non-injectively into the corner")
    rows = []
    for i in range(corner.dim):
        x = source.from_matrix(corner.basis[i])
        val = mul(b0_inv, phi.apply(x))
        rows.append(val.coords)
    matrix = ratlin.transpose(tuple(rows))
    return ConditionalExpectation(corner, target, matrix, embed=embed, label="compressed")


def chain_tower(phi, chain, phi0):
    """Tower of nested corners cut out by a chain of projections with scalar
    base values.

    ``phi`` is the ambient expectation A -> B, ``chain`` the increasing
    projections, ``phi0`` the scalar functional on B.  Level 0 is the copy of
    B inside the first corner (b -> b*p_1); step maps are the corner
    compressions x -> p_j x p_j.
    """
    source = phi.source
    base = phi.target
    if not chain:
        raise ModelError("empty chain of projections")
    alphas = []
    for idx, p in enumerate(chain):
        if not is_projection(p):
            raise ModelError(f"chain element {idx} is not a projection")
        val = phi.apply(p)
        alpha = None
        unit = base.unit()
        for cand in [val.coords[i] / unit.coords[i] for i in range(base.dim) if unit.coords[i]]:
            alpha = cand
            break
        if alpha is None or val != unit.scale(alpha):
            raise ModelError(f"phi(p_{idx+1}) is not a scalar multiple of the base unit")
        if alpha == 0:
            raise ModelError(f"phi(p_{idx+1}) = 0 is not invertible")
        alphas.append(alpha)
    for i in range(len(chain) - 1):
        a, b = chain[i], chain[i + 1]
        if mul(a, b) != a or mul(b, a) != a:
            raise ModelError(f"corners are not nested at step {i+1}")
    p1 = chain[0]
    for j in range(base.dim):
        eb = phi.embed_element(base.basis_element(j))
        if mul(p1, eb) != mul(eb, p1):
            raise ModelError("the first projection does not commute with the base")
    # level 0: image of the base inside the first corner
    base_imgs = [mul(mul(p1, phi.embed_element(base.basis_element(j))), p1).matrix() for j in range(base.dim)]
    colmat = ratlin.transpose(tuple(ratlin.flatten(b) for b in base_imgs))
    if ratlin.rank(colmat) != base.dim:
        raise ModelError("base embeds non-injectively into the first corner")
    unit0 = ratlin.solve_vector(colmat, ratlin.flatten(p1.matrix()))
    if unit0 is None:
        raise ModelError("first projection is not the unit of the embedded base")
    level0 = FiniteAlgebra(base_imgs, unit_coords=unit0, label="base in corner")
    levels = [level0] + [compress(source, p) for p in chain]
    # scalar functional on level 0 through phi0
    scal = scalar_span(level0._combine(level0.unit_coords), label="scalars")
    rows0 = []
    for j in range(base.dim):
        v = phi0.apply(base.basis_element(j))
        rows0.append((phi0.target.unit().coords[0] and v.coords[0],))
    map0 = ConditionalExpectation(level0, scal, ratlin.transpose(tuple(rows0)), label="phi0")
    maps = [map0]
    # step 1: corner of p1 onto the embedded base, rescaled by 1/alpha_1
    corner1 = levels[1]
    rows = []
    for i in range(corner1.dim):
        x = source.from_matrix(corner1.basis[i])
        val = phi.apply(x).scale(Fraction(1, 1) / alphas[0])
        rows.append(val.coords)
    maps.append(
        ConditionalExpectation(corner1, level0, ratlin.transpose(tuple(rows)), label="phi1")
    )
    # higher steps: x -> p_j x p_j expressed in the lower corner
    for j in range(1, len(chain)):
        upper, lower = levels[j + 1], levels[j]
        pj = chain[j - 1].matrix()
        rows = []
        for i in range(upper.dim):
            img = ratlin.mulmm(ratlin.mulmm(pj, upper.basis[i]), pj)
            coords = lower.coords_of(img)
            if coords is None:
                raise ModelError(f"compression does not land in corner {j}")
            rows.append(coords)
        maps.append(
            ConditionalExpectation(upper, lower, ratlin.transpose(tuple(rows)), label=f"phi{j+1}")
        )
    tower = Tower(levels, maps, label="chain tower")
    # telescoped corners: (p_j ... p_N) A (p_j ... p_N) = p_j A p_j
    for j in range(len(chain)):
        q = chain[j]
        for k in range(j + 1, len(chain)):
            q = mul(q, chain[k])
        telescoped = compress(source, q)
        if not telescoped.same_span(levels[j + 1]):
            raise ModelError(f"telescoped corner differs from corner {j+1}")
    tower.alphas = list(alphas)
    tower.chain = list(chain)
    return tower


def verify_commuting_square(upper_phi, lower_phi, i_k, i_k1):
    """Exact equality i_k o upper_phi = lower_phi o i_k1 of composed maps."""
    left = upper_phi.then(i_k)
    right = i_k1.then(lower_phi)
    if left.source != right.source or not left.target.same_span(right.target):
        raise DimensionError("square maps do not compose to a common source/target")
    return left.ambient_images() == right.ambient_images()


class Ladder:
    """Two towers joined by rung expectations from the upper levels onto the
    lower ones."""

    def __init__(self, upper, lower, rungs, label=None, check=True):
        self.upper = upper
        self.lower = lower
        self.rungs = list(rungs)
        self.label = label
        if check:
            rep = self.verify_shape()
            if not rep.passed:
                raise InvariantError(
                    "ladder invariants fail: " + "; ".join(i.key for i in rep.failures())
                )

    def verify_shape(self):
        rep = VerifyReport(f"ladder {self.label or ''}".strip())
        rep.add_bool("matching depths", self.upper.depth == self.lower.depth)
        rep.add_bool("one rung per level", len(self.rungs) == len(self.upper.levels))
        if not rep.passed:
            return rep
        for j, rung in enumerate(self.rungs):
            rep.add_bool(
                f"rung {j} endpoints",
                rung.source == self.upper.levels[j] and rung.target == self.lower.levels[j],
            )
            rep.add_bool(
                f"lower level {j} inside upper level {j}",
                self.upper.levels[j].contains_algebra(self.lower.levels[j]),
            )
            upper_unit = self.upper.levels[j]._combine(self.upper.levels[j].unit_coords)
            lower_unit = self.lower.levels[j]._combine(self.lower.levels[j].unit_coords)
            rep.add_bool(f"shared unit at level {j}", upper_unit == lower_unit)
            rep.add_bool(f"rung {j} is a conditional expectation", rung.verify().passed)
        return rep


def verify_commuting_ladder(ladder):
    """Check every square i_k o E_{k+1,j} = E'_{k+1,j} o i_j for k < j."""
    rep = VerifyReport(f"commuting ladder {ladder.label or ''}".strip())
    rep.extend(ladder.verify_shape())
    if not rep.passed:
        return rep
    depth = ladder.upper.depth
    for k in range(depth):
        for j in range(k + 1, depth + 1):
            up = ladder.upper.expectation(k + 1, j)
            low = ladder.lower.expectation(k + 1, j)
            left = up.then(ladder.rungs[k])
            right = ladder.rungs[j].then(low)
            rep.add_bool(
                f"square k={k} j={j}",
                left.ambient_images() == right.ambient_images(),
            )
    return rep
