"""Block-structured monomial extension data.

A monomial extension records how one set of regular parameters x_1..x_n is
expressed as unit-times-monomial in another set y_1..y_n, together with the
block structure of the valuation, the value assignment to the y variables
and formal unit markers.  The distinguished T-indices are the first s_i
positions of each block; the exponent matrix must follow a rigid zero
pattern: a T-row of block a may only touch T-columns of blocks >= a, a
non-T row is its own variable times a monomial in strictly later T-columns.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidExtension, NonPositiveValue, SingularBlock
from .exact_lattice import ExactMatrix, determinant
from .ordered_groups import GroupStructure, isolated_level


@dataclass(frozen=True)
class BlockStructure:
    """Block count r with per-block sizes t_i and rational ranks s_i."""

    r: int
    t: tuple
    s: tuple

    def __post_init__(self):
        t = tuple(int(x) for x in self.t)
        s = tuple(int(x) for x in self.s)
        if self.r < 1 or len(t) != self.r or len(s) != self.r:
            raise InvalidExtension("need r >= 1 with r block sizes and ranks")
        for ti, si in zip(t, s):
            if not 1 <= si <= ti:
                raise InvalidExtension("each block needs 1 <= s_i <= t_i")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "s", s)

    @property
    def n(self):
        return sum(self.t)

    def offset(self, block):
        """Index of the first variable of the given block (0-based)."""
        return sum(self.t[:block])

    def block_of(self, index):
        """Block number (0-based) containing variable index."""
        pos = 0
        for b, ti in enumerate(self.t):
            if pos <= index < pos + ti:
                return b
            pos += ti
        raise IndexError(index)

    def t_indices(self):
        """The T-set: first s_i indices of each block, ascending."""
        out = []
        for b in range(self.r):
            off = self.offset(b)
            out.extend(range(off, off + self.s[b]))
        return tuple(out)

    def is_t_index(self, index):
        b = self.block_of(index)
        return index - self.offset(b) < self.s[b]


@dataclass(frozen=True)
class Violation:
    kind: str
    location: tuple
    message: str


@dataclass(frozen=True)
class MonomialExtension:
    """Exponent matrix A with block data, unit markers and y-values.

    Row i encodes x_i = unit_i * prod_j y_j^{A[i][j]}.  Unit markers are
    formal: "1" denotes the trivial unit (residue 1, value 0).
    """

    blocks: BlockStructure
    A: ExactMatrix
    unit_markers: tuple
    y_values: tuple

    def __post_init__(self):
        n = self.blocks.n
        if self.A.rows != n or self.A.cols != n:
            raise InvalidExtension("exponent matrix must be n x n")
        markers = tuple(str(m) for m in self.unit_markers)
        if len(markers) != n:
            raise InvalidExtension("need one unit marker per row")
        values = tuple(self.y_values)
        if len(values) != n:
            raise InvalidExtension("need one value per y variable")
        structure = values[0].structure
        for v in values:
            if v.structure != structure:
                raise InvalidExtension("y-values in different ambient groups")
        if structure.rank != self.blocks.r:
            raise InvalidExtension(
                "ambient group rank must equal the block count")
        object.__setattr__(self, "unit_markers", markers)
        object.__setattr__(self, "y_values", values)

    @property
    def structure(self) -> GroupStructure:
        return self.y_values[0].structure

    def t_submatrix(self):
        T = self.blocks.t_indices()
        return ExactMatrix.from_rows(
            [[self.A[i, j] for j in T] for i in T])

    def g_block(self, block):
        off = self.blocks.offset(block)
        s = self.blocks.s[block]
        return ExactMatrix.from_rows(
            [[self.A[off + u, off + v] for v in range(s)] for u in range(s)])


def validate(me: MonomialExtension):
    """All violations of the required shape; an empty list means valid."""
    bs = me.blocks
    n = bs.n
    out = []
    tset = set(bs.t_indices())
    for i in range(n):
        bi = bs.block_of(i)
        i_is_t = i in tset
        for j in range(n):
            a = me.A[i, j]
            if a == 0:
                continue
            if a < 0:
                out.append(Violation(
                    "negative_exponent", (i, j),
                    f"exponent a[{i}][{j}] = {a} is negative"))
                continue
            if j in tset:
                bj = bs.block_of(j)
                if i_is_t:
                    ok = bj >= bi
                else:
                    ok = bj > bi or (j == i)
            else:
                ok = j == i and a == 1
            if not ok:
                out.append(Violation(
                    "zero_pattern", (i, j),
                    f"exponent a[{i}][{j}] = {a} breaks the block pattern"))
        if not i_is_t and me.A[i, i] != 1:
            out.append(Violation(
                "zero_pattern", (i, i),
                f"non-T row {i} must carry its own variable with exponent 1"))
    for b in range(bs.r):
        if determinant(me.g_block(b)) == 0:
            out.append(Violation(
                "singular_block", (b,),
                f"diagonal exponent block of block {b} is singular"))
    # T y-values rationally independent
    tlist = bs.t_indices()
    vecs = [me.y_values[j].flat() for j in tlist]
    if _rational_rank(vecs) != len(tlist):
        out.append(Violation(
            "dependent_values", tuple(tlist),
            "T-indexed y-values are rationally dependent"))
    for j in range(n):
        v = me.y_values[j]
        if v.sign() <= 0:
            out.append(Violation(
                "nonpositive_value", (j,),
                f"value of y_{j} is not strictly positive"))
        elif isolated_level(v) != bs.block_of(j):
            out.append(Violation(
                "misplaced_value", (j,),
                f"value of y_{j} lives at isolated level {isolated_level(v)},"
                f" expected {bs.block_of(j)}"))
    return out


def _rational_rank(vecs):
    from fractions import Fraction
    rows = [list(map(Fraction, v)) for v in vecs]
    rank = 0
    cols = len(rows[0]) if rows else 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
        rank += 1
    return rank


def is_valid(me: MonomialExtension):
    return not validate(me)


@dataclass(frozen=True)
class SSMForm:
    """A valid monomial extension whose non-T rows are trivial unit rows."""

    extension: MonomialExtension

    def __post_init__(self):
        me = self.extension
        problems = validate(me)
        if problems:
            raise InvalidExtension(
                "; ".join(v.message for v in problems))
        bs = me.blocks
        tset = set(bs.t_indices())
        for m in range(bs.n):
            if m in tset:
                continue
            row = me.A.row(m)
            unit_row = tuple(1 if j == m else 0 for j in range(bs.n))
            if row != unit_row or me.unit_markers[m] != "1":
                raise InvalidExtension(
                    f"row {m} is not in strong monomial form")


def induced_x_values(me: MonomialExtension):
    """Values of the x monomials: nu(x_i) = sum_j a_ij * nu*(y_j)."""
    out = []
    for i in range(me.blocks.n):
        v = me.structure.zero()
        for j in range(me.blocks.n):
            a = me.A[i, j]
            if a:
                v = v + me.y_values[j].scale(a)
        if v.sign() <= 0:
            raise NonPositiveValue(f"nu(x_{i}) is not strictly positive")
        out.append(v)
    return tuple(out)


@dataclass(frozen=True)
class AdjointRelations:
    """e = |det A_T| and B with A_T * B = e * I.

    Row i of B gives the Laurent exponents expressing y_i^e as a monomial in
    the T-indexed x variables (up to a formal unit); entries may be negative.
    """

    e: int
    B: ExactMatrix
    t_indices: tuple


def adjoint_relations(me: MonomialExtension) -> AdjointRelations:
    AT = me.t_submatrix()
    d = determinant(AT)
    if d == 0:
        raise SingularBlock("T-submatrix is singular")
    e = abs(d)
    sign = 1 if d > 0 else -1
    k = AT.rows
    # sign-adjusted adjugate via cofactors
    rows = []
    for i in range(k):
        row = []
        for j in range(k):
            minor = ExactMatrix.from_rows(
                [[AT[a, b] for b in range(k) if b != i]
                 for a in range(k) if a != j])
            cof = (-1) ** (i + j) * (determinant(minor) if k > 1 else 1)
            row.append(sign * cof)
        rows.append(row)
    B = ExactMatrix.from_rows(rows)
    # B * A_T = e * identity makes prod_j x_j^{B_ij} collapse to y_i^e
    prod = B.matmul(AT)
    if prod.entries != ExactMatrix.diagonal((e,) * k).entries:
        raise SingularBlock("adjoint identity failed")
    return AdjointRelations(e=e, B=B, t_indices=me.blocks.t_indices())
