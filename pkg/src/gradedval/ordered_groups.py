"""Finitely generated totally ordered abelian groups of finite rank.

Groups are presented as block groups ordered lexicographically across blocks
(earlier block dominates).  Each archimedean block carries a weight basis,
either {1} or {1, sqrt(d)} for a positive non-square integer d, so sign
determination inside a block is an exact case analysis; rational rank >= 3
inside a single block is not supported.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    AmbientMismatch,
    InfiniteIndex,
    NotASubgroup,
    NotInGroup,
    UnsupportedBlockRank,
)
from .exact_lattice import (
    ExactMatrix,
    hermite_row_basis,
    smith_normal_form,
)


@dataclass(frozen=True)
class Block:
    """Weight basis of one archimedean block: {1} or {1, sqrt(quad)}."""

    quad: int | None = None

    def __post_init__(self):
        if self.quad is not None:
            q = int(self.quad)
            if q <= 1 or math.isqrt(q) ** 2 == q:
                raise UnsupportedBlockRank(
                    f"sqrt({q}) is not a quadratic irrational weight")
            object.__setattr__(self, "quad", q)

    @property
    def rational_rank(self):
        return 1 if self.quad is None else 2

    @property
    def weights(self):
        if self.quad is None:
            return ("1",)
        return ("1", f"sqrt({self.quad})")


@dataclass(frozen=True)
class GroupStructure:
    """Ambient block/rank data: the lex order is fixed by the block list."""

    blocks: tuple

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(self.blocks))

    @property
    def rank(self):
        return len(self.blocks)

    @property
    def rational_rank(self):
        return sum(b.rational_rank for b in self.blocks)

    def zero(self):
        return GroupElement(self, tuple(
            (Fraction(0),) * b.rational_rank for b in self.blocks))

    def element(self, coords):
        return GroupElement(self, tuple(
            tuple(Fraction(c) for c in block) for block in coords))


def _block_sign(block: Block, comp):
    """Exact sign of sum(comp[i] * weight[i]) within one block."""
    if block.quad is None:
        p = comp[0]
        return (p > 0) - (p < 0)
    p, q = comp
    if p == 0 and q == 0:
        return 0
    if p >= 0 and q >= 0:
        return 1
    if p <= 0 and q <= 0:
        return -1
    s = 1 if p > 0 else -1
    t = p * p - block.quad * q * q
    # t = 0 would force sqrt(quad) rational; quad is a non-square
    return s if t > 0 else -s


@dataclass(frozen=True)
class GroupElement:
    """Element of a block group: per-block coordinate vectors of rationals."""

    structure: GroupStructure
    coords: tuple

    def __post_init__(self):
        blocks = self.structure.blocks
        if len(self.coords) != len(blocks):
            raise AmbientMismatch("coordinate blocks != structure blocks")
        fixed = []
        for block, comp in zip(blocks, self.coords):
            comp = tuple(Fraction(c) for c in comp)
            if len(comp) != block.rational_rank:
                raise AmbientMismatch("component length != block rank")
            fixed.append(comp)
        object.__setattr__(self, "coords", tuple(fixed))

    def sign(self):
        for block, comp in zip(self.structure.blocks, self.coords):
            s = _block_sign(block, comp)
            if s:
                return s
        return 0

    def is_zero(self):
        return all(c == 0 for comp in self.coords for c in comp)

    def flat(self):
        """Coordinates concatenated across blocks, as a rational vector."""
        return tuple(c for comp in self.coords for c in comp)

    def _check_same(self, other):
        if self.structure != other.structure:
            raise AmbientMismatch("elements of different ambient groups")

    def __add__(self, other):
        self._check_same(other)
        return GroupElement(self.structure, tuple(
            tuple(a + b for a, b in zip(x, y))
            for x, y in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._check_same(other)
        return GroupElement(self.structure, tuple(
            tuple(a - b for a, b in zip(x, y))
            for x, y in zip(self.coords, other.coords)))

    def __neg__(self):
        return GroupElement(self.structure, tuple(
            tuple(-a for a in x) for x in self.coords))

    def scale(self, k):
        k = Fraction(k)
        return GroupElement(self.structure, tuple(
            tuple(k * a for a in x) for x in self.coords))

    def __lt__(self, other):
        return lex_compare(self, other) < 0

    def __le__(self, other):
        return lex_compare(self, other) <= 0

    def __gt__(self, other):
        return lex_compare(self, other) > 0

    def __ge__(self, other):
        return lex_compare(self, other) >= 0


def lex_compare(a: GroupElement, b: GroupElement):
    """Exact three-way comparison; earlier blocks dominate."""
    a._check_same(b)
    return (a - b).sign()


def isolated_level(gamma: GroupElement, chain=None):
    """Largest i such that the first i blocks of gamma vanish (r for zero)."""
    if chain is not None and chain.structure != gamma.structure:
        raise AmbientMismatch("chain over a different ambient group")
    level = 0
    for comp in gamma.coords:
        if any(c != 0 for c in comp):
            break
        level += 1
    return level


@dataclass(frozen=True)
class IsolatedChain:
    """The chain of convex subgroups of a block group.

    Level i is the subgroup of elements whose first i leading blocks vanish;
    level 0 is the whole group and level rank is zero.
    """

    structure: GroupStructure

    @property
    def length(self):
        return self.structure.rank

    def contains(self, gamma, level):
        if not 0 <= level <= self.length:
            raise IndexError("level out of range")
        return isolated_level(gamma) >= level


def _lcm(values):
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v)
    return out


def _row_space_solve(rows, target):
    """Rational x with x * rows = target, or None.  rows: integer tuples."""
    if not rows:
        return () if all(t == 0 for t in target) else None
    m = len(target)
    k = len(rows)
    # Gaussian elimination on the transposed system rows^T x^T = target^T
    aug = [[Fraction(rows[j][c]) for j in range(k)] + [Fraction(target[c])]
           for c in range(m)]
    pivots = []
    r = 0
    for col in range(k):
        piv = next((i for i in range(r, m) if aug[i][col]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][col]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][col]:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
    for i in range(r, m):
        if aug[i][k] != 0:
            return None
    x = [Fraction(0)] * k
    for row_idx, col in enumerate(pivots):
        x[col] = aug[row_idx][k]
    return tuple(x)


@dataclass(frozen=True)
class ValueGroup:
    """Finitely generated subgroup of a block group, given by generators."""

    structure: GroupStructure
    generators: tuple

    def __post_init__(self):
        gens = tuple(self.generators)
        for g in gens:
            if g.structure != self.structure:
                raise AmbientMismatch("generator outside the ambient group")
        object.__setattr__(self, "generators", gens)

    def _scaled_lattice(self):
        """(scale L, basis rows) so the group is (1/L) * row-lattice(basis)."""
        m = self.structure.rational_rank
        vecs = [g.flat() for g in self.generators]
        denoms = [c.denominator for v in vecs for c in v] or [1]
        L = _lcm(denoms)
        rows = [tuple(int(c * L) for c in v) for v in vecs]
        rows = [r for r in rows if any(r)]
        if not rows:
            return L, ()
        return L, hermite_row_basis(rows)

    @property
    def rational_rank(self):
        return len(self._scaled_lattice()[1])

    def coordinates(self, gamma: GroupElement):
        """Integer coordinates of gamma in the lattice basis, else None."""
        if gamma.structure != self.structure:
            raise AmbientMismatch("element outside the ambient group")
        L, basis = self._scaled_lattice()
        target = tuple(c * L for c in gamma.flat())
        x = _row_space_solve(basis, target)
        if x is None or any(c.denominator != 1 for c in x):
            return None
        return tuple(int(c) for c in x)

    def contains(self, gamma: GroupElement):
        return self.coordinates(gamma) is not None

    def basis_elements(self):
        """Group elements forming a lattice basis of this subgroup."""
        L, basis = self._scaled_lattice()
        out = []
        for row in basis:
            flat = [Fraction(x, L) for x in row]
            out.append(_element_from_flat(self.structure, flat))
        return tuple(out)


def _element_from_flat(structure, flat):
    coords = []
    pos = 0
    for block in structure.blocks:
        coords.append(tuple(flat[pos:pos + block.rational_rank]))
        pos += block.rational_rank
    return GroupElement(structure, tuple(coords))


def _inclusion_matrix(big: ValueGroup, small: ValueGroup):
    """Integer matrix of small's lattice basis in big's lattice basis."""
    if big.structure != small.structure:
        raise AmbientMismatch("groups over different ambient structures")
    Lb, basis_b = big._scaled_lattice()
    rows = []
    for g in small.generators:
        if big.coordinates(g) is None:
            raise NotASubgroup("small generator outside big group")
    small_basis = small.basis_elements()
    if len(small_basis) != len(basis_b):
        raise InfiniteIndex("rational spans differ")
    for el in small_basis:
        coords = big.coordinates(el)
        if coords is None:
            raise NotASubgroup("small basis vector outside big group")
        rows.append(coords)
    return ExactMatrix.from_rows(rows)


def subgroup_index(big: ValueGroup, small: ValueGroup):
    """e = [big : small] for subgroups spanning the same rational space."""
    C = _inclusion_matrix(big, small)
    from .exact_lattice import determinant
    d = determinant(C)
    if d == 0:
        raise InfiniteIndex("small group has lower rank")
    return abs(d)


def quotient_invariant_factors(big: ValueGroup, small: ValueGroup):
    """Invariant factors (> 1) of big/small."""
    C = _inclusion_matrix(big, small)
    snf = smith_normal_form(C.transpose())
    return tuple(d for d in snf.D.diagonal_entries() if d > 1)


def coset_label(gamma: GroupElement, big: ValueGroup, small: ValueGroup):
    """Canonical representative of gamma + small inside big.

    Coordinates in big's canonical lattice basis are reduced through the
    Hermite basis of small, giving the unique representative whose entry at
    each pivot column lies in [0, pivot).  Two elements receive equal labels
    iff their difference lies in small.
    """
    C = _inclusion_matrix(big, small)
    v = big.coordinates(gamma)
    if v is None:
        raise NotInGroup("element outside the big group")
    H = hermite_row_basis(C.entries)
    if len(H) < len(v):
        raise InfiniteIndex("inclusion is not finite index")
    v = list(v)
    for row in H:
        p = next(j for j, x in enumerate(row) if x)
        q = v[p] // row[p]
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    basis = big.basis_elements()
    rep = big.structure.zero()
    for c, b in zip(v, basis):
        rep = rep + b.scale(c)
    return rep
