"""Finitely generated pointed submonoids of Z^n.

Saturation membership, fundamental-parallelepiped generator sets and the
disjoint coset decomposition of the saturation.  Pointedness is certified at
construction by a strictly positive linear functional, which makes exact
membership decidable by bounded search.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import (
    BoundTooSmall,
    DependentGenerators,
    DimensionMismatch,
    NotPointed,
)
from .exact_lattice import (
    ExactMatrix,
    determinant,
    smith_normal_form,
    solve_rational,
    unimodular_inverse,
)


@dataclass(frozen=True)
class AffineMonoid:
    """Monoid generated by integer vectors, with pointedness certificate."""

    dim: int
    generators: tuple
    positivity_functional: tuple

    def __post_init__(self):
        gens = []
        seen = set()
        for g in self.generators:
            g = tuple(int(x) for x in g)
            if len(g) != self.dim:
                raise DimensionMismatch("generator of wrong dimension")
            if g not in seen:
                seen.add(g)
                gens.append(g)
        phi = tuple(Fraction(x) for x in self.positivity_functional)
        if len(phi) != self.dim:
            raise DimensionMismatch("functional of wrong dimension")
        for g in gens:
            if _dot(phi, g) <= 0:
                raise NotPointed(
                    f"functional not strictly positive on generator {g}")
        object.__setattr__(self, "generators", tuple(gens))
        object.__setattr__(self, "positivity_functional", phi)

    def contains(self, v):
        """Exact membership: v a nonnegative integer combination of gens."""
        v = tuple(int(x) for x in v)
        if len(v) != self.dim:
            raise DimensionMismatch("query of wrong dimension")
        return _member(v, self.generators, self.positivity_functional)


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _member(v, gens, phi):
    if all(x == 0 for x in v):
        return True
    if _dot(phi, v) <= 0:
        return False
    g = gens[0]
    rest = gens[1:]
    cap = int(_dot(phi, v) / _dot(phi, g))
    if not rest:
        for c in range(cap + 1):
            if all(x == c * y for x, y in zip(v, g)):
                return True
        return False
    for c in range(cap + 1):
        u = tuple(x - c * y for x, y in zip(v, g))
        if _member(u, rest, phi):
            return True
    return False


def _solve_rational_system(columns, target):
    """Rational lambda with sum lambda_i * columns[i] = target, via
    elimination; returns (particular, nullspace basis) or None."""
    k = len(columns)
    n = len(target)
    aug = [[Fraction(columns[j][i]) for j in range(k)] + [Fraction(target[i])]
           for i in range(n)]
    pivots = []
    r = 0
    for col in range(k):
        piv = next((i for i in range(r, n) if aug[i][col]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][col]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(n):
            if i != r and aug[i][col]:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
    for i in range(r, n):
        if aug[i][k] != 0:
            return None
    particular = [Fraction(0)] * k
    for row, col in enumerate(pivots):
        particular[col] = aug[row][k]
    free = [j for j in range(k) if j not in pivots]
    null = []
    for f in free:
        vec = [Fraction(0)] * k
        vec[f] = Fraction(1)
        for row, col in enumerate(pivots):
            vec[col] = -aug[row][f]
        null.append(vec)
    return particular, null


def _fm_feasible(ineqs, nvars):
    """Fourier-Motzkin feasibility of {coeffs . t + const >= 0}."""
    if nvars == 0:
        return all(c >= 0 for _, c in ineqs)
    pos, neg, rest = [], [], []
    for coeffs, const in ineqs:
        a = coeffs[0]
        tail = coeffs[1:]
        if a > 0:
            pos.append(([x / a for x in tail], const / a))
        elif a < 0:
            neg.append(([x / -a for x in tail], const / -a))
        else:
            rest.append((tail, const))
    for (pt, pc) in pos:
        for (nt, nc) in neg:
            # t >= -(pt.x + pc) and t <= nt.x + nc combine
            rest.append(([n - p for p, n in zip(pt, nt)], nc + pc))
    return _fm_feasible(rest, nvars - 1)


def in_rational_cone(v, gens):
    """True iff v is a nonnegative rational combination of gens (exact)."""
    sol = _solve_rational_system(gens, v)
    if sol is None:
        return False
    particular, null = sol
    if not null:
        return all(x >= 0 for x in particular)
    # lambda = particular + N t >= 0, eliminate t by Fourier-Motzkin
    ineqs = []
    for i in range(len(particular)):
        ineqs.append(([vec[i] for vec in null], particular[i]))
    return _fm_feasible(ineqs, len(null))


def saturation_membership(v, M: AffineMonoid, box_bound):
    """True iff m*v lies in M for some 1 <= m <= box_bound.

    Raises BoundTooSmall when v passes the exact rational cone test but no
    multiplier within the bound certifies membership; a plain False means v
    is outside the saturation.
    """
    v = tuple(int(x) for x in v)
    if len(v) != M.dim:
        raise DimensionMismatch("query of wrong dimension")
    if all(x == 0 for x in v):
        return True
    if box_bound < 1:
        raise ValueError("box_bound must be positive")
    for m in range(1, box_bound + 1):
        if M.contains(tuple(m * x for x in v)):
            return True
    if in_rational_cone(v, M.generators):
        raise BoundTooSmall(
            f"{v} lies in the rational cone; no multiplier <= {box_bound}")
    return False


@dataclass(frozen=True)
class ParallelepipedBasis:
    """Lattice points of the half-open fundamental parallelepiped."""

    vectors: tuple      # the n independent generators
    points: tuple       # lambda: lattice points, lex sorted, 0 first
    index: int

    @property
    def dim(self):
        return len(self.vectors)


def parallelepiped_points(vectors) -> ParallelepipedBasis:
    """Lambda = Z^n intersect par(v_1..v_n) for independent integer vectors.

    Walks the |det| residue classes of Z^n modulo the generator lattice
    (via the Smith normal form) and maps each class to its unique
    representative with exact rational coordinates 0 <= q_i < 1.
    """
    vectors = tuple(tuple(int(x) for x in v) for v in vectors)
    n = len(vectors)
    if any(len(v) != n for v in vectors):
        raise DimensionMismatch("need n vectors in Z^n")
    W = ExactMatrix.from_rows(vectors).transpose()  # columns are generators
    d = determinant(W)
    if d == 0:
        raise DependentGenerators("parallelepiped generators are dependent")
    snf = smith_normal_form(W)
    u_inv = unimodular_inverse(snf.U)
    diag = snf.D.diagonal_entries()
    # rational inverse of W, as rows of Fractions
    w_inv = [solve_rational(W.transpose(), tuple(
        1 if j == i else 0 for j in range(n))) for i in range(n)]
    pts = []
    for r in product(*[range(di) for di in diag]):
        x = u_inv.apply(r)
        q = tuple(_dot(row, x) for row in w_inv)
        floors = tuple(qi.numerator // qi.denominator for qi in q)
        pts.append(tuple(
            xi - sum(W[i, j] * floors[j] for j in range(n))
            for i, xi in enumerate(x)))
    pts.sort()
    basis = tuple(pts)
    assert len(basis) == abs(d) and (0,) * n in basis
    return ParallelepipedBasis(vectors=vectors, points=basis, index=abs(d))


@dataclass(frozen=True)
class DecompositionReport:
    """Box-bounded verification of the disjoint coset decomposition."""

    box_bound: int
    checked_points: int
    violations: tuple

    @property
    def ok(self):
        return not self.violations


def default_box_bound(basis: ParallelepipedBasis):
    coord_max = max((abs(x) for v in basis.vectors for x in v), default=1)
    return 4 * max(basis.index, coord_max)


def verify_disjoint_decomposition(basis: ParallelepipedBasis,
                                  M: AffineMonoid,
                                  box_bound=None) -> DecompositionReport:
    """Check every saturation point of [0, box)^n lies in exactly one coset.

    The monoid must be simplicial, generated by the parallelepiped vectors.
    Violations list (point, coset_count) pairs; an empty list certifies the
    decomposition on the box.
    """
    if set(M.generators) != set(basis.vectors):
        raise DependentGenerators(
            "monoid must be generated by the parallelepiped vectors")
    if box_bound is None:
        box_bound = default_box_bound(basis)
    n = basis.dim
    checked = 0
    violations = []
    for w in product(range(box_bound), repeat=n):
        if not in_rational_cone(w, basis.vectors):
            continue
        checked += 1
        hits = sum(
            1 for x in basis.points
            if M.contains(tuple(a - b for a, b in zip(w, x)))
        )
        if hits != 1:
            violations.append((w, hits))
    return DecompositionReport(box_bound=box_bound, checked_points=checked,
                               violations=tuple(violations))
