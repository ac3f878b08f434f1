"""Exact integer linear algebra.

Smith normal form, determinants, lattice indices, quotient invariant factors
and integer linear solving, all over arbitrary-precision integers.  Floating
point never enters; every operation is a pure function of immutable inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionMismatch, SingularLattice


@dataclass(frozen=True)
class ExactMatrix:
    """Immutable integer matrix; entries are a tuple of row tuples."""

    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.entries)
        if rows and any(len(row) != len(rows[0]) for row in rows):
            raise DimensionMismatch("ragged entry grid")
        object.__setattr__(self, "entries", rows)

    @property
    def rows(self):
        return len(self.entries)

    @property
    def cols(self):
        return len(self.entries[0]) if self.entries else 0

    @classmethod
    def from_rows(cls, rows):
        return cls(tuple(tuple(row) for row in rows))

    @classmethod
    def identity(cls, n):
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n))
                         for i in range(n)))

    @classmethod
    def diagonal(cls, diag):
        n = len(diag)
        return cls(tuple(tuple(diag[i] if i == j else 0 for j in range(n))
                         for i in range(n)))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i):
        return self.entries[i]

    def column(self, j):
        return tuple(row[j] for row in self.entries)

    def transpose(self):
        return ExactMatrix(tuple(zip(*self.entries))) if self.entries else self

    def is_square(self):
        return self.rows == self.cols

    def matmul(self, other):
        if self.cols != other.rows:
            raise DimensionMismatch(
                f"{self.rows}x{self.cols} times {other.rows}x{other.cols}")
        ot = other.transpose().entries
        return ExactMatrix(tuple(
            tuple(sum(a * b for a, b in zip(row, col)) for col in ot)
            for row in self.entries))

    def apply(self, vector):
        """Matrix-vector product over the integers (or Fractions)."""
        if self.cols != len(vector):
            raise DimensionMismatch("vector length != column count")
        return tuple(sum(a * b for a, b in zip(row, vector))
                     for row in self.entries)

    def diagonal_entries(self):
        return tuple(self.entries[i][i] for i in range(min(self.rows, self.cols)))


@dataclass(frozen=True)
class SmithDecomposition:
    """U*A*V = D with U, V unimodular and D the Smith normal form of A."""

    U: ExactMatrix
    D: ExactMatrix
    V: ExactMatrix


def determinant(A: ExactMatrix):
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if not A.is_square():
        raise DimensionMismatch("determinant of non-square matrix")
    n = A.rows
    if n == 0:
        return 1
    M = [list(row) for row in A.entries]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if pivot is None:
                return 0
            M[k], M[pivot] = M[pivot], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def determinant_cofactor(A: ExactMatrix):
    """Cofactor-expansion determinant; the independent oracle for tests."""
    if not A.is_square():
        raise DimensionMismatch("determinant of non-square matrix")
    rows = A.entries

    def det(rs, cols):
        if len(cols) == 1:
            return rs[0][cols[0]]
        total = 0
        for pos, c in enumerate(cols):
            if rs[0][c] == 0:
                continue
            rest = cols[:pos] + cols[pos + 1:]
            total += (-1) ** pos * rs[0][c] * det(rs[1:], rest)
        return total

    return det(rows, tuple(range(A.rows))) if A.rows else 1


def is_unimodular(A: ExactMatrix):
    return A.is_square() and determinant(A) in (1, -1)


def _swap_rows(M, U, i, j):
    M[i], M[j] = M[j], M[i]
    U[i], U[j] = U[j], U[i]


def _swap_cols(M, V, i, j):
    for row in M:
        row[i], row[j] = row[j], row[i]
    for row in V:
        row[i], row[j] = row[j], row[i]


def _add_row(M, U, dst, src, factor):
    M[dst] = [a + factor * b for a, b in zip(M[dst], M[src])]
    U[dst] = [a + factor * b for a, b in zip(U[dst], U[src])]


def _add_col(M, V, dst, src, factor):
    for row in M:
        row[dst] += factor * row[src]
    for row in V:
        row[dst] += factor * row[src]


def _extgcd(x, y):
    """(g, a, b) with a*x + b*y = g = gcd(x, y) >= 0."""
    a0, a1 = 1, 0
    b0, b1 = 0, 1
    while y:
        q = x // y
        x, y = y, x - q * y
        a0, a1 = a1, a0 - q * a1
        b0, b1 = b1, b0 - q * b1
    if x < 0:
        x, a0, b0 = -x, -a0, -b0
    return x, a0, b0


def smith_normal_form(A: ExactMatrix) -> SmithDecomposition:
    """Smith normal form with unimodular transforms.

    Pivoting picks the minimal-absolute-value nonzero entry of the working
    submatrix, scanning left-to-right/top-to-bottom on ties, so the transform
    matrices are reproducible.  Row and column clearing uses 2x2 unimodular
    gcd transforms, which keeps intermediate entries small.  Diagonal
    entries are normalized nonnegative and satisfy the divisibility chain
    d_1 | d_2 | ... .
    """
    m, n = A.rows, A.cols
    M = [list(row) for row in A.entries]
    U = [list(row) for row in ExactMatrix.identity(m).entries]
    V = [list(row) for row in ExactMatrix.identity(n).entries]

    t = 0
    while t < min(m, n):
        # minimal |entry| nonzero pivot in the trailing submatrix
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                v = abs(M[i][j])
                if v and (pivot is None or v < pivot[0]):
                    pivot = (v, i, j)
        if pivot is None:
            break
        _, pi, pj = pivot
        if pi != t:
            _swap_rows(M, U, t, pi)
        if pj != t:
            _swap_cols(M, V, t, pj)

        # clear row/column t; each gcd transform replaces the pivot by a
        # divisor, so spoiled entries re-clear in finitely many passes
        while True:
            for i in range(t + 1, m):
                if M[i][t] == 0:
                    continue
                if M[i][t] % M[t][t] == 0:
                    _add_row(M, U, i, t, -(M[i][t] // M[t][t]))
                    continue
                g, a, b = _extgcd(M[t][t], M[i][t])
                p, q = M[t][t] // g, M[i][t] // g
                rt, ri = M[t], M[i]
                M[t] = [a * x + b * y for x, y in zip(rt, ri)]
                M[i] = [p * y - q * x for x, y in zip(rt, ri)]
                ut, ui = U[t], U[i]
                U[t] = [a * x + b * y for x, y in zip(ut, ui)]
                U[i] = [p * y - q * x for x, y in zip(ut, ui)]
            spoiled = False
            for j in range(t + 1, n):
                if M[t][j] == 0:
                    continue
                if M[t][j] % M[t][t] == 0:
                    _add_col(M, V, j, t, -(M[t][j] // M[t][t]))
                    continue
                g, a, b = _extgcd(M[t][t], M[t][j])
                p, q = M[t][t] // g, M[t][j] // g
                for row in M:
                    ct, cj = row[t], row[j]
                    row[t] = a * ct + b * cj
                    row[j] = p * cj - q * ct
                for row in V:
                    ct, cj = row[t], row[j]
                    row[t] = a * ct + b * cj
                    row[j] = p * cj - q * ct
                spoiled = True
            if not spoiled and all(M[i][t] == 0 for i in range(t + 1, m)):
                break

        # enforce divisibility of the remaining submatrix by the pivot
        offender = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if M[i][j] % M[t][t]:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            _add_row(M, U, t, offender, 1)
            continue

        if M[t][t] < 0:
            M[t] = [-x for x in M[t]]
            U[t] = [-x for x in U[t]]
        t += 1

    return SmithDecomposition(
        U=ExactMatrix.from_rows(U),
        D=ExactMatrix.from_rows(M),
        V=ExactMatrix.from_rows(V),
    )


def hermite_row_basis(rows):
    """Canonical basis of the row lattice (row-style Hermite normal form).

    Returns echelon rows with positive pivots; entries above each pivot are
    reduced into [0, pivot).  The result depends only on the lattice, not on
    the presentation, so it is safe to use wherever a canonical basis or
    canonical coset representative is needed.
    """
    work = [list(r) for r in rows if any(r)]
    n = len(rows[0]) if rows else 0
    basis = []
    for col in range(n):
        live = [r for r in work if r[col]]
        if not live:
            continue
        pivot_row = live[0]
        for other in live[1:]:
            g, a, b = _extgcd(pivot_row[col], other[col])
            p, q = pivot_row[col] // g, other[col] // g
            pivot_row[:], other[:] = (
                [a * x + b * y for x, y in zip(pivot_row, other)],
                [p * y - q * x for x, y in zip(pivot_row, other)])
        if pivot_row[col] < 0:
            pivot_row[:] = [-x for x in pivot_row]
        basis.append(pivot_row)
        work = [r for r in work if r is not pivot_row and any(r)]
    # reduce entries above each pivot into [0, pivot)
    for k in range(len(basis) - 1, -1, -1):
        col = next(j for j, x in enumerate(basis[k]) if x)
        for j in range(k):
            q = basis[j][col] // basis[k][col]
            if q:
                basis[j] = [a - q * b for a, b in zip(basis[j], basis[k])]
    return tuple(tuple(r) for r in basis)


def lattice_index(A: ExactMatrix):
    """[Z^n : A Z^n] = |det A| for a nonsingular square integer matrix."""
    if not A.is_square():
        raise DimensionMismatch("lattice index needs a square matrix")
    d = determinant(A)
    if d == 0:
        raise SingularLattice("column lattice has infinite index")
    return abs(d)


def quotient_invariants(A: ExactMatrix):
    """Invariant factors (> 1) of Z^n / A Z^n; their product is |det A|."""
    lattice_index(A)  # raises SingularLattice when det = 0
    diag = smith_normal_form(A).D.diagonal_entries()
    return tuple(d for d in diag if d > 1)


def unimodular_inverse(A: ExactMatrix) -> ExactMatrix:
    """Exact integer inverse of a unimodular matrix."""
    d = determinant(A)
    if d not in (1, -1):
        raise SingularLattice("matrix is not unimodular")
    n = A.rows
    sol = []
    for j in range(n):
        e = tuple(1 if i == j else 0 for i in range(n))
        col = solve_rational(A, e)
        sol.append([int(x) for x in col])
    return ExactMatrix.from_rows(sol).transpose()


def solve_rational(A: ExactMatrix, b):
    """Unique rational solution of A x = b for nonsingular square A."""
    if not A.is_square() or A.rows != len(b):
        raise DimensionMismatch("square system required")
    n = A.rows
    M = [[Fraction(x) for x in row] + [Fraction(v)]
         for row, v in zip(A.entries, b)]
    for k in range(n):
        pivot = next((i for i in range(k, n) if M[i][k]), None)
        if pivot is None:
            raise SingularLattice("singular system")
        M[k], M[pivot] = M[pivot], M[k]
        inv = 1 / M[k][k]
        M[k] = [x * inv for x in M[k]]
        for i in range(n):
            if i != k and M[i][k]:
                f = M[i][k]
                M[i] = [x - f * y for x, y in zip(M[i], M[k])]
    return tuple(M[i][n] for i in range(n))


def solve_integer(A: ExactMatrix, b):
    """Some integer solution of A x = b, or None when none exists.

    Uses the Smith change of basis: with U A V = D the system becomes
    D y = U b and x = V y.
    """
    if A.rows != len(b):
        raise DimensionMismatch("right-hand side length != row count")
    snf = smith_normal_form(A)
    c = snf.U.apply(tuple(int(v) for v in b))
    diag = snf.D.diagonal_entries()
    y = [0] * A.cols
    for i in range(A.rows):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if c[i] != 0:
                return None
        else:
            if c[i] % d:
                return None
            y[i] = c[i] // d
    x = snf.V.apply(tuple(y))
    if A.apply(x) != tuple(int(v) for v in b):
        return None
    return x
