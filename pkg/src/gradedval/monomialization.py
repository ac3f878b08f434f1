"""Rewriting monomial extensions into strong monomial form.

The engine normalizes an extension whose non-T rows are a variable times a
monomial in strictly-later-block T-variables.  Each offending row is fixed
by a burst of column transforms (substituting y_m = y'_m * y_c for later
T-columns c), one compensating row transform on the x side, and a formal
unit rescale; the trace of steps replays deterministically.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import (
    HypothesisA6Failed,
    HypothesisA7Failed,
    NoNonnegativeLift,
    NotAlongValuation,
    NotTheorem48Form,
)
from .exact_lattice import (
    ExactMatrix,
    determinant,
    quotient_invariants,
    smith_normal_form,
    solve_integer,
    solve_rational,
)
from .affine_monoids import parallelepiped_points
from .monomial_extension import (
    MonomialExtension,
    SSMForm,
    adjoint_relations,
    induced_x_values,
    validate,
)
from .ordered_groups import (
    ValueGroup,
    coset_label,
    quotient_invariant_factors,
    subgroup_index,
)


@dataclass(frozen=True)
class TransformStep:
    """One replayable rewrite step.

    kind "s":       substitute y_row = y'_row * y_target (column transform);
                    blocks = (i, j, k, l) in 1-based block coordinates.
    kind "r":       divide x_row by prod of x_col^exp for (col, exp) pairs.
    kind "rescale": absorb the accumulated unit into y_row.
    """

    kind: str
    row: int
    target: int | None = None
    blocks: tuple | None = None
    exponents: tuple = ()


def apply_s_transform(me: MonomialExtension, step: TransformStep):
    bs = me.blocks
    m, c = step.row, step.target
    bi, bk = bs.block_of(m), bs.block_of(c)
    if bi >= bk:
        raise NotAlongValuation(
            f"target column {c} must lie in a strictly later block than {m}")
    if not bs.is_t_index(c):
        raise NotTheorem48Form(f"target column {c} is not a T-index")
    new_value = me.y_values[m] - me.y_values[c]
    if new_value.sign() <= 0:
        raise NotAlongValuation(
            f"value of y'_{m} would not be strictly positive")
    rows = [list(r) for r in me.A.entries]
    for row in rows:
        row[c] += row[m]
    values = list(me.y_values)
    values[m] = new_value
    return MonomialExtension(
        blocks=bs,
        A=ExactMatrix.from_rows(rows),
        unit_markers=me.unit_markers,
        y_values=tuple(values),
    )


def apply_r_transform(me: MonomialExtension, step: TransformStep):
    rows = [list(r) for r in me.A.entries]
    m = step.row
    for col_row, exp in step.exponents:
        rows[m] = [a - exp * b for a, b in zip(rows[m], rows[col_row])]
    markers = list(me.unit_markers)
    markers[m] = "gamma*delta" if step.exponents else markers[m]
    return MonomialExtension(
        blocks=me.blocks,
        A=ExactMatrix.from_rows(rows),
        unit_markers=tuple(markers),
        y_values=me.y_values,
    )


def apply_rescale(me: MonomialExtension, step: TransformStep):
    markers = list(me.unit_markers)
    markers[step.row] = "1"
    return MonomialExtension(
        blocks=me.blocks,
        A=me.A,
        unit_markers=tuple(markers),
        y_values=me.y_values,
    )


def apply_step(me: MonomialExtension, step: TransformStep):
    if step.kind == "s":
        return apply_s_transform(me, step)
    if step.kind == "r":
        return apply_r_transform(me, step)
    if step.kind == "rescale":
        return apply_rescale(me, step)
    raise ValueError(f"unknown step kind {step.kind!r}")


def replay(initial: MonomialExtension, steps):
    me = initial
    for step in steps:
        me = apply_step(me, step)
    return me


@dataclass(frozen=True)
class MonomializationTrace:
    initial: MonomialExtension
    steps: tuple
    final: SSMForm


def _is_theorem48_row(me, m):
    """Non-T row: own variable once plus later-block T-exponents only."""
    bs = me.blocks
    if me.A[m, m] != 1:
        return False
    for j in range(bs.n):
        if j == m:
            continue
        if me.A[m, j] and not (bs.is_t_index(j)
                               and bs.block_of(j) > bs.block_of(m)):
            return False
    return True


def _graded_vectors(length, bound):
    """Nonnegative integer vectors ordered by total then lexicographically."""
    for total in range(bound * length + 1):
        for v in _compositions(total, length, bound):
            yield v


def _compositions(total, length, bound):
    if length == 1:
        if total <= bound:
            yield (total,)
        return
    for first in range(min(total, bound) + 1):
        for rest in _compositions(total - first, length - 1, bound):
            yield (first,) + rest


def strong_monomialize(me: MonomialExtension) -> MonomializationTrace:
    """Normalize a Theorem-4.8-shaped extension to strong monomial form.

    Offending non-T rows are processed in increasing order.  For row m in
    block i with residual exponents h on later T-columns, the smallest
    (graded-lex) nonnegative b is chosen such that h + b lifts to
    nonnegative integer exponents c on the later T-rows; b is realized by
    column substitutions, c by one row transform, and a final rescale
    restores the trivial unit marker.
    """
    problems = validate(me)
    if problems:
        raise NotTheorem48Form("; ".join(v.message for v in problems))
    bs = me.blocks
    tset = set(bs.t_indices())
    for m in range(bs.n):
        if m not in tset and not _is_theorem48_row(me, m):
            raise NotTheorem48Form(f"row {m} is not in Theorem-4.8 shape")

    initial = me
    steps = []
    max_entry = max((abs(x) for row in me.A.entries for x in row), default=1)
    bound = 8 * max(max_entry, 1)

    for m in range(bs.n):
        if m in tset:
            continue
        unit_row = tuple(1 if j == m else 0 for j in range(bs.n))
        if me.A.row(m) == unit_row:
            continue
        bi = bs.block_of(m)
        later_t = [j for j in bs.t_indices() if bs.block_of(j) > bi]
        h = [me.A[m, j] for j in later_t]
        sub = ExactMatrix.from_rows(
            [[me.A[i, j] for j in later_t] for i in later_t])
        choice = None
        for b in _graded_vectors(len(later_t), bound):
            rhs = tuple(hj + bj for hj, bj in zip(h, b))
            c = solve_rational(sub.transpose(), rhs)
            if all(x.denominator == 1 and x >= 0 for x in c):
                choice = (b, tuple(int(x) for x in c))
                break
        if choice is None:
            raise NoNonnegativeLift(
                f"no nonnegative lift for row {m} within exponent bound "
                f"{bound}")
        b, c = choice
        for col, reps in zip(later_t, b):
            for _ in range(reps):
                step = TransformStep(
                    kind="s", row=m, target=col,
                    blocks=(bi + 1, m - bs.offset(bi) + 1,
                            bs.block_of(col) + 1,
                            col - bs.offset(bs.block_of(col)) + 1))
                me = apply_s_transform(me, step)
                steps.append(step)
        r_step = TransformStep(
            kind="r", row=m,
            exponents=tuple((row, exp) for row, exp in zip(later_t, c)
                            if exp))
        me = apply_r_transform(me, r_step)
        steps.append(r_step)
        if me.A.row(m) != unit_row:
            raise NoNonnegativeLift(
                f"row {m} failed to normalize: lift was inconsistent")
        rescale = TransformStep(kind="rescale", row=m)
        me = apply_rescale(me, rescale)
        steps.append(rescale)

    return MonomializationTrace(
        initial=initial, steps=tuple(steps), final=SSMForm(me))


@dataclass(frozen=True)
class CosetSystem:
    """Parallelepiped generators with their value-group coset labels."""

    extension: MonomialExtension
    e: int
    lattice_points: tuple          # Lambda, lex sorted
    labels: tuple                  # canonical coset representatives
    values: tuple                  # nu*(y^sigma) for sigma in Lambda
    invariant_factors: tuple       # of Z^n / A^t Z^n
    snf_at: object                 # SmithDecomposition of A^t
    big_group: ValueGroup
    small_group: ValueGroup


def coset_system(ssm: SSMForm, sample_bound=2) -> CosetSystem:
    """Build the coset representative system of a strong monomial form.

    Verifies both hypotheses before constructing anything: the determinant
    of the exponent matrix must equal the index [value group of y : value
    group of x], and the exponent-to-value map must induce an isomorphism of
    the corresponding quotients (invariant factors compared exactly, kernel
    checked on a spanning sample).
    """
    me = ssm.extension
    n = me.blocks.n
    structure = me.structure
    big = ValueGroup(structure, me.y_values)
    small = ValueGroup(structure, induced_x_values(me))
    e = abs(determinant(me.A))
    if e == 0:
        raise HypothesisA6Failed("exponent matrix is singular")
    idx = subgroup_index(big, small)
    if idx != e:
        raise HypothesisA6Failed(
            f"|det A| = {e} but subgroup index is {idx}")
    At = me.A.transpose()
    inv_at = quotient_invariants(At)
    inv_groups = quotient_invariant_factors(big, small)
    if inv_at != inv_groups:
        raise HypothesisA7Failed(
            f"invariant factors differ: Z^n/A^tZ^n has {inv_at}, "
            f"value groups give {inv_groups}")
    # kernel check on a spanning sample: sum b_j nu*(y_j) lies in the small
    # group exactly when b lies in A^t Z^n
    samples = []
    for j in range(n):
        samples.append(tuple(1 if k == j else 0 for k in range(n)))
    for j in range(n):
        samples.append(tuple(At[k, j] for k in range(n)))
    for v in product(range(-sample_bound, sample_bound + 1), repeat=n):
        if n <= 3:
            samples.append(v)
    for b in samples:
        gamma = structure.zero()
        for j, bj in enumerate(b):
            if bj:
                gamma = gamma + me.y_values[j].scale(bj)
        in_small = small.contains(gamma)
        in_lattice = solve_integer(At, b) is not None
        if in_small != in_lattice:
            raise HypothesisA7Failed(
                f"witness {b}: value map membership {in_small} but lattice "
                f"membership {in_lattice}")

    pb = parallelepiped_points(me.A.entries)
    if pb.index != e:
        raise HypothesisA6Failed(
            f"parallelepiped count {pb.index} != e = {e}")
    labels = []
    values = []
    seen = set()
    for sigma in pb.points:
        val = structure.zero()
        for j, sj in enumerate(sigma):
            if sj:
                val = val + me.y_values[j].scale(sj)
        lbl = coset_label(val, big, small)
        key = lbl.flat()
        if key in seen:
            raise HypothesisA7Failed(
                f"coset label collision at sigma = {sigma}")
        seen.add(key)
        labels.append(lbl)
        values.append(val)
    return CosetSystem(
        extension=me,
        e=e,
        lattice_points=pb.points,
        labels=tuple(labels),
        values=tuple(values),
        invariant_factors=inv_at,
        snf_at=smith_normal_form(At),
        big_group=big,
        small_group=small,
    )


def det_t_submatrix(me: MonomialExtension):
    return abs(determinant(me.t_submatrix()))


def verify_adjoint_invariance(trace: MonomializationTrace):
    """|det A_T| agrees between the initial and final extensions."""
    return (adjoint_relations(trace.initial).e
            == adjoint_relations(trace.final.extension).e)
