import random

import pytest

from gradedval.errors import (
    HypothesisA6Failed,
    NotAlongValuation,
    NotTheorem48Form,
)
from gradedval.exact_lattice import ExactMatrix, determinant
from gradedval.monomial_extension import (
    BlockStructure,
    MonomialExtension,
    SSMForm,
)
from gradedval.monomialization import (
    TransformStep,
    apply_s_transform,
    coset_system,
    replay,
    strong_monomialize,
    verify_adjoint_invariance,
)
from gradedval.ordered_groups import Block, GroupStructure


def two_block_extension(A_rows):
    """r=2 blocks of sizes (2, 1), one T-variable each: T = {0, 2}."""
    blocks = BlockStructure(r=2, t=(2, 1), s=(1, 1))
    structure = GroupStructure((Block(), Block()))
    values = (
        structure.element(((1,), (0,))),
        structure.element(((1,), (0,))),
        structure.element(((0,), (1,))),
    )
    return MonomialExtension(
        blocks=blocks,
        A=ExactMatrix.from_rows(A_rows),
        unit_markers=("1",) * 3,
        y_values=values,
    )


def test_hand_example_single_row_transform():
    # x_1 = y_1 * y_2 with invertible tail: one row transform suffices
    me = two_block_extension([[1, 0, 0], [0, 1, 1], [0, 0, 1]])
    trace = strong_monomialize(me)
    kinds = [s.kind for s in trace.steps]
    assert kinds == ["r", "rescale"]
    assert trace.steps[0].exponents == ((2, 1),)
    assert trace.final.extension.A.entries == ExactMatrix.identity(3).entries
    assert trace.final.extension.y_values == me.y_values


def test_hand_example_needs_substitution():
    # x_2 = y_2^2 blocks a direct lift: one substitution y_1 = y'_1 y_2
    me = two_block_extension([[1, 0, 0], [0, 1, 1], [0, 0, 2]])
    trace = strong_monomialize(me)
    kinds = [s.kind for s in trace.steps]
    assert kinds == ["s", "r", "rescale"]
    s_step = trace.steps[0]
    assert (s_step.row, s_step.target) == (1, 2)
    assert s_step.blocks == (1, 2, 2, 1)
    final = trace.final.extension
    assert final.A.entries == ((1, 0, 0), (0, 1, 0), (0, 0, 2))
    # the substituted variable's value dropped by nu(y_2)
    assert final.y_values[1].flat() == (1, -1)
    assert final.y_values[0] == me.y_values[0]
    assert final.y_values[2] == me.y_values[2]


def test_replay_reproduces_final():
    me = two_block_extension([[1, 0, 0], [0, 1, 1], [0, 0, 2]])
    trace = strong_monomialize(me)
    redone = replay(trace.initial, trace.steps)
    assert redone.A.entries == trace.final.extension.A.entries
    assert redone.y_values == trace.final.extension.y_values
    assert redone.unit_markers == trace.final.extension.unit_markers


def test_already_strong_form_yields_empty_trace():
    me = two_block_extension([[2, 0, 1], [0, 1, 0], [0, 0, 3]])
    trace = strong_monomialize(me)
    assert trace.steps == ()
    assert trace.final.extension is me


def test_s_transform_requires_later_block():
    me = two_block_extension([[1, 0, 0], [0, 1, 1], [0, 0, 1]])
    with pytest.raises(NotAlongValuation):
        apply_s_transform(me, TransformStep(kind="s", row=2, target=0))


def test_rejects_invalid_extension():
    me = two_block_extension([[1, 0, 0], [0, 2, 1], [0, 0, 1]])
    with pytest.raises(NotTheorem48Form):
        strong_monomialize(me)


def compatible_values(blocks, A, t_values):
    """Value assignment whose relation lattice lies inside A^t Z^n.

    T-variables get the supplied independent values; a non-T variable m in
    block b gets sum_{j in T} (A[t_b][j] - A[m][j]) * nu(y_j), which encodes
    the relation A^t(e_{t_b} - e_m) and keeps the quotient of value groups
    isomorphic to Z^n / A^t Z^n.
    """
    tlist = blocks.t_indices()
    values = {}
    for j, v in zip(tlist, t_values):
        values[j] = v
    structure = t_values[0].structure
    for m in range(blocks.n):
        if m in values:
            continue
        tb = blocks.offset(blocks.block_of(m))
        v = structure.zero()
        for j in tlist:
            c = A[tb, j] - A[m, j]
            if c:
                v = v + values[j].scale(c)
        values[m] = v
    return tuple(values[j] for j in range(blocks.n))


def a6_extension(A_rows):
    """Two-block extension whose values satisfy both coset hypotheses."""
    blocks = BlockStructure(r=2, t=(2, 1), s=(1, 1))
    structure = GroupStructure((Block(), Block()))
    A = ExactMatrix.from_rows(A_rows)
    t_values = (structure.element(((1,), (0,))),
                structure.element(((0,), (1,))))
    return MonomialExtension(
        blocks=blocks,
        A=A,
        unit_markers=("1",) * 3,
        y_values=compatible_values(blocks, A, t_values),
    )


def random_extension(rng):
    """Random valid extension, rank-1 blocks, in the supported row shape."""
    r = rng.randint(1, 3)
    t = tuple(rng.randint(1, 2) for _ in range(r))
    blocks = BlockStructure(r=r, t=t, s=(1,) * r)
    structure = GroupStructure(tuple(Block() for _ in range(r)))
    t_values = tuple(
        structure.element(tuple((1,) if k == b else (0,) for k in range(r)))
        for b in range(r))
    tlist = blocks.t_indices()
    rows = [[0] * blocks.n for _ in range(blocks.n)]
    for i in range(blocks.n):
        bi = blocks.block_of(i)
        if blocks.is_t_index(i):
            rows[i][i] = rng.randint(1, 3)
            for j in tlist:
                if blocks.block_of(j) > bi:
                    rows[i][j] = rng.randint(0, 2)
        else:
            rows[i][i] = 1
            for j in tlist:
                if blocks.block_of(j) > bi:
                    rows[i][j] = rng.randint(0, 3)
    A = ExactMatrix.from_rows(rows)
    return MonomialExtension(
        blocks=blocks,
        A=A,
        unit_markers=("1",) * blocks.n,
        y_values=compatible_values(blocks, A, t_values),
    )


def test_random_extensions_monomialize():
    rng = random.Random(2024)
    for _ in range(60):
        me = random_extension(rng)
        trace = strong_monomialize(me)
        final = trace.final.extension
        # column/row transforms preserve both determinants
        assert determinant(final.A) == determinant(me.A)
        assert verify_adjoint_invariance(trace)
        assert final.t_submatrix().entries == me.t_submatrix().entries
        redone = replay(trace.initial, trace.steps)
        assert redone.A.entries == final.A.entries
        assert redone.y_values == final.y_values


def test_coset_system_hand_example():
    me = a6_extension([[1, 0, 0], [0, 1, 1], [0, 0, 2]])
    cs = coset_system(strong_monomialize(me).final)
    assert cs.e == 2
    assert cs.lattice_points == ((0, 0, 0), (0, 0, 1))
    assert len(set(l.flat() for l in cs.labels)) == 2
    assert cs.invariant_factors == (2,)
    # the trivial coset comes from sigma = 0
    assert cs.labels[0].flat() == (0, 0)


def test_coset_system_identity():
    me = a6_extension([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    cs = coset_system(SSMForm(me))
    assert cs.e == 1
    assert cs.lattice_points == ((0, 0, 0),)
    assert cs.invariant_factors == ()


def test_coset_system_detects_index_mismatch():
    # duplicate values make the y-group too small for |det A| = 2
    blocks = BlockStructure(r=1, t=(2,), s=(1,))
    structure = GroupStructure((Block(),))
    one = structure.element(((1,),))
    me = MonomialExtension(
        blocks=blocks,
        A=ExactMatrix.from_rows([[2, 0], [0, 1]]),
        unit_markers=("1", "1"),
        y_values=(one, one),
    )
    with pytest.raises(HypothesisA6Failed):
        coset_system(SSMForm(me))


def test_coset_labels_classify_values():
    me = a6_extension([[1, 0, 0], [0, 1, 1], [0, 0, 2]])
    cs = coset_system(strong_monomialize(me).final)
    # each stored value reduces to its own label
    from gradedval.ordered_groups import coset_label
    for val, lbl in zip(cs.values, cs.labels):
        assert coset_label(val, cs.big_group, cs.small_group) == lbl


def test_random_coset_systems():
    rng = random.Random(7)
    done = 0
    while done < 15:
        me = random_extension(rng)
        trace = strong_monomialize(me)
        e = abs(determinant(trace.final.extension.A))
        if e > 12:
            continue
        cs = coset_system(trace.final)
        assert cs.e == e
        assert len(cs.lattice_points) == e
        assert len(set(l.flat() for l in cs.labels)) == e
        done += 1
