"""Concrete modules over small prime fields: construction, socles,
quotients, brute-force flag enumeration, and cell classification.

The flag counts pinned here come from direct enumeration only; they are
deliberately NOT taken from the counting recursions, so the two routes
stay independent checks of one another.
"""
import pytest

from conftest import REFERENCE_ROWS, REFERENCE_WORD
from qfv import (
    Box,
    GradedSubspace,
    NilModule,
    Row,
    SUPPORTED_PRIMES,
    Shape,
    build_module,
    cell_of_flag,
    classify_flags,
    count_flags,
    dim_end,
    iso_class,
    quotient,
    socle,
    split_flag,
)
from qfv.tableaux import RowMultiTableau, enumerate_tableaux


def p1_shape():
    return Shape(1, [Row(1, 1), Row(1, 1)])


def shape_21():
    return Shape(1, [Row(1, 2), Row(1, 1)])


# -------------------------------------------------------------- construction


def test_build_module_single_row_is_a_shift_matrix():
    m = build_module(Shape(1, [Row(1, 2)]), 2)
    assert m.dims == (2,)
    assert m.mats == (((0, 0), (1, 0)),)
    assert m.tags == ((Box(1, 1), Box(1, 2)),)


def test_build_module_semisimple_has_zero_maps():
    m = build_module(Shape(2, [Row(1, 1), Row(2, 1)]), 3)
    assert m.dims == (1, 1)
    assert m.mats == (((0,),), ((0,),))


def test_build_module_reference_matrix_sizes(reference_shape):
    m = build_module(reference_shape, 2)
    assert m.dims == (4, 6, 4)
    for v in range(3):
        mat = m.mats[v]
        assert len(mat) == m.dims[(v + 1) % 3]
        assert all(len(row) == m.dims[v] for row in mat)


def test_build_module_rejects_unsupported_primes():
    with pytest.raises(ValueError):
        build_module(p1_shape(), 4)
    assert set(SUPPORTED_PRIMES) == {2, 3, 5, 7}


def test_nilmodule_rejects_non_nilpotent_loops():
    with pytest.raises(ValueError):
        NilModule(1, 2, (1,), (((1,),),))


# ------------------------------------------------------- socle and quotient


def test_socle_dimensions():
    ref = build_module(Shape(3, REFERENCE_ROWS), 2)
    assert socle(ref).dims == (0, 2, 3)
    assert socle(build_module(Shape(3, [Row(3, 3)]), 2)).dims == (0, 0, 1)
    semi = build_module(Shape(2, [Row(1, 1), Row(2, 1)]), 2)
    assert socle(semi).dims == (1, 1)


def test_socle_is_annihilated_by_arrows():
    m = build_module(shape_21(), 3)
    s = socle(m)
    assert s.dims == (2,)
    for vec in s.basis[0]:
        image = [
            sum(m.mats[0][i][j] * vec[j] for j in range(m.dims[0])) % 3
            for i in range(m.dims[0])
        ]
        assert set(image) == {0}


def test_quotient_by_socle_shortens_rows():
    j3 = build_module(Shape(1, [Row(1, 3)]), 3)
    mod, proj = quotient(j3, socle(j3))
    assert iso_class(mod).rows == (Row(1, 2),)
    # projection and lift are mutually inverse on the quotient side
    pushed = proj.push_vec(0, (1, 1, 0))
    assert proj.push_vec(0, proj.lift_vec(0, pushed)) == pushed


def test_quotient_by_zero_subspace_is_identity():
    m = build_module(p1_shape(), 2)
    zero = GradedSubspace.from_vectors(2, [[]])
    mod, _ = quotient(m, zero)
    assert mod.dims == m.dims
    assert mod.mats == m.mats


def test_quotient_rejects_unstable_subspaces():
    m = build_module(Shape(1, [Row(1, 2)]), 2)
    top = GradedSubspace.from_vectors(2, [[(1, 0)]])
    with pytest.raises(ValueError, match="stable"):
        quotient(m, top)


def test_iso_class_recovers_every_built_shape():
    for shape in (
        Shape(3, REFERENCE_ROWS),
        Shape(2, [Row(1, 2), Row(2, 2), Row(1, 1)]),
        Shape(1, [Row(1, 3), Row(1, 1)]),
        Shape(2, []),
    ):
        m = build_module(shape, 3)
        assert iso_class(m) == shape


# --------------------------------------------------------- flag enumeration


def test_count_flags_two_points():
    m = build_module(p1_shape(), 2)
    assert count_flags(m, (1, 1)) == 3
    assert count_flags(build_module(p1_shape(), 3), (1, 1)) == 4


def test_count_flags_single_row_has_one_flag():
    for p in (2, 3):
        m = build_module(Shape(3, [Row(2, 3)]), p)
        assert count_flags(m, (2, 1, 3)) == 1


def test_count_flags_empty_module():
    m = build_module(Shape(1, []), 2)
    assert count_flags(m, ()) == 1
    assert count_flags(m, (1,)) == 0


def test_count_flags_full_flag_unit_rows():
    m = build_module(Shape(1, [Row(1, 1)] * 3), 2)
    assert count_flags(m, (1, 1, 1)) == 21


def test_count_flags_mixed_lengths():
    # these disagree with the graded recursion; the counts below are the
    # enumerated truth (see the acceptance suite for the comparison)
    assert count_flags(build_module(shape_21(), 2), (1, 1, 1)) == 5
    assert count_flags(build_module(shape_21(), 3), (1, 1, 1)) == 7
    two_two = Shape(1, [Row(1, 2), Row(1, 2)])
    assert count_flags(build_module(two_two, 2), (1, 1, 1, 1)) == 15
    assert count_flags(build_module(two_two, 3), (1, 1, 1, 1)) == 28
    three_one = Shape(1, [Row(1, 3), Row(1, 1)])
    assert count_flags(build_module(three_one, 2), (1, 1, 1, 1)) == 7
    assert count_flags(build_module(three_one, 3), (1, 1, 1, 1)) == 10


def test_classify_flags_partitions_the_count():
    m = build_module(shape_21(), 2)
    by_cell = classify_flags(m, (1, 1, 1))
    assert by_cell == {
        ((1, 2), (3,)): 1,
        ((1, 3), (2,)): 2,
        ((2, 3), (1,)): 2,
    }
    assert sum(by_cell.values()) == count_flags(m, (1, 1, 1))


def test_classify_flags_two_points_matches_cell_sizes():
    m = build_module(p1_shape(), 2)
    assert classify_flags(m, (1, 1)) == {((2,), (1,)): 2, ((1,), (2,)): 1}


# ---------------------------------------------------- fixed points and cells


def test_split_flag_is_a_fixed_point_of_its_cell(reference_shape):
    cases = [
        (p1_shape(), (1, 1)),
        (shape_21(), (1, 1, 1)),
        (Shape(2, [Row(1, 1), Row(2, 2)]), (1, 2, 1)),
    ]
    for shape, word in cases:
        m = build_module(shape, 2)
        for t in enumerate_tableaux(shape, word):
            assert cell_of_flag(m, split_flag(m, t)) == t


def test_split_flag_reference_roundtrip(reference_shape):
    m = build_module(reference_shape, 2)
    ts = enumerate_tableaux(reference_shape, REFERENCE_WORD)
    t = next(x for x in ts if x.cell_dim() == 9)
    fl = split_flag(m, t)
    assert len(fl.chain) == 14
    assert [s.dim for s in fl.chain] == list(range(1, 15))
    assert cell_of_flag(m, fl) == t


def test_split_flag_stages_grow_by_single_boxes():
    m = build_module(shape_21(), 3)
    t = RowMultiTableau(shape_21(), ((1, 3), (2,)))
    fl = split_flag(m, t)
    assert [s.dim for s in fl.chain] == [1, 2, 3]


# -------------------------------------------------------------- end algebra


def test_dim_end_single_rows():
    assert dim_end(Shape(1, [Row(1, 3)])) == 3
    # around a longer cycle only every n-th power of the loop survives
    assert dim_end(Shape(2, [Row(1, 2)])) == 1
    assert dim_end(Shape(2, [Row(1, 4)])) == 2


def test_dim_end_sums_pairwise_homs():
    assert dim_end(shape_21()) == 5
    assert dim_end(Shape(1, [Row(1, 1), Row(1, 1)])) == 4
    assert dim_end(Shape(2, [Row(1, 1), Row(2, 1)])) == 2
    assert dim_end(Shape(2, [])) == 0
