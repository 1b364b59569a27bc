import random
from fractions import Fraction

import pytest

from helpers import (
    enumeration_oracle_failing_pairs,
    enumeration_oracle_failing_pairs_rank,
    nonresidue_int,
    random_quintuple_fp,
    random_type_a_triple,
)
from ncquad.fields import GF, QQ
from ncquad.linalg import Matrix, span_contains, span_equal
from ncquad.quintuples import (
    SLOT_LABELS,
    Quintuple,
    build_linear_quadric,
    build_type_a,
    contraction_matrix,
    hilbert_dims,
    is_geometric,
    relations,
    truncated_dims,
    verify_witness,
)
from ncquad.tensors import Tensor


def pure_tensor_quintuple(field=QQ) -> Quintuple:
    entries = [field.zero] * 16
    entries[0] = field.one   # x0 x1 x2 x3
    return Quintuple(Tensor(field, (2, 2, 2, 2), entries, SLOT_LABELS))


def test_linear_quadric_entries():
    q = build_linear_quadric()
    assert q.w.nonzero_count() == 4
    assert sorted(int(x) for x in q.w.entries if x) == [-1, -1, 1, 1]
    assert q.w.entry((0, 0, 1, 1)) == 1
    assert q.w.entry((1, 0, 0, 1)) == -1
    assert q.w.entry((0, 1, 1, 0)) == -1
    assert q.w.entry((1, 1, 0, 0)) == 1


def test_linear_quadric_w_in_R0_V3():
    # R0 = span{x0x1y2 - y0x1x2, x0y1y2 - y0y1x2}; w must lie in R0 x V3
    q = build_linear_quadric()
    r1 = [0] * 8
    r1[0b001] = 1
    r1[0b100] = -1
    r2 = [0] * 8
    r2[0b011] = 1
    r2[0b110] = -1
    cols = []
    for r in (r1, r2):
        for d in range(2):
            vec = [Fraction(0)] * 16
            for i in range(8):
                vec[2 * i + d] = Fraction(r[i])
            cols.append(tuple(vec))
    space = Matrix.from_cols(QQ, cols, nrows=16)
    assert span_contains(space, q.w.flatten())


def test_linear_quadric_geometric_all_pairs():
    rep = is_geometric(build_linear_quadric())
    assert rep.passed
    assert all(p.kernel_dim == 0 for p in rep.pairs)


def test_type_a_01_1_contraction_identity():
    q = build_type_a(0, 1, 1)
    m = contraction_matrix(q, 2)
    assert m == Matrix.identity(QQ, 4)


def test_type_a_excluded_locus():
    with pytest.raises(ValueError, match="excluded locus"):
        build_type_a(0, 0, 1)
    with pytest.raises(ValueError, match="excluded locus"):
        build_type_a(0, 1, 0)
    with pytest.raises(ValueError, match="excluded locus"):
        build_type_a(1, 1, 1)
    with pytest.raises(ValueError, match="excluded locus"):
        build_type_a(1, -1, 1)
    with pytest.raises(ValueError):
        build_type_a(0, 0, 0)


def test_type_a_accepted_has_eight_terms():
    q = build_type_a(1, 2, 3)
    assert q.w.nonzero_count() == 8


def test_pure_tensor_fails_everywhere():
    rep = is_geometric(pure_tensor_quintuple())
    assert not rep.passed
    assert rep.failing_pairs() == [0, 1, 2, 3]
    for p in rep.pairs:
        assert p.witness is not None
        assert verify_witness(pure_tensor_quintuple(), p.j, p.witness)


def test_witnesses_verify_on_random_failures():
    rng = random.Random(21)
    F = GF(5)
    checked = 0
    while checked < 25:
        q = random_quintuple_fp(rng, F)
        rep = is_geometric(q)
        for p in rep.pairs:
            if not p.passed and p.witness is not None:
                assert verify_witness(q, p.j, p.witness)
                checked += 1


def test_is_geometric_invariant_under_basis_change():
    from helpers import random_invertible_qq

    rng = random.Random(22)
    q = build_type_a(1, 2, 3)
    base = is_geometric(q).passed
    for _ in range(10):
        gs = [random_invertible_qq(rng, 2, height=4) for _ in range(4)]
        entries = []
        for i0 in range(2):
            for i1 in range(2):
                for i2 in range(2):
                    for i3 in range(2):
                        acc = QQ.zero
                        for j0 in range(2):
                            for j1 in range(2):
                                for j2 in range(2):
                                    for j3 in range(2):
                                        acc += (gs[0][i0, j0] * gs[1][i1, j1]
                                                * gs[2][i2, j2] * gs[3][i3, j3]
                                                * q.w.entry((j0, j1, j2, j3)))
                        entries.append(acc)
        q2 = Quintuple(Tensor(QQ, (2, 2, 2, 2), entries, SLOT_LABELS))
        assert is_geometric(q2).passed == base


def test_relations_linear_quadric_matches_displayed():
    q = build_linear_quadric()
    rel = relations(q)
    assert rel.valid and rel.dims == (2, 2, 1)
    expected = []
    r1 = [Fraction(0)] * 8
    r1[0b001] = Fraction(1)
    r1[0b100] = Fraction(-1)
    r2 = [Fraction(0)] * 8
    r2[0b011] = Fraction(1)
    r2[0b110] = Fraction(-1)
    expected = Matrix.from_cols(QQ, [tuple(r1), tuple(r2)], nrows=8)
    assert span_equal(rel.r0, expected)
    assert span_contains(rel.w_line, q.w.flatten())


def test_relations_pure_tensor_flagged():
    rel = relations(pure_tensor_quintuple())
    assert not rel.valid
    assert rel.r0.ncols == 1


def test_relations_type_a():
    rel = relations(build_type_a(1, 2, 3))
    assert rel.valid and rel.dims == (2, 2, 1)


def test_hilbert_dims_sequence():
    assert [hilbert_dims(n) for n in range(7)] == [1, 2, 4, 6, 9, 12, 16]
    # long-division oracle: multiply the series back by the denominator
    series = [hilbert_dims(n) for n in range(30)]
    den = [1, -2, 0, 2, -1]
    for n in range(30):
        conv = sum(den[k] * series[n - k] for k in range(min(n + 1, 5)))
        assert conv == (1 if n == 0 else 0)


def test_truncated_dims_linear_and_type_a():
    for q in (build_linear_quadric(), build_type_a(1, 2, 3)):
        t = truncated_dims(q)
        assert t.valid
        for (i, j), (got, want) in t.cells.items():
            assert got == want == hilbert_dims(j - i)


def test_truncated_dims_pure_tensor_mismatch():
    t = truncated_dims(pure_tensor_quintuple())
    assert not t.valid
    assert t.computed(0, 3) == 7
    assert (0, 3) in t.mismatches


def test_type_a_slot23_contraction_structure():
    # block structure of the slot-(2,3) contraction: det = (b^2-a^2)(c^2-a^2)
    rng = random.Random(23)
    for _ in range(25):
        (a, b, c), q = random_type_a_triple(rng, height=9)
        m = contraction_matrix(q, 2)
        assert m.det() == (b * b - a * a) * (c * c - a * a)


def test_decision_procedure_vs_enumeration_f5():
    rng = random.Random(24)
    F = GF(5)
    nu = nonresidue_int(5)
    for _ in range(40):
        q = random_quintuple_fp(rng, F)
        assert set(is_geometric(q).failing_pairs()) == enumeration_oracle_failing_pairs(q, nu)


def test_decision_procedure_vs_enumeration_f101():
    rng = random.Random(25)
    F = GF(101)
    nu = nonresidue_int(101)
    for _ in range(2):
        q = random_quintuple_fp(rng, F)
        got = set(is_geometric(q).failing_pairs())
        assert got == enumeration_oracle_failing_pairs_rank(q, nu)
