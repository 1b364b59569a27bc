import itertools
import random

import pytest

from helpers import random_invertible_fp, random_invertible_qq, random_type_a_triple
from ncquad.fields import GF, QQ
from ncquad.linalg import Matrix, span_contains
from ncquad.quintuples import build_linear_quadric, build_type_a, contraction_matrix
from ncquad.squares import (
    BLOCK_GRAM,
    LINEAR_GRAM,
    GeometricSquare,
    NotGeneric,
    apply_base_change,
    base_change_inverse,
    block_quiver,
    gram_base_change,
    linear_quiver,
    mutate_linear_to_block,
    square_from_quintuple,
)


def test_linear_quadric_square_unit_determinant():
    sq = square_from_quintuple(build_linear_quadric())
    assert abs(sq.contraction_det) == 1
    # the contraction sends the four basis pure tensors to +-basis vectors
    m = contraction_matrix(build_linear_quadric(), 2)
    for j in range(4):
        col = m.col(j)
        assert sorted(abs(x) for x in col) == [0, 0, 0, 1]


def test_type_a_determinant_formula():
    rng = random.Random(51)
    for _ in range(30):
        (a, b, c), q = random_type_a_triple(rng, height=9)
        det = contraction_matrix(q, 2).det()
        assert det == (b * b - a * a) * (c * c - a * a)
        if det:
            sq = square_from_quintuple(q)
            assert sq.contraction_det == det


def test_not_generic_on_vanishing_determinant():
    with pytest.raises(NotGeneric) as exc:
        square_from_quintuple(build_type_a(1, 1, 2))
    assert exc.value.stage == "determinant"


def test_block_quiver_dimensions_any_square():
    rng = random.Random(52)
    for field, rand_inv in ((QQ, random_invertible_qq),):
        for _ in range(15):
            sq = GeometricSquare(rand_inv(rng, 4), rand_inv(rng, 4),
                                 convention=rng.choice(("ruling", "literal")))
            bq = block_quiver(sq)
            assert len(bq.vertices) == 4
            assert sum(len(a.labels) for a in bq.arrows) == 8
            assert bq.relation_dim == 4
            assert bq.total_dim == 16
            assert bq.gram == BLOCK_GRAM
            assert bq.leg_ranks() == (4, 4)   # composition onto Hom(R,O) = V*


def test_block_quiver_dimensions_prime_field():
    rng = random.Random(53)
    F = GF(31)
    for _ in range(10):
        sq = GeometricSquare(random_invertible_fp(rng, F, 4),
                             random_invertible_fp(rng, F, 4))
        bq = block_quiver(sq)
        assert bq.relation_dim == 4 and bq.total_dim == 16


def test_block_relations_linear_quadric_commutation_form():
    # b_i a_j = d_j c_i in the frozen bases: a = (x1*, y1*), b = (x0*, y0*),
    # c = (y2, -x2), d = (y3, -x3) under the ruling convention
    sq = square_from_quintuple(build_linear_quadric(), "ruling")
    bq = block_quiver(sq)
    c_coeffs = ((QQ.zero, QQ.one), (-QQ.one, QQ.zero))     # c1 = y2, c2 = -x2
    d_coeffs = ((QQ.zero, QQ.one), (-QQ.one, QQ.zero))     # d1 = y3, d2 = -x3
    for i in range(2):
        for j in range(2):
            vec = [QQ.zero] * 8
            vec[2 * i + j] = QQ.one          # + b_i a_j
            for o in range(2):
                for n in range(2):
                    vec[4 + 2 * o + n] -= d_coeffs[j][o] * c_coeffs[i][n]
            assert all(not x for x in bq.composition.apply(vec))
            assert span_contains(bq.relation_basis, vec)


def test_block_path_algebra_oracle():
    # brute-force structure constants: 4 idempotents, 8 arrows, 4 long
    # elements; associativity on all triples and dimension count
    sq = square_from_quintuple(build_type_a(1, 2, 3))
    bq = block_quiver(sq)
    field = QQ
    # basis: e_R, e_K0, e_K1, e_O, a1, a2, c1, c2, b1, b2, d1, d2, v0..v3
    names = ["eR", "eK0", "eK1", "eO", "a1", "a2", "c1", "c2",
             "b1", "b2", "d1", "d2", "v0", "v1", "v2", "v3"]
    idx = {n: i for i, n in enumerate(names)}
    src = {"a": 0, "c": 0, "b": 1, "d": 2, "v": 0}
    tgt = {"a": 1, "c": 2, "b": 3, "d": 3, "v": 3}

    def unit(i):
        v = [field.zero] * 16
        v[i] = field.one
        return v

    def mul(x_name, y_name):
        # y then x (right-to-left composition)
        out = [field.zero] * 16
        if x_name.startswith("e") and y_name.startswith("e"):
            if x_name == y_name:
                out[idx[x_name]] = field.one
            return out
        if x_name.startswith("e"):
            vert = ("eR", "eK0", "eK1", "eO").index(x_name)
            if tgt[y_name[0]] == vert:
                out[idx[y_name]] = field.one
            return out
        if y_name.startswith("e"):
            vert = ("eR", "eK0", "eK1", "eO").index(y_name)
            if src[x_name[0]] == vert:
                out[idx[x_name]] = field.one
            return out
        # arrow/long-path products: only out-arrow . in-arrow survives
        pair = (x_name[0], y_name[0])
        if pair == ("b", "a"):
            col = 2 * (int(x_name[1]) - 1) + (int(y_name[1]) - 1)
        elif pair == ("d", "c"):
            col = 4 + 2 * (int(x_name[1]) - 1) + (int(y_name[1]) - 1)
        else:
            return out
        comp = bq.composition.col(col)
        for k in range(4):
            out[idx[f"v{k}"]] = comp[k]
        return out

    table = {}
    for x in names:
        for y in names:
            table[(x, y)] = mul(x, y)

    def mul_vec(xv, yv):
        out = [field.zero] * 16
        for i, xc in enumerate(xv):
            if not xc:
                continue
            for j, yc in enumerate(yv):
                if not yc:
                    continue
                prod = table[(names[i], names[j])]
                for k in range(16):
                    out[k] += xc * yc * prod[k]
        return out

    # associativity on all basis triples
    for x, y, z in itertools.product(names, repeat=3):
        left = mul_vec(table[(x, y)], unit(idx[z]))
        right = mul_vec(unit(idx[x]), table[(y, z)])
        assert left == right, (x, y, z)

    # total dimension: idempotents + arrows + span of long products
    long_products = Matrix.from_cols(
        field, [tuple(bq.composition.col(j)) for j in range(8)], nrows=4)
    assert 4 + 8 + long_products.rank() == 16
    assert 8 - long_products.rank() == bq.relation_dim


def test_block_gram_assembly():
    assert BLOCK_GRAM == ((1, 2, 2, 4), (0, 1, 0, 2), (0, 0, 1, 2), (0, 0, 0, 1))
    assert sum(sum(r) for r in BLOCK_GRAM) == 16


def test_linear_quiver_linear_quadric():
    q = build_linear_quadric()
    lq = linear_quiver(q)
    assert lq.gram == LINEAR_GRAM
    assert lq.total_dim == 24
    assert lq.relation_dim == 2
    # relations are the displayed ones
    r1 = [QQ.zero] * 8
    r1[0b001] = QQ.one
    r1[0b100] = -QQ.one
    r2 = [QQ.zero] * 8
    r2[0b011] = QQ.one
    r2[0b110] = -QQ.one
    assert span_contains(lq.relation_basis, r1)
    assert span_contains(lq.relation_basis, r2)
    # the composition map kills exactly the relations
    assert all(not x for x in lq.composition.apply(r1))
    assert lq.composition.rank() == 6


def test_linear_quiver_rejects_invalid_window():
    from ncquad.quintuples import SLOT_LABELS, Quintuple
    from ncquad.tensors import Tensor

    entries = [QQ.zero] * 16
    entries[0] = QQ.one
    with pytest.raises(ValueError):
        linear_quiver(Quintuple(Tensor(QQ, (2, 2, 2, 2), entries, SLOT_LABELS)))


def test_mutation_matches_block():
    rng = random.Random(54)
    for q in (build_linear_quadric(), build_type_a(1, 2, 3),
              random_type_a_triple(rng)[1]):
        mutated, report = mutate_linear_to_block(q)
        assert report.orthogonality_bijective
        assert report.a13_dim == 4
        assert report.new_hom_dim == 2
        try:
            bq = block_quiver(square_from_quintuple(q))
        except NotGeneric:
            continue
        assert report.structural_match
        assert mutated.gram == bq.gram == BLOCK_GRAM
        assert mutated.total_dim == bq.total_dim == 16
        assert mutated.relation_dim == bq.relation_dim == 4


def test_gram_base_change_values():
    lq_gram = LINEAR_GRAM
    changed = gram_base_change(lq_gram)
    assert changed == BLOCK_GRAM
    # spot entries from the bilinear expansion
    assert changed[2][3] == 2 * 4 - 6 == 2
    assert changed[1][2] == 0
    assert changed[2][2] == 4 * 1 - 2 * 2 + 1 == 1
    # idempotence through the inverse
    assert gram_base_change(changed, inverse=True) == LINEAR_GRAM
    minv = base_change_inverse()
    assert apply_base_change(changed, minv) == LINEAR_GRAM


def test_base_change_on_every_certified_sample():
    rng = random.Random(55)
    for _ in range(20):
        _, q = random_type_a_triple(rng)
        lq = linear_quiver(q)
        assert gram_base_change(lq) == BLOCK_GRAM
