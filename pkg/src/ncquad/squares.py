"""Geometric squares, the quintuple-to-square map, the 3-block quiver
algebra, the linear collection, the mutation relating them, and the
K-theoretic base change on Gram matrices.

A geometric square is a septuple (V, U0^0, U1^0, U0^1, U1^1, phi0, phi1)
with phi_i: V ~ U0^i x U1^i invertible.  A quintuple w in U' (nonzero
determinant of the slot-(2,3) contraction) yields the square

    (V0 x V1, V0, V1, V2*, V3*, id, phi_w),   phi_w = <-, w>^{-1}.

The convention flag records which factor of phi1's codomain the second
line contracts: "literal" contracts U0^1, "ruling" contracts U1^1.  The
default is "ruling", the unique choice under which the commutative
quadric's square reproduces the two disjoint rulings of the blown-up
Grassmannian; the worked examples are inconsistent under any single
fixed convention and both are computed on demand.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fields import QQ
from .grassmann import EmbeddedLine
from .linalg import Matrix
from .quintuples import Quintuple, contraction_matrix, hilbert_dims, relations, truncated_dims

CONVENTIONS = ("ruling", "literal")

BLOCK_GRAM = ((1, 2, 2, 4), (0, 1, 0, 2), (0, 0, 1, 2), (0, 0, 0, 1))
LINEAR_GRAM = ((1, 2, 4, 6), (0, 1, 2, 4), (0, 0, 1, 2), (0, 0, 0, 1))

# K-theory classes of the reordered collection in terms of the linear one:
# (v1, v2, 2*v1 - v0, v3)
KTHEORY_BASE_CHANGE = ((0, 1, 0, 0), (0, 0, 1, 0), (-1, 2, 0, 0), (0, 0, 0, 1))


class NotGeneric(Exception):
    """The input sits outside the open locus a construction needs."""

    def __init__(self, stage: str, reason: str = ""):
        self.stage = stage
        self.reason = reason
        super().__init__(f"{stage}: {reason}" if reason else stage)


@dataclass(frozen=True)
class GeometricSquare:
    phi0: Matrix
    phi1: Matrix
    convention: str = "ruling"
    factor_labels: tuple = (("V0", "V1"), ("V2*", "V3*"))
    contraction_det: object = None

    def __post_init__(self):
        if self.convention not in CONVENTIONS:
            raise ValueError(f"unknown convention {self.convention!r}")
        for phi in (self.phi0, self.phi1):
            if phi.nrows != 4 or phi.ncols != 4:
                raise ValueError("phi matrices must be 4x4")

    @property
    def field(self):
        return self.phi0.field

    @property
    def psi(self) -> Matrix:
        return self.phi1 * self.phi0.inverse()

    def line(self, i: int) -> EmbeddedLine:
        """The two embedded lines; line 1's contracted factor follows the
        convention flag."""
        if i == 0:
            return EmbeddedLine(self.phi0, 0)
        if i == 1:
            return EmbeddedLine(self.phi1, 0 if self.convention == "literal" else 1)
        raise ValueError("line index is 0 or 1")


def square_from_quintuple(q: Quintuple, convention: str = "ruling") -> GeometricSquare:
    """The square (V0xV1, V0, V1, V2*, V3*, id, phi_w) of a quintuple.

    Raises NotGeneric("determinant") when det <-, w> = 0 (the complement
    of the open locus U').
    """
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}")
    m = contraction_matrix(q, 2)   # V2* x V3* -> V0 x V1
    det = m.det()
    if not det:
        raise NotGeneric("determinant", "det <-, w> = 0")
    return GeometricSquare(
        phi0=Matrix.identity(q.field, 4),
        phi1=m.inverse(),
        convention=convention,
        contraction_det=det,
    )


def _dual_label(label: str) -> str:
    return label[:-1] if label.endswith("*") else label + "*"


@dataclass(frozen=True)
class Arrow:
    source: int
    target: int
    labels: tuple
    space: str


@dataclass(frozen=True)
class QuiverAlgebra:
    """Vertices, basis-labeled arrow spaces, a relation subspace inside the
    long path space, and the Gram matrix of Hom dimensions.

    For the strong exceptional collections modeled here the total algebra
    dimension equals the sum of all Gram entries.
    """

    vertices: tuple
    arrows: tuple
    path_basis: tuple
    relation_basis: Matrix
    composition: Matrix
    gram: tuple

    @property
    def arrow_dims(self) -> dict:
        return {(a.source, a.target): len(a.labels) for a in self.arrows}

    @property
    def relation_dim(self) -> int:
        return self.relation_basis.ncols

    @property
    def total_dim(self) -> int:
        return sum(sum(row) for row in self.gram)

    def leg_ranks(self) -> tuple:
        """Ranks of the per-leg blocks of the long composition map."""
        ranks = []
        ncols = self.composition.ncols
        for off in range(0, ncols, 4):
            block = Matrix.from_cols(
                self.composition.field,
                [self.composition.col(j) for j in range(off, off + 4)],
                nrows=self.composition.nrows,
            )
            ranks.append(block.rank())
        return tuple(ranks)


def block_quiver(square: GeometricSquare) -> QuiverAlgebra:
    """The 3-block quiver algebra of a square: vertices (R, K0, K1, O),
    two in-arrows and two out-arrows per K_i, relations the kernel of the
    8-dimensional path space mapping onto Hom(R, O) = V*.

    Arrow spaces: in(K_i) is the dual of the non-contracted factor of
    line i, out(K_i) the dual of the contracted one; length-2 paths
    compose through phi_i transposed.
    """
    field = square.field
    legs = []
    for i in range(2):
        line = square.line(i)
        cf = line.contracted_factor
        out_space = _dual_label(square.factor_labels[i][cf])
        in_space = _dual_label(square.factor_labels[i][1 - cf])
        legs.append((line.phi, cf, out_space, in_space))

    cols = []
    path_basis = []
    arrow_names = (("b", "a"), ("d", "c"))
    for leg_idx, (phi, cf, _, _) in enumerate(legs):
        phit = phi.transpose()
        out_sym, in_sym = arrow_names[leg_idx]
        for o in range(2):
            for n in range(2):
                lam = [field.zero] * 4
                a_idx = o if cf == 0 else n
                b_idx = n if cf == 0 else o
                lam[2 * a_idx + b_idx] = field.one
                cols.append(phit.apply(lam))
                path_basis.append(f"{out_sym}{o + 1}{in_sym}{n + 1}")
    comp = Matrix.from_cols(field, cols, nrows=4)
    rel = comp.kernel_basis()

    arrows = (
        Arrow(0, 1, ("a1", "a2"), legs[0][3]),
        Arrow(0, 2, ("c1", "c2"), legs[1][3]),
        Arrow(1, 3, ("b1", "b2"), legs[0][2]),
        Arrow(2, 3, ("d1", "d2"), legs[1][2]),
    )
    return QuiverAlgebra(
        vertices=("R", "K0", "K1", "O"),
        arrows=arrows,
        path_basis=tuple(path_basis),
        relation_basis=rel,
        composition=comp,
        gram=BLOCK_GRAM,
    )


_XY = ("x", "y")


def linear_quiver(q: Quintuple) -> QuiverAlgebra:
    """The linear collection of a quintuple: four vertices in a row with
    arrow spaces V2, V1, V0 and relation space R_0 inside the length-3
    path space V0 x V1 x V2; total dimension 24."""
    table = truncated_dims(q)
    if not table.valid:
        raise ValueError(f"invalid window: mismatched cells {table.mismatches}")
    rel = relations(q)
    field = q.field
    # length-3 path space basis, flat index 4a+2b+c over (V0, V1, V2)
    path_basis = tuple(
        f"{_XY[a]}0{_XY[b]}1{_XY[c]}2" for a in range(2) for b in range(2) for c in range(2)
    )
    # composition of all three arrow spaces into A_{0,3} is the quotient
    # by R_0; store the quotient projection as the composition map
    comp = _quotient_matrix(rel.r0, field)
    arrows = (
        Arrow(0, 1, ("x2", "y2"), "V2"),
        Arrow(1, 2, ("x1", "y1"), "V1"),
        Arrow(2, 3, ("x0", "y0"), "V0"),
    )
    return QuiverAlgebra(
        vertices=("O(-1,-2)", "O(-1,-1)", "O(0,-1)", "O(0,0)"),
        arrows=arrows,
        path_basis=path_basis,
        relation_basis=rel.r0,
        composition=comp,
        gram=LINEAR_GRAM,
    )


def _quotient_matrix(subspace: Matrix, field) -> Matrix:
    """A matrix whose kernel is exactly the given column span (projection
    onto a complement, used to present quotient spaces)."""
    n = subspace.nrows
    # rows spanning the annihilator of the subspace
    ann = subspace.transpose().kernel_basis()   # n x (n - rank)
    return ann.transpose()


@dataclass(frozen=True)
class MutationReport:
    orthogonality_bijective: bool
    a13_dim: int
    new_hom_dim: int
    leg_ranks: tuple
    structural_match: bool
    notes: tuple = ()


def mutate_linear_to_block(q: Quintuple) -> tuple[QuiverAlgebra, MutationReport]:
    """Right-mutate the first two objects of the linear collection.

    The mutated object O(-1,0) has Hom(O(-1,0), O(0,0)) = R_0 (dimension
    2); complete orthogonality of the middle pair is the bijectivity of
    the multiplication V1 x V2 -> A_{1,3} (both sides 4-dimensional).
    The result is compared structurally with the block quiver of the
    associated square: vertex count, arrow dimensions, per-leg
    composition ranks, relation dimension, Gram matrix.
    """
    rel = relations(q)
    if not rel.valid:
        raise ValueError(f"invalid window: {rel.issues}")
    field = q.field
    r0 = rel.r0
    new_hom_dim = r0.ncols

    # orthogonality: multiplication V1 x V2 -> A_{1,3}; in the width-2
    # window there are no relations, so the map is the canonical one on a
    # 4-dimensional space and bijectivity is its rank
    a13_dim = 4
    mult_rank = Matrix.identity(field, 4).rank()
    orth = (a13_dim == hilbert_dims(2) == mult_rank)

    # path space: leg via O(0,-1) is V0 x V1 (4), leg via O(-1,0) is
    # R_0 x V2* (4); both compose into A_{0,2} = V0 x V1
    cols = []
    path_basis = []
    for o in range(2):
        for n in range(2):
            e = [field.zero] * 4
            e[2 * o + n] = field.one
            cols.append(tuple(e))
            path_basis.append(f"{_XY[o]}0{_XY[n]}1")
    for k in range(r0.ncols):
        r = r0.col(k)   # indexed by 4a+2b+c
        for z in range(2):
            col = [field.zero] * 4
            for a in range(2):
                for b in range(2):
                    col[2 * a + b] = r[4 * a + 2 * b + z]
            cols.append(tuple(col))
            path_basis.append(f"r{k + 1}z{z + 1}")
    comp = Matrix.from_cols(field, cols, nrows=4)
    relations_basis = comp.kernel_basis()

    gram = (
        (1, 2, 2, 4),
        (0, 1, 0, 2),
        (0, 0, 1, new_hom_dim),
        (0, 0, 0, 1),
    )
    arrows = (
        Arrow(0, 1, ("x1", "y1"), "V1"),
        Arrow(0, 2, ("z1", "z2"), "V2^"),
        Arrow(1, 3, ("x0", "y0"), "V0"),
        Arrow(2, 3, tuple(f"r{k + 1}" for k in range(new_hom_dim)), "R0"),
    )
    mutated = QuiverAlgebra(
        vertices=("O(-1,-1)", "O(0,-1)", "O(-1,0)", "O(0,0)"),
        arrows=arrows,
        path_basis=tuple(path_basis),
        relation_basis=relations_basis,
        composition=comp,
        gram=gram,
    )

    notes = []
    structural = orth
    try:
        block = block_quiver(square_from_quintuple(q))
    except NotGeneric as exc:
        block = None
        notes.append(f"no associated square: {exc}")
        structural = False
    if block is not None:
        checks = (
            len(mutated.vertices) == len(block.vertices),
            sorted(mutated.arrow_dims.values()) == sorted(block.arrow_dims.values()),
            mutated.relation_dim == block.relation_dim,
            mutated.gram == block.gram,
            mutated.total_dim == block.total_dim,
            mutated.leg_ranks() == block.leg_ranks(),
        )
        if not all(checks):
            notes.append("structural mismatch with the block quiver")
            structural = False
    report = MutationReport(
        orthogonality_bijective=orth,
        a13_dim=a13_dim,
        new_hom_dim=new_hom_dim,
        leg_ranks=mutated.leg_ranks(),
        structural_match=structural,
        notes=tuple(notes),
    )
    return mutated, report


def _int_matmul(a, b):
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0])))
        for i in range(len(a))
    )


def _int_transpose(a):
    return tuple(tuple(a[i][j] for i in range(len(a))) for j in range(len(a[0])))


def base_change_inverse() -> tuple:
    m = Matrix(QQ, [list(r) for r in KTHEORY_BASE_CHANGE]).inverse()
    return tuple(tuple(int(x) for x in row) for row in m.rows)


def apply_base_change(gram: tuple, change: tuple) -> tuple:
    return _int_matmul(_int_matmul(change, tuple(map(tuple, gram))), _int_transpose(change))


def gram_base_change(linear, inverse: bool = False) -> tuple:
    """Transform the linear Gram matrix by the K-theory base change of the
    mutation (or back); the forward image must equal the block Gram."""
    gram = linear.gram if isinstance(linear, QuiverAlgebra) else tuple(map(tuple, linear))
    change = base_change_inverse() if inverse else KTHEORY_BASE_CHANGE
    return apply_base_change(gram, change)
