"""Quintuples (V_0, V_1, V_2, V_3, w) with w a nonzero tensor in
V_0 x V_1 x V_2 x V_3, the geometricity decision procedure, relation
extraction, and the dimension table of the associated cubic regular
algebra window.

Conventions, fixed throughout the package:

* each V_i has ordered basis (x_i, y_i); basis index 0 is x, 1 is y;
* the tensor w is stored with slot labels ("V0", "V1", "V2", "V3") and
  flat index 8*i0 + 4*i1 + 2*i2 + i3;
* slot pairs are adjacent pairs (j, j+1 mod 4).

Geometricity of w means: for every j and all nonzero functionals
phi_j, phi_{j+1}, the contraction <phi_j x phi_{j+1}, w> is nonzero.
The decision is closure-correct without ever leaving exact arithmetic:
the contraction is encoded as a 4x4 matrix M_j, and a nonzero pure
tensor in ker M_j exists over the algebraic closure iff either the
kernel is spanned by a single 2x2-singular element, or the kernel has
dimension >= 2 (any such space of 2x2 matrices meets the rank-one cone
over the closure).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .fields import QQ, QuadraticExtension
from .forms import BinaryForm, root_structure
from .linalg import Matrix, column_space_basis, intersect_subspaces, span_contains
from .tensors import Tensor

SLOT_LABELS = ("V0", "V1", "V2", "V3")
BASIS_LABELS = ("x", "y")


@dataclass(frozen=True)
class Quintuple:
    """Four basis-labeled 2-dimensional spaces plus the 16-coefficient w."""

    w: Tensor

    def __post_init__(self):
        if self.w.shape != (2, 2, 2, 2) or self.w.slots != SLOT_LABELS:
            raise ValueError("w must have shape (2,2,2,2) with slots V0..V3")
        if self.w.is_zero():
            raise ValueError("w must be nonzero")
        from .fields import PrimeField, RationalField

        if not isinstance(self.w.field, (RationalField, PrimeField)):
            raise ValueError("quintuples live over QQ or a prime field")

    @property
    def field(self):
        return self.w.field


def build_linear_quadric(field=QQ) -> Quintuple:
    """The quintuple of the commutative quadric surface:
    w = x0 x1 y2 y3 - y0 x1 x2 y3 - x0 y1 y2 x3 + y0 y1 x2 x3.
    """
    entries = {
        (0, 0, 1, 1): 1,
        (1, 0, 0, 1): -1,
        (0, 1, 1, 0): -1,
        (1, 1, 0, 0): 1,
    }
    flat = [field.of(entries.get((a, b, c, d), 0))
            for a in range(2) for b in range(2) for c in range(2) for d in range(2)]
    return Quintuple(Tensor(field, (2, 2, 2, 2), flat, SLOT_LABELS))


def build_type_a(a, b, c, field=QQ) -> Quintuple:
    """The generic one-parameter-family cubic quintuple with coefficients
    (a : b : c):

    w = a y0y1x2x3 + b y0x1y2x3 + a x0y1y2x3 + c x0x1x2x3
      + a x0x1y2y3 + b x0y1x2y3 + a y0x1x2y3 + c y0y1y2y3

    Points on the excluded locus S = {a^2 = b^2 = c^2} u {(0:0:1), (0:1:0)}
    are rejected.
    """
    a, b, c = field.of(a), field.of(b), field.of(c)
    if not (a or b or c):
        raise ValueError("excluded locus S: (a:b:c) is not a projective point")
    a2, b2, c2 = a * a, b * b, c * c
    if a2 == b2 and b2 == c2:
        raise ValueError("excluded locus S: a^2 = b^2 = c^2")
    if not a and not b:
        raise ValueError("excluded locus S: point (0:0:1)")
    if not a and not c:
        raise ValueError("excluded locus S: point (0:1:0)")
    entries = {
        (1, 1, 0, 0): a,
        (1, 0, 1, 0): b,
        (0, 1, 1, 0): a,
        (0, 0, 0, 0): c,
        (0, 0, 1, 1): a,
        (0, 1, 0, 1): b,
        (1, 0, 0, 1): a,
        (1, 1, 1, 1): c,
    }
    flat = [entries.get((i0, i1, i2, i3), field.zero)
            for i0 in range(2) for i1 in range(2) for i2 in range(2) for i3 in range(2)]
    return Quintuple(Tensor(field, (2, 2, 2, 2), flat, SLOT_LABELS))


def contraction_matrix(q: Quintuple, j: int) -> Matrix:
    """The 4x4 matrix of V_j^* x V_{j+1}^* -> V_{j+2} x V_{j+3},
    phi x chi -> <phi x chi, w>; indices mod 4, multi-indices row-major."""
    j %= 4
    cols = (j, (j + 1) % 4)
    rows = ((j + 2) % 4, (j + 3) % 4)
    return q.w.reshape(rows, cols)


@dataclass(frozen=True)
class PureWitness:
    """A nonzero pure functional pair annihilating w at one slot pair.

    Coordinates live in the ground field, or in
    QuadraticExtension(field, extension_disc) when no rational witness
    exists (the discriminant certificate case).
    """

    phi: tuple
    chi: tuple
    extension_disc: object = None


@dataclass(frozen=True)
class SlotPairReport:
    j: int
    passed: bool
    kernel_dim: int
    witness: PureWitness | None = None
    certificate: str = ""


@dataclass(frozen=True)
class GeometricityReport:
    pairs: tuple

    @property
    def passed(self) -> bool:
        return all(p.passed for p in self.pairs)

    def failing_pairs(self) -> list[int]:
        return [p.j for p in self.pairs if not p.passed]


def _rank_one_factor(k00, k01, k10, k11, field):
    """Factor a nonzero singular 2x2 matrix as u x v (kappa[a][b] = u_a v_b)."""
    if k00 or k01:
        v = (k00, k01)
        if k00:
            lam = k10 / k00
        else:
            lam = k11 / k01
        u = (field.one, lam)
    else:
        v = (k10, k11)
        u = (field.zero, field.one)
    return u, v


def _pure_kernel_witness(kernel: Matrix, field):
    """A pure tensor in the column span of a >=2 dimensional kernel of
    2x2 matrices, over the field itself or a quadratic extension."""
    v1, v2 = kernel.col(0), kernel.col(1)
    det1 = v1[0] * v1[3] - v1[1] * v1[2]
    det2 = v2[0] * v2[3] - v2[1] * v2[2]
    polar = v1[0] * v2[3] + v2[0] * v1[3] - v1[1] * v2[2] - v2[1] * v1[2]
    form = BinaryForm(field, (det1, polar, det2))
    if form.is_zero():
        if det1 == field.zero and any(v1):
            u, v = _rank_one_factor(v1[0], v1[1], v1[2], v1[3], field)
            return PureWitness(u, v), "kernel basis vector is itself singular"
        u, v = _rank_one_factor(v2[0], v2[1], v2[2], v2[3], field)
        return PureWitness(u, v), "kernel basis vector is itself singular"
    rs = root_structure(form)
    if rs.kind in ("split-rational", "double-rational"):
        s, t = rs.roots[0]
        combo = [s * a + t * b for a, b in zip(v1, v2)]
        u, v = _rank_one_factor(combo[0], combo[1], combo[2], combo[3], field)
        return PureWitness(u, v), "rational singular combination of kernel vectors"
    ext = rs.extension
    s, t = rs.roots[0]
    lift = lambda x: ext.of(x)
    combo = [s * lift(a) + t * lift(b) for a, b in zip(v1, v2)]
    u, v = _rank_one_factor(combo[0], combo[1], combo[2], combo[3], ext)
    return (
        PureWitness(u, v, extension_disc=rs.discriminant),
        f"singular combination exists only over theta^2 = {rs.discriminant}",
    )


def is_geometric(q: Quintuple) -> GeometricityReport:
    """Per-slot-pair geometricity report with explicit witnesses on failure."""
    field = q.field
    reports = []
    for j in range(4):
        M = contraction_matrix(q, j)
        K = M.kernel_basis()
        kd = K.ncols
        if kd == 0:
            reports.append(SlotPairReport(j, True, 0, certificate="contraction matrix invertible"))
            continue
        if kd == 1:
            v = K.col(0)
            det = v[0] * v[3] - v[1] * v[2]
            if det:
                reports.append(SlotPairReport(
                    j, True, 1,
                    certificate="kernel spanned by a nonsingular 2x2 element",
                ))
            else:
                u, w = _rank_one_factor(v[0], v[1], v[2], v[3], field)
                reports.append(SlotPairReport(
                    j, False, 1, witness=PureWitness(u, w),
                    certificate="kernel spanned by a singular 2x2 element",
                ))
            continue
        witness, note = _pure_kernel_witness(K, field)
        reports.append(SlotPairReport(j, False, kd, witness=witness, certificate=note))
    return GeometricityReport(tuple(reports))


def verify_witness(q: Quintuple, j: int, witness: PureWitness) -> bool:
    """Check that <phi x chi, w> = 0 at slot pair (j, j+1)."""
    w = q.w
    if witness.extension_disc is not None:
        ext = QuadraticExtension(q.field, witness.extension_disc)
        w = Tensor(ext, w.shape, [ext.of(x) for x in w.entries], w.slots)
    first = w.contract(j % 4, witness.phi)
    # after removing slot j, slot (j+1) mod 4 sits at position j if j < 3, else 0
    pos = j % 4 if j % 4 < 3 else 0
    second = first.contract(pos, witness.chi)
    return second.is_zero()


@dataclass(frozen=True)
class RelationData:
    """R_0, R_1 and the one-dimensional intersection line carrying w."""

    r0: Matrix        # basis of R_0 inside V0xV1xV2 (8-dim ambient)
    r1: Matrix        # basis of R_1 inside V1xV2xV3
    w_line: Matrix    # basis of (R0 x V3) ∩ (V0 x R1) inside the 16-dim space
    issues: tuple = ()

    @property
    def valid(self) -> bool:
        return not self.issues

    @property
    def dims(self) -> tuple[int, int, int]:
        return (self.r0.ncols, self.r1.ncols, self.w_line.ncols)


def relations(q: Quintuple) -> RelationData:
    """R_0 = span of slot-3 contractions of w, R_1 = span of slot-0
    contractions; flags (not exceptions) when a rank drops below the
    regular values (2, 2, 1)."""
    field = q.field
    e0 = (field.one, field.zero)
    e1 = (field.zero, field.one)
    r0 = column_space_basis(Matrix.from_cols(
        field, [q.w.contract(3, f).flatten() for f in (e0, e1)], nrows=8))
    r1 = column_space_basis(Matrix.from_cols(
        field, [q.w.contract(0, f).flatten() for f in (e0, e1)], nrows=8))

    # R0 x V3 and V0 x R1 inside the full 16-dim tensor space
    cols_a = []
    for k in range(r0.ncols):
        r = r0.col(k)   # indexed by 4a+2b+c
        for d in range(2):
            vec = [field.zero] * 16
            for i in range(8):
                vec[2 * i + d] = r[i]
            cols_a.append(tuple(vec))
    cols_b = []
    for a in range(2):
        for k in range(r1.ncols):
            r = r1.col(k)   # indexed by 4b+2c+d
            vec = [field.zero] * 16
            for i in range(8):
                vec[8 * a + i] = r[i]
            cols_b.append(tuple(vec))
    span_a = Matrix.from_cols(field, cols_a, nrows=16)
    span_b = Matrix.from_cols(field, cols_b, nrows=16)
    w_line = intersect_subspaces(span_a, span_b)

    issues = []
    if r0.ncols != 2:
        issues.append(f"dim R0 = {r0.ncols} != 2")
    if r1.ncols != 2:
        issues.append(f"dim R1 = {r1.ncols} != 2")
    if w_line.ncols != 1:
        issues.append(f"dim (R0xV3 ∩ V0xR1) = {w_line.ncols} != 1")
    elif not span_contains(w_line, q.w.flatten()):
        issues.append("w does not span the intersection line")
    return RelationData(r0, r1, w_line, tuple(issues))


@lru_cache(maxsize=None)
def hilbert_dims(n: int) -> int:
    """Coefficient of t^n in 1/(1 - 2t + 2t^3 - t^4) = 1/((1-t)^2 (1-t^2)).

    This is the Hilbert series forced by the minimal free resolution shape
    0 -> P_{i+4} -> P_{i+3}^2 -> P_{i+1}^2 -> P_i -> S_i -> 0.
    """
    if n < 0:
        return 0
    if n == 0:
        return 1
    return 2 * hilbert_dims(n - 1) - 2 * hilbert_dims(n - 3) + hilbert_dims(n - 4)


@dataclass(frozen=True)
class DimTable:
    """Window dims A_{i,j}, 0 <= i <= j <= 4, against the resolution values."""

    cells: dict
    mismatches: tuple

    @property
    def valid(self) -> bool:
        return not self.mismatches

    def computed(self, i: int, j: int) -> int:
        return self.cells[(i, j)][0]

    def expected(self, i: int, j: int) -> int:
        return self.cells[(i, j)][1]


def truncated_dims(q: Quintuple) -> DimTable:
    """A_{i,j} by quotient linear algebra on the window 0 <= i <= j <= 4.

    Widths 0..2 have no relations (relations are cubic); width 3 quotients
    by R_i; width 4 quotients by R0 x V3 + V0 x R1.
    """
    rel = relations(q)
    dim_r0, dim_r1 = rel.r0.ncols, rel.r1.ncols
    dim_w = rel.w_line.ncols
    cells = {}
    for i in range(5):
        cells[(i, i)] = (1, hilbert_dims(0))
    for i in range(4):
        cells[(i, i + 1)] = (2, hilbert_dims(1))
    for i in range(3):
        cells[(i, i + 2)] = (4, hilbert_dims(2))
    cells[(0, 3)] = (8 - dim_r0, hilbert_dims(3))
    cells[(1, 4)] = (8 - dim_r1, hilbert_dims(3))
    # dim(R0xV3 + V0xR1) = 2 dimR0 + 2 dimR1 - dim intersection
    cells[(0, 4)] = (16 - (2 * dim_r0 + 2 * dim_r1 - dim_w), hilbert_dims(4))
    mismatches = tuple(sorted(k for k, (got, want) in cells.items() if got != want))
    return DimTable(cells, mismatches)
