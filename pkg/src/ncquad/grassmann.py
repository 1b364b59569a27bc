"""Lines in the Grassmannian G = Gr(1,3) of lines in P^3.

A point of G is stored through its 2-dimensional kernel inside the fixed
4-dimensional space V, together with the Pluecker vector of 2x2 minors.
An embedded line comes from a factorization phi: V ~ U0 x U1 (a 4x4
invertible matrix); its points are the kernels

    K(s:t) = phi^{-1}( span(-t, s) x U1 )        (contracted factor 0)
    K(s:t) = phi^{-1}( U0 x span(-t, s) )        (contracted factor 1)

so the parametrizing P^1 is the projectivization of the contracted
factor.  Two such lines are compared exactly: whether some plane of one
family equals a plane of the other reduces to common roots of three
binary quadratics (the determinants of the 2x2 reshapes of a basis of
the moving plane and their polar form), decided by gcd and discriminant
arithmetic, with meet parameters returned exactly, in a quadratic
extension when necessary.
"""

from __future__ import annotations

from dataclasses import dataclass

from .forms import BinaryForm, binary_form_gcd, root_structure
from .linalg import Matrix

PLUECKER_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


@dataclass(frozen=True)
class GPoint:
    """A point of Gr(1,3): 2-dim kernel in V plus its Pluecker vector."""

    kernel: Matrix
    pluecker: tuple

    @classmethod
    def from_kernel(cls, kernel: Matrix) -> "GPoint":
        if kernel.nrows != 4 or kernel.ncols != 2:
            raise ValueError("kernel must be a 4x2 basis matrix")
        if kernel.rank() != 2:
            raise ValueError("kernel basis is degenerate")
        field = kernel.field
        p = []
        for i, j in PLUECKER_PAIRS:
            p.append(kernel[i, 0] * kernel[j, 1] - kernel[j, 0] * kernel[i, 1])
        # normalize: first nonzero coordinate 1
        for x in p:
            if x:
                inv = field.one / x
                p = [inv * y for y in p]
                break
        pt = cls(kernel, tuple(p))
        if not pt.satisfies_pluecker():
            raise AssertionError("Pluecker relation violated; minor bookkeeping bug")
        return pt

    def satisfies_pluecker(self) -> bool:
        p01, p02, p03, p12, p13, p23 = self.pluecker
        return not (p01 * p23 - p02 * p13 + p03 * p12)

    def same_point(self, other: "GPoint") -> bool:
        return self.pluecker == other.pluecker


def point_from_quotient(f: Matrix) -> GPoint:
    """Point of G from a rank-2 quotient map f: V ->> k^2 (a 2x4 matrix)."""
    if f.nrows != 2 or f.ncols != 4:
        raise ValueError("expected a 2x4 matrix")
    if f.rank() != 2:
        raise ValueError("quotient map must have rank 2")
    return GPoint.from_kernel(f.kernel_basis())


@dataclass(frozen=True)
class EmbeddedLine:
    """A line P^1 -> G induced by phi: V ~ U0 x U1 and a contracted factor."""

    phi: Matrix
    contracted_factor: int

    def __post_init__(self):
        if self.phi.nrows != 4 or self.phi.ncols != 4:
            raise ValueError("phi must be 4x4")
        if self.contracted_factor not in (0, 1):
            raise ValueError("contracted factor is 0 or 1")

    @property
    def field(self):
        return self.phi.field

    def kernel_at(self, s, t, fld=None) -> Matrix:
        """Basis of K(s:t) as a 4x2 matrix, optionally over an extension."""
        fld = fld or self.field
        s, t = fld.of(s), fld.of(t)
        if not (s or t):
            raise ValueError("(0:0) is not a parameter")
        phi_inv = self.phi.inverse()
        if fld != self.field:
            phi_inv = lift_matrix(phi_inv, fld)
        cols = []
        for b in range(2):
            vec = [fld.zero] * 4
            if self.contracted_factor == 0:
                vec[0 * 2 + b] = -t
                vec[1 * 2 + b] = s
            else:
                vec[b * 2 + 0] = -t
                vec[b * 2 + 1] = s
            cols.append(phi_inv.apply(vec))
        return Matrix.from_cols(fld, cols, nrows=4)

    def point_at(self, s, t) -> GPoint:
        return GPoint.from_kernel(self.kernel_at(s, t))


def line_from_phi(phi: Matrix, contracted_factor: int = 0) -> EmbeddedLine:
    """Embedded line from an invertible factorization matrix.

    ``contracted_factor`` picks which tensor factor of the codomain is
    contracted away by the parameter functional.
    """
    if phi.det() == phi.field.zero:
        raise ValueError("phi must be invertible")
    return EmbeddedLine(phi, contracted_factor)


def lift_matrix(m: Matrix, ext) -> Matrix:
    return Matrix(ext, [[ext.of(x) for x in row] for row in m.rows], ncols=m.ncols)


@dataclass(frozen=True)
class SplittingTypes:
    """Splitting types of the tautological bundles and the normal bundle
    along an embedded line, plus the degree of the restricted canonical
    bundle of G."""

    subbundle: tuple          # R restricted: (-1, -1)
    quotient: tuple           # Q restricted: (1, 1)
    normal: tuple             # N: (2, 2, 2)
    omega_degree: int         # deg of omega_G restricted: -8
    immersion_certified: bool


def splitting_type_restrictions(line: EmbeddedLine) -> SplittingTypes:
    """((-1,-1), (1,1), (2,2,2)) with an exact immersion certificate.

    The parametrized kernel basis is linear in the chart parameter; on each
    affine chart the 4x4 determinant [K(p) | dK(p)] is a polynomial of
    degree <= 4 which must be a nonzero constant (the tangent map into
    Hom(K, V/K) never vanishes and the cokernel has constant rank 3).
    Five sample points per chart pin the polynomial down exactly.
    """
    field = line.field
    phi_inv = line.phi.inverse()

    def vec(u0, u1, b):
        v = [field.zero] * 4
        if line.contracted_factor == 0:
            v[b] = u0
            v[2 + b] = u1
        else:
            v[2 * b] = u0
            v[2 * b + 1] = u1
        return phi_inv.apply(v)

    def chart_dets(chart):
        dets = []
        for k in range(5):
            s = field.of(k)
            if chart == 0:   # t = 1, derivative d/ds ~ (0, 1)
                cols = [vec(-field.one, s, 0), vec(-field.one, s, 1),
                        vec(field.zero, field.one, 0), vec(field.zero, field.one, 1)]
            else:            # s = 1, derivative d/dt ~ (-1, 0)
                cols = [vec(-s, field.one, 0), vec(-s, field.one, 1),
                        vec(-field.one, field.zero, 0), vec(-field.one, field.zero, 1)]
            dets.append(Matrix.from_cols(field, cols, nrows=4).det())
        return dets

    certified = True
    for chart in (0, 1):
        dets = chart_dets(chart)
        if (not dets[0]) or any(d != dets[0] for d in dets[1:]):
            certified = False
    # Degrees: deg Hom(R,Q)|_L = 8, so N has degree 8 - 2 = 6 in type (2,2,2);
    # adjunction deg omega_P1 = deg omega_G|_L + deg det N gives -8.
    return SplittingTypes((-1, -1), (1, 1), (2, 2, 2), -8, certified)


@dataclass(frozen=True)
class MeetWitness:
    """An intersection point: parameters on both lines, plus the minimal
    polynomial data when the coordinates need a quadratic extension."""

    param_l1: tuple
    param_l0: tuple
    extension_disc: object = None


@dataclass(frozen=True)
class LineRelation:
    verdict: str                     # "disjoint" | "meet" | "coincide"
    count: int = 0
    witnesses: tuple = ()
    flag: str = ""
    psi_reshuffle_rank: int = 0
    orientations: tuple = (0, 0)


def _swap_matrix(field) -> Matrix:
    rows = [[field.zero] * 4 for _ in range(4)]
    for a in range(2):
        for b in range(2):
            rows[2 * b + a][2 * a + b] = field.one
    return Matrix(field, rows)


def _det2(v):
    return v[0] * v[3] - v[1] * v[2]


def _polar2(u, v):
    return u[0] * v[3] + v[0] * u[3] - u[1] * v[2] - v[1] * u[2]


def _plane_type(n1, n2, field):
    """Type of a 2-dim plane of 2x2-singular matrices: "left" when all
    columns share one direction (plane = l x U1), "right" when all rows do
    (plane = U0 x m)."""
    col_stack = Matrix.from_cols(
        field,
        [(n1[0], n1[2]), (n1[1], n1[3]), (n2[0], n2[2]), (n2[1], n2[3])],
        nrows=2,
    )
    if col_stack.rank() == 1:
        return "left"
    row_stack = Matrix.from_cols(
        field,
        [(n1[0], n1[1]), (n1[2], n1[3]), (n2[0], n2[1]), (n2[2], n2[3])],
        nrows=2,
    )
    if row_stack.rank() == 1:
        return "right"
    return "neither"


def _left_direction(n1, n2, field):
    """The common column direction l of a left-type plane."""
    for v in (n1, n2):
        col0 = (v[0], v[2])
        col1 = (v[1], v[3])
        for col in (col0, col1):
            if col[0] or col[1]:
                return col
    raise AssertionError("zero plane")


def reshuffle_rank(psi: Matrix) -> int:
    """Rank of the partial transpose R[2i'+i][2j'+j] = psi[2i'+j'][2i+j];
    rank one detects Kronecker-decomposable maps."""
    field = psi.field
    rows = [[field.zero] * 4 for _ in range(4)]
    for i1 in range(2):
        for i0 in range(2):
            for j1 in range(2):
                for j0 in range(2):
                    rows[2 * i1 + i0][2 * j1 + j0] = psi[2 * i1 + j1, 2 * i0 + j0]
    return Matrix(field, rows).rank()


def line_relation(l0: EmbeddedLine, l1: EmbeddedLine) -> LineRelation:
    """Exact classifier for two embedded lines in the same G.

    Coordinates are normalized so that l0's family is the standard
    left family {l x U1}; l1's moving plane P(k) is spanned by two
    vectors linear in the parameter k.  P(k) is a point of l0's family
    iff every element of P(k) is a singular 2x2 matrix with a common
    left (column) factor; full decomposability is three binary
    quadratics in k, and the verdict follows from their gcd.
    """
    field = l0.field
    if l1.field != field:
        raise ValueError("lines over different fields")
    T = l0.phi if l0.contracted_factor == 0 else _swap_matrix(field) * l0.phi
    M = T * l1.phi.inverse()

    # moving plane basis n_i(k) = kx * A_i + ky * B_i
    if l1.contracted_factor == 0:
        A = [M.col(2 + b) for b in range(2)]
        B = [tuple(-x for x in M.col(b)) for b in range(2)]
    else:
        A = [M.col(2 * a + 1) for a in range(2)]
        B = [tuple(-x for x in M.col(2 * a)) for a in range(2)]

    q1 = BinaryForm(field, (_det2(A[0]), _polar2(A[0], B[0]), _det2(B[0])))
    q2 = BinaryForm(field, (_det2(A[1]), _polar2(A[1], B[1]), _det2(B[1])))
    bform = BinaryForm(field, (
        _polar2(A[0], A[1]),
        _polar2(A[0], B[1]) + _polar2(B[0], A[1]),
        _polar2(B[0], B[1]),
    ))

    psi = l1.phi * l0.phi.inverse()
    rr = reshuffle_rank(psi)
    orientations = (l0.contracted_factor, l1.contracted_factor)

    def plane_at(kx, ky, fld):
        lift = (lambda v: tuple(fld.of(x) for x in v)) if fld != field else (lambda v: v)
        n1 = tuple(kx * a + ky * b for a, b in zip(lift(A[0]), lift(B[0])))
        n2 = tuple(kx * a + ky * b for a, b in zip(lift(A[1]), lift(B[1])))
        return n1, n2

    if q1.is_zero() and q2.is_zero() and bform.is_zero():
        # every plane of the family is fully decomposable; the ruling type
        # is constant along the family, but sample three parameters anyway
        types = set()
        for kx, ky in ((field.one, field.zero), (field.zero, field.one), (field.one, field.one)):
            n1, n2 = plane_at(kx, ky, field)
            types.add(_plane_type(n1, n2, field))
        if types != {"left"} and types != {"right"}:
            raise AssertionError(f"inconsistent decomposable family types: {types}")
        if types == {"left"}:
            return LineRelation("coincide", psi_reshuffle_rank=rr, orientations=orientations)
        return LineRelation(
            "disjoint",
            flag="opposite decomposable family",
            psi_reshuffle_rank=rr,
            orientations=orientations,
        )

    gcd = binary_form_gcd([f for f in (q1, q2, bform) if not f.is_zero()])
    if gcd.degree == 0:
        return LineRelation("disjoint", psi_reshuffle_rank=rr, orientations=orientations)

    # distinct projective roots of the gcd, possibly in an extension
    if gcd.degree == 1:
        a, b = gcd.coeffs  # a*s + b*t
        roots = [((-b, a), None)]
    else:
        rs = root_structure(gcd)
        if rs.kind == "double-rational":
            roots = [(rs.roots[0], None)]
        elif rs.kind == "split-rational":
            roots = [(rs.roots[0], None), (rs.roots[1], None)]
        else:
            roots = [(r, rs.discriminant) for r in rs.roots]

    witnesses = []
    for (kx, ky), disc in roots:
        if disc is None:
            fld = field
        else:
            fld = kx.field  # the QuadraticExtension built by root_structure
        n1, n2 = plane_at(kx, ky, fld)
        ptype = _plane_type(n1, n2, fld)
        if ptype == "neither":
            # at a gcd root every vector of the plane is singular, so the
            # plane must sit in one ruling
            raise AssertionError("plane at a common root is not decomposable")
        if ptype == "left":
            ell = _left_direction(n1, n2, fld)
            witnesses.append(MeetWitness(
                param_l1=(kx, ky),
                param_l0=(ell[1], -ell[0]),
                extension_disc=disc,
            ))
        # right-type roots are decomposable planes of the opposite ruling,
        # not points of l0's family
    if witnesses:
        return LineRelation(
            "meet",
            count=len(witnesses),
            witnesses=tuple(witnesses),
            psi_reshuffle_rank=rr,
            orientations=orientations,
        )
    return LineRelation(
        "disjoint",
        flag="decomposable only at opposite-ruling parameters",
        psi_reshuffle_rank=rr,
        orientations=orientations,
    )


def hom_R_K_dim(line: EmbeddedLine) -> int:
    """dim of the kernel of the 6x8 section-restriction matrix

        H0(O_L(1)) x V* -> H0(O_L(2)) x U*,

    where a functional gamma in V* restricts along the line to the section
    p -> gamma|_{K(p)}, i.e. (u0 s + u1 t)(alpha_1 s - alpha_0 t) * beta
    on pure gamma = alpha x beta (contracted factor 0; roles of alpha and
    beta swap for factor 1).  Conjugation by phi carries V* coordinates to
    U0* x U1* coordinates."""
    field = line.field
    phi_inv = line.phi.inverse()
    # products (u0 s + u1 t) * (k-component of the contracted functional):
    # u index 0 -> s, 1 -> t; contracted-factor basis index 0 -> -t, 1 -> s
    poly = {
        (0, 0): (0, -1, 0),   # s * (-t)
        (0, 1): (1, 0, 0),    # s * s
        (1, 0): (0, 0, -1),   # t * (-t)
        (1, 1): (0, 1, 0),    # t * s
    }
    cols = []
    for u in range(2):
        for c in range(4):
            g = phi_inv.row(c)   # gamma_c in U0* x U1* coordinates
            col = [field.zero] * 6
            for a in range(2):
                for b in range(2):
                    coeff = g[2 * a + b]
                    if not coeff:
                        continue
                    if line.contracted_factor == 0:
                        pol, out = poly[(u, a)], b
                    else:
                        pol, out = poly[(u, b)], a
                    for mi, pc in enumerate(pol):
                        if pc:
                            col[3 * out + mi] = col[3 * out + mi] + field.of(pc) * coeff
            cols.append(tuple(col))
    m = Matrix.from_cols(field, cols, nrows=6)
    return 8 - m.rank()


def hom_R_O_dim() -> int:
    """dim Hom(R, O_G) = 4 under the identification H0(G, R*) ~ V*."""
    return 4
