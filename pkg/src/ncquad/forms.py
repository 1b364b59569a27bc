"""Binary forms (homogeneous polynomials in two variables s, t) and the
exact decision procedures built on them: gcd over the ground field and
root classification of quadratics over the algebraic closure.

Coefficients are stored by descending s-power: a form of degree d is
sum(coeffs[i] * s^(d-i) * t^i).  A common projective root over the
closure exists iff the gcd has positive degree, so "no common root" is
witnessed by a degree-0 gcd, never by numerics.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fields import PrimeField, QuadraticExtension, RationalField


class BinaryForm:
    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = tuple(field.of(c) for c in coeffs)
        if not self.coeffs:
            raise ValueError("a form needs at least one coefficient")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return all(not c for c in self.coeffs)

    def evaluate(self, s, t):
        s, t = self.field.of(s), self.field.of(t)
        d = self.degree
        acc = self.field.zero
        sp = [self.field.one]
        tp = [self.field.one]
        for _ in range(d):
            sp.append(sp[-1] * s)
            tp.append(tp[-1] * t)
        for i, c in enumerate(self.coeffs):
            if c:
                acc = acc + c * sp[d - i] * tp[i]
        return acc

    def monic(self) -> "BinaryForm":
        for c in self.coeffs:
            if c:
                inv = self.field.one / c
                return BinaryForm(self.field, [inv * x for x in self.coeffs])
        return self

    def __eq__(self, other):
        return (
            isinstance(other, BinaryForm)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self) -> str:
        d = self.degree
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"({c})*s^{d - i}*t^{i}")
        return " + ".join(terms) if terms else "0"


# -- univariate helpers (ascending coefficient lists) ---------------------


def _strip(p):
    while p and not p[-1]:
        p = p[:-1]
    return p


def _poly_mod(a, b, field):
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    inv = field.one / lb
    while len(a) - 1 >= db and _strip(a):
        a = _strip(a)
        if len(a) - 1 < db:
            break
        f = a[-1] * inv
        shift = len(a) - 1 - db
        for i, c in enumerate(b):
            a[shift + i] = a[shift + i] - f * c
        a = a[:-1]
    return _strip(a)


def _poly_gcd(a, b, field):
    a, b = _strip(list(a)), _strip(list(b))
    while b:
        a, b = b, _poly_mod(a, b, field)
    return a


def binary_form_gcd(forms: list[BinaryForm]) -> BinaryForm:
    """Monic gcd of a non-empty list of binary forms over QQ or F_p.

    Degree 0 means no common projective root over the algebraic closure.
    If every input is identically zero, the zero form (degree 0, zero
    coefficient) is returned; callers treat that as "identically
    dependent".
    """
    if not forms:
        raise ValueError("empty form list")
    field = forms[0].field
    if not isinstance(field, (RationalField, PrimeField)):
        raise ValueError("binary_form_gcd expects forms over QQ or a prime field")
    for f in forms:
        if f.field != field:
            raise ValueError("forms over different fields")
    nonzero = [f for f in forms if not f.is_zero()]
    if not nonzero:
        return BinaryForm(field, [field.zero])

    s_mult = None
    t_mult = None
    polys = []
    for f in nonzero:
        d = f.degree
        idx = [i for i, c in enumerate(f.coeffs) if c]
        hi, lo = max(idx), min(idx)
        # f = s^(d-hi) * t^lo * core, core has nonzero ends
        sm, tm = d - hi, lo
        s_mult = sm if s_mult is None else min(s_mult, sm)
        t_mult = tm if t_mult is None else min(t_mult, tm)
        core = f.coeffs[lo : hi + 1]
        # dehomogenize at t=1: ascending powers of s
        polys.append(list(reversed(core)))
    g = polys[0]
    for p in polys[1:]:
        g = _poly_gcd(g, p, field)
        if len(g) == 1:
            break
    if not g:
        g = [field.one]
    du = len(g) - 1
    total = du + s_mult + t_mult
    coeffs = [field.zero] * (total + 1)
    for k, c in enumerate(g):
        # term c * s^(k + s_mult) * t^(du - k + t_mult)
        coeffs[total - (k + s_mult)] = c
    return BinaryForm(field, coeffs).monic()


@dataclass(frozen=True)
class RootStructure:
    """Classification of a nonzero binary quadratic over the closure.

    kind is one of "split-rational" (two distinct roots in the ground
    field), "double-rational", or "irreducible-quadratic"; roots are
    projective pairs (s, t), living in QuadraticExtension(field, disc)
    in the irreducible case.
    """

    kind: str
    discriminant: object
    roots: tuple
    extension: object = None


def root_structure(f: BinaryForm) -> RootStructure:
    if f.degree != 2:
        raise ValueError("root_structure expects a quadratic")
    if f.is_zero():
        raise ValueError("root_structure of the zero form")
    field = f.field
    a, b, c = f.coeffs  # a*s^2 + b*s*t + c*t^2
    disc = b * b - 4 * a * c
    if not disc:
        if a:
            root = (-b, 2 * a)
        elif b:
            # disc = b^2 = 0 contradicts b != 0
            raise AssertionError("unreachable")
        else:
            root = (field.one, field.zero)  # c*t^2
        return RootStructure("double-rational", disc, (root,))
    if field.is_square(disc):
        if a:
            r = field.sqrt(disc)
            roots = ((-b + r, 2 * a), (-b - r, 2 * a))
        else:
            # t * (b*s + c*t): roots (1:0) and (c:-b), distinct since b != 0
            roots = ((field.one, field.zero), (c, -b))
        return RootStructure("split-rational", disc, roots)
    ext = QuadraticExtension(field, disc)
    th = ext.theta
    roots = ((ext.of(-b) + th, ext.of(2 * a)), (ext.of(-b) - th, ext.of(2 * a)))
    return RootStructure("irreducible-quadratic", disc, roots, extension=ext)
