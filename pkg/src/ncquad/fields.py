"""Exact scalars: arbitrary-precision rationals, odd prime fields, and
degree-2 extensions of either.

Every field object exposes ``zero``/``one``, ``of`` (coercion from ints,
``Fraction``, strings and own elements), ``format``/``parse`` for exact
string round-trips, and decidable element equality.  Questions about the
algebraic closure are never answered numerically: they are reduced to
square tests (``is_square``/``sqrt``) and to explicit arithmetic in
``QuadraticExtension``, i.e. in F[theta]/(theta^2 - d).
"""

from __future__ import annotations

import math
from fractions import Fraction

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid far beyond 64-bit inputs."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _sqrt_mod_p(a: int, p: int) -> int | None:
    """A square root of a mod p, or None when a is a non-residue."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # Tonelli-Shanks
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


class RationalField:
    """The rationals, with elements stored as ``fractions.Fraction``.

    Fraction keeps values in lowest terms with positive denominator, which
    is exactly the normal form required here.
    """

    characteristic = 0

    def of(self, x) -> Fraction:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return Fraction(x)
        raise TypeError(f"cannot coerce {x!r} into QQ")

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def format(self, x: Fraction) -> str:
        return str(x)

    def parse(self, s: str) -> Fraction:
        return Fraction(s)

    def is_square(self, x: Fraction) -> bool:
        x = self.of(x)
        if x < 0:
            return False
        n, d = x.numerator, x.denominator
        return math.isqrt(n) ** 2 == n and math.isqrt(d) ** 2 == d

    def sqrt(self, x: Fraction) -> Fraction:
        x = self.of(x)
        if not self.is_square(x):
            raise ValueError(f"{x} is not a square in QQ")
        return Fraction(math.isqrt(x.numerator), math.isqrt(x.denominator))

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("QQ")

    def __repr__(self) -> str:
        return "QQ"


QQ = RationalField()


class FpElement:
    """An element of F_p, stored as the canonical representative 0..p-1."""

    __slots__ = ("value", "field")

    def __init__(self, value: int, field: "PrimeField"):
        self.value = value % field.p
        self.field = field

    def _coerce(self, other):
        if isinstance(other, FpElement):
            if other.field.p != self.field.p:
                raise ValueError("elements of different prime fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.of(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement(self.value + o.value, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement(self.value - o.value, self.field)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement(o.value - self.value, self.field)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement(self.value * o.value, self.field)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o.value == 0:
            raise ZeroDivisionError("division by zero in F_p")
        return FpElement(self.value * pow(o.value, self.field.p - 2, self.field.p), self.field)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __neg__(self):
        return FpElement(-self.value, self.field)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.value == o.value

    def __bool__(self) -> bool:
        return self.value != 0

    def __hash__(self):
        return hash((self.field.p, self.value))

    def __repr__(self) -> str:
        return f"{self.value} (mod {self.field.p})"


class PrimeField:
    """F_p for an odd prime p >= 5.

    Characteristics 2 and 3 are rejected: the discriminant logic used for
    closure decisions needs 2 and 3 invertible.
    """

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if p < 5:
            raise ValueError("prime fields are restricted to p >= 5")
        self.p = p
        self.characteristic = p

    def of(self, x) -> FpElement:
        if isinstance(x, FpElement):
            if x.field.p != self.p:
                raise ValueError("element of a different prime field")
            return x
        if isinstance(x, int):
            return FpElement(x, self)
        if isinstance(x, (Fraction, str)):
            f = Fraction(x)
            if f.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator of {f} vanishes mod {self.p}")
            return FpElement(f.numerator * pow(f.denominator, self.p - 2, self.p), self)
        raise TypeError(f"cannot coerce {x!r} into F_{self.p}")

    @property
    def zero(self) -> FpElement:
        return FpElement(0, self)

    @property
    def one(self) -> FpElement:
        return FpElement(1, self)

    def format(self, x: FpElement) -> str:
        return str(x.value)

    def parse(self, s: str) -> FpElement:
        return self.of(Fraction(s))

    def is_square(self, x) -> bool:
        x = self.of(x)
        return x.value == 0 or pow(x.value, (self.p - 1) // 2, self.p) == 1

    def sqrt(self, x) -> FpElement:
        x = self.of(x)
        r = _sqrt_mod_p(x.value, self.p)
        if r is None:
            raise ValueError(f"{x.value} is not a square mod {self.p}")
        return FpElement(r, self)

    def nonresidue(self) -> FpElement:
        n = 2
        while pow(n, (self.p - 1) // 2, self.p) != self.p - 1:
            n += 1
        return FpElement(n, self)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self) -> str:
        return f"GF({self.p})"


def GF(p: int) -> PrimeField:
    return PrimeField(p)


class QuadElement:
    """a + b*theta in a quadratic extension, theta^2 = disc."""

    __slots__ = ("a", "b", "field")

    def __init__(self, a, b, field: "QuadraticExtension"):
        self.a = a
        self.b = b
        self.field = field

    def _coerce(self, other):
        if isinstance(other, QuadElement):
            if other.field != self.field:
                raise ValueError("elements of different quadratic extensions")
            return other
        try:
            return self.field.of(other)
        except TypeError:
            return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadElement(self.a + o.a, self.b + o.b, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadElement(self.a - o.a, self.b - o.b, self.field)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        d = self.field.disc
        return QuadElement(self.a * o.a + self.b * o.b * d, self.a * o.b + self.b * o.a, self.field)

    __rmul__ = __mul__

    def conjugate(self):
        return QuadElement(self.a, -self.b, self.field)

    def norm(self):
        return self.a * self.a - self.b * self.b * self.field.disc

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        n = o.norm()
        if not n:
            raise ZeroDivisionError("division by zero in quadratic extension")
        num = self * o.conjugate()
        return QuadElement(num.a / n, num.b / n, self.field)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __neg__(self):
        return QuadElement(-self.a, -self.b, self.field)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def __hash__(self):
        return hash((self.field, self.a, self.b))

    def __repr__(self) -> str:
        return f"({self.a!r}) + ({self.b!r})*theta"


class QuadraticExtension:
    """F[theta]/(theta^2 - disc) for a non-square disc of the base field.

    Towers are capped at total degree 2 over QQ or F_p: extending an
    extension is rejected, since nothing downstream ever needs degree 4.
    """

    def __init__(self, base, disc):
        if isinstance(base, QuadraticExtension):
            raise ValueError("towers of quadratic extensions are not supported")
        disc = base.of(disc)
        if not disc:
            raise ValueError("discriminant must be nonzero")
        if base.is_square(disc):
            raise ValueError("discriminant is a square; extension would not be a field")
        self.base = base
        self.disc = disc
        self.characteristic = base.characteristic

    def of(self, x) -> QuadElement:
        if isinstance(x, QuadElement):
            if x.field != self:
                raise ValueError("element of a different extension")
            return x
        return QuadElement(self.base.of(x), self.base.zero, self)

    def from_pair(self, a, b) -> QuadElement:
        return QuadElement(self.base.of(a), self.base.of(b), self)

    @property
    def theta(self) -> QuadElement:
        return QuadElement(self.base.zero, self.base.one, self)

    @property
    def zero(self) -> QuadElement:
        return QuadElement(self.base.zero, self.base.zero, self)

    @property
    def one(self) -> QuadElement:
        return QuadElement(self.base.one, self.base.zero, self)

    def format(self, x: QuadElement) -> str:
        return f"{self.base.format(x.a)}+{self.base.format(x.b)}*theta"

    def minimal_polynomial(self) -> str:
        return f"theta^2 - ({self.base.format(self.disc)})"

    def __eq__(self, other):
        return (
            isinstance(other, QuadraticExtension)
            and other.base == self.base
            and other.disc == self.disc
        )

    def __hash__(self):
        return hash(("quad", self.base, str(self.disc)))

    def __repr__(self) -> str:
        return f"{self.base!r}[theta]/(theta^2 - {self.disc})"
