"""Shared test utilities: independent oracles and random samplers.

The geometricity oracle here deliberately shares no code with the
decision procedure under test: it enumerates projective pairs of
functionals over F_{p^2} = F_p[theta]/(theta^2 - nu) using raw integer
pairs, and reports the slot pairs where some nonzero pure functional
pair annihilates the tensor.
"""

from __future__ import annotations

from fractions import Fraction

from ncquad.quintuples import Quintuple, SLOT_LABELS
from ncquad.tensors import Tensor


def random_rational(rng, height=10) -> Fraction:
    return Fraction(rng.randint(-height, height), rng.randint(1, height))


def random_matrix_qq(rng, nrows, ncols, height=9):
    from ncquad.fields import QQ
    from ncquad.linalg import Matrix

    return Matrix(QQ, [[Fraction(rng.randint(-height, height)) for _ in range(ncols)]
                       for _ in range(nrows)])


def random_invertible_qq(rng, n, height=9):
    while True:
        m = random_matrix_qq(rng, n, n, height)
        if m.det():
            return m


def random_matrix_fp(rng, field, nrows, ncols):
    from ncquad.linalg import Matrix

    return Matrix(field, [[field.of(rng.randrange(field.p)) for _ in range(ncols)]
                          for _ in range(nrows)])


def random_invertible_fp(rng, field, n):
    while True:
        m = random_matrix_fp(rng, field, n, n)
        if m.det():
            return m


def random_quintuple_fp(rng, field) -> Quintuple:
    while True:
        entries = [field.of(rng.randrange(field.p)) for _ in range(16)]
        if any(e for e in entries):
            return Quintuple(Tensor(field, (2, 2, 2, 2), entries, SLOT_LABELS))


def random_type_a_triple(rng, height=20):
    """A random rational triple accepted by the type-A constructor."""
    from ncquad.quintuples import build_type_a

    while True:
        a, b, c = (Fraction(rng.randint(-height, height), rng.randint(1, height))
                   for _ in range(3))
        try:
            return (a, b, c), build_type_a(a, b, c)
        except ValueError:
            continue


# -- exhaustive pure-pair enumeration over F_{p^2} -------------------------


def _proj_line_fp2(p, nu):
    """P^1 over F_{p^2}: tuples (a0, b0, a1, b1), each coordinate a + b*theta."""
    pts = [(1, 0, x, y) for x in range(p) for y in range(p)]
    pts.append((0, 0, 1, 0))
    return pts


def _slot_tables(q: Quintuple, j: int):
    """W[a][b] = the four remaining entries once slots (j, j+1) are fixed."""
    other = [k for k in range(4) if k not in (j, (j + 1) % 4)]
    tables = [[None, None], [None, None]]
    for a in range(2):
        for b in range(2):
            vals = []
            for c in range(2):
                for d in range(2):
                    idx = [0, 0, 0, 0]
                    idx[j] = a
                    idx[(j + 1) % 4] = b
                    idx[other[0]] = c
                    idx[other[1]] = d
                    vals.append(q.w.entry(tuple(idx)).value)
            tables[a][b] = vals
    return tables


def enumeration_oracle_failing_pairs(q: Quintuple, nu: int) -> set[int]:
    """Slot pairs j where a nonzero pure pair over F_{p^2} kills the tensor.

    Pure brute force: both functionals run over all of P^1(F_{p^2}).
    """
    p = q.field.p
    points = _proj_line_fp2(p, nu)
    failing = set()
    for j in range(4):
        tables = _slot_tables(q, j)
        w00, w10 = tables[0][0], tables[1][0]
        w01, w11 = tables[0][1], tables[1][1]
        found = False
        for (a0, b0, a1, b1) in points:
            # contract slot j: v{b}[k] = phi0*W[0][b][k] + phi1*W[1][b][k]
            v0a = [(a0 * w00[k] + a1 * w10[k]) % p for k in range(4)]
            v0b = [(b0 * w00[k] + b1 * w10[k]) % p for k in range(4)]
            v1a = [(a0 * w01[k] + a1 * w11[k]) % p for k in range(4)]
            v1b = [(b0 * w01[k] + b1 * w11[k]) % p for k in range(4)]
            for (c0, d0, c1, d1) in points:
                ok = True
                for k in range(4):
                    ra = (c0 * v0a[k] + d0 * v0b[k] * nu + c1 * v1a[k] + d1 * v1b[k] * nu) % p
                    rb = (c0 * v0b[k] + d0 * v0a[k] + c1 * v1b[k] + d1 * v1a[k]) % p
                    if ra or rb:
                        ok = False
                        break
                if ok:
                    found = True
                    break
            if found:
                break
        if found:
            failing.add(j)
    return failing


def enumeration_oracle_failing_pairs_rank(q: Quintuple, nu: int) -> set[int]:
    """Same answer as the full scan, exhaustive over the first functional
    only: for fixed phi the second functional exists iff the contracted
    4x2 matrix has rank <= 1, i.e. all six 2x2 minors vanish.  Used where
    the double scan is out of reach (p = 101)."""
    p = q.field.p
    points = _proj_line_fp2(p, nu)
    failing = set()
    for j in range(4):
        tables = _slot_tables(q, j)
        w00, w10 = tables[0][0], tables[1][0]
        w01, w11 = tables[0][1], tables[1][1]
        for (a0, b0, a1, b1) in points:
            v0a = [(a0 * w00[k] + a1 * w10[k]) % p for k in range(4)]
            v0b = [(b0 * w00[k] + b1 * w10[k]) % p for k in range(4)]
            v1a = [(a0 * w01[k] + a1 * w11[k]) % p for k in range(4)]
            v1b = [(b0 * w01[k] + b1 * w11[k]) % p for k in range(4)]
            singular = True
            for k in range(4):
                if not singular:
                    break
                for l in range(k + 1, 4):
                    ma = (v0a[k] * v1a[l] + v0b[k] * v1b[l] * nu
                          - v0a[l] * v1a[k] - v0b[l] * v1b[k] * nu) % p
                    mb = (v0a[k] * v1b[l] + v0b[k] * v1a[l]
                          - v0a[l] * v1b[k] - v0b[l] * v1a[k]) % p
                    if ma or mb:
                        singular = False
                        break
            if singular:
                failing.add(j)
                break
    return failing


def nonresidue_int(p: int) -> int:
    n = 2
    while pow(n, (p - 1) // 2, p) != p - 1:
        n += 1
    return n
