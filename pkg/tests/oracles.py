"""Dumb reference implementations used as independent oracles in tests.

Everything here is written against the public object-level API only
(element arithmetic through operators, table multiplication by definition),
deliberately avoiding the library's criterion formulas, Gaussian
elimination and index kernels.
"""

import itertools

from ecalg.algebra import StructureMatrix, BasisChange, vectors


def ec_pair_scan(A):
    """Definition of endo-commutativity: u^2 v^2 = (uv)^2 on every pair."""
    vecs = vectors(A.field)
    for u in vecs:
        su = A.square(u)
        for v in vecs:
            if A.multiply(su, A.square(v)) != A.square(A.multiply(u, v)):
                return False
    return True


def straight_scan(A):
    """First x with x and x^2 linearly independent, scanning all vectors."""
    for x in vectors(A.field):
        s = A.square(x)
        if x[0] * s[1] - x[1] * s[0]:
            return x
    return None


def anti_comm_scan(A):
    zero = A.field.zero()
    vecs = vectors(A.field)
    for u in vecs:
        for v in vecs:
            m = A.multiply(u, v)
            n = A.multiply(v, u)
            if m[0] + n[0] != zero or m[1] + n[1] != zero:
                return False
    return True


def commutative_scan(A):
    vecs = vectors(A.field)
    return all(A.multiply(u, v) == A.multiply(v, u)
               for u in vecs for v in vecs)


def associative_scan(A):
    vecs = vectors(A.field)
    for u in vecs:
        for v in vecs:
            uv = A.multiply(u, v)
            for w in vecs:
                if A.multiply(uv, w) != A.multiply(u, A.multiply(v, w)):
                    return False
    return True


def unit_scan(A):
    f = A.field
    e = (f.one(), f.zero())
    fv = (f.zero(), f.one())
    for u in vectors(f):
        if (A.multiply(u, e) == e and A.multiply(e, u) == e
                and A.multiply(u, fv) == fv and A.multiply(fv, u) == fv):
            return u
    return None


def rank_oracle(field, rows):
    """Largest linearly independent subset of rows, by scanning all
    coefficient combinations."""
    rows = [tuple(field(v) for v in r) for r in rows]
    elems = field.elements()
    zero = field.zero()
    best = 0
    n = len(rows)
    for mask in range(1, 1 << n):
        subset = [rows[i] for i in range(n) if mask >> i & 1]
        k = len(subset)
        if k <= best:
            continue
        independent = True
        for combo in itertools.product(elems, repeat=k):
            if not any(combo):
                continue
            acc0 = zero
            acc1 = zero
            for c, row in zip(combo, subset):
                acc0 = acc0 + c * row[0]
                acc1 = acc1 + c * row[1]
            if acc0 == zero and acc1 == zero:
                independent = False
                break
        if independent:
            best = k
    return best


def all_tables(field):
    """Every structure matrix over the field, in deterministic index order."""
    elems = field.elements()
    for combo in itertools.product(elems, repeat=8):
        yield StructureMatrix.from_entries(field, combo)


def random_table(field, rng):
    q = field.order
    return StructureMatrix.from_entries(
        field, [field.element(rng.randrange(q)) for _ in range(8)])


def random_basis_change(field, rng, span=None):
    """Uniform-ish random invertible 2x2 matrix by rejection."""
    while True:
        if field.is_finite:
            vals = [field.element(rng.randrange(field.order)) for _ in range(4)]
        else:
            vals = [field(rng.randrange(-(span or 9), (span or 9) + 1))
                    for _ in range(4)]
        x, y, z, w = vals
        if x * w - y * z:
            return BasisChange(field, x, y, z, w)
