"""Decidable properties of 2-dimensional algebras given by structure matrices.

Endo-commutativity is offered both ways: `is_ec_bruteforce` scans every pair
of elements (finite fields only) while `is_ec_criterion` evaluates the eight
polynomial conditions on the structure constants and works over any exact
field.  The two must always agree; the test suite pins that exhaustively
over F2/F3 and on seeded samples elsewhere.
"""

from __future__ import annotations

from .fields import NotEnumerableError, solve_linear
from . import lowlevel
from .lowlevel import ConsistencyError


def is_ec_criterion(A):
    """Endo-commutative iff the structure constants satisfy all 8 conditions."""
    a1, b1, a2, b2, a3, b3, a4, b4 = A.entries
    if (a1 * a1 * a2 + b1 * a2 * b2 + a1 * b2 * a3 + b1 * a2 * a4
            != a1 * a3 * a3 + a2 * b3 * b3 + a3 * a3 * b3 + a3 * b3 * a4):
        return False
    if (a1 * a1 * a2 + b1 * a2 * b2 + b1 * a2 * a3 + a1 * b2 * a4
            != a1 * a4 * a4 + a2 * b4 * b4 + a3 * a4 * b4 + a4 * a4 * b4):
        return False
    if (a1 * a1 * a4 + b1 * a4 * a4 + b1 * a2 * b4 + a1 * a3 * b4
            != a1 * a1 * a3 + b1 * a2 * b3 + b1 * a3 * a3 + a1 * b3 * a4):
        return False
    if (a2 * (a1 * a4 + a4 * b4 + b2 * b4)
            != a2 * (a1 * a3 + b2 * b3 + a3 * b3)):
        return False
    if (a1 * b1 * a2 + b1 * b2 * b2 + a1 * b2 * b3 + b1 * a2 * b4
            != b1 * a3 * a3 + b2 * b3 * b3 + a3 * b3 * b3 + a3 * b3 * b4):
        return False
    if (a1 * b1 * a2 + b1 * b2 * b2 + b1 * a2 * b3 + a1 * b2 * b4
            != b1 * a4 * a4 + b2 * b4 * b4 + b3 * a4 * b4 + a4 * b4 * b4):
        return False
    if (b1 * (a1 * a4 + a4 * b4 + b2 * b4)
            != b1 * (a1 * a3 + b2 * b3 + a3 * b3)):
        return False
    if (b1 * a2 * a4 + b2 * b3 * a4 + b2 * b2 * b4 + a2 * b4 * b4
            != b1 * a2 * a3 + b2 * b2 * b3 + a2 * b3 * b3 + b2 * a3 * b4):
        return False
    return True


def is_ec_bruteforce(A):
    """Endo-commutative by definition: u^2 v^2 = (uv)^2 over all q^4 pairs."""
    if not A.field.is_finite:
        raise NotEnumerableError("brute-force scan needs a finite field")
    ctx = lowlevel.ctx_for(A.field)
    return lowlevel.ec_bruteforce_idx(ctx, lowlevel.table_to_idx(A))


# rational straightness witness directions; any 4 pairwise non-proportional
# directions suffice since a nonzero binary cubic has at most 3 root lines
_Q_DIRECTIONS = ((1, 0), (0, 1), (1, 1), (1, 2), (2, 1), (1, -1))


def straightness_witness(A):
    """First element x with {x, x^2} linearly independent, or None if curled."""
    field = A.field
    if field.is_finite:
        ctx = lowlevel.ctx_for(field)
        wi = lowlevel.straight_witness_idx(ctx, lowlevel.table_to_idx(A))
        if wi < 0:
            return None
        return (field.element(ctx.va[wi]), field.element(ctx.vb[wi]))
    # infinite field: the coordinate determinant det(x, x^2) is a binary cubic
    a1, b1, a2, b2, a3, b3, a4, b4 = A.entries
    coeffs = (b1, b3 + b4 - a1, b2 - a3 - a4, -a2)
    if not any(coeffs):
        return None
    for ca, cb in _Q_DIRECTIONS:
        u = (field(ca), field(cb))
        s = A.square(u)
        if u[0] * s[1] - u[1] * s[0]:
            return u
    raise ConsistencyError(f"nonzero cubic {coeffs} with no witness direction")


def is_straight(A):
    """Whether some element has a square outside its own line."""
    return straightness_witness(A) is not None


def is_commutative(A):
    """uv = vu for all u, v; by bilinearity, iff the ef and fe rows agree."""
    return A.ef == A.fe


def is_anti_commutative(A):
    """uv + vu = 0 for all u, v; iff 2e^2 = 2f^2 = 0 and ef + fe = 0.

    On enumerable fields the pairwise scan is run as a cross-check of the
    basis conditions.
    """
    two = A.field(2)
    zero = A.field.zero()
    result = (two * A.e2[0] == zero and two * A.e2[1] == zero
              and two * A.f2[0] == zero and two * A.f2[1] == zero
              and A.ef[0] + A.fe[0] == zero and A.ef[1] + A.fe[1] == zero)
    if A.field.is_finite:
        scanned = _anti_commutative_scan(A)
        if scanned != result:
            raise ConsistencyError(
                f"anti-commutativity: basis conditions say {result}, "
                f"pair scan says {scanned} on {A}")
    return result


def _anti_commutative_scan(A):
    ctx = lowlevel.ctx_for(A.field)
    t = lowlevel.table_to_idx(A)
    add = ctx.add
    va, vb = ctx.va, ctx.vb
    for i in range(ctx.nvec):
        for j in range(ctx.nvec):
            m0, m1 = lowlevel.multiply_idx(ctx, t, va[i], vb[i], va[j], vb[j])
            n0, n1 = lowlevel.multiply_idx(ctx, t, va[j], vb[j], va[i], vb[i])
            if add[m0][n0] or add[m1][n1]:
                return False
    return True


_BASIS = ((1, 0), (0, 1))


def is_associative(A, bruteforce=False):
    """(uv)w = u(vw); by trilinearity, iff it holds on all 8 basis triples.

    With bruteforce=True the full q^6 triple scan is run instead (finite
    fields only).
    """
    if bruteforce:
        if not A.field.is_finite:
            raise NotEnumerableError("triple scan needs a finite field")
        return _associative_scan(A)
    f = A.field
    basis = tuple((f(a), f(b)) for a, b in _BASIS)
    for u in basis:
        for v in basis:
            uv = A.multiply(u, v)
            for w in basis:
                if A.multiply(uv, w) != A.multiply(u, A.multiply(v, w)):
                    return False
    return True


def _associative_scan(A):
    ctx = lowlevel.ctx_for(A.field)
    t = lowlevel.table_to_idx(A)
    va, vb = ctx.va, ctx.vb
    n = ctx.nvec
    for i in range(n):
        for j in range(n):
            uv = lowlevel.multiply_idx(ctx, t, va[i], vb[i], va[j], vb[j])
            for k in range(n):
                vw = lowlevel.multiply_idx(ctx, t, va[j], vb[j], va[k], vb[k])
                if lowlevel.multiply_idx(ctx, t, uv[0], uv[1], va[k], vb[k]) != \
                   lowlevel.multiply_idx(ctx, t, va[i], vb[i], vw[0], vw[1]):
                    return False
    return True


def find_unit(A):
    """Two-sided identity element, or None.

    Solves the 8 linear conditions ue = eu = e, uf = fu = f for u = (x, y),
    verifies the candidate by multiplication, and cross-checks against the
    element scan on enumerable fields.
    """
    f = A.field
    (a1, b1), (a2, b2), (a3, b3), (a4, b4) = A.rows
    one, zero = f.one(), f.zero()
    rows = [
        (a1, a4), (b1, b4),   # ue = e
        (a1, a3), (b1, b3),   # eu = e
        (a3, a2), (b3, b2),   # uf = f
        (a4, a2), (b4, b2),   # fu = f
    ]
    rhs = (one, zero, one, zero, zero, one, zero, one)
    sol = solve_linear(f, rows, rhs)
    unit = None
    if sol.status != "none":
        cand = sol.solution
        e = (one, zero)
        fv = (zero, one)
        if (A.multiply(cand, e) == e and A.multiply(e, cand) == e
                and A.multiply(cand, fv) == fv and A.multiply(fv, cand) == fv):
            unit = cand
    if f.is_finite:
        scanned = _unit_scan(A)
        if scanned != unit:
            raise ConsistencyError(
                f"unit finder: solver says {unit}, scan says {scanned} on {A}")
    return unit


def _unit_scan(A):
    f = A.field
    one, zero = f.one(), f.zero()
    e = (one, zero)
    fv = (zero, one)
    from .algebra import vectors
    for u in vectors(f):
        if (A.multiply(u, e) == e and A.multiply(e, u) == e
                and A.multiply(u, fv) == fv and A.multiply(fv, u) == fv):
            return u
    return None
