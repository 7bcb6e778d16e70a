"""Straight algebras normalized to e^2 = f, and their isomorphism systems.

Every straight 2-dimensional algebra can be rewritten in a base (x, x^2)
for a straightness witness x, which forces the first structure row to (0, 1).
The remaining six constants (p, q, a, b, c, d) -- rows f^2 = (p, q),
ef = (a, b), fe = (c, d) -- then carry all of the structure.
"""

from __future__ import annotations

import re

from .fields import FieldSyntaxError, NotEnumerableError
from .algebra import StructureMatrix, BasisChange, transform
from .predicates import straightness_witness
from .lowlevel import ConsistencyError


class CurledAlgebraError(ValueError):
    """Normalization requested on an algebra with no straightness witness."""


class SForm:
    """Sextuple (p, q, a, b, c, d) of a straight algebra with e^2 = f."""

    __slots__ = ("field", "p", "q", "a", "b", "c", "d")

    def __init__(self, field, p, q, a, b, c, d):
        self.field = field
        self.p, self.q, self.a = field(p), field(q), field(a)
        self.b, self.c, self.d = field(b), field(c), field(d)

    @property
    def coeffs(self):
        return (self.p, self.q, self.a, self.b, self.c, self.d)

    def to_matrix(self):
        f = self.field
        return StructureMatrix(f, [(f.zero(), f.one()), (self.p, self.q),
                                   (self.a, self.b), (self.c, self.d)])

    @classmethod
    def from_matrix(cls, A):
        f = A.field
        if A.e2 != (f.zero(), f.one()):
            raise ValueError(f"not an S-form table: e^2 row is {A.e2}")
        return cls(f, A.f2[0], A.f2[1], A.ef[0], A.ef[1], A.fe[0], A.fe[1])

    def __eq__(self, other):
        return (isinstance(other, SForm) and self.field == other.field
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __str__(self):
        fmt = self.field.format_element
        return "S(" + ",".join(fmt(v) for v in self.coeffs) + ")"

    def __repr__(self):
        return f"{self.field}:{self}"


_SFORM_RE = re.compile(r"^S\((.*)\)$")


def parse_sform(field, text):
    m = _SFORM_RE.match(text.strip())
    if not m:
        raise FieldSyntaxError(f"bad S-form {text!r}; expected S(p,q,a,b,c,d)")
    parts = m.group(1).split(",")
    if len(parts) != 6:
        raise FieldSyntaxError(f"S-form needs 6 entries, got {len(parts)}")
    return SForm(field, *(field.parse_element(p) for p in parts))


def normalize_straight(A):
    """Rewrite a straight table in the base (x, x^2) for the first witness x.

    Returns (S, X) with transform(A, X) equal to S.to_matrix().  Raises
    CurledAlgebraError when no witness exists.
    """
    x = straightness_witness(A)
    if x is None:
        raise CurledAlgebraError(f"{A!r} is curled")
    sq = A.square(x)
    base = BasisChange(A.field, x[0], x[1], sq[0], sq[1])  # rows x, x^2
    X = base.inverse()
    out = transform(A, X)
    return SForm.from_matrix(out), X


def sform_is_ec(S):
    """Reduced endo-commutativity conditions on (p, q, a, b, c, d).

    Equivalent to the full 8-condition criterion evaluated on the S-form
    table; the equivalence itself is verified exhaustively by the test suite
    and the `reduction4` CLI suite.
    """
    p, q, a, b, c, d = S.coeffs
    if p * q + p * c != p * b * b + a * a * b + a * b * c:
        return False
    if p * (c - a) != (b - d) * (p * (b + d) - q * (a + c)):
        return False
    if p * (d - b) != a * a - c * c:
        return False
    if q * q + p * d != a * a + q * b * b + a * b * b + a * b * d:
        return False
    if q * (d - b) != a * b - c * d:
        return False
    return True


def rank1_ec_membership(field, q, b, d):
    """Endo-commutativity for rank-1 S-forms S(0, q, 0, b, 0, d):
    q^2 = q*b^2 and q*(d - b) = 0."""
    q, b, d = field(q), field(b), field(d)
    return q * q == q * b * b and not q * (d - b)


def check_iso_witness(S, Sp, x, y, z, w):
    """Whether (x, y; z, w) carries S onto Sp, by the eight witness equations.

    The matrix must be nonsingular.  A True verdict is cross-checked against
    the basis-change action on the full tables.
    """
    f = S.field
    if Sp.field != f:
        raise ValueError("S-forms over different fields")
    X = BasisChange(f, x, y, z, w)  # rejects singular witnesses
    x, y, z, w = X.x, X.y, X.z, X.w
    p, q, a, b, c, d = S.coeffs
    pp, qp, ap, bp, cp, dp = Sp.coeffs
    eqs = (
        pp * y * y + (ap + cp) * x * y == z,
        x * x + qp * y * y + (bp + dp) * x * y == w,
        pp * w * w + (ap + cp) * z * w == p * x + q * z,
        z * z + qp * w * w + (bp + dp) * z * w == p * y + q * w,
        pp * y * w + ap * x * w + cp * y * z == a * x + b * z,
        x * z + qp * y * w + bp * x * w + dp * y * z == a * y + b * w,
        pp * y * w + ap * y * z + cp * x * w == c * x + d * z,
        x * z + qp * y * w + bp * y * z + dp * x * w == c * y + d * w,
    )
    ok = all(eqs)
    if ok and transform(S.to_matrix(), X) != Sp.to_matrix():
        raise ConsistencyError(
            f"witness equations hold but transform({S}, {X!r}) != {Sp}")
    return ok


def rank1_iso_search(S, Sp):
    """First (x, y, w) with xw != 0 carrying S(0,q,0,b,0,d) onto Sp, or None.

    Both S-forms must have p = a = c = 0; fields must be finite.  The verdict
    agrees with the full GL2 scan on the corresponding tables (pinned by the
    test suite).
    """
    f = S.field
    if Sp.field != f:
        raise ValueError("S-forms over different fields")
    zero = f.zero()
    for T in (S, Sp):
        if (T.p, T.a, T.c) != (zero, zero, zero):
            raise ValueError(f"{T} is not a rank-1 S-form (needs p = a = c = 0)")
    if not f.is_finite:
        raise NotEnumerableError("rank-1 witness search needs a finite field")
    q, b, d = S.q, S.b, S.d
    qp, bp, dp = Sp.q, Sp.b, Sp.d
    elems = f.elements()
    for x in elems:
        if not x:
            continue
        for y in elems:
            lhs_b = qp * y + bp * x
            lhs_d = qp * y + dp * x
            if lhs_b != b or lhs_d != d:
                continue
            for w in elems:
                if not w:
                    continue
                if qp * w == q and x * x + qp * y * y + (bp + dp) * x * y == w:
                    return (x, y, w)
    return None
