"""Structure matrices of 2-dimensional algebras and the basis-change action.

A 2-dimensional algebra with base {e, f} is determined by the 4x2 structure
matrix whose rows give e*e, f*f, e*f, f*e in (e, f)-coordinates, in exactly
that order.  Elements are coordinate pairs (alpha, beta) meaning
alpha*e + beta*f.

Basis changes X in GL2(K) act through the degree-4 embedding `tilde`:

    transform(A, X) = tilde(X^-1) * A * X

is the structure matrix of the same algebra written in the base whose
coordinate rows are X^-1; equivalently, u |-> u*X is an algebra isomorphism
from A onto transform(A, X).  The action is a right action:
transform(transform(A, X), Y) = transform(A, X*Y).
"""

from __future__ import annotations

from .fields import matrix_rank, FieldSyntaxError

ROW_NAMES = ("e2", "f2", "ef", "fe")


class SingularMatrixError(ValueError):
    """Basis change with zero determinant."""


def _vec_times_mat2(v, m):
    # row vector (a, b) times 2x2 matrix given as ((x, y), (z, w))
    a, b = v
    (x, y), (z, w) = m
    return (a * x + b * z, a * y + b * w)


class StructureMatrix:
    """4x2 matrix of structure constants; immutable, entrywise equality."""

    __slots__ = ("field", "rows")

    def __init__(self, field, rows):
        rows = tuple(tuple(field(v) for v in r) for r in rows)
        if len(rows) != 4 or any(len(r) != 2 for r in rows):
            raise ValueError("structure matrix needs 4 rows of 2 entries")
        self.field = field
        self.rows = rows

    @classmethod
    def from_entries(cls, field, entries):
        """Row-major (a1, b1, a2, b2, a3, b3, a4, b4)."""
        entries = list(entries)
        if len(entries) != 8:
            raise ValueError(f"need 8 entries, got {len(entries)}")
        return cls(field, [entries[0:2], entries[2:4], entries[4:6], entries[6:8]])

    @property
    def entries(self):
        return tuple(v for r in self.rows for v in r)

    @property
    def e2(self):
        return self.rows[0]

    @property
    def f2(self):
        return self.rows[1]

    @property
    def ef(self):
        return self.rows[2]

    @property
    def fe(self):
        return self.rows[3]

    def multiply(self, u, v):
        """Product of coordinate pairs u*v, by bilinear extension of the table."""
        a, b = (self.field(u[0]), self.field(u[1]))
        c, d = (self.field(v[0]), self.field(v[1]))
        r1, r2, r3, r4 = self.rows
        out0 = a * c * r1[0] + b * d * r2[0] + a * d * r3[0] + b * c * r4[0]
        out1 = a * c * r1[1] + b * d * r2[1] + a * d * r3[1] + b * c * r4[1]
        return (out0, out1)

    def square(self, u):
        return self.multiply(u, u)

    def rank(self):
        return matrix_rank(self.field, self.rows)

    def __eq__(self, other):
        return (isinstance(other, StructureMatrix)
                and self.field == other.field and self.rows == other.rows)

    def __hash__(self):
        return hash((self.field, self.rows))

    def to_text(self):
        f = self.field.format_element
        return ",".join(f(v) for v in self.entries)

    def to_json(self):
        f = self.field.format_element
        return {name: [f(a), f(b)] for name, (a, b) in zip(ROW_NAMES, self.rows)}

    @classmethod
    def from_json(cls, field, obj):
        try:
            rows = [obj[name] for name in ROW_NAMES]
        except KeyError as missing:
            raise FieldSyntaxError(f"table JSON missing row {missing}") from None
        return cls(field, rows)

    def __repr__(self):
        return f"StructureMatrix({self.field}, {self.to_text()})"


def parse_table(field, text):
    """Parse 8 comma-separated field elements, row-major."""
    parts = text.split(",")
    if len(parts) != 8:
        raise FieldSyntaxError(
            f"table needs 8 comma-separated entries, got {len(parts)}")
    entries = []
    for pos, part in enumerate(parts, start=1):
        try:
            entries.append(field.parse_element(part))
        except FieldSyntaxError as err:
            raise FieldSyntaxError(f"table entry {pos}: {err}") from None
    return StructureMatrix.from_entries(field, entries)


class BasisChange:
    """Invertible 2x2 matrix (x, y; z, w); checked nonsingular on build."""

    __slots__ = ("field", "x", "y", "z", "w")

    def __init__(self, field, x, y, z, w):
        self.field = field
        self.x, self.y, self.z, self.w = (field(x), field(y), field(z), field(w))
        if not self.det():
            raise SingularMatrixError(
                f"singular basis change ({self.x},{self.y};{self.z},{self.w})")

    @classmethod
    def identity(cls, field):
        return cls(field, 1, 0, 0, 1)

    def det(self):
        return self.x * self.w - self.y * self.z

    def as_rows(self):
        return ((self.x, self.y), (self.z, self.w))

    def inverse(self):
        d = self.field.one() / self.det()
        return BasisChange(self.field, self.w * d, -self.y * d,
                           -self.z * d, self.x * d)

    def __matmul__(self, other):
        if not isinstance(other, BasisChange):
            return NotImplemented
        a = _vec_times_mat2((self.x, self.y), other.as_rows())
        b = _vec_times_mat2((self.z, self.w), other.as_rows())
        return BasisChange(self.field, a[0], a[1], b[0], b[1])

    def __eq__(self, other):
        return (isinstance(other, BasisChange) and self.field == other.field
                and (self.x, self.y, self.z, self.w)
                == (other.x, other.y, other.z, other.w))

    def __hash__(self):
        return hash((self.field, self.x, self.y, self.z, self.w))

    def to_text(self):
        f = self.field.format_element
        return ",".join(f(v) for v in (self.x, self.y, self.z, self.w))

    def __repr__(self):
        f = self.field.format_element
        return (f"BasisChange({f(self.x)},{f(self.y)};{f(self.z)},{f(self.w)})")


def tilde(X):
    """The 4x4 image of X = (a, b; c, d) acting on structure matrices.

    Rows: (a^2, b^2, ab, ab), (c^2, d^2, cd, cd), (ac, bd, ad, bc),
    (ac, bd, bc, ad).  Multiplicative in X, with det(tilde(X)) = det(X)^4.
    """
    a, b, c, d = X.x, X.y, X.z, X.w
    return (
        (a * a, b * b, a * b, a * b),
        (c * c, d * d, c * d, c * d),
        (a * c, b * d, a * d, b * c),
        (a * c, b * d, b * c, a * d),
    )


def transform(A, X):
    """Structure matrix tilde(X^-1) * A * X of the isomorphic copy of A under X."""
    if A.field != X.field:
        raise ValueError("structure matrix and basis change over different fields")
    t = tilde(X.inverse())
    mid = []
    for trow in t:
        acc0 = A.field.zero()
        acc1 = A.field.zero()
        for coef, arow in zip(trow, A.rows):
            if coef:
                acc0 = acc0 + coef * arow[0]
                acc1 = acc1 + coef * arow[1]
        mid.append((acc0, acc1))
    xrows = X.as_rows()
    return StructureMatrix(A.field, [_vec_times_mat2(r, xrows) for r in mid])


def induced_map(u, X):
    """Coordinates of the isomorphism A -> transform(A, X) applied to u."""
    return _vec_times_mat2((X.field(u[0]), X.field(u[1])), X.as_rows())


_GL2_CACHE = {}


def gl2_elements(field):
    """All of GL2(K) in deterministic index order; order self-checked."""
    key = field.key
    cached = _GL2_CACHE.get(key)
    if cached is not None:
        return cached
    field._require_enumerable()
    elems = field.elements()
    out = []
    for x in elems:
        for y in elems:
            for z in elems:
                for w in elems:
                    if x * w - y * z:
                        out.append(BasisChange(field, x, y, z, w))
    q = field.order
    expected = (q * q - 1) * (q * q - q)
    if len(out) != expected:
        raise AssertionError(
            f"GL2({field}) enumeration found {len(out)}, expected {expected}")
    out = tuple(out)
    _GL2_CACHE[key] = out
    return out


def vectors(field):
    """All coordinate pairs over K, e-coordinate varying fastest.

    Index i maps to (elem[i % q], elem[i // q]), so e = (1, 0) is the first
    nonzero vector.  This order fixes every downstream witness tie-break.
    """
    elems = field.elements()
    return [(a, b) for b in elems for a in elems]
