"""Exact field arithmetic: prime fields F_p, small extensions GF(p^k), and Q.

Finite-field elements are flyweights indexed 0..q-1 (0 and 1 are always the
additive and multiplicative identities at indices 0 and 1).  Prime fields use
residue arithmetic, extensions use tables precomputed from an explicit monic
irreducible modulus, and the rationals are plain `fractions.Fraction` values.
All arithmetic is exact; there is no floating point anywhere.

Field spec grammar:  ``Q`` | ``F<p>`` | ``F<p^k>:<monic poly in x over F_p>``
e.g. ``F5``, ``F4:x^2+x+1``, ``F9:x^2+1``.
"""

from __future__ import annotations

import itertools
import re
from fractions import Fraction

# Enumeration-based operations (element lists, arithmetic tables, exhaustive
# scans) refuse to run on fields larger than this; direct arithmetic still
# works for any prime.  Assignable for experiments.
MAX_ENUM_ORDER = 64


class FieldError(ValueError):
    """Base class for field construction and parsing problems."""


class FieldSyntaxError(FieldError):
    """Malformed field spec or element text."""


class NonPrimeCharacteristicError(FieldError):
    """Requested field order is not a prime power."""


class ReducibleModulusError(FieldError):
    """Extension modulus is not irreducible over the prime subfield."""


class NotEnumerableError(FieldError):
    """Enumeration requested on an infinite field."""


class EnumerationCapError(FieldError):
    """Enumeration requested on a finite field above MAX_ENUM_ORDER."""


class MixedFieldError(TypeError):
    """Arithmetic attempted between elements of different fields."""


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# polynomials over F_p: plain little-endian int coefficient lists
# ---------------------------------------------------------------------------

def _poly_trim(cs):
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def _poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)


def _poly_mod(a, m, p):
    # m monic
    a = list(a)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        lead = a[-1]
        shift = len(a) - 1 - dm
        if lead:
            for i, mi in enumerate(m):
                a[shift + i] = (a[shift + i] - lead * mi) % p
        _poly_trim(a)
        if not a:
            break
    return a


def _poly_divides(d, a, p):
    """Whether monic d divides a over F_p."""
    return not _poly_mod(a, d, p)


def _is_irreducible(m, p):
    """Trial division over F_p; fine at the small degrees used here."""
    k = len(m) - 1
    if k < 1:
        return False
    for deg in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=deg):
            d = list(low) + [1]
            if _poly_divides(d, m, p):
                return False
    return True


_TERM_RE = re.compile(r"^(\d+)?(x(?:\^(\d+))?)?$")


def _parse_poly(text, p):
    """Parse e.g. 'x^2+x+1' or '2x+1' into little-endian coefficients mod p."""
    s = text.replace(" ", "")
    if not s:
        raise FieldSyntaxError("empty polynomial")
    # split into signed terms
    terms = re.findall(r"[+-]?[^+-]+", s)
    if "".join(terms) != s:
        raise FieldSyntaxError(f"malformed polynomial {text!r}")
    coeffs = {}
    for term in terms:
        sign = 1
        body = term
        if body[0] in "+-":
            sign = -1 if body[0] == "-" else 1
            body = body[1:]
        m = _TERM_RE.match(body)
        if not m or (m.group(1) is None and m.group(2) is None):
            raise FieldSyntaxError(f"bad term {term!r} in polynomial {text!r}")
        coeff = int(m.group(1)) if m.group(1) is not None else 1
        if m.group(2) is None:
            exp = 0
        else:
            exp = int(m.group(3)) if m.group(3) is not None else 1
        coeffs[exp] = (coeffs.get(exp, 0) + sign * coeff) % p
    deg = max(coeffs)
    out = [0] * (deg + 1)
    for e, c in coeffs.items():
        out[e] = c
    return _poly_trim(out)


def _format_poly(cs):
    """Little-endian coefficients -> 'x^2+x+1' style text."""
    terms = []
    for e in range(len(cs) - 1, -1, -1):
        c = cs[e]
        if not c:
            continue
        if e == 0:
            terms.append(str(c))
        else:
            var = "x" if e == 1 else f"x^{e}"
            terms.append(var if c == 1 else f"{c}{var}")
    return "+".join(terms) if terms else "0"


# ---------------------------------------------------------------------------
# elements
# ---------------------------------------------------------------------------

class FFElement:
    """Element of a finite field, identified by its canonical index.

    Prime fields: index = residue in [0, p).  Extensions: index encodes the
    coefficient vector of the polynomial basis representative in base p,
    least-significant digit = constant term.
    """

    __slots__ = ("field", "i")

    def __init__(self, field, i):
        self.field = field
        self.i = i

    def _same(self, other):
        if isinstance(other, FFElement):
            if other.field.key != self.field.key:
                raise MixedFieldError(
                    f"mixed fields: {self.field} and {other.field}")
            return other.i
        if isinstance(other, int):
            return self.field(other).i
        return None

    def __add__(self, other):
        j = self._same(other)
        if j is None:
            return NotImplemented
        f = self.field
        return f._elem(f._add_idx(self.i, j))

    __radd__ = __add__

    def __sub__(self, other):
        j = self._same(other)
        if j is None:
            return NotImplemented
        f = self.field
        return f._elem(f._add_idx(self.i, f._neg_idx(j)))

    def __rsub__(self, other):
        j = self._same(other)
        if j is None:
            return NotImplemented
        f = self.field
        return f._elem(f._add_idx(j, f._neg_idx(self.i)))

    def __mul__(self, other):
        j = self._same(other)
        if j is None:
            return NotImplemented
        f = self.field
        return f._elem(f._mul_idx(self.i, j))

    __rmul__ = __mul__

    def __truediv__(self, other):
        j = self._same(other)
        if j is None:
            return NotImplemented
        f = self.field
        return f._elem(f._mul_idx(self.i, f._inv_idx(j)))

    def __rtruediv__(self, other):
        j = self._same(other)
        if j is None:
            return NotImplemented
        f = self.field
        return f._elem(f._mul_idx(j, f._inv_idx(self.i)))

    def __neg__(self):
        f = self.field
        return f._elem(f._neg_idx(self.i))

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        f = self.field
        base = self.i
        if n < 0:
            base = f._inv_idx(base)
            n = -n
        acc = 1
        while n:
            if n & 1:
                acc = f._mul_idx(acc, base)
            base = f._mul_idx(base, base)
            n >>= 1
        return f._elem(acc)

    def __bool__(self):
        return self.i != 0

    def __eq__(self, other):
        if isinstance(other, FFElement):
            return self.field.key == other.field.key and self.i == other.i
        if isinstance(other, int):
            return self == self.field(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.key, self.i))

    @property
    def value(self):
        """Canonical representation: residue (prime) or coeff tuple (extension)."""
        return self.field._value_of(self.i)

    def __str__(self):
        return self.field.format_element(self)

    def __repr__(self):
        return f"{self.field}({self})"


# ---------------------------------------------------------------------------
# fields
# ---------------------------------------------------------------------------

class Field:
    """Common interface: call the field to coerce, iterate `elements()`."""

    kind = None          # "prime" | "extension" | "rational"
    char = None
    degree = None
    order = None         # None for Q
    key = None

    @property
    def is_finite(self):
        return self.order is not None

    def spec_text(self):
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, Field) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return self.spec_text()

    # finite-field hooks
    def _require_enumerable(self):
        if not self.is_finite:
            raise NotEnumerableError(f"{self} is not enumerable")
        if self.order > MAX_ENUM_ORDER:
            raise EnumerationCapError(
                f"enumeration disabled for |K| = {self.order} > {MAX_ENUM_ORDER}")

    def elements(self):
        """All elements exactly once, in canonical index order."""
        self._require_enumerable()
        return [self._elem(i) for i in range(self.order)]

    def element(self, i):
        """Element with canonical index i (finite fields)."""
        if not self.is_finite:
            raise NotEnumerableError(f"{self} has no element indices")
        if not 0 <= i < self.order:
            raise IndexError(f"element index {i} out of range for {self}")
        return self._elem(i)

    def tables(self):
        """(add, mul, neg, inv) index tables for scan loops; inv[0] is None."""
        self._require_enumerable()
        return self._tables()


class PrimeField(Field):
    """F_p with residue arithmetic."""

    kind = "prime"

    def __init__(self, p):
        if not _is_prime(p):
            raise NonPrimeCharacteristicError(f"{p} is not prime")
        self.p = p
        self.char = p
        self.degree = 1
        self.order = p
        self.key = ("prime", p)
        self._flyweights = [FFElement(self, i) for i in range(p)] if p <= 4096 else None
        self._table_cache = None

    def spec_text(self):
        return f"F{self.p}"

    def _elem(self, i):
        fw = self._flyweights
        return fw[i] if fw is not None else FFElement(self, i)

    def _add_idx(self, i, j):
        return (i + j) % self.p

    def _mul_idx(self, i, j):
        return (i * j) % self.p

    def _neg_idx(self, i):
        return (-i) % self.p

    def _inv_idx(self, i):
        if i == 0:
            raise ZeroDivisionError(f"division by zero in {self}")
        return pow(i, -1, self.p)

    def _value_of(self, i):
        return i

    def __call__(self, v):
        if isinstance(v, FFElement):
            if v.field.key != self.key:
                raise MixedFieldError(f"element of {v.field} used in {self}")
            return v
        if isinstance(v, int):
            return self._elem(v % self.p)
        if isinstance(v, str):
            return self.parse_element(v)
        raise TypeError(f"cannot coerce {v!r} into {self}")

    def zero(self):
        return self._elem(0)

    def one(self):
        return self._elem(1)

    def parse_element(self, text):
        try:
            n = int(text.strip())
        except ValueError:
            raise FieldSyntaxError(f"bad {self} element {text!r}") from None
        return self._elem(n % self.p)

    def format_element(self, e):
        return str(self(e).i)

    def _tables(self):
        if self._table_cache is None:
            p = self.p
            rng = range(p)
            add = [[(i + j) % p for j in rng] for i in rng]
            mul = [[(i * j) % p for j in rng] for i in rng]
            neg = [(-i) % p for i in rng]
            inv = [None] + [pow(i, -1, p) for i in range(1, p)]
            self._table_cache = (add, mul, neg, inv)
        return self._table_cache


class ExtensionField(Field):
    """GF(p^k) as F_p[x] modulo an explicit monic irreducible polynomial."""

    kind = "extension"

    def __init__(self, p, k, modulus):
        if not _is_prime(p):
            raise NonPrimeCharacteristicError(f"{p} is not prime")
        if k < 2:
            raise FieldError("extension degree must be >= 2")
        modulus = [c % p for c in modulus]
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise FieldSyntaxError(
                f"modulus must be monic of degree {k}, got {_format_poly(modulus)}")
        if not _is_irreducible(modulus, p):
            raise ReducibleModulusError(
                f"{_format_poly(modulus)} is reducible over F{p}")
        self.p = p
        self.char = p
        self.degree = k
        self.order = p ** k
        if self.order > 4096:
            raise EnumerationCapError(
                f"extension order {self.order} above supported bound")
        self.modulus = tuple(modulus)
        self.key = ("extension", p, k, self.modulus)
        self._flyweights = [FFElement(self, i) for i in range(self.order)]
        self._build_tables()

    def spec_text(self):
        return f"F{self.order}:{_format_poly(list(self.modulus))}"

    def _digits(self, i):
        p, k = self.p, self.degree
        out = []
        for _ in range(k):
            i, r = divmod(i, p)
            out.append(r)
        return out

    def _index(self, coeffs):
        i = 0
        for c in reversed(coeffs):
            i = i * self.p + (c % self.p)
        return i

    def _build_tables(self):
        p, q, k = self.p, self.order, self.degree
        vecs = [self._digits(i) for i in range(q)]
        add = [[self._index([(a + b) % p for a, b in zip(vecs[i], vecs[j])])
                for j in range(q)] for i in range(q)]
        neg = [self._index([(-a) % p for a in vecs[i]]) for i in range(q)]
        mod = list(self.modulus)
        mul = []
        for i in range(q):
            pi = _poly_trim(list(vecs[i]))
            row = []
            for j in range(q):
                pj = _poly_trim(list(vecs[j]))
                prod = _poly_mod(_poly_mul(pi, pj, p), mod, p)
                prod += [0] * (k - len(prod))
                row.append(self._index(prod))
            mul.append(row)
        inv = [None] * q
        for i in range(1, q):
            inv[i] = mul[i].index(1)
        self._add, self._mul, self._neg, self._inv = add, mul, neg, inv

    def _elem(self, i):
        return self._flyweights[i]

    def _add_idx(self, i, j):
        return self._add[i][j]

    def _mul_idx(self, i, j):
        return self._mul[i][j]

    def _neg_idx(self, i):
        return self._neg[i]

    def _inv_idx(self, i):
        if i == 0:
            raise ZeroDivisionError(f"division by zero in {self}")
        return self._inv[i]

    def _value_of(self, i):
        return tuple(self._digits(i))

    def __call__(self, v):
        if isinstance(v, FFElement):
            if v.field.key != self.key:
                raise MixedFieldError(f"element of {v.field} used in {self}")
            return v
        if isinstance(v, int):
            return self._elem(v % self.p)  # prime-subfield embedding
        if isinstance(v, (tuple, list)):
            if len(v) > self.degree:
                raise FieldSyntaxError(
                    f"coefficient vector longer than degree {self.degree}")
            coeffs = list(v) + [0] * (self.degree - len(v))
            return self._elem(self._index(coeffs))
        if isinstance(v, str):
            return self.parse_element(v)
        raise TypeError(f"cannot coerce {v!r} into {self}")

    def zero(self):
        return self._elem(0)

    def one(self):
        return self._elem(1)

    def parse_element(self, text):
        cs = _parse_poly(text, self.p)
        if len(cs) > self.degree:
            raise FieldSyntaxError(
                f"element {text!r} has degree >= {self.degree}; "
                f"canonical form required")
        return self(tuple(cs))

    def format_element(self, e):
        return _format_poly(list(self(e).value))

    def _tables(self):
        return (self._add, self._mul, self._neg, self._inv)


class RationalField(Field):
    """The rationals; elements are `fractions.Fraction` (always reduced)."""

    kind = "rational"

    def __init__(self):
        self.char = 0
        self.degree = 1
        self.order = None
        self.key = ("rational",)

    def spec_text(self):
        return "Q"

    def __call__(self, v):
        if isinstance(v, FFElement):
            raise MixedFieldError(f"element of {v.field} used in Q")
        if isinstance(v, Fraction):
            return v
        if isinstance(v, int):
            return Fraction(v)
        if isinstance(v, str):
            return self.parse_element(v)
        raise TypeError(f"cannot coerce {v!r} into Q")

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def parse_element(self, text):
        try:
            return Fraction(text.strip())
        except (ValueError, ZeroDivisionError):
            raise FieldSyntaxError(f"bad rational {text!r}") from None

    def format_element(self, e):
        return str(self(e))


_FIELD_CACHE = {}
_FIELD_SPEC_RE = re.compile(r"^F(\d+)(?::(.+))?$")


def parse_field(text):
    """Parse a field spec:  Q | F<p> | F<p^k>:<monic poly over F_p>."""
    s = text.strip()
    if s == "Q":
        key = ("rational",)
        if key not in _FIELD_CACHE:
            _FIELD_CACHE[key] = RationalField()
        return _FIELD_CACHE[key]
    m = _FIELD_SPEC_RE.match(s)
    if not m:
        raise FieldSyntaxError(f"bad field spec {text!r}")
    q = int(m.group(1))
    if q < 2:
        raise NonPrimeCharacteristicError(f"field order must be >= 2, got {q}")
    # factor q = p^k
    p = q
    for d in range(2, q + 1):
        if d * d > q:
            break
        if q % d == 0:
            p = d
            break
    k = 0
    n = q
    while n % p == 0 and n > 1:
        n //= p
        k += 1
    if n != 1 or not _is_prime(p):
        raise NonPrimeCharacteristicError(f"{q} is not a prime power")
    if k == 1:
        if m.group(2) is not None:
            raise FieldSyntaxError(
                f"prime field F{p} takes no modulus (got {m.group(2)!r})")
        key = ("prime", p)
        if key not in _FIELD_CACHE:
            _FIELD_CACHE[key] = PrimeField(p)
        return _FIELD_CACHE[key]
    if m.group(2) is None:
        raise FieldSyntaxError(
            f"extension field F{q} needs an explicit modulus, "
            f"e.g. F4:x^2+x+1")
    modulus = _parse_poly(m.group(2), p)
    field = ExtensionField(p, k, modulus)  # validates monic/irreducible
    key = field.key
    if key not in _FIELD_CACHE:
        _FIELD_CACHE[key] = field
    return _FIELD_CACHE[key]


# ---------------------------------------------------------------------------
# exact linear algebra (any exact field, including Q)
# ---------------------------------------------------------------------------

def _check_matrix(field, rows):
    rows = [list(map(field, r)) for r in rows]
    if rows:
        n = len(rows[0])
        if any(len(r) != n for r in rows):
            raise ValueError("ragged matrix")
    return rows


def matrix_rank(field, rows):
    """Rank by exact Gaussian elimination."""
    a = _check_matrix(field, rows)
    if not a:
        return 0
    m, n = len(a), len(a[0])
    rank = 0
    for col in range(n):
        pivot = next((r for r in range(rank, m) if a[r][col]), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        inv = field.one() / a[rank][col]
        a[rank] = [x * inv for x in a[rank]]
        for r in range(m):
            if r != rank and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[rank])]
        rank += 1
        if rank == m:
            break
    return rank


def matrix_det(field, rows):
    """Determinant by elimination; exact, any square size."""
    a = _check_matrix(field, rows)
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("determinant needs a square matrix")
    det = field.one()
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col]), None)
        if pivot is None:
            return field.zero()
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det = det * a[col][col]
        inv = field.one() / a[col][col]
        for r in range(col + 1, n):
            if a[r][col]:
                f = a[r][col] * inv
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det


class LinearSolution:
    """Outcome of an exact linear solve.

    status: "none" | "unique" | "parametric".  `solution` is a particular
    solution tuple (free variables set to zero); `kernel` is a basis of the
    homogeneous solution space.
    """

    def __init__(self, status, solution=None, kernel=()):
        self.status = status
        self.solution = solution
        self.kernel = tuple(kernel)

    def __repr__(self):
        return f"LinearSolution({self.status}, {self.solution}, {self.kernel})"


def solve_linear(field, rows, rhs):
    """Classify and solve rows * x = rhs exactly."""
    a = _check_matrix(field, rows)
    rhs = [field(v) for v in rhs]
    if len(rhs) != len(a):
        raise ValueError("rhs length does not match row count")
    if not a:
        return LinearSolution("unique", ())
    m, n = len(a), len(a[0])
    aug = [a[r] + [rhs[r]] for r in range(m)]
    pivots = []  # (row, col)
    rank = 0
    for col in range(n):
        pivot = next((r for r in range(rank, m) if aug[r][col]), None)
        if pivot is None:
            continue
        aug[rank], aug[pivot] = aug[pivot], aug[rank]
        inv = field.one() / aug[rank][col]
        aug[rank] = [x * inv for x in aug[rank]]
        for r in range(m):
            if r != rank and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[rank])]
        pivots.append((rank, col))
        rank += 1
    for r in range(rank, m):
        if aug[r][n]:
            return LinearSolution("none")
    zero = field.zero()
    sol = [zero] * n
    for r, c in pivots:
        sol[c] = aug[r][n]
    pivot_cols = {c for _, c in pivots}
    free_cols = [c for c in range(n) if c not in pivot_cols]
    kernel = []
    for fc in free_cols:
        vec = [zero] * n
        vec[fc] = field.one()
        for r, c in pivots:
            vec[c] = -aug[r][fc]
        kernel.append(tuple(vec))
    status = "unique" if not free_cols else "parametric"
    return LinearSolution(status, tuple(sol), kernel)
