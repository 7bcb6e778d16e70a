"""Index-level kernels for exhaustive scans over finite fields.

Everything here works on plain ints: field elements are canonical indices
into the field's arithmetic tables, a structure matrix is the row-major
8-tuple (a1, b1, a2, b2, a3, b3, a4, b4), a coordinate vector over K^2 is
the index a + q*b (e-coordinate fastest, matching `algebra.vectors`).

These kernels mirror the object-level operations in `predicates`, `sform`
and `classify`; the test suite pins the two levels against each other
exhaustively over F2/F3 and on random samples over larger fields.
"""

from __future__ import annotations

from .algebra import StructureMatrix


class ConsistencyError(AssertionError):
    """Internal cross-check failed; indicates a bug, never expected."""


class ScanContext:
    """Cached per-field tables and enumerations for the scan kernels."""

    def __init__(self, field):
        field._require_enumerable()
        self.field = field
        q = field.order
        self.q = q
        add, mul, neg, inv = field.tables()
        self.add, self.mul, self.neg, self.inv = add, mul, neg, inv
        self.sub = [[add[i][neg[j]] for j in range(q)] for i in range(q)]
        self.nvec = q * q
        self.va = [i % q for i in range(self.nvec)]
        self.vb = [i // q for i in range(self.nvec)]
        self._gl2 = None
        self._tilde_inv = None

    @property
    def gl2(self):
        """GL2(K) as (x, y, z, w) index tuples, x slowest."""
        if self._gl2 is None:
            q, mul, sub = self.q, self.mul, self.sub
            out = []
            for x in range(q):
                for y in range(q):
                    for z in range(q):
                        xw_row = mul[x]
                        yz = mul[y][z]
                        for w in range(q):
                            if sub[xw_row[w]][yz]:
                                out.append((x, y, z, w))
            expected = (q * q - 1) * (q * q - q)
            if len(out) != expected:
                raise ConsistencyError(
                    f"GL2 size {len(out)} != {expected} over {self.field}")
            self._gl2 = out
        return self._gl2

    @property
    def tilde_inv(self):
        """tilde(X^-1) as 16-tuples, aligned with `gl2`."""
        if self._tilde_inv is None:
            out = []
            for x4 in self.gl2:
                out.append(tilde_idx(self, mat2_inv_idx(self, x4)))
            self._tilde_inv = out
        return self._tilde_inv


_CTX_CACHE = {}


def ctx_for(field):
    ctx = _CTX_CACHE.get(field.key)
    if ctx is None:
        ctx = ScanContext(field)
        _CTX_CACHE[field.key] = ctx
    return ctx


def table_to_idx(A):
    """Row-major index 8-tuple of a StructureMatrix over a finite field."""
    field = A.field
    field._require_enumerable()
    return tuple(v.i for v in A.entries)


def idx_to_table(field, t):
    return StructureMatrix.from_entries(field, [field.element(i) for i in t])


# ---------------------------------------------------------------------------
# basic 2x2 / 4x4 helpers
# ---------------------------------------------------------------------------

def mat2_inv_idx(ctx, x4):
    x, y, z, w = x4
    mul, sub, neg, inv = ctx.mul, ctx.sub, ctx.neg, ctx.inv
    det = sub[mul[x][w]][mul[y][z]]
    di = inv[det]
    return (mul[w][di], neg[mul[y][di]], neg[mul[z][di]], mul[x][di])


def tilde_idx(ctx, x4):
    a, b, c, d = x4
    mul = ctx.mul
    ab = mul[a][b]
    cd = mul[c][d]
    ac = mul[a][c]
    bd = mul[b][d]
    ad = mul[a][d]
    bc = mul[b][c]
    return (mul[a][a], mul[b][b], ab, ab,
            mul[c][c], mul[d][d], cd, cd,
            ac, bd, ad, bc,
            ac, bd, bc, ad)


def _apply_tilde_rows(ctx, t16, t8):
    """(4x4 as 16-tuple) * (4x2 as 8-tuple) -> 8-tuple."""
    add, mul = ctx.add, ctx.mul
    out = []
    for r in range(4):
        c0, c1, c2, c3 = t16[4 * r:4 * r + 4]
        o0 = add[add[mul[c0][t8[0]]][mul[c1][t8[2]]]][
            add[mul[c2][t8[4]]][mul[c3][t8[6]]]]
        o1 = add[add[mul[c0][t8[1]]][mul[c1][t8[3]]]][
            add[mul[c2][t8[5]]][mul[c3][t8[7]]]]
        out.append(o0)
        out.append(o1)
    return tuple(out)


def _rows_times_mat2(ctx, t8, x4):
    add, mul = ctx.add, ctx.mul
    x, y, z, w = x4
    out = []
    for r in range(4):
        a, b = t8[2 * r], t8[2 * r + 1]
        out.append(add[mul[a][x]][mul[b][z]])
        out.append(add[mul[a][y]][mul[b][w]])
    return tuple(out)


def transform_idx(ctx, t8, x4):
    """tilde(X^-1) * A * X on index tuples."""
    ti = tilde_idx(ctx, mat2_inv_idx(ctx, x4))
    return _rows_times_mat2(ctx, _apply_tilde_rows(ctx, ti, t8), x4)


def multiply_idx(ctx, t8, ua, ub, va, vb):
    """Coordinates of (ua*e + ub*f)(va*e + vb*f)."""
    add, mul = ctx.add, ctx.mul
    ac = mul[ua][va]
    bd = mul[ub][vb]
    ad = mul[ua][vb]
    bc = mul[ub][va]
    m0 = add[add[mul[ac][t8[0]]][mul[bd][t8[2]]]][
        add[mul[ad][t8[4]]][mul[bc][t8[6]]]]
    m1 = add[add[mul[ac][t8[1]]][mul[bd][t8[3]]]][
        add[mul[ad][t8[5]]][mul[bc][t8[7]]]]
    return m0, m1


# ---------------------------------------------------------------------------
# endo-commutativity
# ---------------------------------------------------------------------------

def ec_criterion_idx(ctx, t):
    """The eight polynomial conditions on (a1,...,b4); early exit on failure."""
    add, mul = ctx.add, ctx.mul
    a1, b1, a2, b2, a3, b3, a4, b4 = t

    def m3(x, y, z):
        return mul[mul[x][y]][z]

    def s4(p, q, r, s):
        return add[add[p][q]][add[r][s]]

    if s4(m3(a1, a1, a2), m3(b1, a2, b2), m3(a1, b2, a3), m3(b1, a2, a4)) != \
       s4(m3(a1, a3, a3), m3(a2, b3, b3), m3(a3, a3, b3), m3(a3, b3, a4)):
        return False
    if s4(m3(a1, a1, a2), m3(b1, a2, b2), m3(b1, a2, a3), m3(a1, b2, a4)) != \
       s4(m3(a1, a4, a4), m3(a2, b4, b4), m3(a3, a4, b4), m3(a4, a4, b4)):
        return False
    if s4(m3(a1, a1, a4), m3(b1, a4, a4), m3(b1, a2, b4), m3(a1, a3, b4)) != \
       s4(m3(a1, a1, a3), m3(b1, a2, b3), m3(b1, a3, a3), m3(a1, b3, a4)):
        return False
    inner_l = add[add[mul[a1][a4]][mul[a4][b4]]][mul[b2][b4]]
    inner_r = add[add[mul[a1][a3]][mul[b2][b3]]][mul[a3][b3]]
    if mul[a2][inner_l] != mul[a2][inner_r]:
        return False
    if s4(m3(a1, b1, a2), m3(b1, b2, b2), m3(a1, b2, b3), m3(b1, a2, b4)) != \
       s4(m3(b1, a3, a3), m3(b2, b3, b3), m3(a3, b3, b3), m3(a3, b3, b4)):
        return False
    if s4(m3(a1, b1, a2), m3(b1, b2, b2), m3(b1, a2, b3), m3(a1, b2, b4)) != \
       s4(m3(b1, a4, a4), m3(b2, b4, b4), m3(b3, a4, b4), m3(a4, b4, b4)):
        return False
    if mul[b1][inner_l] != mul[b1][inner_r]:
        return False
    if s4(m3(b1, a2, a4), m3(b2, b3, a4), m3(b2, b2, b4), m3(a2, b4, b4)) != \
       s4(m3(b1, a2, a3), m3(b2, b2, b3), m3(a2, b3, b3), m3(b2, a3, b4)):
        return False
    return True


# pairs likely to witness a violation, checked before the full sweep;
# coordinates of e, f, e+f (valid over every finite field)
_QUICK_PAIRS = (((1, 0), (0, 1)), ((0, 1), (1, 0)),
                ((1, 0), (1, 1)), ((1, 1), (1, 0)),
                ((0, 1), (1, 1)), ((1, 1), (0, 1)))


def ec_bruteforce_idx(ctx, t):
    """Literal scan: does u^2 v^2 = (uv)^2 hold for all q^4 pairs (u, v)?"""
    add, mul, q = ctx.add, ctx.mul, ctx.q
    for (ua, ub), (va, vb) in _QUICK_PAIRS:
        su = multiply_idx(ctx, t, ua, ub, ua, ub)
        sv = multiply_idx(ctx, t, va, vb, va, vb)
        m = multiply_idx(ctx, t, ua, ub, va, vb)
        if multiply_idx(ctx, t, su[0], su[1], sv[0], sv[1]) != \
           multiply_idx(ctx, t, m[0], m[1], m[0], m[1]):
            return False
    # full sweep with per-vector precomputation
    t0, t1, t2, t3, t4, t5, t6, t7 = t
    nvec = ctx.nvec
    va_l, vb_l = ctx.va, ctx.vb
    g0 = [0] * nvec
    g1 = [0] * nvec
    h0 = [0] * nvec
    h1 = [0] * nvec
    sq0 = [0] * nvec
    sq1 = [0] * nvec
    sqv = [0] * nvec
    for i in range(nvec):
        a = va_l[i]
        b = vb_l[i]
        # g(v) = a*(e^2 row) + b*(ef row);  h(v) = a*(fe row) + b*(f^2 row)
        p0 = add[mul[a][t0]][mul[b][t4]]
        p1 = add[mul[a][t1]][mul[b][t5]]
        r0 = add[mul[a][t6]][mul[b][t2]]
        r1 = add[mul[a][t7]][mul[b][t3]]
        g0[i] = p0
        g1[i] = p1
        h0[i] = r0
        h1[i] = r1
        s0 = add[mul[a][p0]][mul[b][r0]]
        s1 = add[mul[a][p1]][mul[b][r1]]
        sq0[i] = s0
        sq1[i] = s1
        sqv[i] = s0 + q * s1
    for i in range(nvec):
        a = va_l[i]
        b = vb_l[i]
        sa = sq0[i]
        sb = sq1[i]
        for j in range(nvec):
            m0 = add[mul[a][g0[j]]][mul[b][h0[j]]]
            m1 = add[mul[a][g1[j]]][mul[b][h1[j]]]
            mv = m0 + q * m1
            sj = sqv[j]
            if add[mul[sa][g0[sj]]][mul[sb][h0[sj]]] != sq0[mv]:
                return False
            if add[mul[sa][g1[sj]]][mul[sb][h1[sj]]] != sq1[mv]:
                return False
    return True


# ---------------------------------------------------------------------------
# rank, straightness, normalization, classification
# ---------------------------------------------------------------------------

def rank_idx(ctx, t):
    """Rank of the 4x2 matrix: 0, 1 or 2, via pairwise row determinants."""
    mul, sub = ctx.mul, ctx.sub
    rows = ((t[0], t[1]), (t[2], t[3]), (t[4], t[5]), (t[6], t[7]))
    base = None
    for r in rows:
        if r != (0, 0):
            base = r
            break
    if base is None:
        return 0
    ra, rb = base
    for sa, sb in rows:
        if sub[mul[ra][sb]][mul[rb][sa]]:
            return 2
    return 1


def straight_witness_idx(ctx, t):
    """First vector index whose square is linearly independent of it, or -1."""
    mul, sub = ctx.mul, ctx.sub
    va_l, vb_l = ctx.va, ctx.vb
    for i in range(1, ctx.nvec):
        a = va_l[i]
        b = vb_l[i]
        s0, s1 = multiply_idx(ctx, t, a, b, a, b)
        if sub[mul[a][s1]][mul[b][s0]]:
            return i
    return -1


def normalize_idx(ctx, t):
    """Rewrite a straight table in the base (x, x^2); None when curled.

    Returns ((p, q, a, b, c, d), x4) where x4 is the basis change with
    transform_idx(ctx, t, x4) equal to the normalized table.
    """
    wi = straight_witness_idx(ctx, t)
    if wi < 0:
        return None
    xa, xb = ctx.va[wi], ctx.vb[wi]
    sa, sb = multiply_idx(ctx, t, xa, xb, xa, xb)
    # new base rows B = (x; x^2); the action matrix is B^-1
    x4 = mat2_inv_idx(ctx, (xa, xb, sa, sb))
    tb = tilde_idx(ctx, (xa, xb, sa, sb))
    out = _rows_times_mat2(ctx, _apply_tilde_rows(ctx, tb, t), x4)
    if out[0] != 0 or out[1] != 1:
        raise ConsistencyError(f"normalization lost e^2 = f on {t}")
    return out[2:], x4


def sform_ec_idx(ctx, s6):
    """Reduced endo-commutativity conditions on an S-form sextuple."""
    add, mul, sub = ctx.add, ctx.mul, ctx.sub
    p, q, a, b, c, d = s6

    def m3(x, y, z):
        return mul[mul[x][y]][z]

    # p*q + p*c = p*b^2 + a^2*b + a*b*c
    if add[mul[p][q]][mul[p][c]] != \
       add[add[m3(p, b, b)][m3(a, a, b)]][m3(a, b, c)]:
        return False
    # p*(c - a) = (b - d) * (p*(b + d) - q*(a + c))
    if mul[p][sub[c][a]] != \
       mul[sub[b][d]][sub[mul[p][add[b][d]]][mul[q][add[a][c]]]]:
        return False
    # p*(d - b) = a^2 - c^2
    if mul[p][sub[d][b]] != sub[mul[a][a]][mul[c][c]]:
        return False
    # q^2 + p*d = a^2 + q*b^2 + a*b^2 + a*b*d
    if add[mul[q][q]][mul[p][d]] != \
       add[add[mul[a][a]][m3(q, b, b)]][add[m3(a, b, b)][m3(a, b, d)]]:
        return False
    # q*(d - b) = a*b - c*d
    if mul[q][sub[d][b]] != sub[mul[a][b]][mul[c][d]]:
        return False
    return True


def rank1_ec_idx(ctx, q_, b, d):
    """Membership test for rank-1 S-forms: q^2 = q*b^2 and q*(d - b) = 0."""
    mul, sub = ctx.mul, ctx.sub
    if mul[q_][q_] != mul[q_][mul[b][b]]:
        return False
    return mul[q_][sub[d][b]] == 0


def classify_idx(ctx, t):
    """Canonical-form key of an EC straight rank-1 table.

    Returns "Z", "N", "U" or ("L", lam_index).  Assumes the three gates have
    already been checked; raises ConsistencyError if normalization does not
    land on a rank-1 S-form.
    """
    norm = normalize_idx(ctx, t)
    if norm is None:
        raise ConsistencyError(f"classify_idx on curled table {t}")
    (p, q_, a, b, c, d), _ = norm
    if p or a or c:
        raise ConsistencyError(
            f"rank-1 table normalized to non-rank-1 S-form {(p, q_, a, b, c, d)}")
    if q_:
        return "U"
    if b:
        return ("L", ctx.mul[d][ctx.inv[b]])
    if d:
        return "N"
    return "Z"


def canonical_key_table(ctx, key):
    """Index table of a canonical-form key."""
    if key == "Z":
        return (0, 1, 0, 0, 0, 0, 0, 0)
    if key == "N":
        return (0, 1, 0, 0, 0, 0, 0, 1)
    if key == "U":
        return (0, 1, 0, 1, 0, 1, 0, 1)
    if isinstance(key, tuple) and key[0] == "L":
        return (0, 1, 0, 0, 0, 1, 0, key[1])
    raise ValueError(f"bad canonical key {key!r}")


def isomorphic_idx(ctx, ta, tb):
    """First GL2 index carrying table ta onto tb, or -1; row-wise early exit."""
    add, mul = ctx.add, ctx.mul
    gl2 = ctx.gl2
    tilde_inv = ctx.tilde_inv
    rows = ((ta[0], ta[1]), (ta[2], ta[3]), (ta[4], ta[5]), (ta[6], ta[7]))
    for k in range(len(gl2)):
        x, y, z, w = gl2[k]
        ti = tilde_inv[k]
        ok = True
        for r in range(4):
            c0, c1, c2, c3 = ti[4 * r:4 * r + 4]
            d0 = add[add[mul[c0][rows[0][0]]][mul[c1][rows[1][0]]]][
                add[mul[c2][rows[2][0]]][mul[c3][rows[3][0]]]]
            d1 = add[add[mul[c0][rows[0][1]]][mul[c1][rows[1][1]]]][
                add[mul[c2][rows[2][1]]][mul[c3][rows[3][1]]]]
            if add[mul[d0][x]][mul[d1][z]] != tb[2 * r] or \
               add[mul[d0][y]][mul[d1][w]] != tb[2 * r + 1]:
                ok = False
                break
        if ok:
            return k
    return -1
