"""Canonical forms of endo-commutative straight rank-1 algebras.

Up to isomorphism these algebras fall into exactly four families, here
tagged Z, N, L(lam) and U:

    Z = S(0,0,0,0,0,0)   table (f, 0; 0, 0)
    N = S(0,0,0,0,0,1)   table (f, 0; f, 0)
    L = S(0,0,0,1,0,lam) table (f, f; lam*f, 0), one class per lam in K
    U = S(0,1,0,1,0,1)   table (f, f; f, f)

`classify_algebra` runs the full pipeline (endo-commutativity gate, rank
gate, straightness gate, normalization, classification) and returns the
canonical form together with a basis change carrying the input onto the
canonical table.  `bruteforce_isomorphic` is the independent GL2-scan
oracle used to cross-check classifier verdicts.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fields import NotEnumerableError
from .algebra import StructureMatrix, BasisChange, transform
from .predicates import (is_ec_criterion, is_commutative, is_anti_commutative,
                         is_associative, find_unit)
from .sform import SForm, normalize_straight, rank1_ec_membership, CurledAlgebraError
from . import lowlevel
from .lowlevel import ConsistencyError


class ClassificationError(ValueError):
    """Base for pipeline gate failures; `gate` names the failed check."""

    gate = None


class NotEndoCommutativeError(ClassificationError):
    gate = "NotEndoCommutative"


class NotRankOneError(ClassificationError):
    gate = "NotRankOne"


class NotStraightError(ClassificationError):
    gate = "NotStraight"


class CanonicalForm:
    """One of the four families; lam present exactly for tag 'L'."""

    __slots__ = ("tag", "lam")

    def __init__(self, tag, lam=None):
        if tag not in ("Z", "N", "L", "U"):
            raise ValueError(f"bad canonical tag {tag!r}")
        if (tag == "L") != (lam is not None):
            raise ValueError("lam is required for L and forbidden otherwise")
        self.tag = tag
        self.lam = lam

    def __eq__(self, other):
        return (isinstance(other, CanonicalForm)
                and self.tag == other.tag and self.lam == other.lam)

    def __hash__(self):
        return hash((self.tag, self.lam))

    def __str__(self):
        if self.tag == "L":
            return f"L({self.lam})"
        return self.tag

    def __repr__(self):
        return f"CanonicalForm({self})"


def canonical_table(form, field):
    """The defining structure matrix of a canonical form over `field`."""
    z, o = field.zero(), field.one()
    if form.tag == "Z":
        rows = [(z, o), (z, z), (z, z), (z, z)]
    elif form.tag == "N":
        rows = [(z, o), (z, z), (z, z), (z, o)]
    elif form.tag == "U":
        rows = [(z, o), (z, o), (z, o), (z, o)]
    else:
        lam = field(form.lam)  # rejects foreign elements
        rows = [(z, o), (z, z), (z, o), (z, lam)]
    return StructureMatrix(field, rows)


def all_canonical_forms(field):
    """The |K| + 3 distinct canonical forms over a finite field."""
    forms = [CanonicalForm("Z"), CanonicalForm("N")]
    forms += [CanonicalForm("L", lam) for lam in field.elements()]
    forms.append(CanonicalForm("U"))
    return forms


def _canonical_witness(S):
    """(form, X) with transform(S.to_matrix(), X) = canonical table."""
    f = S.field
    q, b, d = S.q, S.b, S.d
    if q:
        # membership forces q = b^2 and d = b with b != 0
        return CanonicalForm("U"), BasisChange(f, b, 0, 0, b * b)
    if b:
        return CanonicalForm("L", d / b), BasisChange(f, b, 0, 0, b * b)
    if d:
        return CanonicalForm("N"), BasisChange(f, d, 0, 0, d * d)
    return CanonicalForm("Z"), BasisChange.identity(f)


def classify_rank1_sform(S):
    """Canonical form of an endo-commutative rank-1 S-form."""
    zero = S.field.zero()
    if (S.p, S.a, S.c) != (zero, zero, zero):
        raise NotRankOneError(f"{S} has nonzero p, a or c")
    if not rank1_ec_membership(S.field, S.q, S.b, S.d):
        raise NotEndoCommutativeError(f"{S} is not endo-commutative")
    return _canonical_witness(S)[0]


def classify_algebra(A):
    """Full pipeline: gates, normalization, classification, witness trail.

    Returns (form, X) with transform(A, X) equal to the canonical table.
    Gate failures raise NotEndoCommutativeError / NotRankOneError /
    NotStraightError, checked in that order.
    """
    if not is_ec_criterion(A):
        raise NotEndoCommutativeError(f"{A!r} is not endo-commutative")
    if A.rank() != 1:
        raise NotRankOneError(f"{A!r} has rank {A.rank()}, need 1")
    try:
        S, X1 = normalize_straight(A)
    except CurledAlgebraError:
        raise NotStraightError(f"{A!r} is curled") from None
    zero = A.field.zero()
    if (S.p, S.a, S.c) != (zero, zero, zero):
        raise ConsistencyError(
            f"rank-1 input normalized to non-rank-1 S-form {S}")
    form, X2 = _canonical_witness(S)
    trail = X1 @ X2
    if transform(A, trail) != canonical_table(form, A.field):
        raise ConsistencyError(
            f"witness trail does not reach canonical table for {A!r}")
    return form, trail


def bruteforce_isomorphic(A, B):
    """First basis change carrying A onto B under the GL2 scan, or None."""
    if A.field != B.field:
        raise ValueError("tables over different fields")
    if not A.field.is_finite:
        raise NotEnumerableError("GL2 scan needs a finite field")
    ctx = lowlevel.ctx_for(A.field)
    k = lowlevel.isomorphic_idx(ctx, lowlevel.table_to_idx(A),
                                lowlevel.table_to_idx(B))
    if k < 0:
        return None
    x, y, z, w = ctx.gl2[k]
    f = A.field
    return BasisChange(f, f.element(x), f.element(y), f.element(z), f.element(w))


@dataclass(frozen=True)
class PropertyProfile:
    """Structural flags of a canonical form over a given field.

    `anti_commutative_char_ne2` is the asserted value (always False) in
    characteristic != 2 and None in characteristic 2, where only the
    computed value is reported.
    """

    unital: bool
    commutative: bool
    anti_commutative_char_ne2: bool | None
    anti_commutative_computed: bool
    associative: bool
    purely_ec: bool

    def to_json(self):
        return {
            "unital": self.unital,
            "commutative": self.commutative,
            "anti_commutative_char_ne2": self.anti_commutative_char_ne2,
            "anti_commutative_computed": self.anti_commutative_computed,
            "associative": self.associative,
            "purely_ec": self.purely_ec,
        }


def property_profile(form, field):
    """Closed-form property flags, cross-checked by recomputation.

    Closed forms: never unital; commutative exactly for Z, L(1), U;
    never anti-commutative when char != 2; associative exactly for Z, U;
    purely endo-commutative (neither commutative nor anti-commutative nor
    associative) exactly for N and L(lam != 1).
    """
    one = field.one()
    commutative = form.tag in ("Z", "U") or (form.tag == "L" and form.lam == one)
    associative = form.tag in ("Z", "U")
    purely = form.tag == "N" or (form.tag == "L" and form.lam != one)
    char2 = field.char == 2
    anti_closed = commutative if char2 else False

    table = canonical_table(form, field)
    unital_rc = find_unit(table) is not None
    comm_rc = is_commutative(table)
    anti_rc = is_anti_commutative(table)
    assoc_rc = is_associative(table)
    purely_rc = not comm_rc and not anti_rc and not assoc_rc
    if (unital_rc, comm_rc, anti_rc, assoc_rc, purely_rc) != \
       (False, commutative, anti_closed, associative, purely):
        raise ConsistencyError(
            f"profile recomputation disagrees with closed forms for {form} "
            f"over {field}: computed {(unital_rc, comm_rc, anti_rc, assoc_rc, purely_rc)}")
    return PropertyProfile(
        unital=False,
        commutative=commutative,
        anti_commutative_char_ne2=None if char2 else False,
        anti_commutative_computed=anti_rc,
        associative=associative,
        purely_ec=purely,
    )
