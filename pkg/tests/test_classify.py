import itertools
import random

import pytest

from ecalg.fields import parse_field
from ecalg.algebra import StructureMatrix, transform, gl2_elements
from ecalg.sform import SForm
from ecalg.classify import (CanonicalForm, canonical_table, all_canonical_forms,
                            classify_rank1_sform, classify_algebra,
                            bruteforce_isomorphic, property_profile,
                            NotEndoCommutativeError, NotRankOneError,
                            NotStraightError)
from ecalg import lowlevel
from oracles import all_tables

F2 = parse_field("F2")
F3 = parse_field("F3")
F4 = parse_field("F4:x^2+x+1")
F5 = parse_field("F5")
F7 = parse_field("F7")
F8 = parse_field("F8:x^3+x+1")
F9 = parse_field("F9:x^2+1")
Q = parse_field("Q")


def T(field, *entries):
    return StructureMatrix.from_entries(field, entries)


def test_canonical_form_basics():
    assert str(CanonicalForm("Z")) == "Z"
    assert str(CanonicalForm("L", F3(2))) == "L(2)"
    with pytest.raises(ValueError):
        CanonicalForm("L")
    with pytest.raises(ValueError):
        CanonicalForm("Z", F3(1))


def test_canonical_tables():
    assert canonical_table(CanonicalForm("Z"), F3) == T(F3, 0, 1, 0, 0, 0, 0, 0, 0)
    assert canonical_table(CanonicalForm("N"), F3) == T(F3, 0, 1, 0, 0, 0, 0, 0, 1)
    lam = F3(2)
    assert canonical_table(CanonicalForm("L", lam), F3) == \
        T(F3, 0, 1, 0, 0, 0, 1, 0, 2)
    assert canonical_table(CanonicalForm("U"), F3) == T(F3, 0, 1, 0, 1, 0, 1, 0, 1)


def test_canonical_table_foreign_lambda_rejected():
    from ecalg.fields import MixedFieldError
    with pytest.raises(MixedFieldError):
        canonical_table(CanonicalForm("L", F5(2)), F3)


def test_classify_rank1_sform_examples():
    assert classify_rank1_sform(SForm(F3, 0, 0, 0, 0, 0, 0)) == CanonicalForm("Z")
    # d/b = 1 * 2^-1 = 2 over F3
    form = classify_rank1_sform(SForm(F3, 0, 0, 0, 2, 0, 1))
    assert form == CanonicalForm("L", F3(2))
    # confirmed against the GL2 oracle
    assert bruteforce_isomorphic(SForm(F3, 0, 0, 0, 2, 0, 1).to_matrix(),
                                 canonical_table(form, F3)) is not None
    assert classify_rank1_sform(SForm(F5, 0, 4, 0, 2, 0, 2)) == CanonicalForm("U")


def test_classify_rank1_sform_precondition_errors():
    with pytest.raises(NotRankOneError):
        classify_rank1_sform(SForm(F3, 1, 0, 0, 0, 0, 0))
    with pytest.raises(NotEndoCommutativeError):
        classify_rank1_sform(SForm(F3, 0, 2, 0, 1, 0, 1))


def test_classify_algebra_examples():
    form, X = classify_algebra(T(F3, 0, 0, 1, 0, 0, 0, 0, 0))  # f^2 = e only
    assert form == CanonicalForm("Z")
    for field in (F2, F3, F4, F5, F7, F8, F9):
        form, X = classify_algebra(
            StructureMatrix.from_entries(field, [0, 1, 0, 1, 0, 1, 0, 1]))
        assert form == CanonicalForm("U")
        assert transform(
            StructureMatrix.from_entries(field, [0, 1, 0, 1, 0, 1, 0, 1]), X) \
            == canonical_table(form, field)


def test_classify_algebra_gate_errors_in_order():
    with pytest.raises(NotEndoCommutativeError):
        classify_algebra(T(F5, 0, 1, 0, 1, 0, 1, 0, 2))
    # the direct product K x K is endo-commutative but rank 2
    with pytest.raises(NotRankOneError):
        classify_algebra(T(F3, 1, 0, 0, 1, 0, 0, 0, 0))
    # zeropotent with ef = -fe: endo-commutative, rank 1, but curled
    with pytest.raises(NotStraightError):
        classify_algebra(T(F3, 0, 0, 0, 0, 0, 1, 0, 2))


def test_classify_algebra_over_rationals():
    form, X = classify_algebra(T(Q, 0, 1, 0, 1, 0, 1, 0, 1))
    assert form == CanonicalForm("U")
    A = T(Q, 0, 0, 1, 0, 0, 0, 0, 0)
    form, X = classify_algebra(A)
    assert form == CanonicalForm("Z")
    assert transform(A, X) == canonical_table(form, Q)
    form, _ = classify_algebra(T(Q, 0, 1, 0, 0, 0, 2, 0, 3))
    assert form == CanonicalForm("L", Q("3/2"))


def test_classify_witness_trail_reaches_canonical_table():
    rng = random.Random(77)
    from oracles import random_basis_change
    for _ in range(100):
        S = SForm(F5, 0, 0, 0, rng.randrange(5), 0, rng.randrange(5))
        A = transform(S.to_matrix(), random_basis_change(F5, rng))
        form, X = classify_algebra(A)
        assert transform(A, X) == canonical_table(form, F5)


def test_separation_pairwise_non_isomorphic():
    for field in (F3, F4, F5, F7):
        forms = all_canonical_forms(field)
        assert len(forms) == field.order + 3
        tables = [canonical_table(f, field) for f in forms]
        for i, A in enumerate(tables):
            for j in range(i, len(tables)):
                got = bruteforce_isomorphic(A, tables[j])
                if i == j:
                    assert got is not None
                else:
                    assert got is None, (str(forms[i]), str(forms[j]))


def test_lambda_is_complete_invariant():
    for field in (F3, F5, F7):
        elems = field.elements()
        for lam in elems:
            for lam2 in elems:
                A = canonical_table(CanonicalForm("L", lam), field)
                B = canonical_table(CanonicalForm("L", lam2), field)
                assert (bruteforce_isomorphic(A, B) is not None) == (lam == lam2)


def _survivors(field):
    ctx = lowlevel.ctx_for(field)
    out = []
    for t in itertools.product(range(field.order), repeat=8):
        if not lowlevel.ec_criterion_idx(ctx, t):
            continue
        if lowlevel.rank_idx(ctx, t) != 1:
            continue
        if lowlevel.straight_witness_idx(ctx, t) < 0:
            continue
        out.append(t)
    return out


def test_classifier_invariance_exhaustive_f3_public_api():
    # the full pipeline gives the same form on every basis presentation
    for t in _survivors(F3):
        A = StructureMatrix.from_entries(F3, [F3.element(i) for i in t])
        base, _ = classify_algebra(A)
        for X in gl2_elements(F3):
            form, _ = classify_algebra(transform(A, X))
            assert form == base


def test_classifier_invariance_exhaustive_f4_kernel():
    ctx = lowlevel.ctx_for(F4)
    survivors = _survivors(F4)
    keys = {t: lowlevel.classify_idx(ctx, t) for t in survivors}
    for t in survivors:
        for x4 in ctx.gl2:
            t2 = lowlevel.transform_idx(ctx, t, x4)
            assert keys[t2] == keys[t]


def test_classifier_agrees_with_bruteforce_oracle_f3():
    ctx = lowlevel.ctx_for(F3)
    survivors = _survivors(F3)
    keys = [lowlevel.classify_idx(ctx, t) for t in survivors]
    for i, ta in enumerate(survivors):
        for j, tb in enumerate(survivors):
            iso = lowlevel.isomorphic_idx(ctx, ta, tb) >= 0
            assert iso == (keys[i] == keys[j])


def test_bruteforce_isomorphic_examples():
    A = T(F3, 0, 1, 0, 0, 0, 1, 0, 1)
    X = bruteforce_isomorphic(A, A)
    assert X is not None and transform(A, X) == A
    assert bruteforce_isomorphic(
        canonical_table(CanonicalForm("Z"), F3),
        canonical_table(CanonicalForm("N"), F3)) is None
    S = SForm(F5, 0, 4, 0, 2, 0, 2).to_matrix()
    U = canonical_table(CanonicalForm("U"), F5)
    X = bruteforce_isomorphic(S, U)
    assert X is not None and transform(S, X) == U


def test_property_profiles_closed_forms():
    for field in (F3, F5, F7, F9):
        for form in all_canonical_forms(field):
            p = property_profile(form, field)
            assert not p.unital
            assert p.anti_commutative_char_ne2 is False
            assert not p.anti_commutative_computed
            assert p.commutative == (form.tag in ("Z", "U")
                                     or (form.tag == "L" and form.lam == field.one()))
            assert p.associative == (form.tag in ("Z", "U"))
            assert p.purely_ec == (form.tag == "N"
                                   or (form.tag == "L" and form.lam != field.one()))


def test_property_profiles_char2_reported_not_asserted():
    for field in (F2, F4, F8):
        for form in all_canonical_forms(field):
            p = property_profile(form, field)
            assert p.anti_commutative_char_ne2 is None
            # in characteristic 2 the computed value coincides with
            # commutativity (uv + vu = 0 iff uv = vu)
            assert p.anti_commutative_computed == p.commutative
            assert not p.unital
            assert p.associative == (form.tag in ("Z", "U"))


def test_profile_json_shape():
    p = property_profile(CanonicalForm("N"), F5)
    js = p.to_json()
    assert js["purely_ec"] is True and js["unital"] is False
    assert set(js) == {"unital", "commutative", "anti_commutative_char_ne2",
                       "anti_commutative_computed", "associative", "purely_ec"}
