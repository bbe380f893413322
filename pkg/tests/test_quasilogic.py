"""Partial difference structures: sums, quasiproducts and classification.

Powerset structures index elements by bitmask, so expected sums and products
are plain bit operations; those serve as the oracle throughout.
"""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qstruct import (
    AxiomViolationError,
    DomainError,
    FinitePoset,
    Quasilogic,
    StructuralError,
    build_quasilogic,
    chain_quasilogic,
    check_de_morgan,
    check_sum_lattice_identity,
    classify,
    mo2_quasilogic,
    o6_logic,
    partial_sum,
    powerset_quasilogic,
    quasicommutes,
    quasiproduct,
    shuffled_powerset_logic,
    sum_family,
    summable,
    verify_quasilogic,
)
from qstruct.quasilogic import _product_witnesses


def test_powerset_verifies_and_sums_are_disjoint_unions():
    q = powerset_quasilogic(3)
    assert verify_quasilogic(q).ok
    for a in range(8):
        for b in range(8):
            assert summable(q, a, b) == (a & b == 0)
            if a & b == 0:
                assert partial_sum(q, a, b) == a | b


def test_chain_sums_are_arithmetic():
    q = chain_quasilogic(5)
    assert verify_quasilogic(q).ok
    for a in range(5):
        for b in range(5):
            assert summable(q, a, b) == (a + b <= 4)
            if a + b <= 4:
                assert partial_sum(q, a, b) == a + b


def test_sum_family_folds_disjoint_parts():
    q = powerset_quasilogic(3)
    assert sum_family(q, [0b001, 0b010, 0b100]) == 0b111
    with pytest.raises(DomainError, match="not summable"):
        sum_family(q, [0b011, 0b001])


def test_classification_ladder():
    assert classify(powerset_quasilogic(2)) == "boolean-algebra"
    assert classify(powerset_quasilogic(3)) == "boolean-algebra"
    assert classify(chain_quasilogic(2)) == "boolean-algebra"
    assert classify(chain_quasilogic(3)) == "quasilogic"
    assert classify(chain_quasilogic(4)) == "quasilogic"
    assert classify(mo2_quasilogic()) == "logic"


def test_quasiproduct_on_powerset_is_intersection():
    q = powerset_quasilogic(3)
    a, b, c = 0b011, 0b110, 0b111
    assert quasiproduct(q, a, b, c) == 0b010
    assert quasicommutes(q, a, b)


def test_quasiproduct_rejects_non_witness():
    q = powerset_quasilogic(2)
    with pytest.raises(DomainError, match="does not witness"):
        quasiproduct(q, 0b01, 0b10, 0b01)  # c is not above b


def test_chain_quasiproduct_depends_on_the_witness():
    q = chain_quasilogic(3)
    wits = _product_witnesses(q, 1, 1)
    assert wits == [1, 2]
    assert {quasiproduct(q, 1, 1, c) for c in wits} == {0, 1}


def two_majorant_quasilogic():
    # 0 < a, b < c, d with two majorants that disagree about a + b
    labels = ["0", "a", "b", "c", "d"]
    le = np.eye(5, dtype=bool)
    le[0, :] = True
    le[1, 3] = le[1, 4] = le[2, 3] = le[2, 4] = True
    diff = np.full((5, 5), -1, dtype=np.int16)
    for x in range(5):
        diff[x, 0] = x
        diff[x, x] = 0
    diff[3, 1] = 2  # c - a = b
    diff[3, 2] = 1
    diff[4, 1] = 2  # d - a = b
    diff[4, 2] = 1
    return build_quasilogic(labels, le, diff)


def test_partial_sum_raises_when_majorants_disagree():
    q = two_majorant_quasilogic()
    with pytest.raises(AxiomViolationError, match="depends on the majorant") as exc:
        partial_sum(q, 1, 2)
    assert {exc.value.details["c1"], exc.value.details["c2"]} == {"c", "d"}


def test_quasiproduct_raises_when_formulas_disagree():
    # diff[1, b] = b breaks the symmetry between the two defining formulas
    labels = ["0", "a", "b", "1"]
    le = np.eye(4, dtype=bool)
    le[0, :] = True
    le[:, 3] = True
    diff = np.full((4, 4), -1, dtype=np.int16)
    for x in range(4):
        diff[x, 0] = x
        diff[x, x] = 0
    diff[3, 1] = 2
    diff[3, 2] = 2
    q = build_quasilogic(labels, le, diff)
    with pytest.raises(AxiomViolationError, match="formulas disagree"):
        quasiproduct(q, 1, 2, 3)


def test_constructor_rejects_malformed_difference_tables():
    p = powerset_quasilogic(2).poset
    bad = np.full((4, 4), -1, dtype=np.int16)
    bad[0, 0] = 9  # out of range
    with pytest.raises(StructuralError):
        Quasilogic(p, bad)
    bad = np.full((4, 4), -1, dtype=np.int16)
    np.fill_diagonal(bad, 0)
    bad[1, 2] = 0  # {0} and {1} are incomparable
    with pytest.raises(StructuralError):
        Quasilogic(p, bad)


def test_missing_difference_is_a_verification_failure_not_an_error():
    q = powerset_quasilogic(2)
    diff = q.diff.copy()
    diff[3, 1] = -1
    rep = verify_quasilogic(Quasilogic(q.poset, diff))
    assert not rep.ok
    assert not rep.get("difference-domain").passed


def test_hexagon_fails_exactly_the_monotonicity_axioms():
    rep = verify_quasilogic(o6_logic().ql)
    failed = {c.name for c in rep.checks if not c.passed}
    assert failed == {"minuend-monotone", "subtrahend-difference-identity"}


def test_de_morgan_and_sum_lattice_identity_on_standard_structures():
    for q in (powerset_quasilogic(3), mo2_quasilogic(), chain_quasilogic(4)):
        assert check_de_morgan(q).ok
        assert check_sum_lattice_identity(q).ok


@given(st.integers(min_value=1, max_value=4), st.integers(min_value=0, max_value=10_000))
@settings(max_examples=40, deadline=None)
def test_shuffled_powersets_stay_boolean(k, seed):
    ol = shuffled_powerset_logic(k, seed)
    q = ol.ql
    assert classify(q) == "boolean-algebra"
    assert check_sum_lattice_identity(q).ok
    info_sums = [
        (a, b)
        for a in range(q.n)
        for b in range(q.n)
        if summable(q, a, b)
    ]
    for a, b in info_sums:
        assert partial_sum(q, a, b) == partial_sum(q, b, a)


@given(st.integers(min_value=2, max_value=8))
@settings(max_examples=8, deadline=None)
def test_chain_difference_cancellation(n):
    q = chain_quasilogic(n)
    rep = verify_quasilogic(q)
    assert rep.ok
    for b in range(n):
        for a in range(b + 1):
            assert q.diff[b, q.diff[b, a]] == a
