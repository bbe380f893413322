"""Dilating finite operator-valued measures to projective ones.

The trine measurement is the standard minimal example: three rank-one
effects on a qubit whose dilation space must come out exactly
three-dimensional. Projective measures must dilate without growing at all.
"""

import numpy as np
import pytest

from qstruct import (
    DomainError,
    FinitePovm,
    Tolerance,
    dilate,
    gram_block,
    op_norm,
    povm_from_outcomes,
    powerset_semiring,
    unitary_equivalence,
    verify_dilation,
    verify_povm,
)

TOL = Tolerance()


def trine_effects():
    vecs = [
        np.array([np.cos(2 * np.pi * k / 3), np.sin(2 * np.pi * k / 3)])
        for k in range(3)
    ]
    return [(2.0 / 3.0) * np.outer(v, v) for v in vecs]


def random_povm(outcomes, dim, seed):
    rng = np.random.default_rng(seed)
    mats = []
    for _ in range(outcomes):
        a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        mats.append(a @ a.conj().T)
    total = sum(mats)
    w, u = np.linalg.eigh(total)
    root = u @ np.diag(1.0 / np.sqrt(w)) @ u.conj().T
    return [root @ m @ root for m in mats]


def test_trivial_measure_has_the_unit_interval_gram():
    povm = povm_from_outcomes([np.eye(1)], dim=1)
    assert np.array_equal(gram_block(povm), np.array([[0.0, 0.0], [0.0, 1.0]]))
    dil = dilate(povm, TOL)
    assert dil.dim_e == 1
    assert verify_dilation(dil, TOL).ok


def test_trine_dilates_to_three_dimensions():
    povm = povm_from_outcomes(trine_effects(), dim=2)
    assert verify_povm(povm, TOL).ok
    dil = dilate(povm, TOL)
    assert dil.dim_e == 3
    rep = verify_dilation(dil, TOL)
    assert rep.ok, [c.name for c in rep.checks if not c.passed]
    assert rep.facts["dim_e"] == 3 and rep.facts["dim_h"] == 2


def test_projective_measures_dilate_tightly():
    povm = povm_from_outcomes([np.diag([1.0, 0.0]), np.diag([0.0, 1.0])], dim=2)
    dil = dilate(povm, TOL)
    assert dil.dim_e == 2
    assert verify_dilation(dil, TOL).ok
    # the compression must reproduce the effects exactly, not just closely
    for b in range(povm.semiring.n):
        back = dil.f.conj().T @ dil.images[b] @ dil.f
        assert op_norm(back - povm.effects[b]) <= 1e-12


@pytest.mark.parametrize("outcomes,dim,seed", [(2, 2, 0), (3, 2, 1), (3, 3, 2), (4, 2, 3)])
def test_random_povms_dilate_and_compress_back(outcomes, dim, seed):
    povm = povm_from_outcomes(random_povm(outcomes, dim, seed), dim=dim)
    assert verify_povm(povm, TOL).ok
    dil = dilate(povm, TOL)
    rep = verify_dilation(dil, TOL)
    assert rep.ok, [c.name for c in rep.checks if not c.passed]
    assert dil.dim_e <= outcomes * dim


def test_dilation_is_unitarily_equivalent_to_its_conjugate():
    from qstruct.naimark import Dilation

    povm = povm_from_outcomes(random_povm(3, 2, seed=7), dim=2)
    dil = dilate(povm, TOL)
    rng = np.random.default_rng(11)
    h = rng.normal(size=(dil.dim_e, dil.dim_e)) + 1j * rng.normal(size=(dil.dim_e, dil.dim_e))
    v = np.linalg.eigh(h + h.conj().T)[1]
    rotated = Dilation(
        povm=dil.povm,
        w=v @ dil.w,
        w_pinv=dil.w_pinv @ v.conj().T,
        dim_e=dil.dim_e,
        images=[v @ img @ v.conj().T for img in dil.images],
        f=v @ dil.f,
    )
    u, rep = unitary_equivalence(dil, rotated, TOL)
    assert rep.ok
    assert rep.facts["identity"] is False
    assert op_norm(u - v) <= 1e-8

    u, rep = unitary_equivalence(dil, dil, TOL)
    assert rep.ok
    assert rep.facts["identity"] is True
    assert np.array_equal(u, np.eye(dil.dim_e))


def test_subnormalized_measures_are_rejected():
    povm = povm_from_outcomes([0.5 * np.eye(2)], dim=2)
    with pytest.raises(DomainError, match="sub-normalized"):
        dilate(povm, TOL)


def test_overshooting_measures_are_rejected():
    povm = povm_from_outcomes([np.eye(2), 0.5 * np.eye(2)], dim=2)
    with pytest.raises(DomainError, match="exceeds the identity"):
        dilate(povm, TOL)


def test_povm_construction_validation():
    with pytest.raises(DomainError, match="at least one outcome"):
        povm_from_outcomes([], dim=2)
    with pytest.raises(DomainError, match="dimension mismatch"):
        povm_from_outcomes([np.eye(3)], dim=2)
    with pytest.raises(DomainError, match="one effect per"):
        FinitePovm(powerset_semiring(1), [np.zeros((2, 2))], dim=2)


def test_nonpositive_effects_fail_verification():
    povm = povm_from_outcomes([np.diag([1.5, 1.0]), np.diag([-0.5, 0.0])], dim=2)
    rep = verify_povm(povm, TOL)
    assert not rep.get("effects-are-positive-contractions").passed
