"""Cyclic state representations of concrete matrix algebras.

Full matrix algebras make the expected dimensions exact: a state of density
rank r on the d-by-d matrices must produce a representation space of
dimension d*r, with the complement of the Gram rank in the kernel.
"""

import numpy as np
import pytest

from qstruct import (
    AlgebraState,
    ConcreteStarAlgebra,
    ConstructionError,
    DomainError,
    Tolerance,
    gns_construct,
    gram_matrix,
    observable_norm,
    positive_parts,
    schwartz_check,
    state_value,
    verify_algebra,
    verify_gns,
    verify_state,
)

TOL = Tolerance()


def matrix_unit_algebra(d):
    """Matrix units with the identity swapped in for E00 so the unit is a basis element."""
    basis, labels = [np.eye(d, dtype=complex)], ["I"]
    idempotents = [0]
    for i in range(d):
        for j in range(d):
            if i == 0 and j == 0:
                continue
            e = np.zeros((d, d), dtype=complex)
            e[i, j] = 1.0
            basis.append(e)
            labels.append(f"E{i}{j}")
            if i == j:
                idempotents.append(len(basis) - 1)
    return ConcreteStarAlgebra(basis, labels, unit=0, idempotents=tuple(idempotents))


def density(d, rank, seed):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(d, rank)) + 1j * rng.normal(size=(d, rank))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


def test_matrix_unit_algebra_verifies():
    alg = matrix_unit_algebra(2)
    rep = verify_algebra(alg, TOL)
    assert rep.ok, [c.name for c in rep.checks if not c.passed]


def test_rank_one_state_gives_a_two_dimensional_representation():
    alg = matrix_unit_algebra(2)
    state = AlgebraState.from_density(alg, np.diag([1.0, 0.0]))
    assert verify_state(alg, state, TOL).ok

    g = gram_matrix(alg, state, TOL)
    assert np.linalg.matrix_rank(g, tol=1e-9) == 2

    rep_obj = gns_construct(alg, state, TOL)
    assert rep_obj.space_dim == 2
    assert rep_obj.kernel_dim == 2
    report = verify_gns(rep_obj, TOL)
    assert report.ok, [c.name for c in report.checks if not c.passed]
    assert report.facts["space_dim"] == 2
    assert report.facts["kernel_dim"] == 2


@pytest.mark.parametrize("d,rank", [(2, 1), (2, 2), (3, 1), (3, 2), (3, 3)])
def test_representation_dimension_is_d_times_rank(d, rank):
    alg = matrix_unit_algebra(d)
    state = AlgebraState.from_density(alg, density(d, rank, seed=10 * d + rank))
    rep_obj = gns_construct(alg, state, TOL)
    assert rep_obj.space_dim == d * rank
    assert rep_obj.kernel_dim == d * d - d * rank
    assert verify_gns(rep_obj, TOL).ok


def test_representation_reproduces_state_values():
    alg = matrix_unit_algebra(2)
    state = AlgebraState.from_density(alg, density(2, 2, seed=42))
    rep_obj = gns_construct(alg, state, TOL)
    rng = np.random.default_rng(9)
    for _ in range(5):
        a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        expected = state_value(alg, state, a, TOL)
        xi = rep_obj.xi
        got = complex(np.vdot(rep_obj.represent(a) @ xi, xi))
        assert got == pytest.approx(expected, abs=1e-9)


def test_zero_state_cannot_seed_a_representation():
    alg = matrix_unit_algebra(2)
    state = AlgebraState(np.zeros(4, dtype=complex))
    with pytest.raises(ConstructionError, match="annihilates"):
        gns_construct(alg, state, TOL)


def test_seedless_algebras_are_rejected():
    alg = ConcreteStarAlgebra([np.eye(2, dtype=complex)], ["I"])
    state = AlgebraState(np.array([1.0 + 0j]))
    with pytest.raises(DomainError, match="no idempotent"):
        gns_construct(alg, state, TOL)


def test_schwartz_slack_is_nonnegative():
    alg = matrix_unit_algebra(3)
    state = AlgebraState.from_density(alg, density(3, 2, seed=1))
    rep = schwartz_check(alg, state, samples=500, seed=4, tol=TOL)
    assert rep.ok
    assert rep.facts["samples"] == 500
    assert rep.facts["min_slack"] >= -1e-12


def test_observable_norm_is_the_spectral_radius_of_the_compression():
    alg = matrix_unit_algebra(2)
    a = np.diag([2.0, -3.0]).astype(complex)
    assert observable_norm(alg, a, 0, TOL) == pytest.approx(3.0)

    e11 = alg.labels.index("E11")
    compressed = np.diag([0.0, -3.0]).astype(complex)
    assert observable_norm(alg, compressed, e11, TOL) == pytest.approx(3.0)

    with pytest.raises(DomainError, match="self-adjoint"):
        observable_norm(alg, np.array([[0, 1], [0, 0]], dtype=complex), 0, TOL)
    with pytest.raises(DomainError, match="not a declared idempotent"):
        observable_norm(alg, a, 2, TOL)
    with pytest.raises(DomainError, match="not supported"):
        observable_norm(alg, a, e11, TOL)


def test_positive_parts_split_a_self_adjoint_element():
    alg = matrix_unit_algebra(2)
    a = np.diag([2.0, -3.0]).astype(complex)
    plus, minus, rep = positive_parts(alg, a, 0, TOL)
    assert rep.ok
    # quarter-square split: both parts positive and their difference is a
    assert plus == pytest.approx(np.diag([2.25, 1.0]))
    assert minus == pytest.approx(np.diag([0.25, 4.0]))
    assert plus - minus == pytest.approx(a)

    with pytest.raises(DomainError, match="two-sided supported"):
        positive_parts(alg, a, alg.labels.index("E11"), TOL)
