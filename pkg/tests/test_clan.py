"""Projection clans and the zero-meet/zero-product distributivity criterion.

The two-dimensional clan mixing the computational and the diagonal basis is
the smallest case where both verdicts go negative together, with the overlap
||P1 P2 P1|| = 1/2 sitting strictly between zero and one.
"""

import numpy as np
import pytest

from qstruct import (
    Clan,
    DomainError,
    Tolerance,
    distributivity_criterion,
    operator_distribution,
    op_norm,
    vector_state,
    verify_clan,
    verify_observable,
)
from qstruct.clan import unit_index

TOL = Tolerance()


def diagonal_clan(d):
    members, labels = [], []
    for mask in range(1 << d):
        members.append(np.diag([float(mask >> i & 1) for i in range(d)]))
        labels.append(f"D{mask}")
    return Clan(members, labels)


def crossed_clan():
    plus = np.full((2, 2), 0.5)
    minus = np.array([[0.5, -0.5], [-0.5, 0.5]])
    members = [np.zeros((2, 2)), np.diag([1.0, 0.0]), np.diag([0.0, 1.0]), plus, minus, np.eye(2)]
    return Clan(members, ["0", "z+", "z-", "x+", "x-", "1"])


def test_diagonal_clans_are_distributive_and_satisfy_the_criterion():
    for d in (2, 3):
        rep = verify_clan(diagonal_clan(d), TOL)
        assert rep.ok
        assert rep.facts["distributive"] is True
        assert rep.facts["criterion"] is True
        assert rep.facts["agree"] is True
        assert rep.facts["unit"] == f"D{(1 << d) - 1}"


def test_crossed_clan_fails_both_verdicts_together():
    rep = verify_clan(crossed_clan(), TOL)
    assert rep.ok  # agreement holds even though both verdicts are negative
    assert rep.facts["distributive"] is False
    assert rep.facts["criterion"] is False
    assert rep.facts["agree"] is True
    wit = rep.facts["criterion_witness"]
    assert wit["overlap"] == pytest.approx(0.5, abs=1e-12)
    assert wit["product_norm"] == pytest.approx(np.sqrt(0.5), abs=1e-12)
    assert wit["overlap"] == pytest.approx(wit["product_norm"] ** 2, abs=1e-12)


def test_criterion_witness_names_an_orthogonal_but_unannihilated_pair():
    verdicts = distributivity_criterion(crossed_clan(), TOL)
    wit = verdicts["criterion_witness"]
    assert {wit["a"], wit["b"]} <= {"z+", "z-", "x+", "x-"}


def test_unit_index_requires_an_absorbing_member():
    plus = np.full((2, 2), 0.5)
    clan = Clan([np.zeros((2, 2)), np.diag([1.0, 0.0]), plus])
    with pytest.raises(DomainError, match="absorbing unit"):
        unit_index(clan, TOL)


def test_clan_member_validation():
    with pytest.raises(DomainError, match="empty"):
        Clan([])
    with pytest.raises(DomainError, match="different spaces"):
        Clan([np.eye(2), np.eye(3)])
    with pytest.raises(DomainError, match="label count"):
        Clan([np.eye(2)], ["a", "b"])


def test_vector_state_weights_follow_the_amplitudes():
    clan = diagonal_clan(2)
    xi = np.array([np.sqrt(0.3), np.sqrt(0.7)])
    vals, rep = vector_state(clan, xi, TOL)
    assert rep.ok
    assert vals == pytest.approx([0.0, 0.3, 0.7, 1.0])
    with pytest.raises(DomainError, match="dimension mismatch"):
        vector_state(clan, np.ones(3), TOL)


def test_unnormalized_vectors_fail_unit_normalization():
    clan = diagonal_clan(2)
    _, rep = vector_state(clan, np.array([1.0, 1.0]), TOL)
    assert not rep.get("unit-normalized").passed


def test_operator_distribution_compresses_the_members():
    clan = diagonal_clan(2)
    f = np.eye(2)
    images, rep = operator_distribution(clan, f, TOL)
    assert rep.ok
    for img, member in zip(images, clan.members):
        assert op_norm(img - member) <= 1e-12

    corner = np.array([[1.0], [0.0]])
    images, rep = operator_distribution(clan, corner, TOL)
    assert rep.ok
    assert images[clan.labels.index("D1")] == pytest.approx(np.ones((1, 1)))
    assert images[clan.labels.index("D2")] == pytest.approx(np.zeros((1, 1)))


def test_operator_distribution_validates_the_isometry():
    clan = diagonal_clan(2)
    with pytest.raises(DomainError, match="not an isometry"):
        operator_distribution(clan, np.full((2, 1), 1.0), TOL)
    with pytest.raises(DomainError, match="shape mismatch"):
        operator_distribution(clan, np.ones(2), TOL)


def test_observable_resolution_and_spectrum():
    clan = diagonal_clan(2)
    ids = [clan.labels.index("D1"), clan.labels.index("D2")]
    rep = verify_observable(clan, ids, [-1.0, 1.0], TOL)
    assert rep.ok
    assert rep.facts["norm"] == 1.0
    assert rep.facts["spectrum"] == [-1.0, 1.0]

    rep = verify_observable(clan, [ids[0], clan.labels.index("D3")], [1.0, 2.0], TOL)
    assert not rep.get("pairwise-orthogonal").passed

    with pytest.raises(DomainError, match="one value per member"):
        verify_observable(clan, ids, [1.0], TOL)
    with pytest.raises(DomainError, match="empty"):
        verify_observable(clan, [], [], TOL)
