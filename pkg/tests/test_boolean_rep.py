"""Set representations of boolean semirings, measures and subset topologies.

Powerset semirings index elements by bitmask and their points are the atoms,
so every extent is predictable from popcounts; the diamond provides the
canonical non-representable contrast.
"""

import numpy as np
import pytest

from qstruct import (
    BooleanSemiring,
    DistributionTable,
    DomainError,
    StructuralError,
    SubsetTopology,
    diamond_semiring,
    induced_homomorphism,
    maximal_filters,
    mo2_semilogic,
    powerset_semiring,
    represent_distribution,
    shuffled_powerset_semiring,
    stone_map,
    subset_semilogic,
    verify_homomorphism,
    verify_semiring,
    verify_stone,
    verify_topology,
)


def test_semiring_rejects_partial_products_and_trivial_carriers():
    mo2 = mo2_semilogic()
    with pytest.raises(DomainError, match="total"):
        BooleanSemiring(mo2.poset, mo2.prod)
    with pytest.raises(DomainError, match="trivial"):
        powerset_semiring(0)


def test_powerset_points_are_atom_upsets():
    bs = powerset_semiring(3)
    filters = maximal_filters(bs)
    assert len(filters) == 3
    gens = {min(f.members, key=lambda b: bin(b).count("1")) for f in filters}
    assert gens == {0b001, 0b010, 0b100}
    for f in filters:
        g = min(f.members, key=lambda b: bin(b).count("1"))
        assert f.members == frozenset(b for b in range(8) if b & g)


def test_stone_map_extent_sizes_follow_popcount():
    bs = powerset_semiring(3)
    sr = stone_map(bs)
    rep = verify_stone(sr)
    assert rep.ok
    assert rep.facts["point_count"] == 3
    for b in range(8):
        assert len(sr.extent[b]) == bin(b).count("1")


def test_shuffled_semirings_still_represent_faithfully():
    for seed in (1, 12, 123):
        sr = stone_map(shuffled_powerset_semiring(3, seed))
        rep = verify_stone(sr)
        assert rep.ok, [c.name for c in rep.checks if not c.passed]
        assert rep.facts["point_count"] == 3


def test_diamond_fails_exactly_the_union_law():
    bs = diamond_semiring()
    srep = verify_semiring(bs)
    assert [c.name for c in srep.checks if not c.passed] == ["product-additivity"]
    assert srep.facts["distributive"] is False
    rep = verify_stone(stone_map(bs))
    failed = {c.name for c in rep.checks if not c.passed}
    assert failed == {"sums-to-unions"}
    wit = rep.get("sums-to-unions").witnesses[0]
    assert wit["sum"] == "1" and len(wit["family"]) == 2


def test_distribution_pushes_to_a_measure():
    bs = powerset_semiring(2)
    sr = stone_map(bs)
    m = DistributionTable.from_dict(bs, {"{0}": 0.25, "{1}": 0.75, "{0,1}": 1.0})
    measure, rep = represent_distribution(sr, m)
    assert rep.ok
    assert rep.facts["ring_size"] == 4
    assert rep.facts["mass"] == pytest.approx(1.0)
    assert measure[frozenset()] == 0.0
    assert measure[sr.extent[bs.index("{0}")]] == pytest.approx(0.25)
    assert measure[sr.extent[bs.index("{0,1}")]] == pytest.approx(1.0)
    assert sorted(measure.values()) == pytest.approx([0.0, 0.25, 0.75, 1.0])


def test_non_additive_distribution_is_caught_twice():
    bs = powerset_semiring(2)
    sr = stone_map(bs)
    m = DistributionTable.from_dict(bs, {"{0}": 0.25, "{1}": 0.75, "{0,1}": 0.9})
    _, rep = represent_distribution(sr, m)
    assert not rep.get("additive-consistency").passed
    assert not rep.get("mass-preserved").passed


def test_induced_homomorphism_pulls_back_along_points():
    src = stone_map(powerset_semiring(2))
    dst = stone_map(powerset_semiring(3))
    # two destination points land on source point 0, the third on point 1
    h = induced_homomorphism(src, dst, [0, 0, 1])
    rep = verify_homomorphism(h)
    assert rep.ok
    # {0} pulls back to the union of the two points mapped onto it
    pre = int(h.mapping[src.semiring.index("{0}")])
    assert len(dst.extent[pre]) == 2
    assert int(h.mapping[0]) == 0
    assert dst.semiring.labels[int(h.mapping[3])] == "{0,1,2}"


def test_induced_homomorphism_validates_the_point_map():
    src = stone_map(powerset_semiring(2))
    dst = stone_map(diamond_semiring())
    with pytest.raises(DomainError, match="length mismatch"):
        induced_homomorphism(src, dst, [0])
    with pytest.raises(DomainError, match="out of range"):
        induced_homomorphism(src, dst, [0, 1, 5])
    with pytest.raises(DomainError, match="not representable"):
        # {0, 1} is not an extent of the diamond
        induced_homomorphism(src, dst, [0, 0, 1])


def test_subset_semilogic_orders_by_inclusion():
    fam = [frozenset(), frozenset({0}), frozenset({0, 1})]
    s, order = subset_semilogic(fam)
    assert order == fam
    assert s.labels == ("{}", "{0}", "{0,1}")
    assert (s.prod >= 0).all()  # intersection-closed family
    partial, _ = subset_semilogic([frozenset({0}), frozenset({1})])
    assert (partial.prod < 0).any()  # {0} & {1} leaves the family


def all_subsets(k):
    return [frozenset(i for i in range(k) if m >> i & 1) for m in range(1 << k)]


def test_sierpinski_topology_verifies_but_does_not_approximate():
    sets = all_subsets(2)
    t = SubsetTopology(
        carrier=frozenset({0, 1}),
        sets=sets,
        opens=[frozenset(), frozenset({1}), frozenset({0, 1})],
        closeds=[frozenset(), frozenset({0}), frozenset({0, 1})],
    )
    rep = verify_topology(t)
    assert rep.ok
    assert rep.facts["approximating"] is False
    assert rep.facts["approximating_witness"] == {"set": [0]}


def test_discrete_topology_approximates():
    sets = all_subsets(2)
    t = SubsetTopology(frozenset({0, 1}), sets, sets, sets)
    rep = verify_topology(t)
    assert rep.ok
    assert rep.facts["approximating"] is True


def test_topology_families_must_stay_in_the_ring():
    sets = all_subsets(2)
    t = SubsetTopology(frozenset({0, 1}), sets, [frozenset({7})], sets)
    with pytest.raises(StructuralError, match="leaves the ring"):
        verify_topology(t)


def test_missing_closed_empty_set_is_reported():
    sets = all_subsets(2)
    t = SubsetTopology(
        frozenset({0, 1}), sets, sets, [frozenset({0}), frozenset({0, 1})]
    )
    rep = verify_topology(t)
    assert not rep.get("closed-empty").passed
