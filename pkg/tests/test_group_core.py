import pytest

from sumset_forge.group_core import (CyclicGroup, Coset, ModulusMismatch,
                                     ResidueSet, Subgroup, coset_of,
                                     containing_coset, subgroups)


def test_subgroup_orders_are_divisors():
    assert [h.order for h in subgroups(CyclicGroup(12))] == [1, 2, 3, 4, 6, 12]
    assert [h.order for h in subgroups(CyclicGroup(1))] == [1]
    assert [h.order for h in subgroups(CyclicGroup(7))] == [1, 7]


def test_subgroups_closed_under_addition_small_moduli():
    for d in range(1, 65):
        for h in subgroups(CyclicGroup(d)):
            elems = set(h.element_set())
            assert len(elems) == h.order
            assert all((x + y) % d in elems for x in elems for y in elems)


def test_coset_of_examples():
    g12 = CyclicGroup(12)
    assert set(coset_of(Subgroup(g12, 3), 5)) == {5, 9, 1}
    assert set(coset_of(Subgroup(g12, 12), 0)) == set(range(12))
    assert set(coset_of(Subgroup(CyclicGroup(6), 1), 4)) == {4}


def test_coset_cardinality_and_equality_relation():
    g = CyclicGroup(12)
    for order in (1, 2, 3, 4, 6, 12):
        h = Subgroup(g, order)
        for x in range(12):
            assert len(coset_of(h, x)) == order
            for y in range(12):
                same = coset_of(h, x).bits == coset_of(h, y).bits
                assert same == ((x - y) % 12 in h)


def test_coset_value_equality():
    h = Subgroup(CyclicGroup(12), 3)
    assert Coset(h, 1) == Coset(h, 9)
    assert Coset(h, 1) != Coset(h, 2)


def test_containing_coset():
    g = CyclicGroup(12)
    h = Subgroup(g, 3)           # {0, 4, 8}
    assert containing_coset(ResidueSet.of(g, [1, 5]), h) == 1
    assert containing_coset(ResidueSet.of(g, [1, 2]), h) is None
    trivial = Subgroup(g, 1)
    assert containing_coset(ResidueSet.of(g, [0]), trivial) == 0


def test_containing_coset_differences_in_subgroup():
    g = CyclicGroup(24)
    for order in (1, 2, 3, 4, 6, 8, 12, 24):
        h = Subgroup(g, order)
        s = coset_of(h, 5)
        rep = containing_coset(s, h)
        assert rep is not None
        for x in s:
            for y in s:
                assert (x - y) % 24 in h


def test_containing_coset_empty_rejected():
    g = CyclicGroup(6)
    with pytest.raises(ValueError, match="empty"):
        containing_coset(ResidueSet.of(g, []), Subgroup(g, 2))


def test_modulus_mismatch_detected():
    a = ResidueSet.of(CyclicGroup(6), [0])
    h = Subgroup(CyclicGroup(12), 3)
    with pytest.raises(ModulusMismatch):
        containing_coset(a, h)


def test_residue_set_basics():
    g = CyclicGroup(10)
    s = ResidueSet.of(g, [3, 7, 1])
    assert len(s) == 3
    assert list(s) == [1, 3, 7]
    assert 7 in s and 2 not in s
    assert set(s.shift(5)) == {6, 2, 8}
    with pytest.raises(ValueError):
        ResidueSet.of(g, [10])


def test_trivial_group_supported():
    g = CyclicGroup(1)
    s = ResidueSet.of(g, [0])
    assert containing_coset(s, Subgroup(g, 1)) == 0
    assert set(coset_of(Subgroup(g, 1), 0)) == {0}
