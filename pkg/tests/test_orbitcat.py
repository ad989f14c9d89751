import json
from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from eicat.fincat import is_ei, ufp_check
from eicat.orbitcat import (FiniteGroup, GroupError, GroupTooLarge, SubgroupFamily, all_families,
                            orbit_category, orbit_ufp_criterion, parse_group, small_group_specs, subgroups,
                            trans_set)

SUBGROUP_COUNTS = {
    "sym:3": 6, "dihedral:4": 10, "quaternion": 6, "alt:4": 10, "cyclic:2*cyclic:2*cyclic:2": 16,
    "cyclic:12": 6, "cyclic:2*cyclic:2": 5, "dihedral:6": 16, "cyclic:2*cyclic:6": 10,
    "dicyclic:3": 8, "dihedral:5": 8, "cyclic:3*cyclic:3": 6, "cyclic:8": 4,
}

# number of isomorphism classes of groups of order 1..12
GROUPS_PER_ORDER = {1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 2, 7: 1, 8: 5, 9: 2, 10: 2, 11: 1, 12: 5}


@pytest.mark.parametrize("spec,count", sorted(SUBGROUP_COUNTS.items()))
def test_subgroup_counts(spec, count):
    assert len(subgroups(parse_group(spec))) == count


def _two_generated(g):
    # closure of every subset is too many; instead close every pair of elements
    found = set()
    for a in range(g.order):
        for b in range(g.order):
            found.add(g.generated([a, b]))
    return found


def test_two_generated_subgroups_found():
    for spec in small_group_specs(12):
        g = parse_group(spec)
        subs = {frozenset(s) for s in subgroups(g)}
        assert _two_generated(g) <= subs
        assert all(g.is_subgroup(s) for s in subs)


def test_small_group_list_is_one_per_class():
    specs = small_group_specs(12)
    assert Counter(parse_group(s).order for s in specs) == Counter(GROUPS_PER_ORDER)
    # distinguish classes of equal order by element-order and subgroup statistics
    seen = set()
    for s in specs:
        g = parse_group(s)
        key = (g.order, tuple(sorted(Counter(g.element_order(a) for a in range(g.order)).items())),
               len(subgroups(g)))
        assert key not in seen
        seen.add(key)


def _fixed_points(g, h, k):
    """|(G/K)^H| by brute force over left cosets."""
    cosets = {frozenset(g.mul(x, y) for y in k) for x in range(g.order)}
    return sum(1 for c in cosets if all(frozenset(g.mul(a, y) for y in c) == c for a in h))


@pytest.mark.parametrize("spec", ["cyclic:4", "sym:3", "dihedral:4", "quaternion", "alt:4"])
def test_hom_sizes_are_fixed_points(spec):
    g = parse_group(spec)
    c = orbit_category(g)
    c.validate()
    subs = subgroups(g)
    label = {s: o for s, o in zip(subs, c.objects)}
    for h in subs:
        for k in subs:
            assert len(c.hom(label[h], label[k])) == _fixed_points(g, h, k)


def test_orbit_category_is_ei():
    for spec in ("sym:3", "dihedral:4"):
        c = orbit_category(parse_group(spec))
        assert is_ei(c)
        assert len(c.automorphisms("G/1")) == parse_group(spec).order


def test_trans_set():
    g = parse_group("sym:3")
    subs = subgroups(g)
    order2 = [s for s in subs if len(s) == 2]
    assert len(trans_set(g, order2[0], order2[1])) == 2
    assert len(trans_set(g, subs[0], order2[0])) == 6


@pytest.mark.parametrize("spec,count", [("cyclic:2", 2), ("cyclic:8", 4), ("cyclic:6", 5), ("sym:3", 5)])
def test_family_counts(spec, count):
    assert len(all_families(parse_group(spec))) == count


def test_families_closed_under_subconjugation():
    g = parse_group("dihedral:4")
    for fam in all_families(g):
        members = {frozenset(m) for m in fam.members}
        for m in members:
            for s in subgroups(g):
                for x in range(g.order):
                    if frozenset(g.conj_set(x, s)) <= m:
                        assert frozenset(s) in members


def test_invalid_family_rejected():
    g = parse_group("sym:3")
    with pytest.raises(GroupError):
        SubgroupFamily(g, [tuple(range(6))])


@pytest.mark.parametrize("spec,expected", [("cyclic:8", True), ("cyclic:6", False), ("sym:3", False),
                                           ("cyclic:9", True), ("cyclic:2*cyclic:2", False)])
def test_named_criterion_rows(spec, expected):
    c = orbit_category(parse_group(spec))
    assert orbit_ufp_criterion(c.family) == expected
    assert ufp_check(c)[0] == expected


@given(st.sampled_from(small_group_specs(8)))
def test_criterion_equals_ufp_for_every_family(spec):
    g = parse_group(spec)
    for fam in all_families(g):
        assert orbit_ufp_criterion(fam) == ufp_check(orbit_category(g, fam))[0]


def test_group_json_round_trip_and_rejections(tmp_path):
    g = parse_group("dihedral:4")
    path = tmp_path / "g.json"
    path.write_text(json.dumps(g.to_json()))
    back = parse_group("file:%s" % path)
    assert back.table == g.table
    with pytest.raises(GroupError):
        FiniteGroup.from_json({"format": 2, "table": g.table})
    with pytest.raises(GroupError):
        FiniteGroup.from_json({"format": 1})
    with pytest.raises(GroupError):
        FiniteGroup([[0, 1], [1, 1]])
    with pytest.raises(GroupError):
        parse_group("free:2")


def test_order_bound():
    with pytest.raises(GroupTooLarge):
        subgroups(parse_group("cyclic:20"), bound=16)
    with pytest.raises(GroupError):
        small_group_specs(13)
