import itertools
import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from eicat.fincat import (CategoryError, FiniteCategory, NotEI, enumerate_factorizations, group_category,
                          is_ei, ladder, monoid_category, poset_category, quiver_category, ufp_check,
                          unfactorisables)
from eicat.orbitcat import orbit_category, parse_group

DIAMOND = poset_category("abcd", [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")])


@st.composite
def posets(draw):
    n = draw(st.integers(1, 5))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    rel = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return n, rel


def _closure(n, rel):
    le = {(i, i) for i in range(n)} | set(rel)
    for k, i, j in itertools.product(range(n), repeat=3):
        if (i, k) in le and (k, j) in le:
            le.add((i, j))
    return le


def _saturated_chains(le, a, b):
    """Count chains of covering relations from a to b by brute force."""
    if a == b:
        return 1
    covers = [c for c in {y for x, y in le if x == a} - {a}
              if not any((a, m) in le and (m, c) in le and m not in (a, c) for m in {y for _, y in le})]
    return sum(_saturated_chains(le, c, b) for c in covers if (c, b) in le)


@given(posets())
def test_poset_ufp_iff_unique_saturated_chains(p):
    n, rel = p
    c = poset_category(range(n), rel)
    le = _closure(n, rel)
    assert len(c.morphisms) == len(le)
    expected = all(_saturated_chains(le, a, b) == 1 for a, b in le)
    assert ufp_check(c)[0] == expected


@given(posets())
def test_factorization_count_matches_saturated_chains(p):
    n, rel = p
    c = poset_category(range(n), rel)
    le = _closure(n, rel)
    for a, b in le:
        if a != b:
            assert len(enumerate_factorizations(c, "%s->%s" % (a, b))) == _saturated_chains(le, a, b)


def test_diamond_fails_with_witness():
    ok, (first, other) = ufp_check(DIAMOND)
    assert not ok
    assert {tuple(first), tuple(other)} == {("a->b", "b->d"), ("a->c", "c->d")}
    assert DIAMOND.compose_chain(first) == DIAMOND.compose_chain(other) == "a->d"


def test_chain_and_quivers_have_ufp():
    assert ufp_check(poset_category([0, 1, 2], [(0, 1), (1, 2)]))[0]
    k = quiver_category(["s", "t"], [("f", "s", "t"), ("g", "s", "t")])
    assert ufp_check(k)[0]
    a = quiver_category("uvw", [("f", "u", "v"), ("g", "v", "w")])
    assert sorted(unfactorisables(a)) == ["f", "g"]
    assert a.compose("g", "f") == "f.g"


def test_group_category():
    g = parse_group("sym:3")
    c = group_category(g.table)
    assert len(c) == 6 and is_ei(c) and ufp_check(c)[0]
    assert unfactorisables(c) == []


def test_ladder_through_automorphisms():
    c = orbit_category(parse_group("cyclic:4"))
    top = [m for m in c.hom("G/1", "G/G")][0]
    chains = enumerate_factorizations(c, top)
    assert len(chains) > 1
    first = chains[0]
    for other in chains[1:]:
        h = ladder(c, first, other)
        assert h is not None and len(h) == len(first) - 1
        # h_1 o a_1 = b_1 and b_2 o h_1 = a_2
        assert c.compose(h[0], first[0]) == other[0]
        assert c.compose(other[1], h[0]) == first[1]
    assert ladder(c, first, first[:1]) is None
    assert ladder(c, [], []) == []


def test_non_ei_rejected():
    idem = monoid_category([[0, 1], [1, 1]], labels=["1", "e"])
    assert not is_ei(idem)
    with pytest.raises(NotEI):
        ufp_check(idem)


def test_op_is_involutive_and_reverses():
    op = DIAMOND.op()
    assert op.op() is DIAMOND
    assert op.src("a->b") == "b" and op.dst("a->b") == "a"
    assert op.compose("a->b", "b->d") == "a->d"
    assert not ufp_check(op)[0]


def test_hom_sets_and_identities():
    assert DIAMOND.hom("a", "d") == ["a->d"]
    assert DIAMOND.hom("d", "a") == []
    assert DIAMOND.is_identity("b->b")
    assert DIAMOND.compose("b->d", "a->c") is None


def test_json_round_trip():
    data = json.loads(json.dumps(DIAMOND.to_json()))
    back = FiniteCategory.from_json(data)
    assert back.objects == DIAMOND.objects
    assert back.morphisms == DIAMOND.morphisms
    assert not ufp_check(back)[0]


def test_json_rejections():
    data = DIAMOND.to_json()
    with pytest.raises(CategoryError):
        FiniteCategory.from_json(dict(data, format=2))
    bad = dict(data)
    del bad["identities"]
    with pytest.raises(CategoryError):
        FiniteCategory.from_json(bad)
    broken = dict(data, composition=[c for c in data["composition"] if c[2] != "a->d"])
    with pytest.raises(CategoryError):
        FiniteCategory.from_json(broken)


def test_non_associative_table_rejected():
    # a "monoid" on {1, x, y} whose product is not associative
    table = [[0, 1, 2], [1, 2, 0], [2, 2, 2]]
    with pytest.raises(CategoryError):
        monoid_category(table)


def test_cyclic_relations_rejected():
    with pytest.raises(CategoryError):
        poset_category([0, 1], [(0, 1), (1, 0)])
