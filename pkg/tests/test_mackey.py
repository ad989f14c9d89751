import random
import time
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from eicat.catalg import CONTRAVARIANT, COVARIANT, category_algebra, is_projective
from eicat.catalog import get_category, get_module
from eicat.mackey import (CategoryMismatch, GroupTooLarge, MackeyModule, check_identification, dinfty_witness,
                          functor_I, identification_holds, is_semisimple, mackey_algebra,
                          mackey_extension_exists, random_mackey_restriction, representable_restriction,
                          right_projectivity_report, verify_F_isomorphism)
from eicat.orbitcat import parse_group, small_group_specs, subgroup_label, subgroups

SMALL = ["cyclic:2", "cyclic:3", "cyclic:4", "cyclic:2*cyclic:2", "sym:3"]


def _tw_block_dim(g, h, k):
    """Sum over g in K\\G/H of the subgroups of H n g^-1 K g up to conjugacy inside it."""
    h, k = frozenset(h), frozenset(k)
    seen, total = set(), 0
    for x in range(g.order):
        coset = frozenset(g.mul(g.mul(a, x), b) for a in k for b in h)
        if coset in seen:
            continue
        seen.add(coset)
        xi = g.inv(x)
        meet = h & frozenset(g.conj(xi, a) for a in k)
        subs = [frozenset(s) for s in subgroups(g) if frozenset(s) <= meet]
        classes = {frozenset(frozenset(g.conj(y, a) for a in s) for y in meet) for s in subs}
        total += len(classes)
    return total


@pytest.mark.parametrize("spec", SMALL + ["dihedral:4", "quaternion"])
def test_block_dims_match_double_coset_count(spec):
    g = parse_group(spec)
    mu = mackey_algebra(g)
    dims = mu.block_dims()
    for h, k in product(subgroups(g), repeat=2):
        assert dims.get((subgroup_label(g, h), subgroup_label(g, k)), 0) == _tw_block_dim(g, h, k)


def test_z2_dimensions():
    mu = mackey_algebra(parse_group("cyclic:2"))
    assert mu.dimension == 6
    assert mu.block_dims() == {("1", "1"): 2, ("1", "G"): 1, ("G", "1"): 1, ("G", "G"): 2}


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11])
def test_cyclic_prime_dimension(p):
    assert mackey_algebra(parse_group("cyclic:%d" % p)).dimension == p + 4


def test_s3_dimension():
    assert mackey_algebra(parse_group("sym:3")).dimension == 87


def test_bound():
    with pytest.raises(GroupTooLarge):
        mackey_algebra(parse_group("cyclic:17"))


@pytest.mark.parametrize("spec", SMALL)
def test_associativity_exhaustive(spec):
    ok, how = mackey_algebra(parse_group(spec)).verify_associativity()
    assert ok and how == "exhaustive"


def test_associativity_sampled_for_larger_groups():
    ok, how = mackey_algebra(parse_group("dihedral:4")).verify_associativity(budget=1000, samples=2000)
    assert ok and how == "sampled:2000"


def test_identities_are_units():
    g = parse_group("sym:3")
    mu = mackey_algebra(g)
    for i, e in enumerate(mu.elements):
        h, k = e[0], e[1]
        assert mu.product_raw(mu.elements[mu.identity_index(k)], e) == {i: 1}
        assert mu.product_raw(e, mu.elements[mu.identity_index(h)]) == {i: 1}


@pytest.mark.parametrize("spec", ["cyclic:4", "sym:3"])
def test_identification_matches_normal_forms(spec):
    g = parse_group(spec)
    mu = mackey_algebra(g)
    subs = subgroups(g)
    rng = random.Random(spec)
    for h, k in product(range(len(subs)), repeat=2):
        raw = [(l, x) for l in range(len(subs)) if set(subs[l]) <= set(subs[h])
               for x in range(g.order) if set(g.conj_set(x, subs[l])) <= set(subs[k])]
        for _ in range(30):
            (l1, x1), (l2, x2) = rng.choice(raw), rng.choice(raw)
            same = mu.basis_index(h, k, l1, x1) == mu.basis_index(h, k, l2, x2)
            assert same == identification_holds(g, subs[h], subs[k], (subs[l1], x1), (subs[l2], x2))


@pytest.mark.parametrize("spec", small_group_specs(8))
def test_identification_is_an_equivalence(spec):
    assert check_identification(parse_group(spec))


def test_functor_I_is_a_functor():
    for spec in ("cyclic:4", "sym:3"):
        assert functor_I(parse_group(spec)).functoriality_failures() == []


@pytest.mark.parametrize("spec", small_group_specs(12))
def test_F_is_bijective_and_algebra_semisimple(spec):
    r = verify_F_isomorphism(parse_group(spec))
    assert r.bijective and r.or_linear and r.semisimple
    assert r.domain_dim == r.codomain_dim


def test_F_report_for_z2():
    r = verify_F_isomorphism(parse_group("cyclic:2"))
    assert r.domain_dim == r.codomain_dim == 6 and r.rank == 6
    j = r.to_json()
    assert j["bijective"] is True


def test_semisimplicity_negative_control():
    assert not is_semisimple(category_algebra(get_category("diamond")))
    assert is_semisimple(category_algebra(get_category("group-S3")))


# -- extension of Or(G)-modules ---------------------------------------------------


@pytest.mark.parametrize("name", ["orbit-Z2", "orbit-Z4", "orbit-S3", "orbit-Z2xZ2", "orbit-Z6"])
@pytest.mark.parametrize("variance", [COVARIANT, CONTRAVARIANT])
def test_representable_restrictions_extend(name, variance):
    c = get_category(name)
    for obj in c.objects:
        m = representable_restriction(c, obj, variance)
        r = mackey_extension_exists(m)
        assert r.extends and r.certified
        assert r.witness.validate()
        if variance == COVARIANT:
            assert is_projective(m)


@pytest.mark.parametrize("name", ["orbit-Z2", "orbit-S3"])
def test_random_restrictions_extend(name):
    c = get_category(name)
    rng = random.Random(name)
    for kind in ("image", "cokernel"):
        for v in (COVARIANT, CONTRAVARIANT):
            m = random_mackey_restriction(c, rng, v, kind)
            r = mackey_extension_exists(m)
            assert r.extends and r.witness.validate()


def test_negative_control_is_certified():
    c = get_category("orbit-Z2")
    r = mackey_extension_exists(get_module("simple:G/1", c))
    assert not r.extends and r.certified and r.witness is None
    assert not r


def test_sign_module_extends():
    c = get_category("orbit-Z2")
    r = mackey_extension_exists(get_module("sign", c))
    assert r.extends and r.witness.validate()


def test_burnside_extends_but_is_not_projective():
    for name in ("orbit-Z2", "orbit-S3"):
        c = get_category(name)
        m = get_module("burnside", c)
        assert mackey_extension_exists(m).extends
        assert not is_projective(m)


def test_right_projectivity_report():
    assert right_projectivity_report(get_category("orbit-Z2")) == {"1": True, "G": False}
    assert not any(right_projectivity_report(get_category("orbit-S3")).values())


def test_broken_witness_fails_validation():
    c = get_category("orbit-Z2")
    r = mackey_extension_exists(get_module("burnside", c))
    w = r.witness
    ind = {key: t.scale(3) for key, t in w.inductions.items()}
    assert not MackeyModule(w.module, ind).validate()


def test_non_orbit_category_rejected():
    with pytest.raises(CategoryMismatch):
        mackey_extension_exists(get_module("constant", get_category("diamond")))


# -- D infinity --------------------------------------------------------------------


def test_dinfty_expansion_and_certificate():
    start = time.perf_counter()
    rep = dinfty_witness()
    assert time.perf_counter() - start < 1
    for k in range(-5, 6):
        assert rep.laurent[k] == {k: 1, k + 1: 2, k + 2: 1}
    assert rep.identity_holds and rep.solvable is False
    assert rep.certificate["evaluate_at"] == -1
    assert rep.functional_ok and not rep.von_neumann_regular
    assert max(rep.solver_supports) >= 50


@given(st.integers(-200, 200))
def test_functional_kills_every_expansion(k):
    # lambda(y_j) = (-1)^j (2j - 1) on genuine double cosets
    lam = lambda j: (-1) ** j * (2 * j - 1)
    assert lam(k) + 2 * lam(k + 1) + lam(k + 2) == 0
    assert lam(k) == lam(1 - k)


@given(st.lists(st.integers(-9, 9), min_size=1, max_size=8), st.integers(-3, 3))
def test_laurent_certificate(coeffs, shift):
    # (1 + u)^2 c(u) vanishes at u = -1 for every Laurent polynomial c
    c = {shift + i: a for i, a in enumerate(coeffs)}
    prod = {}
    for e, a in c.items():
        for d, b in ((0, 1), (1, 2), (2, 1)):
            prod[e + d] = prod.get(e + d, 0) + a * b
    assert sum(a * (-1) ** e for e, a in prod.items()) == 0
    assert prod != {0: 1}
