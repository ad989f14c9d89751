import itertools
import json
import random

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from eicat.catalg import (CONTRAVARIANT, COVARIANT, CatModule, ModuleError, NotAFunctor, VarianceMismatch,
                          category_algebra, constant_module, direct_sum, ext_groups, flat_hom_dim,
                          flat_tensor_dim, hom_over_c, is_hereditary, is_projective, jacobson_radical,
                          opposite_module, parse_variance, projective_resolution, projective_splitting,
                          representable, simple_at, tensor_over_c, tor_groups, xi, xi_inverse)
from eicat.catalog import category_names, get_category, get_module
from eicat.fincat import NotEI, is_ei, monoid_category, poset_category, ufp_check
from eicat.randgen import averaged_representable, random_module, random_projective

CATS = category_names()
VARIANCES = [COVARIANT, CONTRAVARIANT]


@pytest.mark.parametrize("name", CATS)
def test_radical_is_span_of_non_isomorphisms(name):
    # over Q the automorphism group algebras are semisimple, so for an EI
    # category the radical is spanned by the non-invertible morphisms
    c = get_category(name)
    isos = sum(1 for f in c.morphisms if c.is_iso(f))
    assert jacobson_radical(category_algebra(c)).cols == len(c.morphisms) - isos


@pytest.mark.parametrize("name", CATS)
@pytest.mark.parametrize("variance", VARIANCES)
def test_yoneda_hom_and_tensor(name, variance):
    c = get_category(name)
    rng = random.Random(name + variance)
    m = random_module(c, variance, rng)
    for x in c.objects:
        assert len(hom_over_c(representable(c, x, variance), m)) == m.dims[x]
    if variance == COVARIANT:
        for x in c.objects:
            assert tensor_over_c(representable(c, x, CONTRAVARIANT), m).dim == m.dims[x]


@pytest.mark.parametrize("name", CATS)
def test_representables_and_averaged_summands_are_projective(name):
    c = get_category(name)
    for v in VARIANCES:
        for x in c.objects:
            assert is_projective(representable(c, x, v))
            assert is_projective(averaged_representable(c, x, v))
        assert is_projective(random_projective(c, v, random.Random(name)))


@pytest.mark.parametrize("name", CATS)
def test_averaging_and_linear_routes_agree(name):
    c = get_category(name)
    rng = random.Random("routes-" + name)
    for _ in range(4):
        for v in VARIANCES:
            m = random_module(c, v, rng)
            assert projective_splitting(m, "averaging").projective == projective_splitting(m, "linear").projective


def test_chain2_simples():
    c = get_category("chain2")
    # contravariant: Q Hom(-, 0) is the simple at 0, Q Hom(-, 1) has dims (1, 1)
    assert is_projective(simple_at(c, 0, CONTRAVARIANT))
    assert not is_projective(simple_at(c, 1, CONTRAVARIANT))
    assert is_projective(simple_at(c, 1, COVARIANT))
    assert not is_projective(simple_at(c, 0, COVARIANT))


def test_group_algebra_modules_all_projective():
    c = get_category("group-S3")
    rng = random.Random(3)
    for _ in range(5):
        assert is_projective(random_module(c, COVARIANT, rng))


@pytest.mark.parametrize("name", CATS)
def test_resolution_is_exact_with_euler_characteristic(name):
    c = get_category(name)
    rng = random.Random("res-" + name)
    for v in VARIANCES:
        m = random_module(c, v, rng)
        res = projective_resolution(m)
        assert res.check_exact()
        assert all(is_projective(t) for t in res.terms)
        for x in c.objects:
            assert sum((-1) ** i * t.dims[x] for i, t in enumerate(res.terms)) == m.dims[x]


# -- Ext over incidence algebras against order complexes --------------------------


def _reduced_interval_homology(le, x, y, top):
    """dims of reduced H_k of the order complex of the open interval (x, y), k = -1..top."""
    inner = [z for z in {a for a, _ in le} if z not in (x, y) and (x, z) in le and (z, y) in le]
    chains = {-1: [()]}
    for k in range(0, top + 2):
        chains[k] = [s for s in itertools.permutations(inner, k + 1)
                     if all((s[i], s[i + 1]) in le for i in range(k))]
    ranks = {}
    for k in range(0, top + 2):
        rows, cols = chains[k - 1], chains[k]
        index = {s: i for i, s in enumerate(rows)}
        mat = sympy.zeros(len(rows), len(cols))
        for j, s in enumerate(cols):
            for i in range(len(s)):
                mat[index[s[:i] + s[i + 1:]], j] += (-1) ** i
        ranks[k] = mat.rank() if rows and cols else 0
    return {k: len(chains[k]) - ranks.get(k, 0) - ranks.get(k + 1, 0) for k in range(-1, top + 1)}


@st.composite
def posets(draw):
    n = draw(st.integers(2, 5))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    rel = draw(st.lists(st.sampled_from(pairs), unique=True, min_size=1))
    return n, rel


@given(posets())
def test_ext_between_simples_is_interval_homology(p):
    n, rel = p
    c = poset_category(range(n), rel)
    le = {(a, b) for a in range(n) for b in range(n) if c.hom(a, b)}
    for x, y in le:
        if x == y:
            continue
        ext = ext_groups(simple_at(c, y, CONTRAVARIANT), simple_at(c, x, CONTRAVARIANT), degree_max=3)
        h = _reduced_interval_homology(le, x, y, 1)
        assert ext == [0] + [h[k - 2] for k in range(1, 4)]


@given(posets())
def test_tor_is_dual_to_ext(p):
    n, rel = p
    c = poset_category(range(n), rel)
    for x in range(n):
        for y in range(n):
            sy = simple_at(c, y, CONTRAVARIANT)
            assert tor_groups(sy, simple_at(c, x, COVARIANT), 3) == ext_groups(sy, simple_at(c, x, CONTRAVARIANT), 3)


def test_diamond_ext2_and_chain_tor():
    d = get_category("diamond")
    assert ext_groups(get_module("simple:d", d), get_module("simple:a", d), 3) == [0, 0, 1, 0]
    c = get_category("chain2")
    assert tor_groups(get_module("simple:1", c), get_module("simple-co:0", c), 2) == [0, 1, 0]


def test_tensor_of_constants_over_chain():
    c = get_category("chain2")
    # Q (x)_C Q is the homology of the nerve in degree 0: one component
    assert tensor_over_c(constant_module(c, CONTRAVARIANT), constant_module(c, COVARIANT)).dim == 1
    t = tensor_over_c(representable(c, 1, CONTRAVARIANT), representable(c, 0, COVARIANT))
    assert t.dim == 1


def test_variance_mismatch():
    c = get_category("chain2")
    with pytest.raises(VarianceMismatch):
        tensor_over_c(constant_module(c, COVARIANT), constant_module(c, COVARIANT))
    with pytest.raises(VarianceMismatch):
        hom_over_c(constant_module(c, COVARIANT), constant_module(c, CONTRAVARIANT))


@pytest.mark.parametrize("name", ["chain3", "kronecker", "group-Z2", "orbit-Z2", "diamond"])
def test_flat_side_round_trip(name):
    c = get_category(name)
    rng = random.Random("flat-" + name)
    for v in VARIANCES:
        m = random_module(c, v, rng)
        back = xi_inverse(xi(m))
        assert back.dim_vector() == m.dim_vector()
        assert flat_hom_dim(xi(m), xi(m)) == len(hom_over_c(m, m))
    a = random_module(c, CONTRAVARIANT, rng)
    b = random_module(c, COVARIANT, rng)
    assert flat_tensor_dim(xi(a), xi(b)) == tensor_over_c(a, b).dim


def test_hereditary_examples():
    assert is_hereditary(get_category("chain3"))
    assert is_hereditary(get_category("kronecker"))
    assert is_hereditary(get_category("group-S3"))
    assert not is_hereditary(get_category("diamond"))
    assert not is_hereditary(get_category("orbit-S3"))
    with pytest.raises(NotEI):
        is_hereditary(monoid_category([[0, 1], [1, 1]]))


def test_hereditary_methods_agree():
    for name in CATS:
        c = get_category(name)
        assert is_hereditary(c, "averaging") == is_hereditary(c, "linear") == ufp_check(c)[0]


def test_non_functorial_action_rejected():
    c = get_category("chain3")
    with pytest.raises(NotAFunctor):
        CatModule(c, COVARIANT, {0: 1, 1: 1, 2: 1}, {"0->1": [[1]], "1->2": [[1]], "0->2": [[2]]})
    with pytest.raises(NotAFunctor):
        CatModule(c, COVARIANT, {0: 1, 1: 1}, {"0->1": [[1, 0]]})


def test_module_json_round_trip():
    c = get_category("orbit-S3")
    m = get_module("mackey-rep:G/1", c)
    data = json.loads(json.dumps(m.to_json()))
    back = CatModule.from_json(c, data)
    assert back.variance == m.variance and back.dims == m.dims
    assert all(back.action[f] == m.action[f] for f in c.morphisms)
    with pytest.raises(ModuleError):
        CatModule.from_json(c, dict(data, format=3))


def test_parse_variance():
    assert parse_variance("co") == COVARIANT
    assert parse_variance("contravariant") == CONTRAVARIANT
    with pytest.raises(ModuleError):
        parse_variance("sideways")


def test_opposite_module_is_involutive():
    c = get_category("orbit-Z4")
    m = get_module("rep-co:G/1", c)
    o = opposite_module(m)
    assert o.category is c.op() and o.variance == CONTRAVARIANT
    o.validate()
    back = opposite_module(o)
    assert back.category is c and back.variance == COVARIANT


def test_direct_sum_dims():
    c = get_category("vee")
    # the constant module is Q Hom(a, -) here, the simple at a is not projective
    assert is_projective(constant_module(c, COVARIANT))
    a, b = simple_at(c, "a", COVARIANT), representable(c, "a", COVARIANT)
    s = direct_sum([a, b])
    assert s.dim_vector() == [x + y for x, y in zip(a.dim_vector(), b.dim_vector())]
    assert not is_projective(s)


def test_ei_catalog():
    assert all(is_ei(get_category(n)) for n in CATS)


def test_simple_on_non_skeletal_orbit_category():
    c = get_category("orbit-S3")
    s = simple_at(c, "G/H1", CONTRAVARIANT)
    assert sorted(o for o, d in s.dims.items() if d) == ["G/H1", "G/H2", "G/H3"]
    assert len(hom_over_c(s, s)) == 1
