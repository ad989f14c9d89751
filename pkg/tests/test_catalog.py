import pytest

from eicat.catalg import CONTRAVARIANT, COVARIANT
from eicat.catalog import (UnknownEntry, category_names, get_category, get_complex, get_module,
                           hereditary_names)
from eicat.fincat import is_ei

GENERIC_MODULES = ["constant", "constant-co"]


@pytest.mark.parametrize("name", category_names(include_non_ei=True))
def test_every_category_validates(name):
    c = get_category(name)
    c.validate()
    assert c.op().op() is c


def test_catalog_size_and_ei_split():
    assert len(category_names()) >= 10
    assert all(is_ei(get_category(n)) for n in category_names())
    assert not is_ei(get_category("idempotent"))


def test_hereditary_names():
    names = set(hereditary_names())
    assert {"point", "chain2", "chain3", "vee", "arrow", "kronecker", "a3", "group-Z2", "group-S3",
            "orbit-Z2", "orbit-Z4"} <= names
    assert not names & {"diamond", "orbit-S3", "orbit-Z6", "orbit-Z2xZ2"}


@pytest.mark.parametrize("name", category_names())
def test_object_modules_validate(name):
    c = get_category(name)
    for kind in GENERIC_MODULES:
        get_module(kind, c).validate()
    for o in c.objects:
        for kind in ("simple", "simple-co", "rep", "rep-co"):
            m = get_module("%s:%s" % (kind, o), c)
            m.validate()
            assert m.variance == (COVARIANT if kind.endswith("-co") else CONTRAVARIANT)


@pytest.mark.parametrize("name", ["orbit-Z2", "orbit-Z4", "orbit-S3", "orbit-Z6", "orbit-Z2xZ2"])
def test_orbit_modules(name):
    c = get_category(name)
    get_module("burnside", c).validate()
    for o in c.objects:
        get_module("mackey-rep:%s" % o, c).validate()
        get_module("mackey-rep-co:%s" % o, c).validate()


def test_sign_module():
    m = get_module("sign", get_category("orbit-Z2"))
    assert m.dims == {"G/1": 1, "G/G": 0}
    with pytest.raises(UnknownEntry):
        get_module("sign", get_category("orbit-Z4"))


def test_complexes():
    z2 = get_category("orbit-Z2")
    get_complex("circle", z2).validate()
    get_complex("point:G/G", z2).validate()
    get_complex("module:burnside", z2).validate()
    get_complex("nonsplit:d,a", get_category("diamond")).validate()


@pytest.mark.parametrize("lookup", [
    lambda: get_category("nowhere"),
    lambda: get_module("simple:z", get_category("chain2")),
    lambda: get_module("weird", get_category("chain2")),
    lambda: get_module("burnside", get_category("chain2")),
    lambda: get_complex("nonsplit:a", get_category("diamond")),
    lambda: get_complex("nonsplit:b,a", get_category("chain3")),
    lambda: get_complex("torus", get_category("chain2")),
])
def test_unknown_entries(lookup):
    with pytest.raises(UnknownEntry):
        lookup()
