"""Named built-in categories, modules and complexes."""

from .catalg import CONTRAVARIANT, COVARIANT, CatModule, constant_module, representable, simple_at
from .bredon import FreeBasedComplex, ModuleComplex, point
from .fincat import FiniteCategory, group_category, monoid_category, poset_category, quiver_category
from .orbitcat import orbit_category, parse_group


class UnknownEntry(KeyError):
    pass


def _orbit(spec):
    return lambda: orbit_category(parse_group(spec))


def _group(spec):
    def build():
        g = parse_group(spec)
        return group_category(g.table, labels=["g%s" % l for l in g.labels], name="B" + g.name)
    return build


_CATEGORIES = {
    "point": lambda: poset_category([0], [], name="point"),
    "chain2": lambda: poset_category([0, 1], [(0, 1)], name="chain2"),
    "chain3": lambda: poset_category([0, 1, 2], [(0, 1), (1, 2)], name="chain3"),
    "vee": lambda: poset_category(["a", "b", "c"], [("a", "b"), ("a", "c")], name="vee"),
    "diamond": lambda: poset_category(["a", "b", "c", "d"],
                                      [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")], name="diamond"),
    "arrow": lambda: quiver_category(["s", "t"], [("f", "s", "t")], name="arrow"),
    "kronecker": lambda: quiver_category(["s", "t"], [("f", "s", "t"), ("g", "s", "t")], name="kronecker"),
    "a3": lambda: quiver_category(["u", "v", "w"], [("f", "u", "v"), ("g", "w", "v")], name="a3"),
    "group-Z2": _group("cyclic:2"),
    "group-S3": _group("sym:3"),
    "orbit-Z2": _orbit("cyclic:2"),
    "orbit-Z4": _orbit("cyclic:4"),
    "orbit-Z6": _orbit("cyclic:6"),
    "orbit-S3": _orbit("sym:3"),
    "orbit-Z2xZ2": _orbit("cyclic:2*cyclic:2"),
}

# categories that are not EI, kept apart from the EI catalog
_NON_EI = {
    "idempotent": lambda: monoid_category([[0, 1], [1, 1]], labels=["1", "e"], name="idempotent"),
}

_cache = {}


def category_names(include_non_ei: bool = False):
    names = sorted(_CATEGORIES)
    if include_non_ei:
        names += sorted(_NON_EI)
    return names


def get_category(name: str) -> FiniteCategory:
    if name not in _cache:
        build = _CATEGORIES.get(name) or _NON_EI.get(name)
        if build is None:
            raise UnknownEntry("no catalog category named %r" % name)
        _cache[name] = build()
    return _cache[name]


def hereditary_names():
    from .fincat import ufp_check
    return [n for n in category_names() if ufp_check(get_category(n))[0]]


# -- modules ----------------------------------------------------------------

def get_module(name: str, category: FiniteCategory) -> CatModule:
    """``constant``, ``constant-co``, ``simple:OBJ``, ``simple-co:OBJ``,
    ``rep:OBJ`` (contravariant), ``rep-co:OBJ``; ``sign`` over Or(Z/2);
    over full orbit categories ``mackey-rep:OBJ`` and ``mackey-rep-co:OBJ``
    (restrictions of ``Hom(-, H)`` and ``Hom(H, -)`` in the Mackey category)
    and ``burnside`` (``Hom(-, G)``, restriction maps of the Burnside functor)."""
    kind, _, arg = name.partition(":")
    objs = {str(o): o for o in category.objects}
    if arg and arg not in objs:
        raise UnknownEntry("unknown object %r" % arg)
    if kind == "constant":
        return constant_module(category, CONTRAVARIANT)
    if kind == "constant-co":
        return constant_module(category, COVARIANT)
    if kind == "simple":
        return simple_at(category, objs[arg], CONTRAVARIANT)
    if kind == "simple-co":
        return simple_at(category, objs[arg], COVARIANT)
    if kind == "rep":
        return representable(category, objs[arg], CONTRAVARIANT)
    if kind == "rep-co":
        return representable(category, objs[arg], COVARIANT)
    if kind == "sign":
        return sign_module(category)
    if kind in ("mackey-rep", "mackey-rep-co", "burnside"):
        from .mackey import CategoryMismatch, representable_restriction
        try:
            if kind == "burnside":
                g = getattr(category, "group", None)
                if g is None:
                    raise CategoryMismatch("burnside needs an orbit category")
                m = representable_restriction(category, "G/G" if g.order > 1 else "G/1", CONTRAVARIANT)
                m.name = "burnside"
                return m
            variance = CONTRAVARIANT if kind == "mackey-rep" else COVARIANT
            return representable_restriction(category, objs[arg], variance)
        except (CategoryMismatch, KeyError) as exc:
            raise UnknownEntry(str(exc)) from None
    raise UnknownEntry("no catalog module named %r" % name)


def sign_module(category: FiniteCategory) -> CatModule:
    """Over Or(Z/2): Q at G/1 with the generator acting by -1, zero at G/G."""
    g = getattr(category, "group", None)
    if g is None or g.order != 2:
        raise UnknownEntry("the sign module is defined over Or(Z/2) only")
    flip = [m for m in category.hom("G/1", "G/1") if not category.is_identity(m)][0]
    return CatModule.from_generators(category, CONTRAVARIANT, {"G/1": 1}, {flip: [[-1]]}, name="sign")


# -- complexes ----------------------------------------------------------------

def free_circle(category: FiniteCategory) -> FreeBasedComplex:
    """Over Or(Z/2): one 0-cell and one 1-cell at G/1 with boundary id - s."""
    ident = category.identity("G/1")
    flip = [m for m in category.hom("G/1", "G/1") if m != ident][0]
    return FreeBasedComplex(category, {0: [("v", "G/1")], 1: [("e", "G/1")]},
                            {1: {("v", "e"): {ident: 1, flip: -1}}})


def get_complex(name: str, category: FiniteCategory):
    """``point:OBJ`` or ``circle`` (free based), ``module:NAME`` (a module in
    degree 0), ``nonsplit:N,M`` (the complex of a nonzero Ext^2 class between
    the contravariant simples at N and M)."""
    kind, _, arg = name.partition(":")
    if kind == "point":
        objs = {str(o): o for o in category.objects}
        if arg not in objs:
            raise UnknownEntry("unknown object %r" % arg)
        return point(category, objs[arg])
    if kind == "circle":
        return free_circle(category)
    if kind == "module":
        m = get_module(arg, category)
        return ModuleComplex(category, m.variance, {0: m}, {})
    if kind == "nonsplit":
        from .bredon import build_nonsplit_complex, ext2_classes
        objs = {str(o): o for o in category.objects}
        ends = arg.split(",")
        if len(ends) != 2 or any(e not in objs for e in ends):
            raise UnknownEntry("nonsplit needs two objects, e.g. nonsplit:d,a")
        classes = ext2_classes(simple_at(category, objs[ends[0]], CONTRAVARIANT),
                               simple_at(category, objs[ends[1]], CONTRAVARIANT))
        if not classes:
            raise UnknownEntry("Ext^2 between these simples vanishes")
        return build_nonsplit_complex(classes[0])
    raise UnknownEntry("no catalog complex named %r" % name)
