"""Modules over finite categories and their category algebras.

A module over ``C`` is a functor into finite-dimensional rational vector
spaces, either covariant or contravariant.  Internally every module is stored
as a covariant functor on its *shape*: ``C`` itself for covariant modules and
``C^op`` (same morphism ids, arrows reversed) for contravariant ones.  The
matrix ``action[f]`` maps ``M(shape.src(f))`` to ``M(shape.dst(f))`` acting on
column vectors.
"""

from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from .exactla import (RatMatrix, cokernel_projection, image_basis, kernel_basis,
                      kron, rank, solve, unvec)
from .fincat import FiniteCategory, NotEI, is_ei

COVARIANT = "covariant"
CONTRAVARIANT = "contravariant"


class ModuleError(ValueError):
    pass


class NotAFunctor(ModuleError):
    pass


class Degenerate(ModuleError):
    """A module that is not the flat side of a genuine module."""


class VarianceMismatch(ModuleError):
    pass


class ResolutionTooLong(ModuleError):
    pass


def _shape(category: FiniteCategory, variance: str) -> FiniteCategory:
    if variance == COVARIANT:
        return category
    if variance == CONTRAVARIANT:
        return category.op()
    raise ModuleError("unknown variance %r" % (variance,))


_VARIANCE_NAMES = {"co": COVARIANT, COVARIANT: COVARIANT, "contra": CONTRAVARIANT, CONTRAVARIANT: CONTRAVARIANT}


def parse_variance(v) -> str:
    """Accept ``co``/``contra`` as well as the long names."""
    try:
        return _VARIANCE_NAMES[v]
    except (KeyError, TypeError):
        raise ModuleError("unknown variance %r" % (v,)) from None


def check_format(data, what: str):
    if isinstance(data, dict) and data.get("format", 1) != 1:
        raise ModuleError("unsupported %s format %r" % (what, data.get("format")))


def _check_variance(v):
    if v not in (COVARIANT, CONTRAVARIANT):
        raise ModuleError("variance must be covariant or contravariant, got %r" % (v,))


class CatModule:
    """A finite-dimensional module over a finite category."""

    def __init__(self, category: FiniteCategory, variance: str, dims: Dict, action: Dict[str, RatMatrix],
                 check: bool = True, name: Optional[str] = None):
        _check_variance(variance)
        self.category = category
        self.variance = variance
        self.name = name
        self.dims = {o: int(dims.get(o, 0)) for o in category.objects}
        for o in dims:
            if o not in self.dims:
                raise ModuleError("unknown object %r" % (o,))
        self.action = {}
        shape = self.shape
        for f in category.morphisms:
            s, t = shape.src(f), shape.dst(f)
            if f in action:
                m = action[f]
                if not isinstance(m, RatMatrix):
                    m = RatMatrix(m) if m else RatMatrix.zeros(self.dims[t], self.dims[s])
                if m.shape != (self.dims[t], self.dims[s]):
                    raise NotAFunctor("action of %s has shape %s, expected %s"
                                      % (f, m.shape, (self.dims[t], self.dims[s])))
                self.action[f] = m
            elif category.is_identity(f):
                self.action[f] = RatMatrix.identity(self.dims[s])
            elif self.dims[s] == 0 or self.dims[t] == 0:
                self.action[f] = RatMatrix.zeros(self.dims[t], self.dims[s])
            else:
                raise NotAFunctor("no action given for morphism %s" % f)
        if check:
            self.validate()

    @property
    def shape(self) -> FiniteCategory:
        return _shape(self.category, self.variance)

    def __repr__(self):
        return "CatModule(%s, %s, dims=%s)" % (self.name or "?", self.variance, self.dim_vector())

    def dim_vector(self) -> List[int]:
        return [self.dims[o] for o in self.category.objects]

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def is_zero(self) -> bool:
        return self.total_dim() == 0

    def validate(self):
        shape = self.shape
        for x in shape.objects:
            if self.action[shape.identity(x)] != RatMatrix.identity(self.dims[x]):
                raise NotAFunctor("identity at %r does not act as the identity" % (x,))
        for f in shape.morphisms:
            y = shape.dst(f)
            for z in shape.objects:
                for g in shape.hom(y, z):
                    gf = shape.compose(g, f)
                    if self.action[g] @ self.action[f] != self.action[gf]:
                        raise NotAFunctor("action is not functorial on %s o %s" % (g, f))

    @classmethod
    def from_generators(cls, category, variance, dims, gen_action, name=None, check=True):
        """Extend an action given on generating morphisms by composition."""
        _check_variance(variance)
        shape = _shape(category, variance)
        dims = {o: int(dims.get(o, 0)) for o in category.objects}
        known = {}
        for f, m in gen_action.items():
            if f not in shape._index:
                raise ModuleError("unknown morphism %r" % (f,))
            known[f] = m if isinstance(m, RatMatrix) else (
                RatMatrix(m) if m else RatMatrix.zeros(dims[shape.dst(f)], dims[shape.src(f)]))
        for x in shape.objects:
            known.setdefault(shape.identity(x), RatMatrix.identity(dims[x]))
        for f in shape.morphisms:
            if dims[shape.src(f)] == 0 or dims[shape.dst(f)] == 0:
                known.setdefault(f, RatMatrix.zeros(dims[shape.dst(f)], dims[shape.src(f)]))
        gens = list(known)
        frontier = list(known)
        while frontier:
            new = []
            for f in frontier:
                for g in gens:
                    for a, b in ((g, f), (f, g)):
                        if shape.src(a) != shape.dst(b):
                            continue
                        ab = shape.compose(a, b)
                        if ab not in known:
                            known[ab] = known[a] @ known[b]
                            new.append(ab)
            frontier = new
        missing = [f for f in shape.morphisms if f not in known]
        if missing:
            raise NotAFunctor("action not determined on %s" % missing[:5])
        return cls(category, variance, dims, known, check=check, name=name)

    def to_json(self) -> dict:
        return {
            "format": 1,
            "variance": "co" if self.variance == COVARIANT else "contra",
            "dims": {str(o): self.dims[o] for o in self.category.objects},
            "action": {f: [[str(x) for x in row] for row in m.tolist()]
                       for f, m in self.action.items()
                       if not self.category.is_identity(f) and m.rows and m.cols},
        }

    @classmethod
    def from_json(cls, category, data, name=None):
        check_format(data, "module")
        variance = parse_variance(data.get("variance", COVARIANT))
        objs = {str(o): o for o in category.objects}
        dims = {}
        for k, v in data.get("dims", {}).items():
            if k not in objs:
                raise ModuleError("unknown object %r in module" % (k,))
            dims[objs[k]] = v
        action = {}
        for f, rows in data.get("action", {}).items():
            if f not in category._index:
                raise ModuleError("unknown morphism %r in module" % (f,))
            action[f] = [[Fraction(x) for x in row] for row in rows]
        return cls.from_generators(category, variance, dims, action, name=name)


def opposite_module(m: CatModule) -> CatModule:
    """The same functor seen over ``C^op``: covariant becomes contravariant
    and vice versa, with identical matrices."""
    other = CONTRAVARIANT if m.variance == COVARIANT else COVARIANT
    return CatModule(m.category.op(), other, dict(m.dims), dict(m.action), check=False, name=m.name)


def zero_module(category, variance=COVARIANT) -> CatModule:
    return CatModule(category, variance, {}, {}, check=False, name="0")


def constant_module(category, variance=COVARIANT) -> CatModule:
    """The constant functor with value Q."""
    one = RatMatrix.identity(1)
    return CatModule(category, variance, {o: 1 for o in category.objects},
                     {f: one for f in category.morphisms}, check=False, name="Q")


def simple_at(category, x, variance=COVARIANT) -> CatModule:
    """Q on the isomorphism class of ``x``, every isomorphism acting by 1, zero elsewhere.

    Simple for EI categories, where a morphism between isomorphic objects is
    itself an isomorphism.
    """
    shape = _shape(category, variance)
    cls = [y for y in shape.objects if shape.isos(x, y)]
    action = {}
    for f in shape.morphisms:
        if shape.src(f) in cls and shape.dst(f) in cls:
            action[f] = RatMatrix.identity(1) if shape.is_iso(f) else RatMatrix.zeros(1, 1)
    return CatModule(category, variance, {y: 1 for y in cls}, action, check=True, name="S_%s" % (x,))


class ModuleMap:
    """A natural transformation; ``components[x]`` is a dim N(x) x dim M(x) matrix."""

    def __init__(self, source: CatModule, target: CatModule, components: Dict, check: bool = True):
        if source.category is not target.category or source.variance != target.variance:
            raise VarianceMismatch("maps must join modules of one variance over one category")
        self.source = source
        self.target = target
        self.components = {}
        for x in source.category.objects:
            m = components.get(x)
            if m is None:
                m = RatMatrix.zeros(target.dims[x], source.dims[x])
            if m.shape != (target.dims[x], source.dims[x]):
                raise ModuleError("component at %r has wrong shape" % (x,))
            self.components[x] = m
        if check:
            self.validate()

    def validate(self):
        shape = self.source.shape
        for f in shape.morphisms:
            s, t = shape.src(f), shape.dst(f)
            if self.target.action[f] @ self.components[s] != self.components[t] @ self.source.action[f]:
                raise ModuleError("map is not natural at %s" % f)

    def __matmul__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(other.source, self.target,
                         {x: self.components[x] @ other.components[x] for x in self.components},
                         check=False)

    def __add__(self, other):
        return ModuleMap(self.source, self.target,
                         {x: self.components[x] + other.components[x] for x in self.components},
                         check=False)

    def scale(self, c):
        return ModuleMap(self.source, self.target,
                         {x: m.scale(c) for x, m in self.components.items()}, check=False)

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.components.values())

    def is_iso(self) -> bool:
        return all(m.rows == m.cols and rank(m) == m.rows for m in self.components.values())


def identity_map(m: CatModule) -> ModuleMap:
    return ModuleMap(m, m, {x: RatMatrix.identity(d) for x, d in m.dims.items()}, check=False)


def zero_map(a: CatModule, b: CatModule) -> ModuleMap:
    return ModuleMap(a, b, {}, check=False)


# -- sub and quotient modules ------------------------------------------------

def submodule(m: CatModule, basis: Dict) -> (CatModule, ModuleMap):
    """Submodule spanned objectwise by independent columns ``basis[x]``.

    The spans must be stable under the action.  Returns the submodule and its
    inclusion.
    """
    shape = m.shape
    dims = {x: basis[x].cols for x in m.category.objects}
    action = {}
    for f in shape.morphisms:
        s, t = shape.src(f), shape.dst(f)
        if dims[s] == 0 or dims[t] == 0:
            continue
        img = m.action[f] @ basis[s]
        coords = solve(basis[t], img)
        if coords is None:
            raise ModuleError("subspace is not stable under %s" % f)
        action[f] = coords
    sub = CatModule(m.category, m.variance, dims, action, check=False)
    inc = ModuleMap(sub, m, {x: basis[x] for x in m.category.objects}, check=False)
    return sub, inc


def quotient(m: CatModule, basis: Dict) -> (CatModule, ModuleMap):
    """Quotient by the stable subspaces spanned by ``basis[x]``; returns it with the projection."""
    shape = m.shape
    proj = {}
    sections = {}
    for x in m.category.objects:
        b = basis[x] if basis[x].cols else RatMatrix.zeros(m.dims[x], 0)
        p, _ = cokernel_projection(b)
        proj[x] = p
        # a right inverse of p
        sections[x] = solve(p, RatMatrix.identity(p.rows)) if p.rows else RatMatrix.zeros(m.dims[x], 0)
    dims = {x: proj[x].rows for x in m.category.objects}
    action = {}
    for f in shape.morphisms:
        s, t = shape.src(f), shape.dst(f)
        if dims[s] and dims[t]:
            action[f] = proj[t] @ m.action[f] @ sections[s]
    q = CatModule(m.category, m.variance, dims, action, check=False)
    return q, ModuleMap(m, q, proj, check=False)


def kernel(phi: ModuleMap) -> (CatModule, ModuleMap):
    return submodule(phi.source, {x: kernel_basis(c) for x, c in phi.components.items()})


def image(phi: ModuleMap) -> Dict:
    return {x: image_basis(c) for x, c in phi.components.items()}


def cokernel(phi: ModuleMap) -> (CatModule, ModuleMap):
    return quotient(phi.target, image(phi))


def direct_sum(mods: Sequence[CatModule]) -> CatModule:
    mods = list(mods)
    if not mods:
        raise ModuleError("empty direct sum")
    c, v = mods[0].category, mods[0].variance
    dims = {x: sum(m.dims[x] for m in mods) for x in c.objects}
    action = {f: RatMatrix.block_diag([m.action[f] for m in mods]) for f in c.morphisms}
    return CatModule(c, v, dims, action, check=False)


def modules_isomorphic_dims(a: CatModule, b: CatModule) -> bool:
    return a.dims == b.dims


# -- free modules -------------------------------------------------------------

class FreeModule(CatModule):
    """Direct sum of representables ``Q Hom_shape(x_j, -)``.

    For covariant modules these are ``Q Hom(x_j, -)``; for contravariant ones
    ``Q Hom(-, x_j)``.  The basis of ``P(y)`` is the list of pairs ``(j, h)``
    with ``h`` in ``Hom_shape(x_j, y)``, in category order.
    """

    def __init__(self, category, variance, generators: Sequence, name=None):
        _check_variance(variance)
        shape = _shape(category, variance)
        self.generators = list(generators)
        basis = {}
        for y in category.objects:
            basis[y] = [(j, h) for j, x in enumerate(self.generators) for h in shape.hom(x, y)]
        self.basis = basis
        self.position = {y: {b: i for i, b in enumerate(basis[y])} for y in basis}
        dims = {y: len(basis[y]) for y in basis}
        action = {}
        for f in shape.morphisms:
            s, t = shape.src(f), shape.dst(f)
            if not dims[s] or not dims[t]:
                continue
            pos = self.position[t]
            action[f] = RatMatrix.from_sparse(
                dims[t], dims[s], [((pos[(j, shape.compose(f, h))], i), 1)
                                   for i, (j, h) in enumerate(basis[s])])
        CatModule.__init__(self, category, variance, dims, action, check=False, name=name)

    def generator_vector(self, j) -> RatMatrix:
        x = self.generators[j]
        v = [0] * self.dims[x]
        v[self.position[x][(j, self.shape.identity(x))]] = 1
        return RatMatrix.column(v)

    def element(self, y, coeffs: Dict) -> RatMatrix:
        """Vector in P(y) from ``{(j, h): coefficient}``."""
        v = [0] * self.dims[y]
        for key, c in coeffs.items():
            v[self.position[y][key]] += Fraction(c)
        return RatMatrix.column(v)


def representable(category, x, variance=COVARIANT) -> FreeModule:
    """``Q Hom(x, -)`` when covariant, ``Q Hom(-, x)`` when contravariant."""
    return FreeModule(category, variance, [x], name="QHom(%s)" % (x,))


def map_from_free(p: FreeModule, target: CatModule, images: Sequence[RatMatrix]) -> ModuleMap:
    """The unique map sending generator ``j`` to ``images[j]`` in ``target(x_j)`` (Yoneda)."""
    comps = {}
    for y in p.category.objects:
        cols = [target.action[h] @ images[j] for j, h in p.basis[y]]
        comps[y] = RatMatrix.hstack(cols, rows=target.dims[y]) if cols else RatMatrix.zeros(target.dims[y], 0)
    return ModuleMap(p, target, comps, check=False)


# -- the flat side --------------------------------------------------------------

class FlatModule:
    """A module over the category algebra written as one vector space.

    ``action[f]`` is the matrix of the basis element ``f``.  For left modules
    ``(g f) v = A_g A_f v``; for right modules (``side='right'``) the vector
    ``v . f`` is ``A_f v`` so ``A_{g o f} = A_f A_g``.
    """

    def __init__(self, category: FiniteCategory, side: str, dim: int, action: Dict[str, RatMatrix],
                 check: bool = True):
        if side not in ("left", "right"):
            raise ModuleError("side must be left or right")
        self.category = category
        self.side = side
        self.dim = dim
        self.action = dict(action)
        if check:
            self.validate()

    def validate(self):
        c = self.category
        total = RatMatrix.zeros(self.dim, self.dim)
        ids = [self.action[c.identity(x)] for x in c.objects]
        for i, e in enumerate(ids):
            if e @ e != e:
                raise Degenerate("identity element is not idempotent")
            for j, e2 in enumerate(ids):
                if i != j and not (e @ e2).is_zero():
                    raise Degenerate("identities are not orthogonal")
            total = total + e
        if total != RatMatrix.identity(self.dim):
            raise Degenerate("the identities do not sum to the unit")
        for g in c.morphisms:
            for f in c.morphisms:
                gf = c.compose(g, f)
                a = self.action[g] @ self.action[f] if self.side == "left" else self.action[f] @ self.action[g]
                want = self.action[gf] if gf is not None else RatMatrix.zeros(self.dim, self.dim)
                if a != want:
                    raise ModuleError("action is not multiplicative at %s * %s" % (g, f))


def _offsets(m: CatModule):
    off, pos = {}, 0
    for x in m.category.objects:
        off[x] = pos
        pos += m.dims[x]
    return off, pos


def xi(m: CatModule) -> FlatModule:
    """Assemble the objectwise spaces into a single module over the category algebra."""
    off, n = _offsets(m)
    shape = m.shape
    action = {}
    for f in m.category.morphisms:
        s, t = shape.src(f), shape.dst(f)
        blk = m.action[f]
        action[f] = RatMatrix.from_sparse(n, n, [((off[t] + i, off[s] + j), blk[i, j])
                                                  for i in range(blk.rows) for j in range(blk.cols)
                                                  if blk.entry(i, j) != 0])
    side = "left" if m.variance == COVARIANT else "right"
    return FlatModule(m.category, side, n, action, check=False)


def xi_inverse(fm: FlatModule) -> CatModule:
    """Split a flat module along the identities: ``X(c) = id_c M``."""
    fm.validate()
    c = fm.category
    variance = COVARIANT if fm.side == "left" else CONTRAVARIANT
    shape = _shape(c, variance)
    basis = {x: image_basis(fm.action[c.identity(x)]) for x in c.objects}
    dims = {x: basis[x].cols for x in c.objects}
    action = {}
    for f in c.morphisms:
        s, t = shape.src(f), shape.dst(f)
        if dims[s] and dims[t]:
            action[f] = solve(basis[t], fm.action[f] @ basis[s])
    return CatModule(c, variance, dims, action, check=True)


def flat_tensor_dim(x: FlatModule, y: FlatModule) -> int:
    """``dim x (x)_R y`` straight from the definition on the flat side."""
    if x.side != "right" or y.side != "left":
        raise VarianceMismatch("need a right module and a left module")
    n = x.dim * y.dim
    if n == 0:
        return 0
    ix, iy = RatMatrix.identity(x.dim), RatMatrix.identity(y.dim)
    rel = [kron(x.action[f], iy) - kron(ix, y.action[f]) for f in x.category.morphisms]
    return n - rank(RatMatrix.hstack(rel))


def flat_hom_dim(x: FlatModule, z: FlatModule) -> int:
    """``dim Hom_R(x, z)`` on the flat side."""
    if x.side != z.side:
        raise VarianceMismatch("modules on different sides")
    n = x.dim * z.dim
    if n == 0:
        return 0
    ix, iz = RatMatrix.identity(x.dim), RatMatrix.identity(z.dim)
    eqs = [kron(ix, z.action[f]) - kron(x.action[f].T, iz) for f in x.category.morphisms]
    return n - rank(RatMatrix.vstack(eqs))


# -- tensor and hom over the category ---------------------------------------------

class TensorResult:
    """``X (x)_C Y`` as a quotient of the sum of ``X(c) (x) Y(c)``.

    ``projection`` maps the concatenated coordinates (object order, ``kron``
    ordering inside a block) onto a basis of the quotient.
    """

    def __init__(self, dim, projection, offsets):
        self.dim = dim
        self.projection = projection
        self.offsets = offsets

    def __repr__(self):
        return "TensorResult(dim=%d)" % self.dim


def _tensor_blocks(x, y):
    off, pos = {}, 0
    for c in x.category.objects:
        off[c] = pos
        pos += x.dims[c] * y.dims[c]
    return off, pos


def tensor_over_c(x: CatModule, y: CatModule) -> TensorResult:
    """Coequalizer ``X (x)_C Y`` for contravariant ``x`` and covariant ``y``."""
    if x.variance != CONTRAVARIANT or y.variance != COVARIANT:
        raise VarianceMismatch("tensor_over_c needs a contravariant and a covariant module")
    if x.category is not y.category:
        raise ModuleError("modules over different categories")
    c = x.category
    off, n = _tensor_blocks(x, y)
    cols = []
    for f in c.generating_morphisms():
        s, t = c.src(f), c.dst(f)
        k = x.dims[t] * y.dims[s]
        if not k:
            continue
        a = kron(x.action[f], RatMatrix.identity(y.dims[s]))  # into block s
        b = kron(RatMatrix.identity(x.dims[t]), y.action[f])  # into block t
        items = []
        for i in range(a.rows):
            for j in range(k):
                v = a.entry(i, j)
                if v != 0:
                    items.append(((off[s] + i, j), v))
        for i in range(b.rows):
            for j in range(k):
                v = b.entry(i, j)
                if v != 0:
                    items.append(((off[t] + i, j), -v))
        cols.append(RatMatrix.from_sparse(n, k, items))
    rel = RatMatrix.hstack(cols, rows=n)
    proj, dim = cokernel_projection(rel)
    return TensorResult(dim, proj, off)


def tensor_map(x_map: ModuleMap, y: CatModule, src: TensorResult = None, dst: TensorResult = None) -> RatMatrix:
    """Matrix of ``phi (x) id_y`` between the tensor quotients."""
    a, b = x_map.source, x_map.target
    src = src or tensor_over_c(a, y)
    dst = dst or tensor_over_c(b, y)
    _, n_src = _tensor_blocks(a, y)
    _, n_dst = _tensor_blocks(b, y)
    items = []
    for c in a.category.objects:
        k = kron(x_map.components[c], RatMatrix.identity(y.dims[c]))
        for i in range(k.rows):
            for j in range(k.cols):
                v = k.entry(i, j)
                if v != 0:
                    items.append(((dst.offsets[c] + i, src.offsets[c] + j), v))
    big = RatMatrix.from_sparse(n_dst, n_src, items)
    # lift quotient coordinates through a section of the source projection
    sec = solve(src.projection, RatMatrix.identity(src.dim)) if src.dim else RatMatrix.zeros(n_src, 0)
    return dst.projection @ big @ sec


def hom_over_c(x: CatModule, z: CatModule) -> List[ModuleMap]:
    """A basis of the natural transformations ``x -> z``."""
    if x.variance != z.variance or x.category is not z.category:
        raise VarianceMismatch("hom_over_c needs modules of one variance over one category")
    shape = x.shape
    off, n = {}, 0
    for c in shape.objects:
        off[c] = n
        n += z.dims[c] * x.dims[c]
    if n == 0:
        return []
    rows = []
    for f in x.category.generating_morphisms():
        s, t = shape.src(f), shape.dst(f)
        r = z.dims[t] * x.dims[s]
        if not r:
            continue
        items = []
        a = kron(RatMatrix.identity(x.dims[s]), z.action[f])
        for i in range(r):
            for j in range(a.cols):
                v = a.entry(i, j)
                if v != 0:
                    items.append(((i, off[s] + j), v))
        b = kron(x.action[f].T, RatMatrix.identity(z.dims[t]))
        for i in range(r):
            for j in range(b.cols):
                v = b.entry(i, j)
                if v != 0:
                    items.append(((i, off[t] + j), -v))
        rows.append(RatMatrix.from_sparse(r, n, items))
    eq = RatMatrix.vstack(rows, cols=n)
    ker = kernel_basis(eq)
    out = []
    for k in range(ker.cols):
        v = ker.column_list(k)
        comps = {c: unvec(v[off[c]:off[c] + z.dims[c] * x.dims[c]], z.dims[c], x.dims[c])
                 for c in shape.objects}
        out.append(ModuleMap(x, z, comps, check=False))
    return out


def map_coordinates(phi: ModuleMap) -> RatMatrix:
    """Concatenated column-major components, matching :func:`hom_over_c`."""
    vals = []
    for c in phi.source.category.objects:
        m = phi.components[c]
        vals.extend(m.entry(i, j) for j in range(m.cols) for i in range(m.rows))
    return RatMatrix.column(vals)


# -- algebras and the radical -----------------------------------------------------------

class FDAlgebra:
    """A finite-dimensional algebra on a basis with sparse structure constants.

    ``block[i] = (a, b)`` records that basis element ``i`` lies in
    ``e_b A e_a`` for a complete set of orthogonal idempotents; products
    ``i * j`` vanish unless ``block[j][1] == block[i][0]``.
    """

    def __init__(self, labels, blocks, product):
        self.labels = list(labels)
        self.blocks = list(blocks)
        self._product = product
        self._index = {l: i for i, l in enumerate(self.labels)}
        self._by_block = {}
        for i, b in enumerate(self.blocks):
            self._by_block.setdefault(b, []).append(i)
        self._radical = None

    @property
    def dimension(self) -> int:
        return len(self.labels)

    def mul(self, i: int, j: int) -> Dict[int, int]:
        """Structure constants of ``b_i * b_j`` as ``{k: c}``."""
        if self.blocks[j][1] != self.blocks[i][0]:
            return {}
        return self._product(i, j)

    def block_indices(self, a, b) -> List[int]:
        return self._by_block.get((a, b), [])

    def idempotent_labels(self):
        return sorted({b[0] for b in self.blocks} | {b[1] for b in self.blocks}, key=str)

    def _traces(self):
        # tr(L_{b_k}) = sum_i coefficient of b_i in b_k b_i
        t = [0] * self.dimension
        for k in range(self.dimension):
            a, b = self.blocks[k]
            if a != b:
                continue
            for i in range(self.dimension):
                if self.blocks[i][1] == a:
                    t[k] += self.mul(k, i).get(i, 0)
        return t

    def trace_form(self, rows: Sequence[int], cols: Sequence[int], traces=None) -> RatMatrix:
        traces = traces or self._traces()
        out = []
        for i in rows:
            out.append([sum(c * traces[k] for k, c in self.mul(i, j).items()) for j in cols])
        return RatMatrix(out) if rows else RatMatrix.zeros(0, len(cols))

    def radical(self) -> Dict:
        """Radical as ``{block: RatMatrix of columns in block coordinates}``.

        Kernel of the trace form, computed block pair by block pair.
        """
        if self._radical is None:
            traces = self._traces()
            rad = {}
            for (a, b), idx in self._by_block.items():
                partner = self.block_indices(b, a)
                g = self.trace_form(idx, partner, traces)
                rad[(a, b)] = kernel_basis(g.T) if partner else RatMatrix.identity(len(idx))
            self._radical = rad
        return self._radical

    def radical_basis(self) -> RatMatrix:
        """Radical as columns in full basis coordinates."""
        cols = []
        for blk, m in sorted(self.radical().items(), key=lambda kv: str(kv[0])):
            idx = self.block_indices(*blk)
            for k in range(m.cols):
                v = [0] * self.dimension
                for r, i in enumerate(idx):
                    v[i] = m.entry(r, k)
                cols.append(RatMatrix.column(v))
        return RatMatrix.hstack(cols, rows=self.dimension)

    def multiply_vectors(self, u: RatMatrix, v: RatMatrix) -> RatMatrix:
        out = [0] * self.dimension
        uu, vv = u.column_list(0), v.column_list(0)
        for i, a in enumerate(uu):
            if a == 0:
                continue
            for j, b in enumerate(vv):
                if b == 0:
                    continue
                for k, c in self.mul(i, j).items():
                    out[k] += a * b * c
        return RatMatrix.column(out)

    def check_associative(self, triples=None) -> bool:
        n = self.dimension
        rng = triples if triples is not None else (
            (i, j, k) for i in range(n) for j in range(n) for k in range(n))
        for i, j, k in rng:
            left = {}
            for m, c in self.mul(i, j).items():
                for p, d in self.mul(m, k).items():
                    left[p] = left.get(p, 0) + c * d
            right = {}
            for m, c in self.mul(j, k).items():
                for p, d in self.mul(i, m).items():
                    right[p] = right.get(p, 0) + c * d
            if {p: c for p, c in left.items() if c} != {p: c for p, c in right.items() if c}:
                return False
        return True


class CategoryAlgebra(FDAlgebra):
    """``QC``: basis the morphisms, ``g * f = g o f`` or 0."""

    def __init__(self, category: FiniteCategory):
        self.category = category
        table = category._table

        def product(i, j):
            k = table[i][j]
            return {k: 1} if k >= 0 else {}

        blocks = [(category.src(m), category.dst(m)) for m in category.morphisms]
        FDAlgebra.__init__(self, category.morphisms, blocks, product)

    def _traces(self):
        c = self.category
        t = [0] * self.dimension
        table = c._table
        for k, m in enumerate(c.morphisms):
            x = c.src(m)
            if c.dst(m) != x:
                continue
            t[k] = sum(1 for y in c.objects for i in c.hom_indices(y, x) if table[k][i] == i)
        return t

    def unit(self) -> RatMatrix:
        v = [0] * self.dimension
        for x in self.category.objects:
            v[self.category.index(self.category.identity(x))] = 1
        return RatMatrix.column(v)


def category_algebra(c: FiniteCategory) -> CategoryAlgebra:
    alg = getattr(c, "_algebra", None)
    if alg is None:
        alg = CategoryAlgebra(c)
        c._algebra = alg
    return alg


def jacobson_radical(a: FDAlgebra) -> RatMatrix:
    """Columns spanning the Jacobson radical, in the algebra's basis."""
    return a.radical_basis()


# -- tops, covers and projectivity -------------------------------------------------

def radical_submodule(m: CatModule) -> Dict:
    """Objectwise basis of ``J M`` where ``J`` is the radical of the shape's algebra."""
    shape = m.shape
    alg = category_algebra(shape)
    rad = alg.radical()
    out = {}
    for y in shape.objects:
        cols = []
        for x in shape.objects:
            if not m.dims[x] or not m.dims[y]:
                continue
            r = rad.get((x, y))
            if r is None or not r.cols:
                continue
            homs = shape.hom(x, y)
            for k in range(r.cols):
                acc = RatMatrix.zeros(m.dims[y], m.dims[x])
                for i, f in enumerate(homs):
                    c = r.entry(i, k)
                    if c != 0:
                        acc = acc + m.action[f].scale(c)
                cols.append(acc)
        out[y] = image_basis(RatMatrix.hstack(cols)) if cols else RatMatrix.zeros(m.dims[y], 0)
    return out


def _iso_reps(shape: FiniteCategory):
    return [cls[0] for cls in shape.iso_classes()]


def _stable_complement(m: CatModule, x, sub: RatMatrix) -> RatMatrix:
    """Columns spanning an Aut(x)-stable complement of the stable subspace ``sub``."""
    n = m.dims[x]
    if sub.cols == 0:
        return RatMatrix.identity(n)
    if sub.cols == n:
        return RatMatrix.zeros(n, 0)
    # a projection onto sub along a coordinate complement, then averaged
    _, piv = sub.T.rref()
    full = RatMatrix.hstack([sub] + [RatMatrix.column([1 if i == j else 0 for i in range(n)])
                                     for j in range(n) if j not in set(piv)])
    inv = full.inverse()
    pi = sub @ inv.select(rows=range(sub.cols))
    auts = m.shape.automorphisms(x)
    acc = RatMatrix.zeros(n, n)
    for a in auts:
        ma = m.action[a]
        acc = acc + ma @ pi @ ma.inverse()
    acc = acc.scale(Fraction(1, len(auts)))
    return kernel_basis(acc)


class Cover:
    """A surjection ``p: P -> M`` from a sum of representables.

    ``lifts[x]`` holds the chosen top lifts at the iso-class representative
    ``x``; generator ``j`` of ``P`` sits at ``P.generators[j]`` and maps to
    the matching lift column.
    """

    def __init__(self, free, p, lifts, reps):
        self.free = free
        self.p = p
        self.lifts = lifts
        self.reps = reps


def free_cover(m: CatModule) -> Cover:
    """One representable per basis vector of the top ``M / JM`` (at iso-class representatives)."""
    shape = m.shape
    jm = radical_submodule(m)
    reps = _iso_reps(shape)
    gens, images, lifts = [], [], {}
    for x in reps:
        lx = _stable_complement(m, x, jm[x])
        lifts[x] = lx
        for k in range(lx.cols):
            gens.append(x)
            images.append(lx.select(cols=[k]))
    free = FreeModule(m.category, m.variance, gens)
    p = map_from_free(free, m, images)
    return Cover(free, p, lifts, reps)


class ProjectivityResult:
    def __init__(self, projective: bool, section: Optional[ModuleMap] = None, cover: Optional[Cover] = None,
                 method: str = ""):
        self.projective = projective
        self.section = section
        self.cover = cover
        self.method = method

    def __bool__(self):
        return self.projective

    def __repr__(self):
        return "ProjectivityResult(%s, method=%s)" % (self.projective, self.method)


def _section_by_averaging(m: CatModule, cov: Cover) -> Optional[ModuleMap]:
    # EI route: p restricted to the averaged summand of P must be bijective
    shape = m.shape
    free = cov.free
    rho = {}
    for x in cov.reps:
        lx = cov.lifts[x]
        rho[x] = [(a, solve(lx, m.action[a] @ lx)) for a in shape.automorphisms(x)]
    first = {}
    for j, x in enumerate(free.generators):
        first.setdefault(x, j)
    comps = {}
    for y in shape.objects:
        n = free.dims[y]
        if m.dims[y] == 0 and n == 0:
            comps[y] = RatMatrix.zeros(0, 0)
            continue
        pos = free.position[y]
        items = []
        for x in cov.reps:
            d = cov.lifts[x].cols
            if not d:
                continue
            j0 = first[x]
            auts = rho[x]
            na = len(auts)
            for h in shape.hom(x, y):
                for i in range(d):
                    col = pos[(j0 + i, h)]
                    for a, r in auts:
                        ha = shape.compose(h, shape.inverse(a))
                        for k in range(d):
                            c = r.entry(k, i)
                            if c != 0:
                                items.append(((pos[(j0 + k, ha)], col), c / na))
        eps = RatMatrix.from_sparse(n, n, items)
        b = image_basis(eps)
        if b.cols != m.dims[y]:
            return None
        pb = cov.p.components[y] @ b
        if rank(pb) != pb.rows:
            return None
        comps[y] = b @ pb.inverse()
    s = ModuleMap(m, free, comps, check=False)
    return s


def _section_by_linear_system(m: CatModule, cov: Cover) -> Optional[ModuleMap]:
    basis = hom_over_c(m, cov.free)
    n_target = sum(d * d for d in m.dims.values())
    if n_target == 0:
        return ModuleMap(m, cov.free, {}, check=False)
    cols = [map_coordinates(cov.p @ s) for s in basis]
    ident = map_coordinates(identity_map(m))
    if not cols:
        return None
    coef = solve(RatMatrix.hstack(cols), ident)
    if coef is None:
        return None
    comps = {}
    for x in m.category.objects:
        acc = RatMatrix.zeros(cov.free.dims[x], m.dims[x])
        for k, s in enumerate(basis):
            c = coef.entry(k, 0)
            if c != 0:
                acc = acc + s.components[x].scale(c)
        comps[x] = acc
    return ModuleMap(m, cov.free, comps, check=False)


def projective_splitting(m: CatModule, method: str = "auto") -> ProjectivityResult:
    """Decide projectivity of ``m``; when projective, return a section ``s`` of the cover.

    ``method`` is ``"averaging"`` (EI categories only), ``"linear"`` (solve
    ``p o s = id`` over the hom space) or ``"auto"``.  Any returned section
    is checked to be natural with ``p o s = id``.
    """
    if m.is_zero():
        return ProjectivityResult(True, ModuleMap(m, m, {}, check=False), None, "zero")
    cov = free_cover(m)
    if method == "auto":
        method = "averaging" if is_ei(m.category) else "linear"
    if method == "averaging":
        if not is_ei(m.category):
            raise NotEI("the averaging test needs an EI category")
        s = _section_by_averaging(m, cov)
    elif method == "linear":
        s = _section_by_linear_system(m, cov)
    else:
        raise ValueError("unknown method %r" % (method,))
    if s is None:
        return ProjectivityResult(False, None, cov, method)
    s.validate()
    if not (cov.p @ s).components == identity_map(m).components:
        raise ModuleError("internal error: section does not split the cover")
    return ProjectivityResult(True, s, cov, method)


def is_projective(m: CatModule, method: str = "auto") -> bool:
    return projective_splitting(m, method).projective


# -- resolutions, Ext and Tor ---------------------------------------------------------------

class Resolution:
    """``P_n -> ... -> P_0 -> M``.

    ``differentials[i]`` is ``d_{i+1}: P_{i+1} -> P_i``; every term except
    possibly the last is a :class:`FreeModule`; the last is projective.
    """

    def __init__(self, module, terms, differentials, augmentation):
        self.module = module
        self.terms = terms
        self.differentials = differentials
        self.augmentation = augmentation

    @property
    def length(self) -> int:
        return len(self.terms) - 1

    def __repr__(self):
        return "Resolution(length=%d, dims=%s)" % (self.length, [t.dim_vector() for t in self.terms])

    def check_exact(self) -> bool:
        """Rank bookkeeping at every object and stage."""
        for x in self.module.category.objects:
            aug = self.augmentation.components[x]
            if rank(aug) != self.module.dims[x]:
                return False
            prev = aug
            for i, d in enumerate(self.differentials):
                dx = d.components[x]
                if not (prev @ dx).is_zero():
                    return False
                if rank(dx) != self.terms[i].dims[x] - rank(prev):
                    return False
                prev = dx
            last = self.terms[-1].dims[x] - rank(prev)
            if last != 0:
                return False
        return True


def projective_resolution(m: CatModule, max_len: int = 32) -> Resolution:
    """Iterated cover and kernel, stopping at the first projective kernel."""
    if projective_splitting(m).projective:
        return Resolution(m, [m], [], identity_map(m))
    terms, diffs = [], []
    cur, inc = m, None
    aug = None
    while True:
        if len(terms) > max_len:
            raise ResolutionTooLong("no projective kernel within %d steps" % max_len)
        cov = free_cover(cur)
        terms.append(cov.free)
        if inc is None:
            aug = cov.p
        else:
            diffs.append(inc @ cov.p)
        k, kinc = kernel(cov.p)
        if k.is_zero():
            break
        if projective_splitting(k).projective:
            if len(terms) > max_len:
                raise ResolutionTooLong("no projective kernel within %d steps" % max_len)
            terms.append(k)
            diffs.append(kinc)
            break
        cur, inc = k, kinc
    return Resolution(m, terms, diffs, aug)


def _homology_dims(dims, ranks_in, ranks_out):
    return [d - a - b for d, a, b in zip(dims, ranks_in, ranks_out)]


def ext_groups(m: CatModule, n: CatModule, degree_max: int = 3, max_len: int = 32,
               resolution: Optional[Resolution] = None) -> List[int]:
    """``[dim Ext^0, ..., dim Ext^degree_max]``."""
    if m.variance != n.variance or m.category is not n.category:
        raise VarianceMismatch("Ext needs modules of one variance over one category")
    res = resolution or projective_resolution(m, max_len)
    top = min(degree_max + 1, res.length)
    homs = [hom_over_c(res.terms[i], n) for i in range(min(degree_max + 1, res.length) + 1)]
    mats = []
    for h in homs:
        mats.append(RatMatrix.hstack([map_coordinates(b) for b in h]) if h else None)
    ranks = []  # rank of delta_i: Hom(P_{i-1}, N) -> Hom(P_i, N), i = 1..top
    for i in range(1, top + 1):
        src, dst = homs[i - 1], homs[i]
        if not src or not dst:
            ranks.append(0)
            continue
        d = res.differentials[i - 1]
        cols = [map_coordinates(phi @ d) for phi in src]
        ranks.append(rank(solve(mats[i], RatMatrix.hstack(cols))))
    out = []
    for i in range(degree_max + 1):
        if i > res.length:
            out.append(0)
            continue
        r_in = ranks[i - 1] if i >= 1 else 0
        r_out = ranks[i] if i < len(ranks) else 0
        out.append(len(homs[i]) - r_in - r_out)
    return out


def tor_groups(x: CatModule, y: CatModule, degree_max: int = 3, max_len: int = 32,
               resolution: Optional[Resolution] = None) -> List[int]:
    """``[dim Tor_0, ..., dim Tor_degree_max]`` for contravariant ``x`` and covariant ``y``."""
    res = resolution or projective_resolution(x, max_len)
    top = min(degree_max + 1, res.length)
    tens = [tensor_over_c(res.terms[i], y) for i in range(top + 1)]
    ranks = []  # rank of P_i (x) Y -> P_{i-1} (x) Y
    for i in range(1, top + 1):
        ranks.append(rank(tensor_map(res.differentials[i - 1], y, tens[i], tens[i - 1])))
    out = []
    for i in range(degree_max + 1):
        if i > res.length:
            out.append(0)
            continue
        r_in = ranks[i - 1] if i >= 1 else 0
        r_out = ranks[i] if i < len(ranks) else 0
        out.append(tens[i].dim - r_in - r_out)
    return out


def radical_left_module(alg: CategoryAlgebra, c) -> CatModule:
    """``J id_c`` as a covariant module: ``d -> id_d J id_c``."""
    cat = alg.category
    rad = alg.radical()
    blocks = {d: rad[(c, d)] if (c, d) in rad else RatMatrix.zeros(0, 0) for d in cat.objects}
    dims = {d: blocks[d].cols for d in cat.objects}
    action = {}
    for f in cat.morphisms:
        s, t = cat.src(f), cat.dst(f)
        if not dims[s] or not dims[t]:
            continue
        hs, ht = cat.hom(c, s), cat.hom(c, t)
        pos = {h: i for i, h in enumerate(ht)}
        post = RatMatrix.from_sparse(len(ht), len(hs), [((pos[cat.compose(f, h)], i), 1)
                                                       for i, h in enumerate(hs)])
        action[f] = solve(blocks[t], post @ blocks[s])
    return CatModule(cat, COVARIANT, dims, action, check=False, name="J id_%s" % (c,))


def is_hereditary(a, method: str = "auto") -> bool:
    """Global dimension at most one, tested as projectivity of the radical."""
    if isinstance(a, FiniteCategory):
        a = category_algebra(a)
    if not is_ei(a.category):
        raise NotEI("is_hereditary needs an EI category")
    return all(projective_splitting(radical_left_module(a, c), method).projective
               for c in a.category.objects)
