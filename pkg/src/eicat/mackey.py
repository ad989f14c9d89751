"""The Mackey algebra of a finite group on the Thevenaz-Webb basis, the
functor I from the orbit category, the isomorphism F exhibiting the algebra
as a projective orbit-category module, Mackey extension of orbit-category
modules, and the non-regularity witness for the infinite dihedral group."""

import random
from typing import Dict, List, Optional, Tuple

from .catalg import (
    CONTRAVARIANT,
    COVARIANT,
    CatModule,
    FDAlgebra,
    is_projective,
)
from .exactla import RatMatrix, kernel_basis, kron, rank, solve, vec
from .orbitcat import (
    FiniteGroup,
    GroupTooLarge,
    SubgroupFamily,
    orbit_category,
    subgroup_label,
    subgroups,
)

__all__ = [
    "MACKEY_ORDER_BOUND",
    "CategoryMismatch",
    "GroupTooLarge",
    "TWBasisElement",
    "MackeyAlgebra",
    "mackey_algebra",
    "identification_holds",
    "check_identification",
    "IFunctor",
    "functor_I",
    "FReport",
    "verify_F_isomorphism",
    "is_semisimple",
    "representable_restriction",
    "MackeyModule",
    "ExtensionResult",
    "mackey_extension_exists",
    "right_projectivity_report",
    "DInftyReport",
    "dinfty_witness",
]

MACKEY_ORDER_BOUND = 16


class CategoryMismatch(ValueError):
    pass


class TWBasisElement(tuple):
    """``I^K_{gLg^-1} c_g R^H_L`` as ``(H, K, L, g)``; subgroups are sorted
    element tuples and ``g`` an element index."""

    def __new__(cls, h, k, l, g):
        return tuple.__new__(cls, (h, k, l, g))

    H = property(lambda self: self[0])
    K = property(lambda self: self[1])
    L = property(lambda self: self[2])
    g = property(lambda self: self[3])


class _Subgroups:
    """Subgroup lattice helpers: conjugation, intersection, double cosets."""

    def __init__(self, group: FiniteGroup):
        self.group = group
        self.list = subgroups(group)
        self.index = {s: i for i, s in enumerate(self.list)}
        self.sets = [frozenset(s) for s in self.list]
        self.by_set = {fs: i for i, fs in enumerate(self.sets)}
        t = group.table
        inv = [group.inv(x) for x in range(group.order)]
        self.conj = [[self.by_set[frozenset(t[t[x][a]][inv[x]] for a in s)] for s in self.list]
                     for x in range(group.order)]
        self.contained = [[self.sets[a] <= self.sets[b] for b in range(len(self.list))]
                          for a in range(len(self.list))]
        self._meet = {}
        self._dc = {}

    def meet(self, a: int, b: int) -> int:
        key = (a, b) if a <= b else (b, a)
        if key not in self._meet:
            self._meet[key] = self.by_set[self.sets[a] & self.sets[b]]
        return self._meet[key]

    def double_cosets(self, left: int, k: int, right: int) -> List[int]:
        """Least representatives of ``left \\ K / right`` (left, right <= K)."""
        key = (left, k, right)
        if key not in self._dc:
            t = self.group.table
            seen = set()
            reps = []
            for x in self.list[k]:
                if x in seen:
                    continue
                reps.append(x)
                seen.update(t[t[a][x]][b] for a in self.list[left] for b in self.list[right])
            self._dc[key] = reps
        return self._dc[key]


def identification_holds(group: FiniteGroup, h, k, first, second) -> bool:
    """The defining relation between raw data ``(L, g)`` and ``(L', g')`` of
    the ``H -> K`` block: some ``x`` in ``H`` with ``g'x`` in ``Kg`` and
    ``L' = xLx^-1``."""
    (l1, g1), (l2, g2) = first, second
    t = group.table
    kg = {t[a][g1] for a in k}
    l2set = set(l2)
    for x in h:
        if t[g2][x] in kg and {group.conj(x, a) for a in l1} == l2set:
            return True
    return False


class MackeyAlgebra(FDAlgebra):
    """``mu_Q(G)`` with one idempotent per subgroup.

    Basis element ``i`` with ``blocks[i] == (H, K)`` is a morphism
    ``H -> K``; ``mul(i, j)`` is ``b_i o b_j``.
    """

    def __init__(self, group: FiniteGroup, bound: int = MACKEY_ORDER_BOUND):
        if group.order > bound:
            raise GroupTooLarge("group of order %d exceeds the Mackey bound %d" % (group.order, bound))
        self.group = group
        self.subs = sg = _Subgroups(group)
        n = len(sg.list)
        t = group.table
        inv = [group.inv(x) for x in range(group.order)]
        self._canon = {}
        elements = []
        for h in range(n):
            hs = sg.list[h]
            lows = [l for l in range(n) if sg.contained[l][h]]
            for k in range(n):
                ks = sg.list[k]
                canon = {}
                raw = [(l, g) for l in lows for g in range(group.order) if sg.contained[sg.conj[g][l]][k]]
                for p in raw:
                    if p in canon:
                        continue
                    l, g = p
                    orbit = {(sg.conj[x][l], t[t[a][g]][inv[x]]) for x in hs for a in ks}
                    rep = min(orbit)
                    for q in orbit:
                        canon[q] = len(elements)
                    elements.append(TWBasisElement(h, k, rep[0], rep[1]))
                self._canon[(h, k)] = canon
        self.elements = elements
        self._cache = {}
        labels = [self.element_label(e) for e in elements]
        blocks = [(e.H, e.K) for e in elements]
        FDAlgebra.__init__(self, labels, blocks, self._compute_product)

    # -- naming ------------------------------------------------------------
    def subgroup_name(self, i: int) -> str:
        return subgroup_label(self.group, self.subs.list[i])

    def element_label(self, e: TWBasisElement) -> str:
        sn = self.subgroup_name
        return "I^%s c_%s R^%s_%s" % (sn(e.K), self.group.labels[e.g], sn(e.H), sn(e.L))

    # -- basis -------------------------------------------------------------
    def basis_index(self, h: int, k: int, l: int, g: int) -> int:
        """Index of the normal form of raw data ``(L, g)`` in block ``H -> K``."""
        try:
            return self._canon[(h, k)][(l, g)]
        except KeyError:
            raise ValueError("not a basis datum: L must lie in H and gLg^-1 in K") from None

    def identity_index(self, h: int) -> int:
        return self.basis_index(h, h, h, self.group.identity)

    def block_dims(self) -> Dict[Tuple[str, str], int]:
        sn = self.subgroup_name
        return {(sn(a), sn(b)): len(idx) for (a, b), idx in sorted(self._by_block.items())}

    def unit(self) -> RatMatrix:
        v = [0] * self.dimension
        for h in range(len(self.subs.list)):
            v[self.identity_index(h)] = 1
        return RatMatrix.column(v)

    # -- product -----------------------------------------------------------
    def _compute_product(self, i: int, j: int) -> Dict[int, int]:
        key = (i, j)
        if key in self._cache:
            return self._cache[key]
        out = self.product_raw(self.elements[i], self.elements[j])
        self._cache[key] = out
        return out

    def product_raw(self, b2, b1) -> Dict[int, int]:
        """``b2 o b1`` for raw data ``b1 = (H, K, L, g)``, ``b2 = (K, M, L', g')``
        via the double coset formula, reduced to normal forms."""
        h, k, l, g = b1
        k2, m, l2, g2 = b2
        if k2 != k:
            return {}
        sg = self.subs
        t = self.group.table
        inv = self.group.inv
        j = sg.conj[g][l]
        out = {}
        for x in sg.double_cosets(l2, k, j):
            a = sg.meet(j, sg.conj[inv(x)][l2])
            l3 = sg.conj[inv(g)][a]
            g3 = t[t[g2][x]][g]
            idx = self._canon[(h, m)][(l3, g3)]
            out[idx] = out.get(idx, 0) + 1
        return out

    def composable_triples(self):
        for (a, b), i1 in self._by_block.items():
            for c in range(len(self.subs.list)):
                i2 = self._by_block.get((b, c), [])
                for d in range(len(self.subs.list)):
                    i3 = self._by_block.get((c, d), [])
                    for x in i1:
                        for y in i2:
                            for z in i3:
                                yield (z, y, x)

    def count_composable_triples(self) -> int:
        n = len(self.subs.list)
        d = {k: len(v) for k, v in self._by_block.items()}
        return sum(d.get((a, b), 0) * d.get((b, c), 0) * d.get((c, e), 0)
                   for a in range(n) for b in range(n) for c in range(n) for e in range(n))

    def verify_associativity(self, budget: int = 200000, samples: int = 20000, seed: int = 0) -> Tuple[bool, str]:
        """Exhaustive over composable triples when there are at most
        ``budget`` of them, otherwise a seeded sample."""
        total = self.count_composable_triples()
        if total <= budget:
            return self.check_associative(self.composable_triples()), "exhaustive"
        rng = random.Random(seed)
        n = len(self.subs.list)
        triples = []
        while len(triples) < samples:
            a, b, c, d = (rng.randrange(n) for _ in range(4))
            i1, i2, i3 = (self._by_block.get(p, []) for p in ((a, b), (b, c), (c, d)))
            if i1 and i2 and i3:
                triples.append((rng.choice(i3), rng.choice(i2), rng.choice(i1)))
        return self.check_associative(triples), "sampled:%d" % samples

    def to_json(self) -> dict:
        return {
            "group": self.group.name,
            "order": self.group.order,
            "dimension": self.dimension,
            "block_dims": [[h, k, d] for (h, k), d in self.block_dims().items()],
        }


_algebras = {}


def mackey_algebra(g: FiniteGroup, bound: int = MACKEY_ORDER_BOUND) -> MackeyAlgebra:
    key = (id(g), bound)
    if key not in _algebras:
        _algebras[key] = (g, MackeyAlgebra(g, bound))
    return _algebras[key][1]


def check_identification(g: FiniteGroup) -> bool:
    """The identification relation is an equivalence relation on the raw
    data of every block; checked by enumerating each related set and
    comparing related sets of related elements."""
    sg = _Subgroups(g)
    t = g.table
    inv = [g.inv(x) for x in range(g.order)]
    n = len(sg.list)
    for h in range(n):
        hs = sg.list[h]
        for k in range(n):
            ks = sg.list[k]
            raw = [(l, x) for l in range(n) if sg.contained[l][h]
                   for x in range(g.order) if sg.contained[sg.conj[x][l]][k]]
            # (L', g') ~ (L, g)  iff  L' = xLx^-1 and g' in K g x^-1 for some x in H
            rel = {p: frozenset((sg.conj[x][p[0]], t[t[a][p[1]]][inv[x]]) for x in hs for a in ks)
                   for p in raw}
            for p, r in rel.items():
                if p not in r:
                    return False
                if any(rel[q] != r for q in r):
                    return False
    return True


def is_semisimple(a: FDAlgebra) -> bool:
    """True iff the Jacobson radical (trace-form kernel) is zero."""
    return a.radical_basis().cols == 0


# -- the functor I and the isomorphism F -----------------------------------------

def _full_orbit_category(g: FiniteGroup):
    return orbit_category(g, SubgroupFamily.all_subgroups(g))


class IFunctor:
    """``I: Or(G) -> Omega_Q(G)`` on morphisms, ``phi(g): G/H -> G/K``
    going to the basis element ``I^K_{gHg^-1} c_g``."""

    def __init__(self, algebra: MackeyAlgebra, category=None):
        self.algebra = algebra
        self.category = category or _full_orbit_category(algebra.group)
        sg = algebra.subs
        self.images = {}
        for mid, (h, k, x) in self.category.morphism_data.items():
            hi, ki = sg.index[h], sg.index[k]
            self.images[mid] = algebra.basis_index(hi, ki, hi, x)

    def __getitem__(self, mid: str) -> int:
        return self.images[mid]

    def object_image(self, obj: str) -> int:
        ident = self.category.identity(obj)
        return self.algebra.blocks[self.images[ident]][0]

    def functoriality_failures(self) -> List[Tuple[str, str]]:
        """Composable pairs ``(g', g)`` with ``I(g') I(g) != I(g' o g)``."""
        c = self.category
        a = self.algebra
        bad = []
        for f in c.morphisms:
            for h in c.morphisms:
                if c.src(h) != c.dst(f):
                    continue
                if a.mul(self.images[h], self.images[f]) != {self.images[c.compose(h, f)]: 1}:
                    bad.append((h, f))
        return bad

    def to_json(self) -> dict:
        return {mid: self.algebra.labels[i] for mid, i in sorted(self.images.items())}


def functor_I(g: FiniteGroup, bound: int = MACKEY_ORDER_BOUND) -> IFunctor:
    return IFunctor(mackey_algebra(g, bound))


class FReport:
    def __init__(self, group, domain_dims, codomain_dims, rank, or_linear, semisimple):
        self.group = group
        self.domain_dims = domain_dims        # {(H, L): {K: dim}}
        self.codomain_dims = codomain_dims    # {(H, K): dim}
        self.rank = rank
        self.or_linear = or_linear
        self.semisimple = semisimple

    @property
    def domain_dim(self) -> int:
        return sum(sum(d.values()) for d in self.domain_dims.values())

    @property
    def codomain_dim(self) -> int:
        return sum(self.codomain_dims.values())

    @property
    def bijective(self) -> bool:
        return self.domain_dim == self.codomain_dim == self.rank

    @property
    def projective(self) -> bool:
        # the domain is a sum of induced modules over semisimple QN_G(L)
        return self.bijective and self.or_linear

    def to_json(self) -> dict:
        return {
            "group": self.group,
            "domain": [{"H": h, "L": l, "dims": dict(sorted(d.items())), "total": sum(d.values())}
                       for (h, l), d in sorted(self.domain_dims.items())],
            "domain_dim": self.domain_dim,
            "codomain_dim": self.codomain_dim,
            "rank": self.rank,
            "bijective": self.bijective,
            "or_linear": self.or_linear,
            "projective_left_module": self.projective,
            "semisimple": self.semisimple,
        }


def _pairs_up_to_conjugacy(sg: _Subgroups):
    """Representatives of ``(H, L)``, ``L <= H``, with ``L`` up to ``H``-conjugacy."""
    out = []
    for h, hs in enumerate(sg.list):
        seen = set()
        for l in range(len(sg.list)):
            if not sg.contained[l][h] or l in seen:
                continue
            out.append((h, l))
            seen.update(sg.conj[x][l] for x in hs)
    return out


def verify_F_isomorphism(g: FiniteGroup, bound: int = MACKEY_ORDER_BOUND, check_linear: bool = True,
                         check_semisimple: bool = True) -> FReport:
    """Build ``F`` on the basis ``K \\ Trans(L, K) / (H n N_G(L))`` of the domain
    and compare it with the normal forms of the algebra exactly."""
    a = mackey_algebra(g, bound)
    sg = a.subs
    t = g.table
    n = len(sg.list)
    inv = [g.inv(x) for x in range(g.order)]
    pairs = _pairs_up_to_conjugacy(sg)
    domain = {}        # (h, l, k) -> list of representatives g
    entries = []
    col = 0
    for h, l in pairs:
        norm = g.normalizer(sg.list[l])
        stab = [x for x in sg.list[h] if x in norm]
        for k in range(n):
            ks = sg.list[k]
            trans = [x for x in range(g.order) if sg.contained[sg.conj[x][l]][k]]
            seen = set()
            reps = []
            for x in trans:
                if x in seen:
                    continue
                reps.append(x)
                seen.update(t[t[c][x]][s] for c in ks for s in stab)
            domain[(h, l, k)] = reps
            for x in reps:
                entries.append(((a.basis_index(h, k, l, x), col), 1))
                col += 1
    fmat = RatMatrix.from_sparse(a.dimension, col, entries)
    r = rank(fmat)
    or_linear = True
    if check_linear:
        # F(phi(y) o phi(x) (x) 1) == I(phi(y)) F(phi(x) (x) 1)
        ifun = IFunctor(a)
        cat = ifun.category
        for mid, (k, k2, y) in cat.morphism_data.items():
            ki, k2i = sg.index[k], sg.index[k2]
            iy = ifun[mid]
            for (h, l, kk), reps in domain.items():
                if kk != ki:
                    continue
                for x in reps:
                    lhs = {a.basis_index(h, k2i, l, t[y][x]): 1}
                    if a.mul(iy, a.basis_index(h, ki, l, x)) != lhs:
                        or_linear = False
    del inv
    sn = a.subgroup_name
    domain_dims = {}
    for (h, l, k), reps in domain.items():
        domain_dims.setdefault((sn(h), sn(l)), {})[sn(k)] = len(reps)
    codomain = {(sn(h), sn(k)): len(a.block_indices(h, k)) for h in range(n) for k in range(n)}
    semisimple = is_semisimple(a) if check_semisimple else None
    return FReport(g.name, domain_dims, codomain, r, or_linear, semisimple)


# -- modules over the orbit category and Mackey extension -----------------------------

class _OrbitData:
    """Index translation between ``Or(G)`` (all subgroups) and the algebra."""

    def __init__(self, category):
        g = getattr(category, "group", None)
        family = getattr(category, "family", None)
        if g is None or family is None:
            raise CategoryMismatch("expected an orbit category Or(G)")
        if family.members != subgroups(g):
            raise CategoryMismatch("the orbit category must contain every subgroup")
        self.category = category
        self.group = g
        self.algebra = mackey_algebra(g)
        self.subs = self.algebra.subs
        self.mid = {}
        self.obj = {}
        for mid, (h, k, x) in category.morphism_data.items():
            self.mid[(self.subs.index[h], self.subs.index[k], x)] = mid
            if h == k and x == g.identity:
                self.obj[self.subs.index[h]] = category.src(mid)

    def phi(self, h: int, k: int, x: int) -> str:
        """Morphism id of ``phi(x): G/H -> G/K``."""
        t = self.group.table
        rep = min(t[a][x] for a in self.subs.list[k])
        return self.mid[(h, k, rep)]

    def subgroup_of(self, x) -> int:
        sg = self.subs
        if isinstance(x, int):
            return x
        if isinstance(x, (tuple, list, frozenset, set)):
            return sg.index[tuple(sorted(x))]
        for i in range(len(sg.list)):
            if x in (self.algebra.subgroup_name(i), self.obj[i]):
                return i
        raise CategoryMismatch("unknown subgroup %r" % (x,))


def representable_restriction(category, x, variance: str = CONTRAVARIANT) -> CatModule:
    """``I^* Hom_Omega(-, X)`` (contravariant) or ``I^* Hom_Omega(X, -)``
    (covariant) as a module over ``Or(G)``."""
    od = _OrbitData(category)
    a = od.algebra
    xi = od.subgroup_of(x)
    n = len(od.subs.list)
    if variance == CONTRAVARIANT:
        basis = {h: a.block_indices(h, xi) for h in range(n)}
    else:
        basis = {h: a.block_indices(xi, h) for h in range(n)}
    pos = {h: {b: r for r, b in enumerate(bs)} for h, bs in basis.items()}
    dims = {od.obj[h]: len(basis[h]) for h in range(n)}
    action = {}
    for (h, k, _), mid in od.mid.items():
        img = a.basis_index(h, k, h, category.morphism_data[mid][2])
        entries = []
        if variance == CONTRAVARIANT:
            for c, f in enumerate(basis[k]):
                for r, v in a.mul(f, img).items():
                    entries.append(((pos[h][r], c), v))
            action[mid] = RatMatrix.from_sparse(len(basis[h]), len(basis[k]), entries)
        else:
            for c, f in enumerate(basis[h]):
                for r, v in a.mul(img, f).items():
                    entries.append(((pos[k][r], c), v))
            action[mid] = RatMatrix.from_sparse(len(basis[k]), len(basis[h]), entries)
    name = "I*Hom(%s,%s)" % (("-", a.subgroup_name(xi)) if variance == CONTRAVARIANT
                             else (a.subgroup_name(xi), "-"))
    return CatModule(category, variance, dims, action, name=name)


def _dual(m: CatModule) -> CatModule:
    other = CONTRAVARIANT if m.variance == COVARIANT else COVARIANT
    return CatModule(m.category, other, dict(m.dims), {f: a.T for f, a in m.action.items()},
                     check=False, name=m.name)


class MackeyModule:
    """A module over ``Omega_Q(G)``: the given ``Or(G)``-module supplies the
    images of ``I(phi)``; ``inductions[(L, H)]`` supplies the images of
    ``R^H_L`` (for a contravariant module, a map ``M(L) -> M(H)``).

    Covariant modules are stored through their duals.
    """

    def __init__(self, module: CatModule, inductions: Dict[Tuple[int, int], RatMatrix]):
        self.module = module
        self.variance = module.variance
        self._od = _OrbitData(module.category)
        self._contra = module if module.variance == CONTRAVARIANT else _dual(module)
        self.inductions = dict(inductions)
        self.algebra = self._od.algebra

    def dim(self, h: int) -> int:
        return self.module.dims[self._od.obj[h]]

    def _t(self, l: int, h: int) -> RatMatrix:
        if l == h:
            return RatMatrix.identity(self.dim(h))
        return self.inductions[(l, h)]

    def contravariant_action(self, i: int) -> RatMatrix:
        """Image of basis element ``i: H -> K`` as a map ``M(K) -> M(H)``."""
        h, k, l, g = self.algebra.elements[i]
        return self._t(l, h) @ self._contra.action[self._od.phi(l, k, g)]

    def action(self, i: int) -> RatMatrix:
        m = self.contravariant_action(i)
        return m if self.variance == CONTRAVARIANT else m.T

    def failures(self, limit: int = 1) -> List[Tuple[int, int]]:
        """Composable basis pairs where the action is not multiplicative."""
        a = self.algebra
        n = len(a.subs.list)
        acts = [self.contravariant_action(i) for i in range(a.dimension)]
        bad = []
        for h in range(n):
            for k in range(n):
                for m in range(n):
                    if not (self.dim(h) and self.dim(k) and self.dim(m)):
                        continue
                    for j in a.block_indices(h, k):
                        for i in a.block_indices(k, m):
                            rhs = RatMatrix.zeros(self.dim(h), self.dim(m))
                            for c, v in a.mul(i, j).items():
                                rhs = rhs + acts[c].scale(v)
                            if acts[j] @ acts[i] != rhs:
                                bad.append((i, j))
                                if len(bad) >= limit:
                                    return bad
        return bad

    def validate(self) -> bool:
        return not self.failures()

    def to_json(self) -> dict:
        sn = self.algebra.subgroup_name
        return {
            "variance": self.variance,
            "dims": {sn(h): self.dim(h) for h in range(len(self.algebra.subs.list))},
            "inductions": [{"L": sn(l), "H": sn(h), "matrix": [[str(x) for x in row] for row in m.tolist()]}
                           for (l, h), m in sorted(self.inductions.items())],
        }


class ExtensionResult:
    def __init__(self, extends: bool, certified: bool, witness: Optional[MackeyModule], method: str,
                 detail: str = ""):
        self.extends = extends
        self.certified = certified
        self.witness = witness
        self.method = method
        self.detail = detail

    def __bool__(self):
        return self.extends

    def __iter__(self):
        return iter((self.extends, self.witness))

    def to_json(self) -> dict:
        return {
            "extends": self.extends,
            "certified": self.certified,
            "method": self.method,
            "detail": self.detail,
            "witness": self.witness.to_json() if self.witness is not None else None,
        }


class _System:
    """Linear equations ``sum A_i T_{v_i} B_i = C`` in matrix unknowns."""

    def __init__(self, shapes):
        self.shapes = shapes
        self.offsets = {}
        off = 0
        for v, (r, c) in shapes.items():
            self.offsets[v] = off
            off += r * c
        self.size = off
        self.rows = []
        self.rhs = []

    def add(self, terms, const: RatMatrix):
        """``terms`` is a list of ``(A, v, B)``; the equation reads
        ``sum A T_v B = const``."""
        r, c = const.shape
        if r == 0 or c == 0:
            return
        block = [[0] * self.size for _ in range(r * c)]
        for a, v, b in terms:
            k = kron(b.T, a)
            off = self.offsets[v]
            km = k.flint
            for i in range(k.rows):
                row = block[i]
                for j in range(k.cols):
                    x = km[i, j]
                    if x != 0:
                        row[off + j] += x
        self.rows.extend(block)
        self.rhs.extend(vec(const).column_list(0))

    def fix(self, v, value: RatMatrix):
        r, c = self.shapes[v]
        self.add([(RatMatrix.identity(r), v, RatMatrix.identity(c))], value)

    def solve(self):
        """``(particular, kernel)`` or ``None`` when inconsistent."""
        if not self.rows:
            return RatMatrix.zeros(self.size, 1), RatMatrix.identity(self.size)
        a = RatMatrix(self.rows)
        b = RatMatrix.column(self.rhs)
        x = solve(a, b)
        if x is None:
            return None
        return x, kernel_basis(a)

    def copy(self):
        s = _System(self.shapes)
        s.rows = [list(r) for r in self.rows]
        s.rhs = list(self.rhs)
        return s

    def extract(self, z: RatMatrix, v) -> RatMatrix:
        r, c = self.shapes[v]
        off = self.offsets[v]
        vals = [z.entry(off + i, 0) for i in range(r * c)]
        return RatMatrix(r, c, [vals[j * r + i] for i in range(r) for j in range(c)])


def _linear_constraints(od: _OrbitData, m: CatModule, unknowns) -> _System:
    """Conjugation equivariance of the unknowns and the double coset formula;
    all linear since the images of ``I(phi)`` are fixed."""
    sg = od.subs
    g = od.group
    n = len(sg.list)
    d = {h: m.dims[od.obj[h]] for h in range(n)}
    act = lambda h, k, x: m.action[od.phi(h, k, x)]
    shapes = {(l, h): (d[h], d[l]) for (l, h) in unknowns}
    system = _System(shapes)

    def t_term(a, l, h, b):
        # a @ T_{l,h} @ b, where T_{h,h} is the identity
        if l == h:
            return None, a @ b
        return (a, (l, h), b), None

    for (l, h) in unknowns:
        for x in range(g.order):
            lg, hg = sg.conj[x][l], sg.conj[x][h]
            terms = [(RatMatrix.identity(d[h]), (l, h), act(l, lg, x)),
                     (-act(h, hg, x), (lg, hg), RatMatrix.identity(d[lg]))]
            system.add(terms, RatMatrix.zeros(d[h], d[lg]))
    inv = g.inv
    for k in range(n):
        proper = [s for s in range(n) if sg.contained[s][k] and s != k]
        for j in proper:
            for l2 in proper:
                # M(incl J->K) T_{L',K} = sum_x T_{A,J} M(phi(x): A -> L')
                terms = [(act(j, k, g.identity), (l2, k), RatMatrix.identity(d[l2]))]
                const = RatMatrix.zeros(d[j], d[l2])
                for x in sg.double_cosets(l2, k, j):
                    a = sg.meet(j, sg.conj[inv(x)][l2])
                    term, c = t_term(-RatMatrix.identity(d[j]), a, j, act(a, l2, x))
                    if term is None:
                        const = const - c
                    else:
                        terms.append(term)
                system.add(terms, const)
    return system


def mackey_extension_exists(m: CatModule, seed: int = 0, trials: int = 8,
                            bound: int = 50) -> ExtensionResult:
    """Decide whether an ``Or(G)``-module is the restriction of an
    ``Omega_Q(G)``-module.

    The unknowns are the images of ``R^H_L`` for proper inclusions.  The
    equivariance and double coset equations are linear; if they have no
    solution the answer is a certified no.  Transitivity is bilinear: values
    are fixed one subgroup order at a time (by the larger subgroup), which
    makes every transitivity equation linear in the current layer, at seeded
    generic points of the remaining solution space, and any complete assignment is checked against
    every product in the algebra before being returned.
    """
    od = _OrbitData(m.category)
    contra = m if m.variance == CONTRAVARIANT else _dual(m)
    sg = od.subs
    n = len(sg.list)
    d = {h: contra.dims[od.obj[h]] for h in range(n)}
    unknowns = [(l, h) for h in range(n) for l in range(n)
                if sg.contained[l][h] and l != h]
    base = _linear_constraints(od, contra, unknowns)
    sol = base.solve()
    if sol is None:
        return ExtensionResult(False, True, None, "linear",
                               "equivariance and double coset equations are inconsistent")
    size = lambda v: len(sg.list[v])
    levels = sorted({size(h) for (_, h) in unknowns})
    rng = random.Random(seed)
    for trial in range(trials):
        system = base.copy()
        fixed = {}
        ok = True
        for top in levels:
            layer = [(l, h) for (l, h) in unknowns if size(h) == top]
            for (l, h) in layer:
                for k in range(n):
                    if k in (l, h) or not (sg.contained[l][k] and sg.contained[k][h]):
                        continue
                    # T_{K,H} T_{L,K} = T_{L,H} with T_{L,K} already fixed
                    system.add([(RatMatrix.identity(d[h]), (k, h), fixed[(l, k)]),
                                (-RatMatrix.identity(d[h]), (l, h), RatMatrix.identity(d[l]))],
                               RatMatrix.zeros(d[h], d[l]))
            s = system.solve()
            if s is None:
                ok = False
                break
            z0, ker = s
            if ker.cols:
                coeffs = RatMatrix.column([rng.randint(-bound, bound) for _ in range(ker.cols)])
                z0 = z0 + ker @ coeffs
            for v in layer:
                fixed[v] = system.extract(z0, v)
                system.fix(v, fixed[v])
        if not ok:
            continue
        for v in unknowns:
            if v not in fixed:
                fixed[v] = RatMatrix.zeros(d[v[1]], d[v[0]])
        witness = MackeyModule(m, fixed)
        if witness.validate():
            return ExtensionResult(True, True, witness, "levelwise", "trial %d" % trial)
        if sol[1].cols == 0:
            break
    return ExtensionResult(False, False, None, "levelwise",
                           "no witness found; the linear relaxation is solvable")


def right_projectivity_report(category) -> Dict[str, bool]:
    """Projectivity of each summand ``I^* Hom_Omega(-, X)`` of the Mackey
    algebra as a contravariant ``Or(G)``-module."""
    od = _OrbitData(category)
    out = {}
    for x in range(len(od.subs.list)):
        out[od.algebra.subgroup_name(x)] = is_projective(representable_restriction(category, x, CONTRAVARIANT))
    return out


def random_mackey_restriction(category, rng: random.Random, variance: str = COVARIANT,
                              kind: str = "image", bound: int = 3) -> CatModule:
    """Image or cokernel of a random map between restricted representables;
    such modules always extend."""
    from .catalg import ModuleMap, cokernel, image, submodule

    od = _OrbitData(category)
    a = od.algebra
    n = len(od.subs.list)
    x, y = rng.randrange(n), rng.randrange(n)
    src = representable_restriction(category, x, variance)
    dst = representable_restriction(category, y, variance)
    # contravariant: post-compose with r: X -> Y; covariant: pre-compose with r: Y -> X
    blk = a.block_indices(x, y) if variance == CONTRAVARIANT else a.block_indices(y, x)
    r = {i: rng.randint(-bound, bound) for i in blk}
    comps = {}
    for h in range(n):
        sb = a.block_indices(h, x) if variance == CONTRAVARIANT else a.block_indices(x, h)
        tb = a.block_indices(h, y) if variance == CONTRAVARIANT else a.block_indices(y, h)
        pos = {b: i for i, b in enumerate(tb)}
        entries = []
        for c, f in enumerate(sb):
            for i, v in r.items():
                prod = a.mul(i, f) if variance == CONTRAVARIANT else a.mul(f, i)
                for k, w in prod.items():
                    entries.append(((pos[k], c), v * w))
        comps[od.obj[h]] = RatMatrix.from_sparse(len(tb), len(sb), entries)
    phi = ModuleMap(src, dst, comps)
    if kind == "image":
        return submodule(dst, image(phi))[0]
    return cokernel(phi)[0]


# -- the infinite dihedral group --------------------------------------------------

def _dmul(p, q):
    # D_inf as pairs (k, e): translation by k followed by e reflections
    (k1, e1), (k2, e2) = p, q
    return (k1 + (k2 if e1 == 0 else -k2), (e1 + e2) % 2)


_ONE, _S, _T = (0, 0), (0, 1), (-1, 1)


def _st_power(k: int):
    return (k, 0)      # s t = (1, 0)


def _double_coset(left, w, right):
    return frozenset(_dmul(_dmul(a, w), b) for a in left for b in right)


class DInftyReport:
    def __init__(self, window, laurent, quotient, identity_holds, solver_supports, solvable,
                 certificate, functional, functional_ok):
        self.window = window
        self.laurent = laurent              # k -> {j: coefficient of y_j}
        self.quotient = quotient            # k -> {n: coefficient of Y_n}
        self.identity_holds = identity_holds
        self.solver_supports = solver_supports
        self.solvable = solvable
        self.certificate = certificate
        self.functional = functional
        self.functional_ok = functional_ok

    @property
    def von_neumann_regular(self) -> bool:
        return False if not self.solvable else None

    def to_json(self) -> dict:
        return {
            "window": list(self.window),
            "a_xk_a": {str(k): {str(j): c for j, c in sorted(v.items())} for k, v in sorted(self.laurent.items())},
            "a_xk_a_double_cosets": {str(k): {str(j): c for j, c in sorted(v.items())}
                                     for k, v in sorted(self.quotient.items())},
            "identity_holds": self.identity_holds,
            "solver_max_support": max(self.solver_supports) if self.solver_supports else 0,
            "axa_equals_a_solvable": self.solvable,
            "certificate": self.certificate,
            "double_coset_functional": self.functional,
            "double_coset_functional_ok": self.functional_ok,
            "von_neumann_regular": False if not self.solvable else None,
        }


def _a_x_a_words(k: int):
    """The four words ``x (st)^k z`` of ``(1 + t)(st)^k(1 + s)`` as ``(x, z, word)``."""
    w = _st_power(k)
    return [(x, z, _dmul(x, _dmul(w, z))) for x in (_ONE, _T) for z in (_ONE, _S)]


def _laurent_exponent(x, z, word) -> int:
    """Rewrite ``x (st)^k z`` as ``(st)^j``: a leading ``t`` absorbs an ``s`` on
    the left (``I^<s>_1 c_s = I^<s>_1``), a trailing ``s`` a ``t`` on the right
    (``c_t R^<t>_1 = R^<t>_1``)."""
    w = _dmul(_S if x == _T else _ONE, _dmul(word, _T if z == _S else _ONE))
    if w[1] != 0:
        raise AssertionError("rewrite did not reach a power of st")
    return w[0]


def dinfty_witness(window: Tuple[int, int] = (-5, 5), max_support: int = 50) -> DInftyReport:
    """``a x_k a = y_k + 2 y_{k+1} + y_{k+2}`` in the hom spaces of the Mackey
    category of ``D_inf`` between ``<s>`` and ``<t>``, and the
    unsolvability of ``a x a = a``.

    In ``R^<t>_1 I^<t>_1 = sum over x in <t> of c_x`` the middle products give
    ``(1 + t)(st)^k(1 + s)``.  The Laurent model writes ``y_j`` as ``u^j``;
    the double coset model identifies ``y_j`` with ``y_{1-j}``.
    """
    lo, hi = window
    s_grp, t_grp = [_ONE, _S], [_ONE, _T]
    laurent, quotient = {}, {}
    ok = True
    for k in range(lo, hi + 1):
        coeffs = {}
        for x, z, w in _a_x_a_words(k):
            j = _laurent_exponent(x, z, w)
            if _double_coset(s_grp, w, t_grp) != _double_coset(s_grp, _st_power(j), t_grp):
                ok = False
            coeffs[j] = coeffs.get(j, 0) + 1
        laurent[k] = coeffs
        if coeffs != {k: 1, k + 1: 2, k + 2: 1}:
            ok = False
        # genuine double cosets: <s>(st)^j<t> = <s>(st)^{1-j}<t>, labelled by n = max(j, 1 - j) >= 1
        q = {}
        for _, _, w in _a_x_a_words(k):
            dc = _double_coset(s_grp, w, t_grp)
            n = next(m for m in range(1, abs(k) + 4) if dc == _double_coset(s_grp, _st_power(m), t_grp))
            q[n] = q.get(n, 0) + 1
        quotient[k] = q
    # (1 + u)^2 c(u) = 1 over supports [-r, r]: no solution
    supports = []
    solvable = False
    for r in range(0, max_support // 2 + 1):
        size = 2 * r + 1
        rows = size + 2
        entries = []
        for c in range(size):
            for d, v in ((0, 1), (1, 2), (2, 1)):
                entries.append(((c + d, c), v))
        mat = RatMatrix.from_sparse(rows, size, entries)
        rhs = RatMatrix.column([1 if (e - r) == 0 else 0 for e in range(rows)])
        supports.append(size)
        if solve(mat, rhs) is not None:
            solvable = True
    certificate = {"evaluate_at": -1, "left": 0, "right": 1}
    # on double cosets: lambda(y_j) = (-1)^j (2j - 1) respects y_j = y_{1-j}, kills
    # every y_k + 2y_{k+1} + y_{k+2}, and lambda(a) = lambda(y_0) = -1
    lam = lambda j: (-1) ** j * (2 * j - 1)
    f_ok = all(lam(j) == lam(1 - j) for j in range(lo - 3, hi + 4))
    f_ok = f_ok and all(sum(c * lam(n) for n, c in quotient[k].items()) == 0 for k in quotient)
    f_ok = f_ok and lam(0) != 0
    # x_k = x_{-1-k} as double cosets <t>(st)^k<s>, so both must give the same product
    f_ok = f_ok and all(quotient[k] == quotient[-1 - k] for k in quotient if -1 - k in quotient)
    functional = {"formula": "(-1)^n (2n - 1) on Y_n = y_n = y_{1-n}", "value_at_a": lam(0)}
    return DInftyReport(window, laurent, quotient, ok, supports, solvable, certificate, functional, f_ok)
