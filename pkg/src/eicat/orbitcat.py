"""Finite groups by Cayley table, subgroup lattices, families of subgroups
and orbit categories Or(G, F)."""

import itertools
import json
from functools import reduce
from typing import FrozenSet, List, Optional, Sequence, Tuple

from .fincat import FiniteCategory

__all__ = [
    "GroupError",
    "GroupTooLarge",
    "FiniteGroup",
    "cyclic",
    "dihedral",
    "symmetric",
    "alternating",
    "dicyclic",
    "small_group_specs",
    "direct_product",
    "parse_group",
    "subgroups",
    "SubgroupFamily",
    "all_families",
    "trans_set",
    "orbit_category",
    "orbit_ufp_criterion",
    "is_cyclic",
    "is_prime_power",
    "DEFAULT_ORDER_BOUND",
]

DEFAULT_ORDER_BOUND = 48


class GroupError(ValueError):
    pass


class GroupTooLarge(GroupError):
    pass


class FiniteGroup:
    """A finite group on elements ``0..n-1`` with ``table[a][b] = a*b``."""

    def __init__(self, table: Sequence[Sequence[int]], name: Optional[str] = None,
                 labels: Optional[Sequence[str]] = None):
        self.table = [list(r) for r in table]
        n = len(self.table)
        self.order = n
        self.name = name or "G%d" % n
        if any(len(r) != n for r in self.table):
            raise GroupError("Cayley table is not square")
        if any(not (0 <= x < n) for r in self.table for x in r):
            raise GroupError("Cayley table entry out of range")
        ids = [e for e in range(n) if all(self.table[e][x] == x == self.table[x][e] for x in range(n))]
        if not ids:
            raise GroupError("no identity element")
        self.identity = ids[0]
        self.inverses = []
        for a in range(n):
            inv = [b for b in range(n) if self.table[a][b] == self.identity]
            if len(inv) != 1 or self.table[inv[0]][a] != self.identity:
                raise GroupError("element %d has no two-sided inverse" % a)
            self.inverses.append(inv[0])
        t = self.table
        for a in range(n):
            ta = t[a]
            for b in range(n):
                ab = ta[b]
                tb = t[b]
                for c in range(n):
                    if t[ab][c] != ta[tb[c]]:
                        raise GroupError("multiplication is not associative")
        self.labels = list(labels) if labels else [str(i) for i in range(n)]
        self._subgroups = None

    def __repr__(self):
        return "FiniteGroup(%s, order=%d)" % (self.name, self.order)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def conj(self, g: int, h: int) -> int:
        """g h g^-1"""
        return self.table[self.table[g][h]][self.inverses[g]]

    def conj_set(self, g: int, hs) -> FrozenSet[int]:
        return frozenset(self.conj(g, h) for h in hs)

    def generated(self, gens) -> FrozenSet[int]:
        out = {self.identity}
        frontier = [self.identity]
        gens = list(gens)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.table[x][g]
                    if y not in out:
                        out.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(out)

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.table[x][a]
            k += 1
        return k

    def is_subgroup(self, s) -> bool:
        s = set(s)
        if self.identity not in s:
            return False
        return all(self.table[a][b] in s for a in s for b in s) and all(self.inverses[a] in s for a in s)

    def normalizer(self, h) -> FrozenSet[int]:
        h = frozenset(h)
        return frozenset(g for g in range(self.order) if self.conj_set(g, h) == h)

    def to_json(self) -> dict:
        return {"format": 1, "order": self.order, "table": self.table}

    @classmethod
    def from_json(cls, data, name=None) -> "FiniteGroup":
        if isinstance(data, str):
            data = json.loads(data)
        if data.get("format", 1) != 1:
            raise GroupError("unsupported group format %r" % data.get("format"))
        if "table" not in data:
            raise GroupError("group JSON lacks 'table'")
        table = data["table"]
        if "order" in data and data["order"] != len(table):
            raise GroupError("order does not match table size")
        return cls(table, name=name or data.get("name"))


# -- built-in groups ----------------------------------------------------

def cyclic(n: int) -> FiniteGroup:
    return FiniteGroup([[(a + b) % n for b in range(n)] for a in range(n)], name="C%d" % n)


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the regular n-gon, order 2n (n >= 1); element r^k s^e is k + n*e."""
    els = [(k, e) for e in range(2) for k in range(n)]
    idx = {x: i for i, x in enumerate(els)}

    def mul(x, y):
        (k1, e1), (k2, e2) = x, y
        return ((k1 + (-k2 if e1 else k2)) % n, (e1 + e2) % 2)

    return FiniteGroup([[idx[mul(x, y)] for y in els] for x in els], name="D%d" % (2 * n))


def symmetric(n: int) -> FiniteGroup:
    if n > 4:
        raise GroupTooLarge("symmetric groups are built in only for n <= 4")
    perms = sorted(itertools.permutations(range(n)))
    idx = {p: i for i, p in enumerate(perms)}
    # (p*q)(i) = p(q(i))
    table = [[idx[tuple(p[q[i]] for i in range(n))] for q in perms] for p in perms]
    return FiniteGroup(table, name="S%d" % n)


def dicyclic(n: int) -> FiniteGroup:
    """Dicyclic group of order 4n; n = 2 is the quaternion group.  a^k x^e is k + 2n*e."""
    m = 2 * n
    els = [(k, e) for e in range(2) for k in range(m)]
    idx = {x: i for i, x in enumerate(els)}

    def mul(x, y):
        (k, e), (j, f) = x, y
        if not e:
            return ((k + j) % m, f)
        if not f:
            return ((k - j) % m, 1)
        return ((k - j + n) % m, 0)

    return FiniteGroup([[idx[mul(x, y)] for y in els] for x in els], name="Dic%d" % (4 * n))


def alternating(n: int) -> FiniteGroup:
    if n > 4:
        raise GroupTooLarge("alternating groups are built in only for n <= 4")

    def even(p):
        return sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j]) % 2 == 0

    perms = [p for p in sorted(itertools.permutations(range(n))) if even(p)]
    idx = {p: i for i, p in enumerate(perms)}
    table = [[idx[tuple(p[q[i]] for i in range(n))] for q in perms] for p in perms]
    return FiniteGroup(table, name="A%d" % n)


def small_group_specs(max_order: int = 12) -> List[str]:
    """Specs of one group from each isomorphism class of order <= 12."""
    specs = ["cyclic:%d" % n for n in range(1, 13)]
    specs += ["cyclic:2*cyclic:2", "dihedral:3", "dihedral:4", "cyclic:2*cyclic:4",
              "cyclic:2*cyclic:2*cyclic:2", "quaternion", "cyclic:3*cyclic:3", "dihedral:5",
              "dihedral:6", "cyclic:2*cyclic:6", "alt:4", "dicyclic:3"]
    if max_order > 12:
        raise GroupError("the small group list stops at order 12")
    return [s for s in specs if parse_group(s).order <= max_order]


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    els = [(a, b) for a in range(g.order) for b in range(h.order)]
    idx = {x: i for i, x in enumerate(els)}
    table = [[idx[(g.table[a][c], h.table[b][d])] for (c, d) in els] for (a, b) in els]
    return FiniteGroup(table, name="%sx%s" % (g.name, h.name))


def parse_group(spec: str) -> FiniteGroup:
    """``cyclic:n``, ``dihedral:n`` (order 2n), ``sym:n`` and ``alt:n`` (n <= 4),
    ``dicyclic:n`` (order 4n), ``quaternion``,
    ``file:PATH`` (Cayley table JSON); factors joined by ``*`` form a direct
    product, e.g. ``cyclic:2*cyclic:4``."""
    if "*" in spec:
        return reduce(direct_product, [parse_group(s) for s in spec.split("*")])
    kind, _, arg = spec.partition(":")
    if kind == "cyclic":
        return cyclic(int(arg))
    if kind == "dihedral":
        return dihedral(int(arg))
    if kind in ("sym", "symmetric"):
        return symmetric(int(arg))
    if kind in ("alt", "alternating"):
        return alternating(int(arg))
    if kind == "dicyclic":
        return dicyclic(int(arg))
    if kind == "quaternion":
        return dicyclic(2)
    if kind == "file":
        with open(arg) as fh:
            return FiniteGroup.from_json(json.load(fh), name=arg)
    raise GroupError("unknown group spec %r" % spec)


# -- subgroups ------------------------------------------------------------

def subgroups(g: FiniteGroup, bound: int = DEFAULT_ORDER_BOUND) -> List[Tuple[int, ...]]:
    """All subgroups as sorted element tuples, ordered by (order, elements)."""
    if g.order > bound:
        raise GroupTooLarge("group of order %d exceeds bound %d" % (g.order, bound))
    if g._subgroups is None:
        found = {g.generated([a]) for a in range(g.order)}
        frontier = set(found)
        cyclics = list(found)
        while frontier:
            new = set()
            for h in frontier:
                for c in cyclics:
                    if c <= h:
                        continue
                    j = g.generated(h | c)
                    if j not in found:
                        new.add(j)
            found |= new
            frontier = new
        g._subgroups = sorted((tuple(sorted(s)) for s in found), key=lambda s: (len(s), s))
    return list(g._subgroups)


def is_prime_power(n: int) -> bool:
    if n == 1:
        return True
    p = next(d for d in range(2, n + 1) if n % d == 0)
    while n % p == 0:
        n //= p
    return n == 1


def is_cyclic(g: FiniteGroup, h) -> bool:
    return any(g.element_order(a) == len(h) for a in h)


def subgroup_label(g: FiniteGroup, h) -> str:
    subs = subgroups(g)
    h = tuple(sorted(h))
    if len(h) == 1:
        return "1"
    if len(h) == g.order:
        return "G"
    return "H%d" % subs.index(h)


class SubgroupFamily:
    """A non-empty family of subgroups closed under subconjugation."""

    def __init__(self, group: FiniteGroup, members, validate: bool = True):
        self.group = group
        self.members = sorted({tuple(sorted(m)) for m in members}, key=lambda s: (len(s), s))
        if validate:
            self.validate()

    def __repr__(self):
        return "SubgroupFamily(%s, %s)" % (self.group.name, self.labels())

    def labels(self) -> List[str]:
        return [subgroup_label(self.group, m) for m in self.members]

    def validate(self):
        g = self.group
        if not self.members:
            raise GroupError("family must be non-empty")
        mset = set(self.members)
        subs = subgroups(g)
        for m in self.members:
            if not g.is_subgroup(m):
                raise GroupError("%r is not a subgroup" % (m,))
        for m in self.members:
            for x in range(g.order):
                c = g.conj_set(x, m)
                for s in subs:
                    if set(s) <= c and s not in mset:
                        raise GroupError("family not closed under subconjugation: missing %r" % (s,))

    @classmethod
    def all_subgroups(cls, group: FiniteGroup) -> "SubgroupFamily":
        return cls(group, subgroups(group), validate=False)

    @classmethod
    def generated_by(cls, group: FiniteGroup, gens) -> "SubgroupFamily":
        """Smallest family containing the given subgroups."""
        subs = subgroups(group)
        out = set()
        for h in gens:
            for x in range(group.order):
                c = group.conj_set(x, h)
                out.update(s for s in subs if set(s) <= c)
        return cls(group, out)

    def to_json(self):
        return [list(m) for m in self.members]


def _conjugacy_classes_of_subgroups(g: FiniteGroup):
    subs = subgroups(g)
    seen = set()
    classes = []
    for s in subs:
        if s in seen:
            continue
        cls = sorted({tuple(sorted(g.conj_set(x, s))) for x in range(g.order)})
        seen.update(cls)
        classes.append(cls)
    return classes


def all_families(g: FiniteGroup) -> List[SubgroupFamily]:
    """Every family closed under subconjugation (downsets of conjugacy classes)."""
    classes = _conjugacy_classes_of_subgroups(g)
    k = len(classes)
    rep = [set(c[0]) for c in classes]
    # below[i]: classes j subconjugate to class i
    below = []
    for i in range(k):
        b = set()
        for j in range(k):
            if any(set(s) <= rep[i] for s in classes[j]):
                b.add(j)
        below.append(b)
    out = []
    seen = set()

    def grow(current, candidates):
        key = frozenset(current)
        if key in seen:
            return
        seen.add(key)
        out.append(key)
        for i in candidates:
            if i not in current and below[i] - {i} <= current:
                grow(current | {i}, candidates)

    trivial = next(i for i in range(k) if len(classes[i][0]) == 1)
    grow(frozenset({trivial}), range(k))
    fams = []
    for key in sorted(out, key=lambda s: (len(s), sorted(s))):
        members = [s for i in sorted(key) for s in classes[i]]
        fams.append(SubgroupFamily(g, members, validate=False))
    return fams


def trans_set(g: FiniteGroup, h, k) -> List[int]:
    """Elements x with x H x^-1 contained in K."""
    k = set(k)
    return [x for x in range(g.order) if all(g.conj(x, a) in k for a in h)]


def orbit_category(g: FiniteGroup, family: Optional[SubgroupFamily] = None) -> FiniteCategory:
    """Or(G, F) with Hom(G/H, G/K) = K \\ Trans(H, K).

    Morphism ``phi(H,K,x)`` sends xH... to the coset of x^-1 K; the
    representative ``x`` is the least element of its coset K x.
    """
    if family is None:
        family = SubgroupFamily.all_subgroups(g)
    members = family.members
    lab = {m: subgroup_label(g, m) for m in members}
    obj = {m: "G/%s" % lab[m] for m in members}
    coset_rep = {}

    def rep(k, x):
        key = (k, x)
        if key not in coset_rep:
            coset_rep[key] = min(g.table[a][x] for a in k)
        return coset_rep[key]

    homs = {}
    morphisms = []
    name = {}
    for h in members:
        for k in members:
            reps = sorted({rep(k, x) for x in trans_set(g, h, k)})
            homs[(h, k)] = reps
            for x in reps:
                mid = "phi(%s,%s,%s)" % (lab[h], lab[k], g.labels[x])
                name[(h, k, x)] = mid
                morphisms.append((mid, obj[h], obj[k]))
    comp = []
    for h in members:
        for k in members:
            for x in homs[(h, k)]:
                for l in members:
                    for y in homs[(k, l)]:
                        z = rep(l, g.table[y][x])
                        comp.append((name[(k, l, y)], name[(h, k, x)], name[(h, l, z)]))
    ids = {obj[h]: name[(h, h, rep(h, g.identity))] for h in members}
    cat = FiniteCategory([obj[m] for m in members], morphisms, comp, ids,
                         name="Or(%s)" % g.name, validate=False)
    cat.group = g
    cat.family = family
    cat.morphism_data = {v: key for key, v in name.items()}
    return cat


def orbit_ufp_criterion(family: SubgroupFamily) -> bool:
    """Every member is cyclic of prime-power order."""
    g = family.group
    return all(is_prime_power(len(m)) and is_cyclic(g, m) for m in family.members)
