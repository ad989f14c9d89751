"""Finite categories given by composition tables, EI detection and the
unique factorisation property (UFP).

A :class:`FiniteCategory` stores morphisms by string id.  Internally every
morphism also has an integer index (its position in ``morphisms``), and the
composition table is a dense list of lists over those indices with ``-1``
for non-composable pairs.
"""

import itertools
import json
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

__all__ = [
    "CategoryError",
    "NotEI",
    "IsIsomorphism",
    "FiniteCategory",
    "is_ei",
    "unfactorisables",
    "enumerate_factorizations",
    "ufp_check",
    "ladder",
    "poset_category",
    "quiver_category",
    "group_category",
    "monoid_category",
]


class CategoryError(ValueError):
    pass


class NotEI(CategoryError):
    pass


class IsIsomorphism(CategoryError):
    pass


class FiniteCategory:
    """A finite category.

    ``morphisms`` is a list of ``(id, src, dst)``; ``composition`` maps
    ``(g, f)`` to the id of ``g o f`` (``f`` first) and must be defined
    exactly on the pairs with ``dst(f) == src(g)``.
    """

    def __init__(self, objects, morphisms, composition, identities, name=None, validate=True):
        self.name = name
        self.objects = list(objects)
        self._obj_index = {o: i for i, o in enumerate(self.objects)}
        if len(self._obj_index) != len(self.objects):
            raise CategoryError("duplicate object ids")
        self.morphisms = [m for m, _, _ in morphisms]
        self._index = {m: i for i, m in enumerate(self.morphisms)}
        if len(self._index) != len(self.morphisms):
            raise CategoryError("duplicate morphism ids")
        self._src = []
        self._dst = []
        for m, s, t in morphisms:
            if s not in self._obj_index or t not in self._obj_index:
                raise CategoryError("morphism %r has unknown endpoint" % (m,))
            self._src.append(s)
            self._dst.append(t)
        self.identities = dict(identities)
        n = len(self.morphisms)
        table = [[-1] * n for _ in range(n)]
        if isinstance(composition, dict):
            composition = [(g, f, gf) for (g, f), gf in composition.items()]
        for g, f, gf in composition:
            try:
                gi, fi, gfi = self._index[g], self._index[f], self._index[gf]
            except KeyError as exc:
                raise CategoryError("composition mentions unknown morphism %s" % exc)
            if table[gi][fi] not in (-1, gfi):
                raise CategoryError("composite of %r o %r given twice" % (g, f))
            table[gi][fi] = gfi
        self._table = table
        self._homs = {}
        for i in range(n):
            self._homs.setdefault((self._src[i], self._dst[i]), []).append(i)
        self._op = None
        self._iso_cache = None
        if validate:
            self.validate()

    # -- basic queries ---------------------------------------------------
    def __repr__(self):
        return "FiniteCategory(%s, %d objects, %d morphisms)" % (
            self.name or "?", len(self.objects), len(self.morphisms))

    def __len__(self):
        return len(self.morphisms)

    def index(self, m: str) -> int:
        return self._index[m]

    def src(self, m: str):
        return self._src[self._index[m]]

    def dst(self, m: str):
        return self._dst[self._index[m]]

    def hom(self, x, y) -> List[str]:
        return [self.morphisms[i] for i in self._homs.get((x, y), [])]

    def hom_indices(self, x, y) -> List[int]:
        return self._homs.get((x, y), [])

    def compose(self, g: str, f: str) -> Optional[str]:
        """``g o f`` or ``None`` when not composable."""
        r = self._table[self._index[g]][self._index[f]]
        return None if r < 0 else self.morphisms[r]

    def compose_chain(self, chain: Sequence[str]) -> str:
        """Composite of a chain listed in order of application."""
        out = chain[0]
        for m in chain[1:]:
            out = self.compose(m, out)
            if out is None:
                raise CategoryError("chain not composable")
        return out

    def identity(self, x) -> str:
        return self.identities[x]

    def is_identity(self, m: str) -> bool:
        return self.identities[self.src(m)] == m

    # -- validation ------------------------------------------------------
    def validate(self):
        n = len(self.morphisms)
        t = self._table
        for o in self.objects:
            if o not in self.identities:
                raise CategoryError("object %r has no identity" % (o,))
            i = self.identities[o]
            if i not in self._index or self.src(i) != o or self.dst(i) != o:
                raise CategoryError("bad identity for %r" % (o,))
        for g in range(n):
            for f in range(n):
                composable = self._dst[f] == self._src[g]
                gf = t[g][f]
                if composable != (gf >= 0):
                    raise CategoryError("composition of %r o %r must be %s" % (
                        self.morphisms[g], self.morphisms[f],
                        "defined" if composable else "undefined"))
                if gf >= 0 and (self._src[gf] != self._src[f] or self._dst[gf] != self._dst[g]):
                    raise CategoryError("composite %r o %r has wrong endpoints" % (
                        self.morphisms[g], self.morphisms[f]))
        for f in range(n):
            if t[self._index[self.identities[self._dst[f]]]][f] != f:
                raise CategoryError("left identity law fails at %r" % self.morphisms[f])
            if t[f][self._index[self.identities[self._src[f]]]] != f:
                raise CategoryError("right identity law fails at %r" % self.morphisms[f])
        # associativity over composable triples h o g o f
        out_of = {}
        for i in range(n):
            out_of.setdefault(self._src[i], []).append(i)
        for f in range(n):
            for g in out_of.get(self._dst[f], ()):
                gf = t[g][f]
                for h in out_of.get(self._dst[g], ()):
                    if t[h][gf] != t[t[h][g]][f]:
                        raise CategoryError("composition not associative at (%s, %s, %s)" % (
                            self.morphisms[h], self.morphisms[g], self.morphisms[f]))

    # -- derived structure -----------------------------------------------
    def op(self) -> "FiniteCategory":
        """Opposite category with the same ids."""
        if self._op is None:
            morphisms = [(m, self._dst[i], self._src[i]) for i, m in enumerate(self.morphisms)]
            comp = []
            n = len(self.morphisms)
            for g in range(n):
                for f in range(n):
                    gf = self._table[g][f]
                    if gf >= 0:
                        comp.append((self.morphisms[f], self.morphisms[g], self.morphisms[gf]))
            op = FiniteCategory(self.objects, morphisms, comp, self.identities,
                                name=(self.name or "C") + "^op", validate=False)
            op._op = self
            self._op = op
        return self._op

    def _inverse_table(self):
        if self._iso_cache is None:
            inv = {}
            for f, m in enumerate(self.morphisms):
                s, d = self._src[f], self._dst[f]
                ids = self._index[self.identities[s]]
                idd = self._index[self.identities[d]]
                for g in self._homs.get((d, s), []):
                    if self._table[g][f] == ids and self._table[f][g] == idd:
                        inv[f] = g
                        break
            self._iso_cache = inv
        return self._iso_cache

    def is_iso(self, m: str) -> bool:
        return self._index[m] in self._inverse_table()

    def inverse(self, m: str) -> str:
        return self.morphisms[self._inverse_table()[self._index[m]]]

    def isos(self, x, y) -> List[str]:
        inv = self._inverse_table()
        return [self.morphisms[i] for i in self._homs.get((x, y), []) if i in inv]

    def automorphisms(self, x) -> List[str]:
        return self.isos(x, x)

    def iso_classes(self) -> List[List]:
        seen = set()
        classes = []
        for o in self.objects:
            if o in seen:
                continue
            cls = [p for p in self.objects if self.isos(o, p)]
            seen.update(cls)
            classes.append(cls)
        return classes

    def generating_morphisms(self) -> List[str]:
        """Non-identity morphisms enough to generate the category under composition.

        For EI categories these are the isomorphisms and the unfactorisable
        morphisms; otherwise every non-identity morphism is returned.
        """
        if is_ei(self):
            inv = self._inverse_table()
            unf = set(unfactorisables(self))
            return [m for i, m in enumerate(self.morphisms)
                    if not self.is_identity(m) and (i in inv or m in unf)]
        return [m for m in self.morphisms if not self.is_identity(m)]

    def relabel(self, obj_map: Dict, mor_map: Dict[str, str]) -> "FiniteCategory":
        """Isomorphic copy with renamed objects and morphisms."""
        morphisms = [(mor_map[m], obj_map[self._src[i]], obj_map[self._dst[i]])
                     for i, m in enumerate(self.morphisms)]
        comp = []
        n = len(self.morphisms)
        for g in range(n):
            for f in range(n):
                gf = self._table[g][f]
                if gf >= 0:
                    comp.append((mor_map[self.morphisms[g]], mor_map[self.morphisms[f]],
                                 mor_map[self.morphisms[gf]]))
        ids = {obj_map[o]: mor_map[i] for o, i in self.identities.items()}
        return FiniteCategory([obj_map[o] for o in self.objects], morphisms, comp, ids,
                              name=self.name)

    # -- JSON --------------------------------------------------------------
    def to_json(self) -> dict:
        comp = []
        n = len(self.morphisms)
        for g in range(n):
            for f in range(n):
                gf = self._table[g][f]
                if gf >= 0:
                    comp.append([self.morphisms[g], self.morphisms[f], self.morphisms[gf]])
        return {
            "format": 1,
            "objects": list(self.objects),
            "morphisms": [{"id": m, "src": self._src[i], "dst": self._dst[i]}
                          for i, m in enumerate(self.morphisms)],
            "composition": comp,
            "identities": dict(self.identities),
        }

    @classmethod
    def from_json(cls, data, name=None) -> "FiniteCategory":
        if isinstance(data, str):
            data = json.loads(data)
        if data.get("format", 1) != 1:
            raise CategoryError("unsupported category format %r" % data.get("format"))
        for key in ("objects", "morphisms", "composition", "identities"):
            if key not in data:
                raise CategoryError("category JSON lacks %r" % key)
        morphisms = [(m["id"], m["src"], m["dst"]) for m in data["morphisms"]]
        return cls(data["objects"], morphisms, [tuple(c) for c in data["composition"]],
                   data["identities"], name=name)


# -- EI and factorisations ---------------------------------------------------

def is_ei(c: FiniteCategory) -> bool:
    """Every endomorphism is invertible."""
    inv = c._inverse_table()
    for x in c.objects:
        for i in c.hom_indices(x, x):
            if i not in inv:
                return False
    return True


def _require_ei(c):
    if not is_ei(c):
        raise NotEI("%r is not an EI category" % (c,))


def _unfactorisable_indices(c: FiniteCategory):
    cache = getattr(c, "_unf_cache", None)
    if cache is not None:
        return cache
    inv = c._inverse_table()
    n = len(c.morphisms)
    factorisable = set()
    t = c._table
    for g in range(n):
        if g in inv:
            continue
        for f in range(n):
            if f in inv:
                continue
            gf = t[g][f]
            if gf >= 0:
                factorisable.add(gf)
    unf = [i for i in range(n) if i not in inv and i not in factorisable]
    c._unf_cache = unf
    return unf


def unfactorisables(c: FiniteCategory) -> List[str]:
    _require_ei(c)
    return [c.morphisms[i] for i in _unfactorisable_indices(c)]


def _chains_table(c: FiniteCategory):
    """Memoised map morphism index -> tuple of chains (tuples of indices)."""
    cache = getattr(c, "_chain_cache", None)
    if cache is None:
        cache = {}
        c._chain_cache = cache
    return cache


def _chains(c: FiniteCategory, f: int):
    cache = _chains_table(c)
    if f in cache:
        return cache[f]
    inv = c._inverse_table()
    unf = set(_unfactorisable_indices(c))
    t = c._table
    out = []
    src = c._src[f]
    if f in unf:
        out.append((f,))
    # first step h out of src, remainder g with g o h == f and g a non-iso
    for h in unf:
        if c._src[h] != src:
            continue
        for g in c.hom_indices(c._dst[h], c._dst[f]):
            if g in inv:
                continue
            if t[g][h] == f:
                for rest in _chains(c, g):
                    out.append((h,) + rest)
    out = tuple(out)
    cache[f] = out
    return out


def enumerate_factorizations(c: FiniteCategory, f: str) -> List[List[str]]:
    """All chains of unfactorisable morphisms composing to ``f``."""
    _require_ei(c)
    if c.is_iso(f):
        raise IsIsomorphism("%r is an isomorphism" % (f,))
    return [[c.morphisms[i] for i in ch] for ch in _chains(c, c.index(f))]


def ladder(c: FiniteCategory, a: Sequence[str], b: Sequence[str]) -> Optional[List[str]]:
    """Isomorphisms ``h_1..h_{n-1}`` making the UFP ladder commute, or ``None``."""
    n = len(a)
    if n != len(b):
        return None
    if n == 0:
        return []
    if n == 1:
        return [] if a[0] == b[0] else None

    def extend(i, prev, acc):
        # prev: h_{i-1} (identity at the start); look for h_i
        if i == n:
            return acc if c.compose(b[n - 1], prev) == a[n - 1] else None
        lhs = c.compose(b[i - 1], prev)
        for h in c.isos(c.dst(a[i - 1]), c.dst(b[i - 1])):
            if c.compose(h, a[i - 1]) == lhs:
                found = extend(i + 1, h, acc + [h])
                if found is not None:
                    return found
        return None

    return extend(1, c.identity(c.src(a[0])), [])


def ufp_check(c: FiniteCategory) -> Tuple[bool, Optional[Tuple[List[str], List[str]]]]:
    """Decide the unique factorisation property.

    Returns ``(True, None)`` or ``(False, (chain, other_chain))`` where the
    two chains have the same composite but admit no commuting ladder.
    """
    _require_ei(c)
    inv = c._inverse_table()
    for f in range(len(c.morphisms)):
        if f in inv:
            continue
        chains = _chains(c, f)
        first = [c.morphisms[i] for i in chains[0]]
        for other in chains[1:]:
            other = [c.morphisms[i] for i in other]
            if ladder(c, first, other) is None:
                return False, (first, other)
    return True, None


# -- constructors ---------------------------------------------------------

def poset_category(elements: Sequence, relations: Iterable[Tuple], name=None) -> FiniteCategory:
    """Category of a finite poset given by generating relations ``a < b``.

    Morphism ids are ``"a->b"``; identities are ``"a->a"``.
    """
    elements = list(elements)
    le = {(a, a) for a in elements}
    le |= set((a, b) for a, b in relations)
    changed = True
    while changed:
        changed = False
        for (a, b), (b2, d) in itertools.product(list(le), list(le)):
            if b == b2 and (a, d) not in le:
                le.add((a, d))
                changed = True
    for a, b in le:
        if a != b and (b, a) in le:
            raise CategoryError("relations contain a cycle")
    mid = lambda a, b: "%s->%s" % (a, b)
    morphisms = [(mid(a, b), a, b) for a in elements for b in elements if (a, b) in le]
    comp = [(mid(b, d), mid(a, b), mid(a, d))
            for (a, b) in le for (b2, d) in le if b == b2]
    return FiniteCategory(elements, morphisms, comp, {a: mid(a, a) for a in elements},
                          name=name)


def quiver_category(vertices: Sequence, arrows: Sequence[Tuple[str, str, str]], name=None) -> FiniteCategory:
    """Free category on an acyclic quiver; arrows are ``(id, src, dst)``.

    Paths are named by their arrows in order of application joined by ``.``.
    """
    out = {}
    for a, s, t in arrows:
        out.setdefault(s, []).append((a, t))
    allp = []

    def walk(v, path, start):
        for a, t in out.get(v, []):
            p = path + (a,)
            if len(p) > len(arrows) + 1:
                raise CategoryError("quiver has a cycle")
            allp.append((p, start, t))
            walk(t, p, start)

    for v in vertices:
        walk(v, (), v)
    ids = {v: "id_%s" % v for v in vertices}
    name_of = lambda p: ".".join(p)
    morphisms = [(ids[v], v, v) for v in vertices] + [(name_of(p), s, t) for p, s, t in allp]
    comp = []
    for v in vertices:
        comp.append((ids[v], ids[v], ids[v]))
    for p, s, t in allp:
        pid = name_of(p)
        comp.append((ids[t], pid, pid))
        comp.append((pid, ids[s], pid))
        for q, s2, t2 in allp:
            if s2 == t:
                comp.append((name_of(q), pid, name_of(p + q)))
    return FiniteCategory(list(vertices), morphisms, comp, ids, name=name)


def group_category(table: Sequence[Sequence[int]], labels=None, obj="*", name=None) -> FiniteCategory:
    """One-object category of a finite group (or monoid) with Cayley table
    ``table[g][h] = g*h``; composition ``g o h = g*h``."""
    n = len(table)
    labels = labels or ["g%d" % i for i in range(n)]
    unit = None
    for e in range(n):
        if all(table[e][x] == x and table[x][e] == x for x in range(n)):
            unit = e
            break
    if unit is None:
        raise CategoryError("table has no identity")
    morphisms = [(labels[i], obj, obj) for i in range(n)]
    comp = [(labels[g], labels[h], labels[table[g][h]]) for g in range(n) for h in range(n)]
    return FiniteCategory([obj], morphisms, comp, {obj: labels[unit]}, name=name)


def monoid_category(table, labels=None, name=None) -> FiniteCategory:
    return group_category(table, labels=labels, name=name)
