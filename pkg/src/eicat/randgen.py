"""Seeded random modules, complexes and chain maps for property tests."""

import random
from typing import Optional

from .bredon import FreeBasedComplex, FreeChainMap, ModuleComplex
from .catalg import (CONTRAVARIANT, COVARIANT, CatModule, FreeModule, ModuleMap, cokernel, direct_sum,
                     hom_over_c, identity_map, kernel, map_from_free)
from .exactla import RatMatrix, kernel_basis, rank, solve


def _rng(seed_or_rng):
    return seed_or_rng if isinstance(seed_or_rng, random.Random) else random.Random(seed_or_rng)


def random_vector(rng, n, lo=-2, hi=2):
    return RatMatrix.column([rng.randint(lo, hi) for _ in range(n)])


def random_free(category, variance, rng, max_gens=2) -> FreeModule:
    k = rng.randint(1, max_gens)
    return FreeModule(category, variance, [rng.choice(category.objects) for _ in range(k)])


def random_map_from_free(p: FreeModule, target: CatModule, rng) -> ModuleMap:
    return map_from_free(p, target, [random_vector(rng, target.dims[x]) for x in p.generators])


def random_module(category, variance, rng, max_gens=2, max_rels=2, max_total=12) -> CatModule:
    """Cokernel of a random map between small free modules."""
    rng = _rng(rng)
    for _ in range(20):
        f = random_free(category, variance, rng, max_gens)
        if f.total_dim() > 3 * max_total:
            continue
        rel = FreeModule(category, variance, [rng.choice(category.objects)
                                              for _ in range(rng.randint(0, max_rels))])
        q, _ = cokernel(random_map_from_free(rel, f, rng))
        if q.total_dim() <= max_total:
            return q
    return q


def averaged_representable(category, x, variance=COVARIANT) -> CatModule:
    """``Q Hom(x, -) e`` for the averaging idempotent of ``Aut(x)``: a projective summand."""
    p = FreeModule(category, variance, [x])
    shape = p.shape
    auts = shape.automorphisms(x)
    # right action by automorphisms is natural; average it
    comps = {}
    for y in category.objects:
        n = p.dims[y]
        items = []
        for i, (_, h) in enumerate(p.basis[y]):
            for a in auts:
                items.append(((p.position[y][(0, shape.compose(h, a))], i), 1))
        comps[y] = RatMatrix.from_sparse(n, n, items).scale(1) if n else RatMatrix.zeros(0, 0)
    from .catalg import submodule
    from .exactla import image_basis
    sub, _ = submodule(p, {y: image_basis(comps[y]) for y in category.objects})
    return sub


def random_projective(category, variance, rng, max_summands=2) -> CatModule:
    """Sum of representables and averaged representables."""
    rng = _rng(rng)
    parts = []
    for _ in range(rng.randint(1, max_summands)):
        x = rng.choice(category.objects)
        parts.append(FreeModule(category, variance, [x]) if rng.random() < 0.5
                     else averaged_representable(category, x, variance))
    return direct_sum(parts) if len(parts) > 1 else parts[0]


def random_automorphism(m: CatModule, rng, attempts=6) -> Optional[ModuleMap]:
    basis = hom_over_c(m, m)
    for _ in range(attempts):
        phi = ModuleMap(m, m, {}, check=False)
        for b in basis:
            phi = phi + b.scale(rng.randint(-3, 3))
        if phi.is_iso():
            return phi
    return None


def _twist(c: ModuleComplex, rng) -> ModuleComplex:
    """Conjugate every differential by random natural automorphisms."""
    autos = {}
    for n, m in c.modules.items():
        phi = random_automorphism(m, rng)
        autos[n] = phi if phi is not None else identity_map(m)
    diffs = {}
    for n, d in c.differentials.items():
        inv = {x: a.inverse() for x, a in autos[n].components.items()}
        diffs[n] = ModuleMap(d.source, d.target,
                             {x: autos[n - 1].components[x] @ d.components[x] @ inv[x]
                              for x in c.category.objects}, check=False)
    return ModuleComplex(c.category, c.variance, c.modules, diffs)


def random_projective_homology_complex(category, rng, variance=CONTRAVARIANT, degrees=(0, 1)) -> ModuleComplex:
    """Projective modules with zero differential plus contractible pieces, twisted."""
    rng = _rng(rng)
    parts = {n: [random_projective(category, variance, rng)] for n in degrees}
    links = []
    lo, hi = min(degrees), max(degrees)
    for n in range(lo, hi + 2):
        if rng.random() < 0.6:
            q = random_module(category, variance, rng, max_total=6)
            parts.setdefault(n, []).append(q)
            parts.setdefault(n - 1, []).append(q)
            links.append((n, len(parts[n]) - 1, len(parts[n - 1]) - 1))
    mods = {n: direct_sum(ps) for n, ps in parts.items()}
    diffs = {}
    for n, i, j in links:
        src, tgt = parts[n], parts[n - 1]
        comps = {}
        for x in category.objects:
            rows = []
            for jj, t in enumerate(tgt):
                row = []
                for ii, s in enumerate(src):
                    if ii == i and jj == j:
                        row.append(RatMatrix.identity(s.dims[x]))
                    else:
                        row.append(RatMatrix.zeros(t.dims[x], s.dims[x]))
                rows.append(RatMatrix.hstack(row, rows=t.dims[x]))
            comps[x] = RatMatrix.vstack(rows, cols=mods[n].dims[x])
        d = ModuleMap(mods[n], mods[n - 1], comps, check=False)
        diffs[n] = d if n not in diffs else diffs[n] + d
    return _twist(ModuleComplex(category, variance, mods, diffs), rng)


def random_module_complex(category, rng, variance=CONTRAVARIANT, length=2) -> ModuleComplex:
    """``C_length -> ... -> C_0`` of small random modules with random differentials."""
    rng = _rng(rng)
    mods = {0: random_module(category, variance, rng, max_total=6)}
    diffs = {}
    for n in range(1, length + 1):
        target = mods[n - 1]
        if n == 1:
            k, kinc = target, identity_map(target)
        else:
            k, kinc = kernel(diffs[n - 1])
        f = random_free(category, variance, rng)
        if rng.random() < 0.5:
            src = f
            d = kinc @ random_map_from_free(f, k, rng)
        else:
            # a quotient of a free module mapping into the cycles
            rel = FreeModule(category, variance, [rng.choice(category.objects)])
            g = random_map_from_free(f, k, rng)
            kg, kginc = kernel(g)
            if kg.total_dim():
                relmap = kginc @ random_map_from_free(rel, kg, rng)
                src, proj = cokernel(relmap)
                d = kinc @ ModuleMap(src, k, {x: g.components[x] @ solve(proj.components[x],
                                                                         RatMatrix.identity(src.dims[x]))
                                             for x in category.objects}, check=False)
            else:
                src, d = f, kinc @ g
        mods[n] = src
        diffs[n] = ModuleMap(src, target, d.components, check=False)
    return ModuleComplex(category, variance, mods, diffs)


def random_free_complex(category, rng, top=2, max_cells=2) -> FreeBasedComplex:
    """Random cellular complex in degrees ``0..top`` with boundary squaring to zero."""
    rng = _rng(rng)
    objs = category.objects
    cells = {n: [("c%d_%d" % (n, i), rng.choice(objs)) for i in range(rng.randint(1, max_cells))]
             for n in range(top + 1)}
    mods = {n: FreeModule(category, COVARIANT, [o for _, o in cells[n]]) for n in cells}
    boundary = {}
    prev = None
    for n in range(1, top + 1):
        p, q = mods[n], mods[n - 1]
        images = []
        for _, x in cells[n]:
            if prev is None:
                v = random_vector(rng, q.dims[x])
            else:
                ker = kernel_basis(prev.components[x])
                v = ker @ random_vector(rng, ker.cols) if ker.cols else RatMatrix.zeros(q.dims[x], 1)
            images.append(v)
        d = map_from_free(p, q, images)
        entries = {}
        for (sigma, x), v in zip(cells[n], images):
            for k, (j, h) in enumerate(q.basis[x]):
                c = v[k, 0]
                if c != 0:
                    entries.setdefault((cells[n - 1][j][0], sigma), {})[h] = c
        boundary[n] = entries
        prev = d
    return FreeBasedComplex(category, cells, boundary)


def random_chain_map(a: FreeBasedComplex, x: FreeBasedComplex, rng) -> FreeChainMap:
    """Random element of the space of chain maps ``a -> x`` (Yoneda coordinates)."""
    rng = _rng(rng)
    am, xm = a.to_module_complex(), x.to_module_complex()
    unknowns = []  # (degree, cell index, object, size)
    offset = {}
    pos = 0
    for n in a.degrees():
        xn = xm.module(n)
        for j, (_, o) in enumerate(a.cells[n]):
            offset[(n, j)] = pos
            pos += xn.dims[o]
            unknowns.append((n, j, o))
    rows = []
    for n in a.degrees():
        xn1 = xm.module(n - 1)
        dx = xm.differential(n)
        an1 = am.module(n - 1)
        for j, (_, o) in enumerate(a.cells[n]):
            r = xn1.dims[o]
            if not r:
                continue
            blk = [[0] * pos for _ in range(r)]
            # d^X f(sigma)
            m = dx.components[o]
            for i in range(r):
                for k in range(m.cols):
                    blk[i][offset[(n, j)] + k] += m[i, k]
            # - f(d^A sigma)
            if n - 1 in a.cells:
                vec = am.differential(n).components[o] @ am.module(n).generator_vector(j)
                for k, (jj, h) in enumerate(an1.basis[o]):
                    c = vec[k, 0]
                    if c == 0:
                        continue
                    act = xn1.action[h]
                    src_o = a.cells[n - 1][jj][1]
                    for i in range(r):
                        for l in range(xn1.dims[src_o]):
                            blk[i][offset[(n - 1, jj)] + l] -= c * act[i, l]
            rows.extend(blk)
    sol = kernel_basis(RatMatrix(rows)) if rows else RatMatrix.identity(pos)
    v = sol @ random_vector(rng, sol.cols) if sol.cols else RatMatrix.zeros(pos, 1)
    comps = {}
    for n, j, o in unknowns:
        xn = xm.module(n)
        sigma = a.cells[n][j][0]
        for k, (jj, h) in enumerate(xn.basis[o]):
            c = v[offset[(n, j)] + k, 0]
            if c != 0:
                comps.setdefault(n, {}).setdefault((x.cells[n][jj][0], sigma), {})[h] = c
    return FreeChainMap(a, x, comps)


def is_rank_exact(a_to_x: RatMatrix, x_to_c: RatMatrix) -> bool:
    """``im(first) == ker(second)`` for composable matrices."""
    if not (x_to_c @ a_to_x).is_zero():
        return False
    return rank(a_to_x) == a_to_x.rows - rank(x_to_c)
