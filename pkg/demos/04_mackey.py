"""
The Mackey algebra and extension of Or(G)-modules to Mackey functors.
"""
from eicat.catalog import get_category, get_module
from eicat.mackey import dinfty_witness, mackey_algebra, mackey_extension_exists, verify_F_isomorphism
from eicat.orbitcat import parse_group

"""
1. Dimensions, one block per pair of subgroups up to conjugacy
"""
for spec in ("cyclic:2", "cyclic:3", "sym:3"):
    mu = mackey_algebra(parse_group(spec))
    print(spec, "dim", mu.dimension, "blocks", mu.block_dims())

"""
2. The comparison map F is bijective
"""
r = verify_F_isomorphism(parse_group("sym:3"))
print("S3: domain", r.domain_dim, "codomain", r.codomain_dim, "bijective", r.bijective)

"""
3. Which Or(Z/2)-modules come from Mackey functors
   The simple at G/1 does not: restriction followed by induction is
   multiplication by 1 + s, which must vanish on a module with no G/G part.
"""
z2 = get_category("orbit-Z2")
for name in ("burnside", "sign", "simple:G/1"):
    res = mackey_extension_exists(get_module(name, z2))
    print(name, "extends:", res.extends, "certified:", res.certified)

"""
4. The infinite dihedral group
   a x_k a expands as y_k + 2 y_{k+1} + y_{k+2}, and a x a = a has no solution.
"""
w = dinfty_witness()
print("a x_0 a =", w.laurent[0])
print("solvable:", w.solvable, "certificate:", w.certificate)
