"""
Bredon homology of free cellular complexes over Or(Z/2).

A free complex has cells at objects of the category; its boundary is a
matrix of linear combinations of morphisms.  Tensoring with a contravariant
coefficient system gives a chain complex of Q-vector spaces.
"""
import random

from eicat.bredon import ModuleComplex, chern_character, bredon_homology, kunneth_check, suspension
from eicat.catalg import CONTRAVARIANT
from eicat.catalog import free_circle, get_category, get_module
from eicat.randgen import random_free_complex, random_projective_homology_complex

z2 = get_category("orbit-Z2")
circle = free_circle(z2)

"""
1. The free Z/2 circle
   One 0-cell and one 1-cell at G/1, boundary id - s.
"""
for name in ("constant", "sign", "burnside"):
    print("H(circle; %s) =" % name, dict(bredon_homology(circle, get_module(name, z2))))
print("H(suspension) =", dict(bredon_homology(suspension(circle), get_module("constant", z2))))

"""
2. Kunneth with a complex of coefficients
   Or(Z/2) is hereditary, so lhs = Tor_0 + Tor_1 in each degree.
"""
e = ModuleComplex(z2, CONTRAVARIANT, {0: get_module("constant", z2)}, {})
rep = kunneth_check(e, circle)
for n, row in sorted(rep.rows.items()):
    print("degree", n, row)
print("hereditary identity holds:", rep.hereditary_identity)

"""
3. The Chern character for coefficients with projective homology
"""
rng = random.Random(0)
c = get_category("orbit-S3")
x = random_free_complex(c, rng)
e = random_projective_homology_complex(c, rng)
rep = chern_character(e, x)
print("Or(S3) Chern character verified:", rep.verified)
