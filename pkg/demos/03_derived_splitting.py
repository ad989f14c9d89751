"""
Splitting in the derived category.

Over a hereditary category every complex is quasi-isomorphic to the sum
of its homology.  The diamond poset is not hereditary: Ext^2 between the
simples at d and a is one dimensional, and a nonzero class produces a
complex that does not split.
"""
import random

from eicat.bredon import build_nonsplit_complex, ext2_classes, homology, is_derived_split
from eicat.catalg import CONTRAVARIANT, ext_groups, simple_at
from eicat.catalog import get_category
from eicat.randgen import random_module_complex

d = get_category("diamond")
s_d, s_a = simple_at(d, "d", CONTRAVARIANT), simple_at(d, "a", CONTRAVARIANT)
print("Ext^*(S_d, S_a) =", ext_groups(s_d, s_a, 3))

xi = ext2_classes(s_d, s_a)[0]
lc = build_nonsplit_complex(xi)
print("homology in degrees", homology(lc).support())
for mode in ("two_stage", "randomized"):
    r = is_derived_split(lc, mode)
    print(mode, "split:", r.split, "certified:", r.certified)

"""
Over the hereditary chain 0 < 1 < 2 random complexes split, with an
explicit quasi-isomorphism as witness.
"""
c = get_category("chain3")
e = random_module_complex(c, random.Random(1))
r = is_derived_split(e, "randomized", seed=3)
print("chain3 complex splits:", r.split, "witness degrees:", sorted(r.witness))
