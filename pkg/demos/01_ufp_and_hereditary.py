"""
Unique factorization, heredity and orbit categories.

A finite EI category has the unique factorization property when every
morphism is, up to the obvious ladder moves, a unique composite of
unfactorisable morphisms.  Over Q this is the same as heredity of the
category algebra.  For orbit categories there is a group theoretic test.
"""
from eicat.catalg import is_hereditary
from eicat.catalog import get_category
from eicat.fincat import ufp_check
from eicat.orbitcat import all_families, orbit_category, orbit_ufp_criterion, parse_group, small_group_specs

"""
1. The diamond poset a < b, c < d
   a->b->d and a->c->d are two different factorisations of a->d.
"""
diamond = get_category("diamond")
ok, witness = ufp_check(diamond)
print("diamond has UFP:", ok)
print("witness chains:", witness)
print("diamond algebra hereditary:", is_hereditary(diamond))

"""
2. Orbit categories of small cyclic groups
"""
for spec in ("cyclic:4", "cyclic:6", "cyclic:8"):
    c = orbit_category(parse_group(spec))
    print(spec, "objects", c.objects, "UFP", ufp_check(c)[0], "hereditary", is_hereditary(c))

"""
3. A survey over every family of subgroups for groups of order <= 6
   The criterion says: all members cyclic of prime-power order.
"""
rows = 0
for spec in small_group_specs(6):
    g = parse_group(spec)
    for fam in all_families(g):
        c = orbit_category(g, fam)
        crit, ufp, her = orbit_ufp_criterion(fam), ufp_check(c)[0], is_hereditary(c)
        assert crit == ufp == her
        rows += 1
print("checked", rows, "(group, family) pairs, criterion = UFP = hereditary in all of them")
