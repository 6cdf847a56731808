"""The norm map at finite level: twisted conjugacy made concrete.

Over the degree-r unramified extension, N(delta) multiplies delta by its
Frobenius twists.  At modulus p^n the twisted conjugacy classes of the
big group match the ordinary conjugacy classes of GL2(Z/p^n) one for one,
with equal centralizer orders on both sides, and congruence-subgroup
averages of f(N(.)) reduce to averages of f itself.
"""

from gl2lab.basechange import sigma_orbits, unit_group_exactness, bc_unit_identity
from gl2lab.finitegl2 import FiniteGL2

p, r, n = 3, 2, 1
tab = sigma_orbits(p, r, n)
print(f"GL2(GR({p}^{n}, {r})): order {tab.group_order}")
print(f"twisted conjugacy orbits: {tab.orbit_count}")
print(f"conjugacy classes of GL2(Z/{p**n}): {tab.class_count}")
print(f"bijection through the norm: {tab.bijection}")
print()
print("per-orbit bookkeeping (orbit size x twisted centralizer = group order):")
for o in tab.orbits:
    print(f"  class rep {o.rep}: orbit {o.size:5d}  "
          f"|twisted centralizer| {o.tw_centralizer:3d}  "
          f"|ordinary centralizer| {o.norm_centralizer:3d}")
assert tab.all_centralizers_match()
print()

print("unit-group exact sequence for a few commutants:")
for gamma in [(1, 0, 0, 1), (0, 1, 1, 1), (2, 1, 0, 2)]:
    ok = unit_group_exactness(gamma, p, r, n)
    print(f"  gamma = {gamma}: exact = {ok}")
    assert ok
print()

small = FiniteGL2(2, 2)
ind = [0] * len(small.class_reps)
ind[3] = 1
print("base-change unit identity, exhaustive over GL2(GR(4, 2)) with a")
print("conjugacy-class indicator:", bc_unit_identity(ind, 1, 2, 2, 2))
