"""Orbital-integral ratios as weighted sums over the Bruhat-Tits tree.

The tree of PGL2(Q_q) is (q+1)-regular; a matrix with integral trace and
determinant of valuation 1 stabilizes a convex set of vertices with a
unique point nearest the base vertex, at distance k(gamma).  The ratio of
the level-n orbital integral to the level-0 one is a finite weighted sum
over shells of the tree, and collapses to a three-branch closed form.
"""

from gl2lab.padic import LocalMatrix, get_context, k_of
from gl2lab.testfunc import GammaInvariants, c_closed
from gl2lab.tree import (enumerate_vertices, fixed_set, orbital_ratio,
                         orbital_shell_tally)

q = 3
ctx = get_context(q, 1, 12)

print(f"shells of the ({q}+1)-regular tree:")
for d in range(4):
    cnt = sum(1 for v in enumerate_vertices(ctx, d) if v.d == d)
    print(f"  distance {d}: {cnt} vertices")
print()

gamma = LocalMatrix.from_integers(ctx, [[3, 1], [0, 1]])
h = LocalMatrix.from_integers(ctx, [[3, 0], [0, 1]])
probe = gamma.conjugate_by(h)
print(f"gamma = {gamma}, conjugated probe = {probe}")
rep = fixed_set(probe, 3)
print(f"  k(probe) = {k_of(probe)}, tree distance = {rep.k_tree}, "
      f"nearest unique = {rep.nearest_unique}")
print(f"  stabilized vertices up to depth 3: {len(rep.stabilized)}, "
      f"connected = {rep.check_connected()}")
print()

for rows, n in ([[0, 1], [-3, 0]], 1), ([[3, 0], [0, 1]], 2), ([[3, 0], [0, 4]], 2):
    g = LocalMatrix.from_integers(ctx, rows)
    ratio, _ = orbital_ratio(g, n)
    closed = c_closed(GammaInvariants.from_matrix(g, n), n, q)
    print(f"g = {g}, level {n}:")
    for row in orbital_shell_tally(g, n):
        print(f"  shell d={row['distance']}: {row['vertices']} vertices, "
              f"weight {row['weight']}, value {row['value']}, "
              f"contribution {row['contribution']}")
    print(f"  ratio = {ratio}  closed form = {closed}  equal = {ratio == closed}")
    assert ratio == closed
    print()
