"""Walk through the central test functions and their branch structure.

For a 2x2 matrix g over Q_q the level-n function consults four invariants:
the valuation of det g, the valuation of tr g, the minimal k with p^k g
integral, and ell(g) = v_p(1 - tr g + det g).  This script evaluates the
function and its rational-function deformation on representative matrices
of every branch and checks the specialization t := q by hand.
"""

from gl2lab.padic import LocalMatrix, get_context
from gl2lab.testfunc import phi_branch, phi_p0, phi_pn, phi_pnt

q, n = 2, 2
ctx = get_context(q, 1, 2 * n + 6)

samples = {
    "unit eigenvalue 1 (ell infinite)": [[2, 0], [0, 1]],
    "trace divisible by p": [[0, 1], [-2, 0]],
    "unit eigenvalue 3 (ell = 1)": [[2, 0], [0, 3]],
    "determinant valuation 2 (off support)": [[2, 0], [0, 2]],
}

print(f"level n = {n}, q = {q}\n")
for label, rows in samples.items():
    g = LocalMatrix.from_integers(ctx, rows)
    branch, k, ell = phi_branch(g, n)
    fn = phi_pn(g, n)
    ft = phi_pnt(g, n)
    print(f"{label}: {g}")
    print(f"  branch = {branch}   k = {k}   ell (capped) = {ell}")
    print(f"  level-0 value = {phi_p0(g)}")
    print(f"  level-{n} value = {fn}")
    print(f"  deformed value = {ft}")
    print(f"  specialized at t = {q}: {ft.specialize(q)} (must equal {fn})")
    assert ft.specialize(q) == fn
    print()

# a matrix with k(g) = 1 enters the support only for n >= 2
deep = LocalMatrix.from_integers(ctx, [[4, 1], [0, 2]], e=-1)
print("k = 1 matrix:", deep)
for level in (1, 2):
    print(f"  value at level {level}: {phi_pn(deep, level)}")
