"""
A symmetric pair at n = 2
=========================

With the Gram matrix ``[[1, -k/2], [k/2, 1]]`` the algebra
``L' |x Im H`` carries a curvature tensor annihilated by the whole algebra.
At n = 1 nothing of the kind exists.
"""

from holonomy_lab.hermitian import make_space
from holonomy_lab.symmetric import (act_on_R, change_base_q, esymS_solutions, exemplar_n2,
                                    exemplar_params, is_symmetric_pair, n1_subspaces)

pair = exemplar_n2()
ok, cert = is_symmetric_pair(pair.g, pair.R)
print("symmetric:", ok, "| dim g =", cert.dim_g, "| span of R-images =", cert.span_dim)
print("xi . R = 0 for every basis xi:", all(act_on_R(xi, pair.R).is_zero() for xi in pair.g.basis))
for name, holds in cert.eliminations.items():
    print(f"  {name:10s} {holds}")

# Changing the null vector q clears the D-block.  Here it is already zero,
# so the shift found is X = 0.
bc = change_base_q(exemplar_params(), pair.space)
print("X =", bc.X, "| D' all zero:", bc.all_zero)

# n = 1: the symmetric-pair equations force S = 0.
space = make_space(1)
for name, L in n1_subspaces(space).items():
    print(f"n = 1, L = {name}: {len(esymS_solutions(space, L))} nonzero solutions")
