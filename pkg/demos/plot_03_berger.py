"""
Curvature tensors and the Berger test
=====================================

``solve_R`` returns an exact basis of the space of algebraic curvature
tensors with values in a subalgebra.  An algebra is Berger when the values
of those tensors span it.
"""

from holonomy_lab.curvature import berger_check
from holonomy_lab.families import complex_line_algebra, lemma1_algebra, minimal_family, minimal_specs
from holonomy_lab.hermitian import make_space
from holonomy_lab.prop1 import parameter_map_report

# The whole parabolic algebra at n = 1: the explicit parametrization is
# injective and hits every curvature tensor.
rep = parameter_map_report(make_space(1))
print(f"dim R = {rep.dim_R_parabolic}, parameters = {rep.parameter_count}, rank = {rep.rank}")

print("\nfamily  dim g  dim R  Berger")
for name in sorted(minimal_specs()):
    r = berger_check(minimal_family(name))
    print(f"{name:6s}  {r.dim_g:5d}  {r.dim_R:5d}  {r.is_berger}")

# Two algebras that fail.
space = make_space(1)
for label, g in (("lemma1", lemma1_algebra(space)), ("complex-line", complex_line_algebra(space))):
    r = berger_check(g)
    print(f"{label}: span {r.span_dim} of {r.dim_g}, Berger = {r.is_berger}")
