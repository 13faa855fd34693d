"""
The parabolic algebra and its grading
=====================================

Elements of the stabilizer of an isotropic quaternionic line are tuples
``(a, A, X, b)``.  We build the basis, compare the tuple bracket with the
matrix commutator, and watch the grading element act.
"""

from itertools import combinations

from holonomy_lab.hermitian import make_space
from holonomy_lab.parabolic import (bracket, f_projection, grading_decompose, grading_element,
                                    matrix_commutator, parabolic_basis, parabolic_dimension)

space = make_space(2)
basis = parabolic_basis(space)
print(f"n = {space.n}: dim = {len(basis)} (formula gives {parabolic_dimension(space.n)})")
print("signature of eta:", space.signature())

agree = sum((bracket(u, v).matrix() == matrix_commutator(u, v)).all()
            for u, v in combinations(basis, 2))
print(f"tuple bracket matches the commutator on {agree} of {len(basis) * (len(basis) - 1) // 2} pairs")

# ad(1) is 0 on (a, A), 1 on X and 2 on b.
one = grading_element(space)
u = basis[0] + basis[12] + basis[-1]
for degree, part in enumerate(grading_decompose(u)):
    print(f"degree {degree}: [1, u_{degree}] == {degree} u_{degree} ->",
          bracket(one, part) == part.scale(degree))

# f forgets the Im H part; that piece is the kernel.
print("f(b-part) is zero:", not any(f_projection(basis[-1]).to_vector()))
