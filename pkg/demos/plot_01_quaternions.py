"""
Quaternions as real 4x4 blocks
==============================

Scalars act on the right of left-coordinate columns, the complex structures
act on the left.  Both are plain integer matrices here.
"""

from fractions import Fraction

from holonomy_lab.quat import I, J, K, ONE, Quat, QMatrix, complex_structures, mdot, realify

# A quaternion with rational coefficients; products stay exact.
q = Quat(1, Fraction(1, 2), 0, -2)
print("q       =", q)
print("q * i   =", q * I)
print("|q|^2   =", (q * q.conj()).re())

# Right multiplication by k, as a real block.
print(realify(K).astype(int))

# The three complex structures anticommute and square to -1.
I1, I2, I3 = complex_structures(1)
print("I1 I2 == I3 :", (mdot(I1, I2) == I3).all())
print("I1^2 == -1  :", (mdot(I1, I1) == -realify(ONE)).all())

# Composition of the H-linear maps Op(A), Op(B) is a matrix product.
A = QMatrix(((I, J), (ONE, K)))
B = QMatrix(((K, ONE), (J, J)))
print("realify(A o B) == realify(A) realify(B) :", (realify(A.compose(B)) == mdot(realify(A), realify(B))).all())
