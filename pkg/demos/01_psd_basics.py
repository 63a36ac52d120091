"""Positive operators, pseudo-inverses, square roots and the Loewner order.

Run with ``python3 demos/01_psd_basics.py``.
"""

# %%
import numpy as np

from gschur import NotPositive, loewner_leq, make_psd, pseudo_inverse, range_inclusion, sqrt_psd

np.set_printoptions(precision=4, suppress=True)

# A rank-2 operator on C^3.  make_psd keeps the eigendecomposition and
# decides the numerical rank once, so every later step agrees on it.
u = np.array([[1, 1j], [1, 0], [0, 1]]) / np.sqrt(2)
a = make_psd(u @ np.diag([3.0, 1.0]) @ u.conj().T)
print("eigenvalues:", a.eigenvalues, "rank:", a.rank)

# %%
# The pseudo-inverse only inverts the range; sqrt(A)^2 gives A back.
p = pseudo_inverse(a)
print("A A^+ A == A:", np.allclose(a.matrix @ p @ a.matrix, a.matrix))
s = sqrt_psd(a).matrix
print("sqrt(A)^2 == A:", np.allclose(s @ s, a.matrix))

# %%
# Range inclusion: the columns of A itself are in ran A, the null vector is not.
print("ran A in ran A:", range_inclusion(a.matrix, a))
print("null vector in ran A:", range_inclusion(a.null_basis, a))

# %%
# Loewner order and the error for a non-positive input.
print("A/2 <= A:", loewner_leq(0.5 * a.matrix, a.matrix))
print("A <= A/2:", loewner_leq(a.matrix, 0.5 * a.matrix))
try:
    make_psd([[1, 2], [2, 1]])
except NotPositive as exc:
    print("rejected:", exc)
