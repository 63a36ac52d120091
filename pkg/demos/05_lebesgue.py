"""Lebesgue decomposition of A with respect to B.

``A = A_r + A_s`` with ``A_r`` absolutely continuous and ``A_s`` singular
with respect to B.  Three independent routes compute ``A_r``; the result
carries their pairwise deviations and both certificates.
"""

# %%
import numpy as np

from gschur import absolutely_continuous, identity_relative_decompose, lebesgue_decompose, mutually_singular
from gschur.testing import random_lebesgue_pair

np.set_printoptions(precision=4, suppress=True)
rng = np.random.default_rng(3)

# %%
a, b = random_lebesgue_pair(rng, 4)
split = lebesgue_decompose(a, b)
print("A_r + A_s == A:", np.allclose(split.regular.matrix + split.singular.matrix, a))
print("route deviations:", {k: f"{v:.1e}" for k, v in split.deviations.items()})
print("doublings until the limit settled:", split.iterations)
print("A_r << B:", split.regular_is_continuous, " A_s _|_ B:", split.singular_is_singular)

# %%
# A diagonal example one can check by eye: B only sees the first axis,
# but A couples both, so the regular part is a short of A onto e1.
a = np.array([[2.0, 1.0], [1.0, 1.0]])
b = np.diag([1.0, 0.0])
split = lebesgue_decompose(a, b)
print("A_r =\n", split.regular.matrix.real)
print("A_s =\n", split.singular.matrix.real)

# %%
print("diag(1,0) _|_ diag(0,1):", mutually_singular(np.diag([1.0, 0]), np.diag([0.0, 1])))
print("diag(0,1) << diag(1,0):", absolutely_continuous(np.diag([0.0, 1]), np.diag([1.0, 0])))

# Relative to the identity, every operator is regular.
print("identity-relative split of A:", np.allclose(identity_relative_decompose(a).regular.matrix, a))
