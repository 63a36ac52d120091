"""Parallel sum and parallel difference.

For resistors, ``A:B`` is the joint resistance of A and B in parallel.
For matrices it is defined through a complement and works for singular
operands as well.
"""

# %%
import numpy as np

from gschur import NotDefined, loewner_leq, parallel_difference, parallel_sum, pardiff_exists, weighted_parallel_sum
from gschur.testing import random_psd

np.set_printoptions(precision=4, suppress=True)
rng = np.random.default_rng(2)

# %%
# Scalars: 2:2 = 1 and 3:6 = 2, the harmonic-mean rule.
print("2:2 =", parallel_sum(np.eye(1) * 2, np.eye(1) * 2).matrix.real)
print("3:6 =", parallel_sum(np.eye(1) * 3, np.eye(1) * 6).matrix.real)

# %%
# Singular matrices: A:B is commutative and below both operands.
a, b = random_psd(rng, 4, 2), random_psd(rng, 4, 3)
ab = parallel_sum(a, b).matrix
print("A:B == B:A:", np.allclose(ab, parallel_sum(b, a).matrix))
print("A:B <= A and A:B <= B:", loewner_leq(ab, a) and loewner_leq(ab, b))

# Weighting B by n pushes A:(nB) up towards the part of A that B can see.
for n in (1, 10, 1000):
    print(f"trace A:({n}B) =", round(np.trace(weighted_parallel_sum(a, b, n).matrix).real, 6))

# %%
# Parallel difference undoes a parallel sum: (A:B) / B = A on ran B.
c = random_psd(rng, 3)
d = random_psd(rng, 3)
cd = parallel_sum(c, d).matrix
print("pardiff defined:", bool(pardiff_exists(cd, d)))
print("(C:D) / D == C:", np.allclose(parallel_difference(cd, d), c))

# %%
# B / B would need A - B = 0 to dominate B; refused.
try:
    parallel_difference(d, d)
except NotDefined as exc:
    print("refused:", exc)
