"""Completing an incomplete block matrix [[A, B^*], [B, ?]] to a positive one.

The smallest admissible corner is the complement ``A_B = B A^+ B^*``; it
exists exactly when ``ran B^*`` lies inside ``ran A``.
"""

# %%
import numpy as np

from gschur import (
    IncompleteBlockSystem,
    NotCompletable,
    assemble_block,
    complement,
    completion_report,
    is_completable,
    loewner_leq,
    schur_complement,
)
from gschur.testing import random_completable, random_leaky, random_psd

np.set_printoptions(precision=4, suppress=True)
rng = np.random.default_rng(0)

# %%
# A rank-2 A on C^4 and a B whose rows live in ran A.
a, b = random_completable(rng, 4, 3, 2)
s = IncompleteBlockSystem.from_arrays(a, b)
print("completable:", is_completable(s))
a_b = complement(s).matrix
print("A_B =\n", a_b)

# %%
# Plugging A_B into the corner gives a positive block whose Schur
# complement vanishes: nothing smaller would do.
block = assemble_block(a, b, a_b)
print("min eigenvalue of the block:", np.linalg.eigvalsh(block)[0])
print("Schur complement of the minimal completion:", np.abs(schur_complement(s, a_b)).max())

# Any other completion dominates A_B.
c = a_b + random_psd(rng, 3, 1)
print("A_B <= C for another completion C:", loewner_leq(a_b, c))

# %%
# If B reaches into ker A no corner works, and complement() says so.
a, b = random_leaky(rng, 4, 3, 2)
s = IncompleteBlockSystem.from_arrays(a, b)
print("leaky system completable:", is_completable(s))
try:
    complement(s)
except NotCompletable as exc:
    print("refused:", exc)

# %%
# The report also lists best constants |<Bx, y>|^2 <= c <Ax, x> for chosen y.
a, b = random_completable(rng, 3, 2, 3)
report = completion_report(IncompleteBlockSystem.from_arrays(a, b), probes=[np.array([1, 0]), np.array([1, 1j])])
for y, const in report.best_constants:
    print("y =", y, "best constant:", round(const, 6))
