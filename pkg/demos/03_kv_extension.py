"""Krein-von Neumann extension of a positive operator given on a subspace.

The operator is known only through ``A V = W`` for a basis ``V`` of its
domain.  The extension is the smallest positive operator doing that.
"""

# %%
import numpy as np

from gschur import NotExtensible, PartialPositiveOperator, check_extensibility, krein_von_neumann, loewner_leq
from gschur.testing import random_partial_operator

np.set_printoptions(precision=4, suppress=True)
rng = np.random.default_rng(1)

# %%
# Restrict a random PSD M on C^4 to a 2-dimensional subspace.
m, v, w = random_partial_operator(rng, 4, 2, 3)
p = PartialPositiveOperator(v, w)
print("extensible:", bool(check_extensibility(p)))
kv = krein_von_neumann(p)
a_n = kv.extension.matrix
print("A_N V == W:", np.allclose(a_n @ v, w))
print("rank of A_N:", kv.extension.rank, "(at most the domain dimension)")
print("A_N <= M:", loewner_leq(a_n, m))

# %%
# A e1 = e2 is not the restriction of any positive operator: the
# quadratic form vanishes on the domain but the operator does not.
bad = PartialPositiveOperator(np.array([[1.0], [0.0]]), np.array([[0.0], [1.0]]))
verdict = check_extensibility(bad)
print("extensible:", bool(verdict), "-", verdict.reason)
try:
    krein_von_neumann(bad)
except NotExtensible as exc:
    print("refused:", exc)
