"""Representable functionals on a finite-dimensional *-algebra.

The same complement, parallel-sum and Lebesgue machinery applies to
positive functionals.  A functional corresponds to its induced operator
``M[r, c] = f(b_r^* b_c)`` and the two pictures agree.
"""

# %%
import numpy as np

from gschur import (
    FiniteStarAlgebra,
    Functional,
    complement_functional,
    gns,
    induced_operator,
    is_representable,
    lebesgue_decompose_functional,
    parallel_sum,
    parallel_sum_functional,
)
from gschur.testing import random_state

np.set_printoptions(precision=4, suppress=True)
rng = np.random.default_rng(4)

# %%
# The full 2x2 matrix algebra with its matrix-unit basis.
m2 = FiniteStarAlgebra.full_matrix(2)
f = random_state(rng, m2, rank=1)   # a pure state
g = random_state(rng, m2, rank=2)   # a faithful state
print("f representable:", bool(is_representable(f)))

# %%
# GNS: f(x) = <pi(x) xi, xi> on a Hilbert space of dimension rank(f).
t = gns(f)
print("GNS dimension:", t.hilbert_dim)
x = rng.normal(size=m2.dim) + 1j * rng.normal(size=m2.dim)
print("f(x) reproduced:", np.isclose(np.vdot(t.cyclic, t.pi(x) @ t.cyclic), f(x)))

# %%
# Parallel sum of functionals matches the parallel sum of induced operators.
fg = parallel_sum_functional(f, g)
print("bridge holds:", np.allclose(induced_operator(fg), parallel_sum(induced_operator(f), induced_operator(g)).matrix))

# The complement of f+g relative to f, and the Lebesgue split of f by g.
h = complement_functional(f + g, f)
print("(f+g)_f on the unit:", np.round(h(m2.unit), 6))
split = lebesgue_decompose_functional(f, g)
print("a faithful g sees all of f:", np.allclose(split.regular.values, f.values, atol=1e-7))

# %%
# f(1) = -1 on the scalars is not representable.
c = FiniteStarAlgebra.scalars()
verdict = is_representable(Functional(c, [-1.0]))
print("f(1) = -1 representable:", bool(verdict), "-", verdict.reason)
