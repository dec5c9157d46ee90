"""
Smith normal form by hand and by library
========================================
"""

import numpy as np

from zerocycles import IntMatrix, cokernel, hnf, snf

M = IntMatrix.from_rows([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
res = snf(M)
print(res.S.to_text())

# U M V = S with U, V invertible over the integers
assert res.U @ M @ res.V == res.S
print("det U =", res.U.det(), " det V =", res.V.det())

# the diagonal reads off the cokernel Z^3 / (column span)
c = cokernel(M)
print("free rank", c.free_rank, "torsion", c.invariant_factors, "order", c.torsion_order)

# Hermite form: column operations only, so the column lattice is unchanged
H, U = hnf(M)
print(H.to_text())
assert M @ U == H

# Entries are Python ints, so nothing overflows.  A float determinant would.
big = IntMatrix.from_rows([[10**20 + 1, 10**20], [10**20, 10**20 - 1]])
print("exact det:", big.det())
print("float det:", np.linalg.det(np.array([[1e20 + 1, 1e20], [1e20, 1e20 - 1]])))
print("snf:", snf(big).diagonal)
