"""
Orthogonal ranges imply both orthogonalities
============================================

If ``A*B = 0`` then ``||A + lam B||^2 = ||A*A + |lam|^2 B*B||`` for every
``lam``, which is even in ``lam``.  So ``A`` is Roberts orthogonal to ``B``, and
Birkhoff-James orthogonal in both directions.
"""

import numpy as np

from dwroberts import GenSpec, bj_pair, generate, norm_pm, roberts_refute_pair

A, B = generate(GenSpec("orthogonal_pair", 5, seed=1, params={"k": 2}))
print("||A* B|| =", np.linalg.norm(A.conj().T @ B, 2))
for lam in (0.5, 1 + 2j, -3j):
    p, m = norm_pm(A, B, lam)
    print(f"lam = {lam}: {p:.12f} {m:.12f}")
print("grid witness:", roberts_refute_pair(A, B, tol=1e-9))
print("B-J  A to B:", bj_pair(A, B), " B to A:", bj_pair(B, A))
