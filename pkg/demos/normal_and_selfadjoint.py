"""
Normal and self-adjoint matrices
================================

A normal matrix is Roberts orthogonal to ``I`` exactly when its numerical
range (the convex hull of the spectrum) is symmetric about 0.  A self-adjoint
matrix needs ``lambda_max = -lambda_min``, and shifting by the midpoint of
the spectrum always achieves it.
"""

import numpy as np

from dwroberts import (DeciderConfig, GenSpec, center_selfadjoint, generate, nr_symmetry_defect,
                       roberts_to_identity, single_lambda_check)

forced = DeciderConfig(force_shell=True)

S = generate(GenSpec("symmetric_spectrum_normal", 5, seed=2))
print("symmetric spectrum:", np.round(np.sort_complex(np.linalg.eigvals(S)), 3))
for cfg in (DeciderConfig(), forced):
    v = roberts_to_identity(S, cfg)
    print(f"  {v.method:12s} {v.kind.value}  bound {v.bound:.1e}  certificate {v.certificate}")

N = generate(GenSpec("normal_with_spectrum", 3, seed=2, params={"spectrum": [1j, -1j, 0.3]}))
print("asymmetric spectrum: range defect", round(nr_symmetry_defect(N), 4), roberts_to_identity(N).kind.value)

H = generate(GenSpec("hermitian", 4, seed=8))
c = center_selfadjoint(H)
w = np.linalg.eigvalsh(H)
print("hermitian spectrum", np.round(w, 3), "midpoint", round(c, 4))
print("  before:", roberts_to_identity(H).kind.value, " after:", roberts_to_identity(H - c * np.eye(4)).kind.value)
print("  one real lambda is enough:", single_lambda_check(H - c * np.eye(4), 0.7))
