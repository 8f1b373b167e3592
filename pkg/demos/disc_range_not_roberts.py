"""
A circular numerical range that is not enough
==============================================

The 4x4 matrix below has a numerical range that is a disc centred at the
origin, so ``W(A) = -W(A)``.  Still ``||A + I|| != ||A - I||``: symmetry of the
numerical range does not imply Roberts orthogonality to the identity.  The
Davis-Wielandt shell sees the difference.
"""

import numpy as np

from dwroberts import dv_support, dv_ub_symmetry_defect, nr_profile, norm_pm, roberts_to_identity
from dwroberts.example import EXAMPLE_MATRIX as A

# The support function of W(A) is constant: W(A) is a disc around 0.
prof = nr_profile(A, 720)
print("support function range:", prof.support.min(), prof.support.max())

# The norms at lambda = 1 differ in the third decimal.
plus, minus = norm_pm(A, np.eye(4), 1.0)
print(f"||A + I|| = {plus:.4f}, ||A - I|| = {minus:.4f}")

# Squared norms are shell support values: ||A + lam I||^2 = h(2 Re lam, 2 Im lam, 1) + |lam|^2.
print("via the shell:", np.sqrt(dv_support(A, (2, 0, 1)) + 1), np.sqrt(dv_support(A, (-2, 0, 1)) + 1))

# Sweeping the upper hemisphere finds the largest reflection gap on unit directions.
rep = dv_ub_symmetry_defect(A)
print(f"shell defect {rep.defect:.4f} at direction {np.round(rep.witness, 4)}")

v = roberts_to_identity(A)
print(v.kind.value, "witness lambda", v.witness_lambda)
