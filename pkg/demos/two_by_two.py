"""
2x2 matrices: trace zero, ellipses and the shell axis
=====================================================

For 2x2 matrices everything is explicit.  ``A`` is Roberts orthogonal to
``I`` exactly when ``tr A = 0``, the numerical range is an ellipse with foci at
the eigenvalues, and the shell is an ellipsoid whose vertical axis is
centred at ``tr(A*A)/2``.
"""

import numpy as np

from dwroberts import (DeciderConfig, GenSpec, dv_upper_samples, dw_axis_2x2, ellipse_params_2x2,
                       generate, hemisphere_grid, nr_profile, roberts_to_identity)
from dwroberts.harness import ellipse_point

A = generate(GenSpec("trace_zero_2x2", 2, seed=4))
fast = roberts_to_identity(A)
slow = roberts_to_identity(A, DeciderConfig(force_shell=True))
print("trace", abs(np.trace(A)), "|", fast.kind.value, fast.method, "|", slow.kind.value, slow.certificate)

# Shift it: the trace is no longer zero and both routes say no.
B = A + 0.2 * np.eye(2)
print("shifted:", roberts_to_identity(B).kind.value,
      roberts_to_identity(B, DeciderConfig(force_shell=True)).kind.value)

# The sampled boundary of W(B) sits on the predicted ellipse.
e = ellipse_params_2x2(B)
prof = nr_profile(B, 360)
err = max(abs(p - ellipse_point(e, t)) for t, p in zip(prof.thetas, prof.boundary))
print(f"ellipse: centre {e.center:.3f}, minor axis {e.minor_axis:.3f}, max boundary error {err:.1e}")

# Heights of shell points stay within the vertical half-axis.
ax = dw_axis_2x2(B)
cloud = dv_upper_samples(B, hemisphere_grid(31, 120))
print("axis centre", ax.center, "half-length", round(ax.axis_halflength, 6),
      "max |r - c|", round(float(np.max(np.abs(cloud.r - ax.center[1]))), 6))
