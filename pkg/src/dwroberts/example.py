"""The 4x4 upper-triangular matrix whose numerical range is a disc centred at 0
but which is not Roberts orthogonal to the identity."""

import numpy as np

EXAMPLE_MATRIX = np.array(
    [[0, 0, 2, 1],
     [0, 1, 0, 0],
     [0, 0, 0, -1],
     [0, 0, 0, 1]],
    dtype=np.complex128,
)
EXAMPLE_MATRIX.setflags(write=False)

# ||A + I|| and ||A - I|| rounded to four decimals
EXAMPLE_NORM_PLUS = 2.6918
EXAMPLE_NORM_MINUS = 2.7578
