"""The polynomial bounds behind the support lower bounds.

Run with ``python demos/04_trigonometric_bounds.py``.
"""

# %%
import math

import numpy as np

from boundgme import inequalities, states
from boundgme.geometric import lambda_max

rng = np.random.default_rng(0)
tuples = rng.uniform(0, math.pi / 2, (20000, 4))

# %% [markdown]
# Summing the squared overlaps of a real product state with sqrt2|X_i> never
# exceeds 1; the slack is a sum of four squares.

# %%
norms = np.array([inequalities.smolin_overlap_norm_sq(t) for t in tuples])
gap = np.array([abs(inequalities.smolin_overlap_norm_sq(t) + inequalities.smolin_remainder(t, "symmetric") - 1) for t in tuples[:2000]])
print(f"max norm_sq {norms.max():.6f}; remainder identity error {gap.max():.1e}")

# %%
for n in range(4, 9):
    f = [inequalities.f_n(t) for t in rng.uniform(0, math.pi / 2, (5000, n))]
    print(f"N={n}: max f_N = {max(f):.6f}")

# %% [markdown]
# The GHZ-plus-flip family psi(y) has a closed-form entanglement eigenvalue.

# %%
for y in (0.0, 0.25, 0.5, 0.75, 1.0):
    lam = lambda_max(states.psi_y(5, y, "+", "u", 1)).lambda_max
    print(f"y={y:.2f}: iterative {lam:.12f}  closed {inequalities.psi_y_lambda_closed(y):.12f}  "
          f"other branch {inequalities.psi_y_alternative_branch(y):.6f}")
