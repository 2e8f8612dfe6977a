"""Bell violation and bipartite distillability for GHZ-diagonal states.

Local depolarization maps any N-qubit state to a GHZ-diagonal normal form
without changing the quantities that decide violation and distillability.
Run with ``python demos/03_distillability_and_bell.py``.
"""

# %%
import numpy as np

from boundgme import distill, states
from boundgme.spectral import negativity

for name, rho in [("GHZ(4)", states.ghz(4).projector()), ("Smolin", states.smolin()), ("Dur(4, 1/5)", states.dur(4, 0.2))]:
    c = distill.depolarize(rho)
    holds, j = distill.nondistillable_all_partitions(c)
    print(f"{name:12} Delta={c.delta:.4f}  nondistillable across every split: {holds}  first failing j: {j}")

# %% [markdown]
# A state that is nondistillable across every split has Delta <= 2^-(N-1).
# Each Bell inequality needs a larger Delta to be violated, so violation
# always comes with some distillable split.

# %%
print(f"{'N':>3} {'kind':>14} {'threshold':>12} {'2^-(N-1)':>12}")
for row in distill.consistency_report(range(4, 13)):
    print(f"{row.n:3d} {row.kind:>14} {row.threshold:12.3e} {row.bound:12.3e}")

# %% [markdown]
# Concretely: push Delta just above the two-setting threshold and put all
# remaining weight on lambda_1.

# %%
n = 5
thr = distill.bell_violation_threshold(n, "two_setting")
rest = 1 - thr - 1e-3
lambdas = np.zeros(2 ** (n - 1) - 1)
lambdas[0] = rest / 2
c = distill.DepolarizedCoeffs(n, thr + 1e-3, 0.0, lambdas)
holds, j = distill.nondistillable_all_partitions(c)
print("valid:", c.is_valid(), " nondistillable:", holds, " split P_j for j =", j)
print("negativity across it:", negativity(c.to_density(), distill.partition_for_j(n, j)))
