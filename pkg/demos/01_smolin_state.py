"""The Smolin state: bound entangled, yet half an ebit of geometric entanglement.

Run with ``python demos/01_smolin_state.py``.
"""

# %%
import numpy as np

from boundgme import roof, spectral, states
from boundgme.geometric import GmeOptions, support_lambda_profile

rho = states.smolin()
print("pairs == xform:", np.allclose(states.smolin("pairs").matrix, rho.matrix))
print("rank:", np.linalg.matrix_rank(rho.matrix, tol=1e-10))

# %% [markdown]
# Every split into two pairs is PPT, so no pair can distill entanglement,
# while one party against the other three is maximally NPT.

# %%
for split in ("0,1:2,3", "0,2:1,3", "0,3:1,2", "0:1,2,3"):
    print(f"negativity {split:>8}: {spectral.negativity(rho, split):.6f}")

# %% [markdown]
# The even mixture of the four GHZ-like X states is a decomposition whose
# members all have Lambda_max = 1/sqrt2, giving an upper bound of 1/2 on the
# convex roof.

# %%
cert = roof.certificate_smolin()
print("certificate E_sin2:", roof.average_entanglement(cert, "sin2"))
print("certificate E_log2:", roof.average_entanglement(cert, "log2"))

# %% [markdown]
# The lower bound: no pure state in the support gets closer than 1/sqrt2 to a
# product state. Random sampling agrees.

# %%
samples = support_lambda_profile(rho, 200, GmeOptions(restarts=8, seed=1))
lams = np.array([s.lambda_max for s in samples])
print(f"support Lambda_max: max {lams.max():.6f}, mean {lams.mean():.6f}, bound {1 / np.sqrt(2):.6f}")

# %% [markdown]
# A numerical search over decompositions never beats the certificate.

# %%
res = roof.optimize_roof(rho, "sin2", roof.RoofOptions(ensemble_size=8, outer_restarts=3, seed=42))
print("optimizer:", res.value, "per restart:", np.round(res.restart_values, 6))

# %%
print("relative entropy to the diagonal candidate:", spectral.relative_entropy(rho, states.sigma_smolin()))
