"""The Dur family rho_N(x): negativity, geometric measure and relative entropy.

Run with ``python demos/02_dur_family.py``.
"""

# %%
import math

import numpy as np

from boundgme import roof, spectral, states

n = 5
rest1 = ",".join(str(i) for i in range(1, n))
rest2 = ",".join(str(i) for i in range(2, n))

# %% [markdown]
# One party against the rest turns PPT at x = 1/(N+1); two parties against
# the rest stay NPT for every x > 0. The certificate decomposition gives
# E_sin2 = x/2 and the diagonal candidate gives E_R <= x.

# %%
print(f"{'x':>6} {'N(1:rest)':>10} {'N(12:rest)':>11} {'E_sin2':>8} {'E_log2':>8} {'E_R<=':>7}")
for x in np.linspace(0, 1, 11):
    rho = states.dur(n, x)
    cert = roof.certificate_dur(n, x)
    print(
        f"{x:6.2f} {spectral.negativity(rho, f'0:{rest1}'):10.6f} {spectral.negativity(rho, f'0,1:{rest2}'):11.6f} "
        f"{roof.average_entanglement(cert, 'sin2'):8.5f} {roof.average_entanglement(cert, 'log2'):8.5f} "
        f"{spectral.relative_entropy(rho, states.sigma_dur(n, x)):7.4f}"
    )

# %% [markdown]
# At x = 1/(N+1) the family is the original bound entangled state.

# %%
x0 = 1 / (n + 1)
print("matches original:", np.allclose(states.dur(n, x0).matrix, states.dur_original(n).matrix, atol=1e-14))
print("E_log2 there:", math.log2(2 / (2 - x0)))
