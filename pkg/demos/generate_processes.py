"""Tour of the three reference process generators.

Each generator is deterministic given its config (and seed, where one
applies), so every run of this script prints identical numbers.
"""

import numpy as np

from mfhxa import (
    ArfimaConfig,
    MbmConfig,
    NoisePairConfig,
    TwoComponentConfig,
    arfima_weights,
    correlated_noise_pair,
    generate_arfima,
    generate_mbm,
    generate_two_component,
)

# --- binomial cascade: deterministic multifractal measure ------------------
cascade = generate_mbm(MbmConfig(m0=0.3, k=10))
v = cascade.values
print(f"binomial cascade m0=0.3, k=10: {len(v)} values, "
      f"sum={v.sum():.12f}, min={v.min():.3e}, max={v.max():.3e}")
print("  first stage masses recur in every prefix:",
      np.round(generate_mbm(MbmConfig(0.3, 2)).values, 4))

# --- fractional-memory recursion -------------------------------------------
w = arfima_weights(0.3, 6)
print(f"\nmemory weights for d=0.3 decay slowly: {np.round(w, 5)}")
series = generate_arfima(ArfimaConfig(d=0.3, length=5000, seed=42))
print(f"long-memory series (d=0.3, H=0.8): length={len(series)}, "
      f"sd={series.values.std():.3f}  (innovations have sd 1)")

# --- correlated innovation pairs --------------------------------------------
for rho in (1.0, 0.5, 0.0):
    eps, nu = correlated_noise_pair(NoisePairConfig(rho=rho, length=50_000, seed=7))
    r = np.corrcoef(eps.values, nu.values)[0, 1]
    print(f"noise pair rho={rho:+.1f}: sample correlation {r:+.4f}")

# --- coupled two-component pair ---------------------------------------------
x, y = generate_two_component(
    TwoComponentConfig(d1=0.3, d2=0.3, w=0.75, length=5000, seed=42)
)
r = np.corrcoef(x.values, y.values)[0, 1]
print(f"\ntwo-component pair (w=0.75): level correlation {r:+.4f} "
      "(coupling mixes each series' memory into the other)")
x1, y1 = generate_two_component(
    TwoComponentConfig(d1=0.3, d2=0.3, w=1.0, length=5000, seed=42)
)
r1 = np.corrcoef(x1.values, y1.values)[0, 1]
print(f"two-component pair (w=1.0):  level correlation {r1:+.4f} "
      "(w=1 decouples the pair)")
