"""Generalized Hurst curves: univariate, bivariate, and the average test.

Builds two long-memory series with different memory, estimates H_x(q),
H_y(q), and the joint H_xy(q), and checks whether the joint exponent
deviates from the average of the univariate ones. For series coupled only
through their innovations it should not; for the two-component pair the
joint exponent rises above the average at high q.
"""

from mfhxa import (
    ArfimaConfig,
    EstimationConfig,
    NoisePairConfig,
    TwoComponentConfig,
    accumulate,
    correlated_noise_pair,
    cross_persistence_verdict,
    generate_arfima,
    generate_two_component,
)

LENGTH = 10_000
SEED = 5
config = EstimationConfig(q_grid=(0.5, 1.0, 2.0, 5.0), tau_max_range=(5, 100),
                          filter="constant")

print("=== correlated innovations, separate memories (d=0.3 vs d=0.1) ===")
eps, nu = correlated_noise_pair(NoisePairConfig(rho=0.5, length=LENGTH + 2000,
                                                seed=SEED))
x = accumulate(generate_arfima(ArfimaConfig(d=0.3, length=LENGTH, seed=SEED), noise=eps))
y = accumulate(generate_arfima(ArfimaConfig(d=0.1, length=LENGTH, seed=SEED), noise=nu))
print(f"{'q':>4} {'H_x':>7} {'H_y':>7} {'H_xy':>7} {'avg':>7}  verdict")
for q in config.q_grid:
    v = cross_persistence_verdict(x, y, q, config)
    flag = f"deviates ({v.direction})" if v.deviates else "no deviation"
    print(f"{q:4.1f} {v.h_x.h:7.4f} {v.h_y.h:7.4f} {v.h_xy.h:7.4f} "
          f"{v.h_avg:7.4f}  {flag}")
print("Correlation alone does not push H_xy away from the average.")

print("\n=== two-component coupling (d1=d2=0.3, w=0.5) ===")
a, b = generate_two_component(
    TwoComponentConfig(d1=0.3, d2=0.3, w=0.5, length=LENGTH, seed=SEED)
)
xc, yc = accumulate(a), accumulate(b)
print(f"{'q':>4} {'H_x':>7} {'H_y':>7} {'H_xy':>7} {'avg':>7}  verdict")
for q in config.q_grid:
    v = cross_persistence_verdict(xc, yc, q, config)
    flag = f"deviates ({v.direction})" if v.deviates else "no deviation"
    print(f"{q:4.1f} {v.h_x.h:7.4f} {v.h_y.h:7.4f} {v.h_xy.h:7.4f} "
          f"{v.h_avg:7.4f}  {flag}")
print("Mixing the memories lifts the joint exponent above the average "
      "at the higher moments.")
