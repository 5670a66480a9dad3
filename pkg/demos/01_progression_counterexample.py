# %% [markdown]
# # Two functions, same modulus on a stack of lines
#
# For the progression a Z + b the exponential pair below has |F| = |H| on every
# horizontal line at height a n + b, yet F is not a unimodular multiple of H.

# %%
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from phaselab.analytic import equivalence_check
from phaselab.counterexamples import expsum_pair, modulus_gap_profile

FIGURES = Path(__file__).parent / "figures"
FIGURES.mkdir(exist_ok=True)

P = expsum_pair(a=1.0, b=0.0, theta=0.0, c=1, c_prime=1j)
print("F terms:", P.F.terms)
print("H terms:", P.H.terms)

# %%
# moduli agree on the integer lines
xs = np.linspace(-2, 2, 81)
z = P.line_points(xs, range(-3, 4))
print("max gap on lines:", np.max(np.abs(np.abs(P.F(z)) - np.abs(P.H(z)))))
print("equivalent?", equivalence_check(P.F, P.H, [0, 0.3 + 0.1j, 1 - 0.2j]).equivalent)

# %%
# the gap between the lines follows |H|^2 - |F|^2 = 4 sin(2 pi y)
ys = np.linspace(-1, 1, 201)
profile = np.array(modulus_gap_profile(P, ys, (-1, 1, 41)))
fig, ax = plt.subplots(figsize=(6, 3))
ax.plot(profile[:, 0], profile[:, 1])
ax.set_xlabel("line height y")
ax.set_ylabel("max ||F| - |H||")
fig.tight_layout()
fig.savefig(FIGURES / "gap_profile.png", dpi=100)

# %%
# rotated and shifted progressions behave the same way
for a, b, theta in [(0.5, 0.3, np.pi / 6), (np.sqrt(2), 0.0, np.pi / 2)]:
    Q = expsum_pair(a, b, theta)
    z = Q.line_points(xs, range(-3, 4))
    gap = np.max(np.abs(np.abs(Q.F(z)) - np.abs(Q.H(z))))
    print(f"a={a:.3f} b={b} theta={theta:.3f}: gap {gap:.2e}")
