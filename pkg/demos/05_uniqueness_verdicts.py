# %% [markdown]
# # Verdicts for line families and operator families
#
# Heights inside a progression give a verified counterexample pair. Heights
# outside every progression (at the stated resolution) give unique=True.

# %%
import math

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from phaselab.counterexamples import pauli_distinguishability, signal_pair
from phaselab.transforms import gabor
from phaselab.uniqueness import LineFamily, uniqueness_verdict

FIGURES = Path(__file__).parent / "figures"
FIGURES.mkdir(exist_ok=True)

for lam in [(0, 1, 2), (0, 0.5, 2), (0, 1, math.sqrt(2))]:
    v = uniqueness_verdict(LineFamily(0.0, lam))
    print(lam, v.unique, v.reason, v.witness)

# %%
# the signal pair: equal spectrogram magnitudes on the mapped integer lines
S = signal_pair(1, 0, 0)
grid = np.linspace(-3, 3, 121)
X, W = np.meshgrid(grid, grid)
diff = np.abs(gabor(S.f, X, W)) - np.abs(gabor(S.h, X, W))
fig, ax = plt.subplots(figsize=(5, 4))
im = ax.imshow(diff, origin="lower", extent=(-3, 3, -3, 3), cmap="RdBu")
for w in range(-3, 4):
    ax.axhline(w, color="k", lw=0.5)
fig.colorbar(im, label="|Gf| - |Gh|")
ax.set_xlabel("x")
ax.set_ylabel("omega")
fig.tight_layout()
fig.savefig(FIGURES / "spectrogram_difference.png", dpi=100)

# %%
# time-frequency shift operators indexed by x = lambda
V = signal_pair(1, 0, math.pi / 2)
t = np.linspace(-2, 2, 41)
print(pauli_distinguishability([0, 1, 2], V.f, V.h, t))
print(pauli_distinguishability([0, 1, 1 + math.sqrt(2)], V.f, V.h, t).first_mismatch)
