# %% [markdown]
# # Is a finite set inside an arithmetic progression?
#
# Rationals are decided exactly. Floats are decided at a stated resolution
# (tol, q_max): every double is rational, so the question only makes sense
# relative to how fine a progression we allow.

# %%
import math
from fractions import Fraction
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from phaselab import rigidity as rg

FIGURES = Path(__file__).parent / "figures"
FIGURES.mkdir(exist_ok=True)

print(rg.ap_containment([Fraction(1, 2), Fraction(5, 6), Fraction(7, 3)]))
print(rg.ap_containment([0, 1, math.sqrt(2)]).contained)

# %%
# a progression perturbed by geometrically decaying offsets
pert = rg.perturbed_progression(1, 0, 0.5, 0.3, 6)
for q_max in (10, 100, 1000, 10_000):
    v = rg.ap_containment_float(pert, 1e-9, q_max)
    print(q_max, v.contained, v.a)

# %% [markdown]
# At q_max = 10^4 the perturbed set fits a progression of gap 1/640, because
# its elements are dyadic rationals. The verdict is honest about resolution.

# %%
# residues of n d modulo d': finite for rational ratios, dense otherwise
print(rg.distinct_count(rg.residue_set(0, Fraction(2, 3), 1, 50)))
counts = [rg.distinct_count(rg.residue_set(0.0, math.sqrt(2), 1.0, N), 1e-9) for N in (50, 100, 200, 400)]
print(counts)

# %%
Ns = np.unique(np.logspace(1, 4, 30).astype(int))
disc = [rg.star_discrepancy(rg.weyl_points(math.sqrt(2), N)) for N in Ns]
fig, ax = plt.subplots(figsize=(5, 3))
ax.loglog(Ns, disc, "o-", label="n sqrt(2) mod 1")
ax.loglog(Ns, np.log(Ns) / Ns, "--", label="log N / N")
ax.set_xlabel("N")
ax.set_ylabel("star discrepancy")
ax.legend()
fig.tight_layout()
fig.savefig(FIGURES / "discrepancy.png", dpi=100)
