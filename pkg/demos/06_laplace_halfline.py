# %% [markdown]
# # Laplace uniqueness sets and the half-line pipeline
#
# A sequence u_j with divergent sum of 1/u_j is a uniqueness set for the
# Laplace transform. Divergence is decided by the sequence kind; partial sums
# are evidence only.

# %%
import math

import numpy as np

from phaselab.transforms import GaussianSum
from phaselab.uniqueness import (
    SequenceSpec,
    halfline_pipeline_check,
    halfline_uniqueness_verdict,
    laplace_divergence,
    lerch_set,
    polya_szego_sums,
)

for text in ("affine:a=1", "power:a=1,p=2", "power:a=1,p=0.5", "geometric:a=1,r=2"):
    d = laplace_divergence(SequenceSpec.parse(text))
    print(f"{text:20s} diverges={d.diverges} partial sums={d.partial_sums}")
print(laplace_divergence(lerch_set(0.5, 2)).diverges)

# %%
print(polya_szego_sums(np.arange(1, 101).astype(complex))[-1])
print(polya_szego_sums(1 + 1j * np.arange(1, 20_001))[-1], (math.pi / math.tanh(math.pi) - 1) / 2)

# %%
# |L g(u)|^2 against the Laplace transform of the autoconvolution
for f, w in [(GaussianSum.gaussian(2.0), 0.0), (GaussianSum(((1, 0.5, 0.2), (0.5j, 2.5, -0.4))), -0.2)]:
    c = halfline_pipeline_check(f, w, [0.5, 1.0, 2.0])
    print(c.passed, f"{c.max_rel_gap:.1e}")

# %%
print(halfline_uniqueness_verdict(SequenceSpec("affine", a=1), [0, 1, math.sqrt(2)])["unique"])
