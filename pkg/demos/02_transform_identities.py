# %% [markdown]
# # Gabor, Bargmann and Laplace views of one signal
#
# Signals are finite sums of shifted, modulated Gaussians, so the Gabor and
# Bargmann transforms have closed forms. The Laplace leg is a quadrature.

# %%
import numpy as np

from phaselab.transforms import (
    GaussianSum,
    SampledSignal,
    bargmann,
    convolve_halfline,
    gabor,
    gabor_quadrature,
    laplace,
    relation_check,
)

f = GaussianSum(((1.0, 2.0, 0.3), (0.5j, 2.5, -0.4)))

# %%
# closed form against trapezoid quadrature of the sampled signal
s = f.sample(-10, 12, 1 / 64)
for x, w in [(0.0, 0.0), (2.0, 0.3), (2.5, -0.4)]:
    print(x, w, abs(gabor(f, x, w) - gabor_quadrature(s, x, w)))

# %%
# Gabor = weighted Bargmann = weighted Laplace, for x <= 0
for x, w in [(-0.5, 0.25), (-1.0, 1.0), (0.0, -0.5)]:
    r = relation_check(f, x, w)
    print(f"({x}, {w}) lhs={r.lhs:.3e} |lhs-mid|={abs(r.lhs - r.mid):.1e} "
          f"|lhs-rhs|={abs(r.lhs - r.rhs):.1e} budget={r.truncated_mass:.1e} pass={r.passed}")

# %%
# the Gaussian itself is the constant function 2^{-1/2} under Bargmann
phi = GaussianSum.gaussian()
print(bargmann(phi, np.array([0, 1 + 1j, -2j])))

# %%
# convolution theorem on the half-line
g = SampledSignal.from_function(lambda t: np.exp(-t) * np.cos(t), 0, 30, 1 / 256)
pts = np.array([0.5, 1 + 0.5j, 2 - 1j])
print(np.abs(laplace(convolve_halfline(g, g), pts) - laplace(g, pts) ** 2))
