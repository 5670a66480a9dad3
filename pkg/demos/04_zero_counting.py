# %% [markdown]
# # Counting zeros with the argument principle
#
# zero_count integrates F'/F around a rectangle and refines the trapezoid rule
# until the winding number is within 0.1 of an integer.

# %%
import numpy as np

from phaselab.analytic import ExpSum, Rectangle, zero_count, zero_diff_periodicity_check
from phaselab.counterexamples import expsum_pair

sine = ExpSum(((1 / 2j, 1j * np.pi), (-1 / 2j, -1j * np.pi)))
print(zero_count(sine, Rectangle.from_bounds(-0.5, 2.5, -1, 1)))

# %%
# F = e^{-pi z} + i e^{pi z} vanishes at i/4 + iZ, H at -i/4 + iZ
P = expsum_pair(1, 0, 0, 1, 1j)
R = Rectangle.from_bounds(-0.5, 0.5, 0.1, 0.9)
for k in range(-2, 3):
    Rk = R.shifted(1j * k)
    print(k, zero_count(P.F, Rk).count, zero_count(P.H, Rk).count)

# %%
# the difference of the zero counts is periodic under shifts by 2i(x - y)
print(zero_diff_periodicity_check(P.F, P.H, 0.0, 1.0, R))
