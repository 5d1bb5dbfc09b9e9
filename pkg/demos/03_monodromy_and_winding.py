# %% [markdown]
# Loop permutations follow winding numbers.
#
# In the punctured field plane a loop's class is its winding number w about
# the zero field.  Each turn exchanges the two eigenprojectors, so the
# monodromy is the transposition raised to |w| mod 2.  A loop winding twice is
# not contractible, yet its action on the frame is trivial.

# %%
import numpy as np

from eigenlift import Permutation, circle, monodromy, predict_monodromy, winding_number
from eigenlift.paths import random_loop
from eigenlift.spin import spin_family

spin = spin_family()
swap = Permutation((1, 0))

# %%
rng = np.random.default_rng(7)
print(" w   measured  predicted")
for w in range(-3, 4):
    loop = random_loop(rng, w)
    print(f"{winding_number(loop):2d}   {str(monodromy(spin, loop)):8s}  {predict_monodromy([w], [swap])}")

# %%
for turns in (1, 2, 3, -2):
    print(f"circle of radius 2, {turns:+d} turns: {monodromy(spin, circle(2.0, n=128, turns=turns))}")
