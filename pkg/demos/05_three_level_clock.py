# %% [markdown]
# Three levels cycling around a puncture.
#
# The clock family has eigenphases (phi + 2 pi k)/3, so one turn around the
# origin moves every level up by one: the monodromy is a 3-cycle, and three
# turns are needed to come home.  A Hermitian family on the same plane has
# real, ordered eigenvalues, and every gapped loop acts trivially.

# %%
import numpy as np

from eigenlift import circle, monodromy
from eigenlift.families import clock_family, random_hermitian_family

clock = clock_family(3)
for turns in (1, 2, 3, -1):
    print(f"clock, {turns:+d} turns: {monodromy(clock, circle(1.5, n=96, turns=turns))}")

# %%
herm = random_hermitian_family(np.random.default_rng(3), 3)
print("Hermitian family, one turn:", monodromy(herm, circle(1.0, n=96)))
