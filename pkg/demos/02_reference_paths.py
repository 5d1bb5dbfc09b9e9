# %% [markdown]
# Carrying the eigenprojectors along the three reference paths.
#
# All three start at B = (pi, 0) with the projector P(e_x) in slot 0 and end
# at B = (-pi, 0).  The upper semicircle and its outward deformation deliver
# slot 0 to P(e_y); the lower semicircle delivers it to P(-e_y).

# %%
import numpy as np

from eigenlift import compare_paths, frame_at, lift_path
from eigenlift.spin import preset_paths, projector_to_bloch, spin_family

spin = spin_family()
paths = preset_paths()
start = frame_at(spin, (np.pi, 0.0))
print("slot 0 at the start:", projector_to_bloch(start[0]).round(12))

# %%
for name, path in paths.items():
    lift = lift_path(spin, path, start, record=True)
    a = projector_to_bloch(lift.final_frame[0])
    print(f"{name:4s} -> slot 0 at {a.round(9)}   steps {lift.steps_used:4d}   "
          f"min gap {lift.min_gap_seen:.3f}   permutation {lift.permutation}")

# %% [markdown]
# The Bloch vector of slot 0 along C_a, a few samples.

# %%
lift = lift_path(spin, paths["C_a"], start, record=True)
for step in lift.trajectory[:: len(lift.trajectory) // 6]:
    print(f"s={step.arclength:6.3f}  B={step.point.round(3)}  a={projector_to_bloch(step.frame[0]).round(3)}")

# %%
for other in ("C_a'", "C_c"):
    c = compare_paths(spin, paths["C_a"], paths[other])
    print(f"C_a vs {other}: discrepancy {c.discrepancy}, loop monodromy {c.composite_monodromy}")
