# %% [markdown]
# Does a slowly modulated drive follow the lift?
#
# The field is frozen for one period and stepped between periods, so M
# periods along a path apply U(x_M) ... U(x_1).  Starting from the slot-0
# eigenvector, the infidelity with the lifted slot-0 projector should vanish
# as M grows.
#
# On the radius-pi semicircles there is a twist: at |B| = pi consecutive
# periods combine to a diagonal operator, so even M is adiabatic already
# (up to the chord error of the sampled path) and odd M is off by
# sin^2(pi/(4M)).  The deformed path C_a' shows the generic behaviour.

# %%
from eigenlift.adiabatic import convergence_scan
from eigenlift.spin import preset_paths, spin_family

spin = spin_family()
paths = preset_paths()

# %%
for name in ("C_a", "C_a'"):
    scan = convergence_scan(spin, paths[name], [16, 64, 256, 1024, 4096])
    print(name, "  slope", round(scan.slope, 2))
    for m, e in scan.rows():
        print(f"   M={m:5d}  infidelity {e:.3e}")

# %%
scan = convergence_scan(spin, paths["C_a"], [63, 255, 1023])
for m, e in scan.rows():
    print(f"odd M={m:5d}  infidelity {e:.3e}")
