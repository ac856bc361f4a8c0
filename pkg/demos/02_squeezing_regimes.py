"""Classifying the engineered reservoir as a squeezed field.

The rate triple maps onto the standard squeezed-vacuum picture (N, |M|):
the correlations are quantum when |M| > N, which holds below the occupation
threshold nbar < 1/(sqrt(gamma2/gamma1) - 1).  Splitting N = Ns + Nb into
maximally squeezed and thermal-background phonons shows how much of the
reservoir actually does squeezing work.  The 2-D datasets behind these
statements are the fig3/fig4 CSV outputs of the CLI.
"""

import numpy as np

from sps import (
    figure3_dataset,
    figure4_dataset,
    map_to_squeezing,
    quantum_threshold,
    reservoir_rates,
)

print("regimes of the engineered reservoir (nbar = 0.5)")
print(f"{'gamma1':>7} {'gamma2':>7} {'regime':>9} {'N':>8} {'|M|':>8} "
      f"{'Ns':>8} {'Nb':>8} {'quantum':>8}")
for g1, g2 in ((1.0, 4.0), (4.0, 1.0), (1.0, 1.2), (2.0, 2.0)):
    desc = map_to_squeezing(reservoir_rates(g1, g2, 0.5))
    print(f"{g1:7.2f} {g2:7.2f} {desc.regime:>9} {desc.n_photons:8.3f} "
          f"{desc.m_abs:8.3f} {desc.n_squeezed:8.3f} {desc.n_background:8.3f} "
          f"{str(desc.quantum):>8}")

print("\nquantum-correlation threshold nbar_max = 1/(sqrt(ratio) - 1)")
for ratio in (2.25, 4.0, 9.0):
    print(f"  gamma2/gamma1 = {ratio:5.2f}  ->  nbar_max = "
          f"{quantum_threshold(1.0, ratio):.4f}")

# Slice of the |M|/N surface at fixed ratio: the crossing of 1 marks the
# classical-quantum boundary.
ratio = 4.0
nbar_grid = np.linspace(0.0, 2.0, 9)
data = figure3_dataset(nbar_grid, np.array([ratio]))
print(f"\n|M|/N against nbar at gamma2/gamma1 = {ratio} (boundary at nbar = 1)")
for nbar, _, value in data:
    marker = "  <- quantum" if value > 1 else ""
    print(f"  nbar = {nbar:5.2f}   |M|/N = {value:.4f}{marker}")

data4 = figure4_dataset(nbar_grid, np.array([ratio]))
print(f"\nbackground load Nb/(|M|-Ns) at the same ratio (crosses 1 with the")
print("quantum boundary)")
for nbar, _, value in data4:
    print(f"  nbar = {nbar:5.2f}   Nb/(|M|-Ns) = {value:.4f}")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    nbar_grid = np.linspace(0.0, 3.0, 201)
    ratio_grid = np.linspace(1.0, 10.0, 202)[1:]
    surface = figure3_dataset(nbar_grid, ratio_grid)[:, 2].reshape(201, 201)
    fig, ax = plt.subplots(figsize=(6, 4))
    mesh = ax.pcolormesh(ratio_grid, nbar_grid, surface, cmap="viridis",
                         vmin=0.5, vmax=2.0, shading="auto")
    ax.contour(ratio_grid, nbar_grid, surface, levels=[1.0], colors="w")
    ax.plot(ratio_grid, 1.0 / (np.sqrt(ratio_grid) - 1.0), "r--", lw=1,
            label="threshold")
    ax.set(xlabel="gamma2/gamma1", ylabel="nbar", ylim=(0, 3),
           title="|M|/N with the quantum boundary")
    fig.colorbar(mesh)
    ax.legend()
    fig.tight_layout()
    fig.savefig("squeezing_ratio_surface.png", dpi=150)
    print("\nwrote squeezing_ratio_surface.png")
except ImportError:
    print("\n(matplotlib not installed; skipping the surface plot)")
