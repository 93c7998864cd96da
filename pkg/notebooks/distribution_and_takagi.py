# %% [markdown]
# # Biased digit measures and their Takagi-type derivative
#
# Writing the digits of `x` with the digit 1 carrying weight `p` gives a
# distribution function `F_p` on [0, 1]. For `beta = 2` it is the Lebesgue
# singular function; its derivative in `p` at the equilibrium weight is a
# Takagi-like curve `G`.

# %%
import numpy as np

from betashift import (F_p, G_beta, fd_hata_yamaguchi, lebesgue_singular, make_context,
                       takagi_grid, takagi_oracle)
from betashift.cli import svg_plot

dyadic = make_context("dyadic")
for x in (0.1, 0.25, 1 / 3, 0.7):
    print(f"x={x:.4f}  F_0.3={F_p(dyadic, 0.3, x):.15f}  "
          f"Lebesgue={lebesgue_singular(0.3, x):.15f}")

# %% [markdown]
# At `beta = 2` the curve `G` is the classical Takagi function.

# %%
xs = np.linspace(0, 1, 9)
grid = takagi_grid(dyadic, xs, depth=64)
for x, g in zip(xs, grid.ys):
    print(f"x={x:.3f}  G={g:.15f}  classical={takagi_oracle(x, 64):.15f}")

# %% [markdown]
# For the golden ratio the curve is new. A finite difference in `p`
# agrees with the series to a few decimals, and the values at negative
# powers of `beta` follow the lattice rule `G(beta^-M) = M beta^-M`.

# %%
golden = make_context("golden")
for x in (0.2, 0.45, 0.8):
    print(f"x={x}  G={G_beta(golden, x):.10f}  finite difference={fd_hata_yamaguchi(golden, x, 1e-4):.10f}")
for m in range(1, 5):
    x = golden.beta ** -m
    print(f"M={m}  G={G_beta(golden, x):.15f}  M*x={m * x:.15f}")

# %% [markdown]
# The curve is easy to plot; `svg_plot` writes a dependency-free SVG.

# %%
xs = np.linspace(0, 1, 513)
svg = svg_plot(xs, takagi_grid(golden, xs).ys, "x", "G", "Takagi curve, golden ratio")
print(svg[:120], "...")
