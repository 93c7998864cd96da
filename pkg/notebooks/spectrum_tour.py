# %% [markdown]
# # A tour of the digit-frequency spectrum
#
# For a base `beta` in (1, 2] we count how often the digit 1 appears in the
# beta-expansion of a point. The set of points with a prescribed frequency
# `alpha` has a Hausdorff dimension, and this script walks through how
# `betashift` computes it: first the leading eigenvalue of the weighted
# transfer operator, then the pressure and its derivative, and finally the
# Legendre transform.

# %%
import numpy as np

from betashift import (alpha_dimension, alpha_of_t, c_beta_report, dim_of_alpha, fan_zhu, leading_lambda,
                       make_context, parry_closed_form, sweep)

golden = make_context("golden")
print("digits of 1 for the golden ratio:", golden.one_digits)

# %% [markdown]
# The eigenvalue at temperature `t = 0` is `beta` itself, and it grows like
# `e^t` for large positive `t`.

# %%
for t in (-4.0, 0.0, 4.0):
    eig = leading_lambda(golden, t)
    print(f"t={t:+.1f}  lambda={eig.lam:.15f}  bound={eig.err_bound:.1e}")

# %% [markdown]
# The frequency `alpha(t)` rises from 0 towards the supremum frequency, which
# is 1/2 for the golden ratio: two ones can never be adjacent.

# %%
for t in (-10.0, -2.0, 0.0, 2.0, 10.0):
    print(f"t={t:+5.1f}  alpha={alpha_of_t(golden, t):.12f}")
print(c_beta_report(golden))

# %% [markdown]
# Sweeping `t` traces the whole spectrum. We compare it with the known
# closed form for the golden ratio.

# %%
points = sweep(golden, np.linspace(-8, 8, 17))
for p in points:
    print(f"alpha={p.alpha:.6f}  dim={p.dim:.12f}  closed form={fan_zhu(p.alpha):.12f}")

# %% [markdown]
# The same machinery handles any base. For the root of
# `b^3 - b^2 - 1` there is again a closed form, and for a generic base like
# 1.8 we only have the numerics.

# %%
parry2 = make_context("parry:2")
for a in (0.05, 0.15, 0.25):
    print(f"alpha={a:.4f}  numeric={dim_of_alpha(parry2, a):.12f}  "
          f"closed form={parry_closed_form(2, a):.12f}")

# %% [markdown]
# At the supremum frequency itself no finite temperature reaches `alpha`.
# The value then comes from the Legendre bound at the largest usable
# temperature and is flagged as extrapolated; it is small but not zero.

# %%
edge = alpha_dimension(parry2, 1 / 3)
print(edge)

generic = make_context(1.8)
peak = max(sweep(generic, np.linspace(-6, 6, 61)), key=lambda p: p.dim)
print(f"beta=1.8: spectrum peaks at alpha={peak.alpha:.6f} with dimension {peak.dim:.12f}")
print("the peak sits at alpha(0), the frequency of the measure of maximal entropy:",
      round(alpha_of_t(generic, 0.0), 6))
