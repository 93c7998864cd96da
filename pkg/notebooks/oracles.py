# %% [markdown]
# # Checking the series against brute force
#
# Everything in `betashift` rests on a determinant series. The `oracle`
# module recomputes the same quantities without it: by walking the
# admissibility automaton, enumerating words and summing cylinder weights.

# %%
from betashift import (brute_pressure, count_by_digit_sum, enumerate_admissible,
                       leading_lambda, make_context, run_oracle_suite)

golden = make_context("golden")
words = enumerate_admissible(golden, 6)
print(len(words), "admissible words of length 6:", words.as_strings()[:8], "...")
print("counts by number of ones:", count_by_digit_sum(golden, 12))

# %% [markdown]
# The cylinder pressure converges to `log lambda_t` like `1/n`.

# %%
for t in (-2.0, 0.0, 2.0):
    exact = leading_lambda(golden, t).log_lam
    gaps = [abs(brute_pressure(golden, t, n) - exact) for n in (12, 24, 48, 96)]
    print(f"t={t:+.0f}  gaps:", "  ".join(f"{g:.2e}" for g in gaps))

# %% [markdown]
# The full suite bundles those checks with the eigen-equation identities
# on random admissible words.

# %%
for tag in ("golden", "tribonacci", 1.8):
    report = run_oracle_suite(make_context(tag), samples=40)
    print("\n".join(report.lines()))
    print()
