# %% [markdown]
# # Exact counting
#
# `exact_count` enumerates subsets of the smaller side and counts, for each
# one, the free vertices on the other side.  It is the oracle the rest of the
# package is checked against, and it refuses graphs whose smaller side is
# above a cap (30 by default).

# %%
from fractions import Fraction

from bisfptas import build, exact_count, exact_count_via_ratios, exact_ratio, left
from bisfptas.io import gen_complete, gen_cycle, gen_path

# %% [markdown]
# Small families with known closed forms.  A complete bipartite graph
# K_{a,b} has 2^a + 2^b - 1 independent sets; paths give Fibonacci numbers.

# %%
for a, b in [(1, 1), (2, 3), (5, 5)]:
    print(f"K_{a},{b}:", exact_count(gen_complete(a, b)), "expected", 2 ** a + 2 ** b - 1)
print("paths:", [exact_count(gen_path(k)) for k in range(1, 10)])
print("C6:", exact_count(gen_cycle(6)))

# %% [markdown]
# The ratio R(G, u) = Z(G - N[u]) / Z(G - u) is returned as an exact pair of
# integers.  Multiplying (1 + R) over the left vertices, each time in the
# graph with the earlier ones removed, and scaling by 2^m recovers Z.

# %%
g = build(3, 3, [(0, 0), (0, 1), (1, 1), (1, 2), (2, 2), (2, 0)])
r = exact_ratio(g, left(0))
print("R(G, L0) =", r.as_fraction(), "~", float(r))
print("Z =", exact_count(g), "via ratios:", exact_count_via_ratios(g), "reversed order:",
      exact_count_via_ratios(g, ordering=[2, 1, 0]))
assert exact_count_via_ratios(g) == exact_count(g)
print(Fraction(exact_count(g), 2 ** g.m))
