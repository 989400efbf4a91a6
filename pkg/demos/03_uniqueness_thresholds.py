"""
Uniqueness thresholds, fixed points, and decay rates
====================================================

The tree recursion x -> k*lam / (1+x)^d has a unique attracting fixed point
below the critical activity, loses contraction exactly at it, and splits
into a two-periodic orbit above it.  These numbers drive every approximation
guarantee in the package.
"""

import math

from hypermatch import (
    classify_regime,
    contraction_ratio,
    critical_activity,
    decay_rate_bounds,
    extremal_ratio_sequences,
    fixed_point,
    hardness_threshold,
    two_periodic_points,
)

# the threshold surface: d^d / (k (d-1)^(d+1)), infinite for d = 1
print("lambda_c table (rows d=1..5, cols k=1..6)")
for d in range(1, 6):
    row = [critical_activity(d, k) for k in range(1, 7)]
    print("  " + "  ".join(f"{x:9.4g}" for x in row))

# (d,k) = (2,4) is the clean critical point lambda_c = 1
d, k = 2, 4
print("\n(2,4): lambda_c =", critical_activity(d, k),
      " hard threshold =", hardness_threshold(d, k))

# contraction of the recursion at its fixed point: the trichotomy
for lam in (0.5, 1.0, 2.0):
    x = fixed_point(d, k, lam)
    r = contraction_ratio(d, k, lam)
    print(f"lam={lam}: x^={x:.6f} ratio={r:.6f} regime={classify_regime(d, k, lam).name}")

# above the threshold the two-step map picks up two new fixed points that
# the recursion swaps; at lam=2 they are 3 -+ 2*sqrt(2)
pts = two_periodic_points(d, k, 2.0)
print("two-periodic points at lam=2:", [f"{p:.8f}" for p in pts])
f = lambda x: k * 2.0 / (1.0 + x) ** d
print("f swaps the outer pair:", f(pts[0]), f(pts[2]))

# extremal boundary conditions sandwich every possible ratio; the two
# sequences close monotonically on the fixed point below lambda_c
up, lo = extremal_ratio_sequences(d, k, 0.5, 12)
print("\nsandwich at lam=0.5 (upper / lower):")
for ell in range(0, 12, 2):
    print(f"  level {ell + 1:2d}: {up[ell]:.9f}  {lo[ell]:.9f}")

# certified decay rates: geometric below the threshold, 1/sqrt(level) at it
for lam in (0.5, 1.0):
    vals = [decay_rate_bounds(d, k, lam, ell).wsm_bound for ell in (10, 100, 1000)]
    print(f"lam={lam}: wsm bounds at levels 10/100/1000:",
          " ".join(f"{v:.4g}" for v in vals))

# d = 1 never loses uniqueness, matching the closed-form fixed point
assert critical_activity(1, 5) == math.inf
assert abs(fixed_point(1, 2, 1.0) - 1.0) < 1e-12
