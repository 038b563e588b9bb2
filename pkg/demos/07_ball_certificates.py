"""Certified bounded regions: when orbits can never leave a ball.

If |a| + |b| <= 1 - eps - |a|/eps then the closed ball B(0, eps) maps
into itself: any orbit seeded inside stays inside forever.  The
certificate margin measures the slack; the admissible epsilon interval
collects every radius that works for the given parameters.
"""

import numpy as np

from ratdiff import (
    IterationSettings,
    OrbitSeed,
    Parameters,
    admissible_epsilon,
    ball_certificate,
    iterate,
)

p = Parameters(0.01, 0.05)
interval = admissible_epsilon(p)
print(f"parameters |a| = {abs(p.alpha)}, |b| = {abs(p.beta)}")
print(f"admissible radii: [{interval.lo:.6f}, {interval.hi:.6f}]")

for eps in (0.005, 0.1, 0.5, 0.95):
    cert = ball_certificate(p, eps)
    print(f"  eps = {eps:<6} margin = {cert.margin:+.4f}  "
          f"{'certified' if cert.valid else 'no certificate'}")

# the endpoints are exactly the margin roots
for eps in (interval.lo, interval.hi):
    print(f"  margin at interval endpoint {eps:.6f}: "
          f"{ball_certificate(p, eps).margin:+.2e}")

# Monte-Carlo confirmation at eps = 0.1: seeds in the ball stay in it
rng = np.random.default_rng(1)
eps = 0.1
worst = 0.0
for _ in range(200):
    r = eps * np.sqrt(rng.uniform(0, 1, 2))
    t = rng.uniform(0, 2 * np.pi, 2)
    seed = OrbitSeed(complex(r[0] * np.cos(t[0]), r[0] * np.sin(t[0])),
                     complex(r[1] * np.cos(t[1]), r[1] * np.sin(t[1])))
    orbit = iterate(p, seed, IterationSettings(max_steps=5000))
    worst = max(worst, max(abs(z) for z in orbit.points))
print(f"\n200 random orbits seeded in B(0, {eps}): "
      f"largest |z| ever seen = {worst:.6f} (never exceeds {eps})")

# no certificate can exist once |alpha| reaches 0.25:
# eps + |alpha|/eps >= 2 sqrt(|alpha|) >= 1 leaves no room
print("\nadmissible interval for |alpha| = 0.3:",
      admissible_epsilon(Parameters(0.3, 0)))
