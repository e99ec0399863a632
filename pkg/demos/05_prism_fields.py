"""The two prism flows pin different aspect ratios.

The volume-gradient field is stationary at height/side = sqrt(2/3); the
y field at height/side = 1/sqrt(2).  Sweeping the aspect ratio shows
each field's residual dipping to zero at its own preferred shape, and
integrating each flow from the same start recovers the two targets.
"""

import numpy as np

import polyflow as pf


def prism(a, h):
    base = np.array([[0.0, 0.0, 0.0], [a, 0.0, 0.0],
                     [a / 2.0, a * np.sqrt(3.0) / 2.0, 0.0]])
    return np.vstack([base, base + [0.0, 0.0, h]])


print(f"{'h/a':>8s} {'gradient residual':>18s} {'y residual':>12s}")
for ratio in np.linspace(0.60, 0.90, 13):
    p = pf.pi(prism(2.0, 2.0 * ratio))
    rg, _ = pf.singularity_residual("prism", pf.GRADIENT, p)
    ry, _ = pf.singularity_residual("prism", pf.Y_VARIANT, p)
    print(f"{ratio:8.4f} {rg:18.6f} {ry:12.6f}")

print()
print(f"gradient zero at sqrt(2/3) = {np.sqrt(2.0 / 3.0):.6f}")
print(f"y zero at 1/sqrt(2)        = {1.0 / np.sqrt(2.0):.6f}")

print()
start = pf.pi(prism(2.0, 1.0) + np.random.default_rng(1).normal(0, 0.05, (6, 3)))
for variant in pf.VARIANTS_BY_KIND["prism"]:
    t = pf.integrate("prism", variant, start, pf.FlowSettings())
    m = pf.shape_metrics("prism", t.p_final)
    # side from a base edge, height from a vertical edge
    side = np.linalg.norm(t.p_final[0] - t.p_final[1])
    height = np.linalg.norm(t.p_final[0] - t.p_final[3])
    print(f"{variant}: converged {t.converged} in {t.iterations} iterations, "
          f"h/a = {height / side:.6f}")
