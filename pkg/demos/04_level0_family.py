"""Level-0 singularities: flat shapes where the flow neither grows nor shrinks.

Planar pyramids with a folded base form a whole family of zeros of the
quotient field with vanishing mean volume; collinear tetrahedra are
another.  At a collinear tetrahedron the linearization splits evenly:
two directions increase volume and two decrease it, so these points are
passes of the dynamics rather than sources or sinks.
"""

import numpy as np

import polyflow as pf

rng = np.random.default_rng(7)

print("flat pyramid family (every member is a zero of the field):")
for k in range(5):
    p = pf.level0_pyramid(span=float(rng.uniform(1.5, 3.0)),
                          apex_x=float(rng.uniform(0.3, 1.2)),
                          apex_y=float(rng.uniform(0.2, 0.8)),
                          corner_x=float(rng.uniform(0.8, 1.8)))
    cls = pf.classify("pyramid", pf.GRADIENT, pf.pi(p))
    print(f"  member {k}: {cls.tag}, residual {cls.residual:.1e}, "
          f"lambda {cls.lam:+.1e}, mean volume "
          f"{pf.mean_volume('pyramid', p):+.1e}")

print()
print("collinear tetrahedra (Morse signature 2 up / 2 down):")
for k in range(5):
    p = pf.collinear_tetrahedron(
        spacings=tuple(rng.uniform(0.3, 3.0, size=3)),
        direction=rng.normal(size=3))
    pos, neg = pf.collinear_signature(p)
    cls = pf.classify("tetrahedron", pf.GRADIENT, p)
    print(f"  line {k}: {cls.tag}, {pos} ascending / {neg} descending "
          f"directions")

print()
print("a collinear start is a zero, so the flow stops where it stands:")
t = pf.integrate("tetrahedron", pf.GRADIENT, pf.collinear_tetrahedron(),
                 pf.FlowSettings())
print(f"  iterations: {t.iterations}, converged: {t.converged}, "
      f"classification: {pf.classify('tetrahedron', pf.GRADIENT, t.p_final).tag}")
