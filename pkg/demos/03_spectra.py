"""Linearization spectra at the optimal shapes.

At each kind's optimum the projected-field Jacobian has strictly
negative eigenvalues in all shape directions (the optimum attracts) and
exactly six zero modes from translations and rotations.  Mirroring the
shape negates the spectrum: the mirrored optimum repels the ascent.
"""

import numpy as np

import polyflow as pf

for kind in pf.KINDS:
    for variant in pf.VARIANTS_BY_KIND[kind]:
        spec = pf.hessian_spectrum(kind, variant, pf.reference_optimal(kind))
        groups = ", ".join(f"{v:+.4f} (x{m})" for v, m in spec.groups
                           if abs(v) > 1e-6)
        print(f"{kind:12s} {variant:22s} nonzero: {groups}")
        print(f"{'':12s} {'':22s} zero modes: {spec.zero_count}, "
              f"asymmetry: {spec.asymmetry_ratio:.1e}")

print()
mirror = np.array([1.0, 1.0, -1.0])
a = pf.hessian_spectrum("tetrahedron", pf.GRADIENT,
                        pf.reference_optimal("tetrahedron"))
b = pf.hessian_spectrum("tetrahedron", pf.GRADIENT,
                        pf.reference_optimal("tetrahedron") * mirror)
print("tetrahedron optimum:", [f"{v:+.4f}" for v, _ in a.groups if abs(v) > 1e-6])
print("mirrored:            ", [f"{v:+.4f}" for v, _ in b.groups if abs(v) > 1e-6])

print()
print("the prism y field is the one genuinely non-gradient flow:")
for kind, variant in [("prism", pf.GRADIENT), ("prism", pf.Y_VARIANT),
                      ("hexahedron", pf.Y_VARIANT)]:
    r = pf.asymmetry_ratio(kind, variant,
                           pf.pi(np.random.default_rng(0).normal(size=(pf.VERTEX_COUNT[kind], 3))))
    print(f"  {kind}/{variant}: Jacobian asymmetry {r:.2e}")
