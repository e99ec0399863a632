"""Element kinds, canonical numbering, triangulations, volume, and fields.

Five polyhedral element kinds are supported, each with a fixed canonical
vertex numbering:

* tetrahedron: vertices 1-4, positively oriented
* pyramid: base cycle (1,2,3,4), apex 5
* prism: bottom triangle (1,2,3), top (4,5,6), vertex i+3 above i
* hexahedron: bottom face (1,2,3,4), top face (5,6,7,8), vertex i+4 above i
* octahedron: poles 1 and 6, equator cycle (2,3,4,5), opposite
  pairs (1,6), (2,4), (3,5)

Every kind carries a closed-form per-vertex tangent field (a linear
combination of cyclic cross-product chains) whose inner product with the
configuration equals 18 times the element's mean volume, i.e. the field
is the gradient of 6 x mean volume.  Prism and hexahedron additionally
carry a structurally simpler "y" field variant that is not a gradient.
"""

from __future__ import annotations

import numpy as np

from .chains import nu, tet_signed_volume
from .sphere import pi as _pi

KINDS = ("tetrahedron", "pyramid", "prism", "hexahedron", "octahedron")

VERTEX_COUNT = {
    "tetrahedron": 4,
    "pyramid": 5,
    "prism": 6,
    "hexahedron": 8,
    "octahedron": 6,
}

GRADIENT = "mean_volume_gradient"
Y_VARIANT = "y_variant"
VARIANTS_BY_KIND = {
    "tetrahedron": (GRADIENT,),
    "pyramid": (GRADIENT,),
    "prism": (GRADIENT, Y_VARIANT),
    "hexahedron": (GRADIENT, Y_VARIANT),
    "octahedron": (GRADIENT,),
}

# Closed-form field tables: per (kind, variant), a scalar prefactor and,
# for each vertex, a list of (coefficient, 1-based index loop) terms.
# Each term contributes coefficient * nu(p, loop) to that vertex.
_FIELD_TERMS = {
    ("tetrahedron", GRADIENT): (1.0, [
        [(1, (4, 3, 2))],
        [(1, (4, 1, 3))],
        [(1, (4, 2, 1))],
        [(1, (1, 2, 3))],
    ]),
    ("pyramid", GRADIENT): (0.5, [
        [(1, (5, 4, 2)), (1, (5, 4, 3, 2))],
        [(1, (5, 1, 3)), (1, (5, 1, 4, 3))],
        [(1, (5, 2, 4)), (1, (5, 2, 1, 4))],
        [(1, (5, 3, 1)), (1, (5, 3, 2, 1))],
        [(2, (1, 2, 3, 4))],
    ]),
    ("prism", GRADIENT): (0.5, [
        [(1, (3, 2, 4)), (1, (2, 5, 4, 6, 3))],
        [(1, (1, 3, 5)), (1, (3, 6, 5, 4, 1))],
        [(1, (2, 1, 6)), (1, (1, 4, 6, 5, 2))],
        [(1, (5, 6, 1)), (1, (6, 3, 1, 2, 5))],
        [(1, (6, 4, 2)), (1, (4, 1, 2, 3, 6))],
        [(1, (4, 5, 3)), (1, (5, 2, 3, 1, 4))],
    ]),
    ("prism", Y_VARIANT): (1.0, [
        [(1, (3, 2, 5, 4, 6))],
        [(1, (1, 3, 6, 5, 4))],
        [(1, (2, 1, 4, 6, 5))],
        [(1, (5, 6, 3, 1, 2))],
        [(1, (6, 4, 1, 2, 3))],
        [(1, (4, 5, 2, 3, 1))],
    ]),
    ("hexahedron", GRADIENT): (0.5, [
        [(1, (2, 5, 4)), (1, (6, 5, 8, 4, 3, 2))],
        [(1, (3, 6, 1)), (1, (7, 6, 5, 1, 4, 3))],
        [(1, (4, 7, 2)), (1, (8, 7, 6, 2, 1, 4))],
        [(1, (1, 8, 3)), (1, (5, 8, 7, 3, 2, 1))],
        [(1, (1, 6, 8)), (1, (6, 7, 8, 4, 1, 2))],
        [(1, (2, 7, 5)), (1, (7, 8, 5, 1, 2, 3))],
        [(1, (3, 8, 6)), (1, (8, 5, 6, 2, 3, 4))],
        [(1, (4, 5, 7)), (1, (5, 6, 7, 3, 4, 1))],
    ]),
    ("hexahedron", Y_VARIANT): (0.5, [
        [(1, (3, 6, 8)), (1, (2, 5, 4)), (1, (6, 5, 8, 4, 3, 2))],
        [(1, (4, 7, 5)), (1, (3, 6, 1)), (1, (7, 6, 5, 1, 4, 3))],
        [(1, (1, 8, 6)), (1, (4, 7, 2)), (1, (8, 7, 6, 2, 1, 4))],
        [(1, (2, 5, 7)), (1, (1, 8, 3)), (1, (5, 8, 7, 3, 2, 1))],
        [(1, (2, 7, 4)), (1, (1, 6, 8)), (1, (6, 7, 8, 4, 1, 2))],
        [(1, (3, 8, 1)), (1, (2, 7, 5)), (1, (7, 8, 5, 1, 2, 3))],
        [(1, (4, 5, 2)), (1, (3, 8, 6)), (1, (8, 5, 6, 2, 3, 4))],
        [(1, (1, 6, 3)), (1, (4, 5, 7)), (1, (5, 6, 7, 3, 4, 1))],
    ]),
    ("octahedron", GRADIENT): (1.0 / 6.0, [
        [(1, (2, 3, 4, 5))],
        [(1, (1, 5, 6, 3))],
        [(1, (1, 2, 6, 4))],
        [(1, (1, 3, 6, 5))],
        [(1, (1, 4, 6, 2))],
        [(1, (2, 5, 4, 3))],
    ]),
}


def _compile(key):
    """Flatten a field table into (I, J, S) for vectorized evaluation.

    field(p) = S @ cross(p[I], p[J]) row-for-row per vertex.
    """
    pref, rows = _FIELD_TERMS[key]
    i_idx, j_idx, entries = [], [], []
    for vi, terms in enumerate(rows):
        for coeff, loop in terms:
            k = len(loop)
            for t in range(k):
                i_idx.append(loop[t] - 1)
                j_idx.append(loop[(t + 1) % k] - 1)
                entries.append((vi, coeff))
    S = np.zeros((len(rows), len(i_idx)))
    for col, (vi, coeff) in enumerate(entries):
        S[vi, col] = coeff * pref
    return np.array(i_idx), np.array(j_idx), S


_COMPILED = {key: _compile(key) for key in _FIELD_TERMS}


def _check(kind: str, variant: str, p) -> np.ndarray:
    if kind not in KINDS:
        raise ValueError(f"unknown element kind {kind!r}")
    if variant not in VARIANTS_BY_KIND[kind]:
        raise ValueError(f"variant {variant!r} not defined for {kind}")
    p = np.asarray(p, dtype=float)
    if p.shape != (VERTEX_COUNT[kind], 3):
        raise ValueError(
            f"{kind} expects shape ({VERTEX_COUNT[kind]}, 3), got {p.shape}")
    return p


def field(kind: str, variant: str, p) -> np.ndarray:
    """Evaluate the closed-form per-vertex field.

    Parameters
    ----------
    kind : str
        One of ``KINDS``.
    variant : str
        ``"mean_volume_gradient"`` or, for prism/hexahedron, ``"y_variant"``.
    p : (n, 3) array_like
        Configuration in canonical numbering.

    Returns
    -------
    (n, 3) ndarray
        Per-vertex tangent vectors.  Rows always sum to zero, the field
        is translation invariant, and scales quadratically.
    """
    p = _check(kind, variant, p)
    I, J, S = _COMPILED[kind, variant]
    return S @ np.cross(p[I], p[J])


def field_batch(kind: str, variant: str, P) -> np.ndarray:
    """Evaluate the field on a batch of configurations, shape (B, n, 3)."""
    P = np.asarray(P, dtype=float)
    I, J, S = _COMPILED[kind, variant]
    C = np.cross(P[:, I], P[:, J])
    return np.einsum("vk,bkc->bvc", S, C)


def f_value(kind: str, variant: str, p) -> float:
    """Inner product of the field with the configuration over all 3n coordinates.

    For the gradient variant this equals 18 x mean_volume (cubic
    homogeneity of volume plus the gradient relation).
    """
    p = _check(kind, variant, p)
    return float(np.vdot(field(kind, variant, p), p))


# Triangulation tables: per kind, a tuple of triangulations, each a tuple
# of positively oriented 4-tuples of 1-based vertex indices, plus a scalar
# normalization applied to the averaged lifted field and volume.  The
# octahedron table carries normalization 1/6: its printed closed-form
# field is 1/6 of the raw triangulation average, and the same factor is
# kept on the volume side so the gradient relation stays exact.
TRIANGULATIONS = {
    "tetrahedron": ((((1, 2, 3, 4),),), 1.0),
    "pyramid": ((
        ((1, 2, 3, 5), (1, 3, 4, 5)),
        ((1, 2, 4, 5), (2, 3, 4, 5)),
    ), 1.0),
    "prism": ((
        ((1, 2, 3, 4), (2, 3, 4, 5), (3, 4, 5, 6)),
        ((1, 2, 3, 4), (2, 3, 4, 6), (2, 4, 5, 6)),
        ((1, 2, 3, 5), (1, 3, 4, 5), (3, 4, 5, 6)),
        ((1, 2, 3, 5), (1, 3, 6, 5), (1, 4, 5, 6)),
        ((1, 2, 3, 6), (1, 2, 6, 4), (2, 4, 5, 6)),
        ((1, 2, 3, 6), (1, 2, 6, 5), (1, 4, 5, 6)),
    ), 1.0),
    "hexahedron": ((
        ((1, 2, 3, 6), (1, 3, 4, 8), (1, 3, 8, 6), (1, 5, 6, 8), (3, 6, 7, 8)),
        ((1, 2, 4, 5), (2, 3, 4, 7), (2, 4, 5, 7), (2, 5, 6, 7), (4, 5, 7, 8)),
    ), 1.0),
    "octahedron": ((
        ((1, 2, 4, 3), (1, 2, 5, 4), (2, 3, 6, 4), (2, 4, 6, 5)),
        ((1, 2, 5, 3), (1, 3, 5, 4), (2, 3, 6, 5), (3, 4, 6, 5)),
        ((1, 2, 5, 6), (1, 2, 6, 3), (1, 3, 6, 4), (1, 4, 6, 5)),
    ), 1.0 / 6.0),
}


def triangulations(kind: str):
    """Triangulation table for a kind: (triangulations, scalar normalization)."""
    if kind not in KINDS:
        raise ValueError(f"unknown element kind {kind!r}")
    return TRIANGULATIONS[kind]


def mean_volume(kind: str, p) -> float:
    """Signed mean volume: triangulate, sum tet volumes, average over tables.

    The per-kind scalar normalization of the triangulation table is
    applied, so ``field(kind, mean_volume_gradient, p)`` is exactly the
    gradient of ``6 * mean_volume(kind, p)`` for every kind.
    """
    p = _check(kind, VARIANTS_BY_KIND[kind][0], p)
    tables, scale = TRIANGULATIONS[kind]
    total = 0.0
    for table in tables:
        total += sum(tet_signed_volume(p[a - 1], p[b - 1], p[c - 1], p[d - 1])
                     for a, b, c, d in table)
    return scale * total / len(tables)


_TET_ROWS = [(1, (4, 3, 2)), (1, (4, 1, 3)), (1, (4, 2, 1)), (1, (1, 2, 3))]


def field_from_triangulations(kind: str, p) -> np.ndarray:
    """Assemble the gradient field by scattering lifted tetrahedron fields.

    For each triangulation, each 4-tuple contributes the tetrahedron
    field of its four vertices, scattered to their element slots; the
    result is averaged over the triangulation set and multiplied by the
    table's scalar normalization.  Cross-validates the closed forms.
    """
    p = _check(kind, VARIANTS_BY_KIND[kind][0], p)
    tables, scale = TRIANGULATIONS[kind]
    acc = np.zeros_like(p)
    for table in tables:
        for tet in table:
            q = p[[i - 1 for i in tet]]
            for slot, (coeff, loop) in zip(tet, _TET_ROWS):
                acc[slot - 1] += coeff * nu(q, loop)
    return scale * acc / len(tables)


_S3 = np.sqrt(3.0)


def reference_optimal(kind: str) -> np.ndarray:
    """The reference optimal shape for a kind, in canonical numbering.

    Regular tetrahedron (edge 1); the optimal pyramid with base edge 2
    and apex edge sqrt(7); the optimal prism with base edge 2 and height
    2*sqrt(2/3); the unit cube; the regular octahedron with poles
    (0,0,+-1) and unit equator.  All are positively oriented.
    """
    if kind == "tetrahedron":
        return np.array([
            [0.0, 0.0, 0.0],
            [1.0, 0.0, 0.0],
            [0.5, _S3 / 2, 0.0],
            [0.5, _S3 / 6, np.sqrt(2.0 / 3.0)],
        ])
    if kind == "pyramid":
        return np.array([
            [0.0, 0.0, 0.0],
            [2.0, 0.0, 0.0],
            [2.0, 2.0, 0.0],
            [0.0, 2.0, 0.0],
            [1.0, 1.0, np.sqrt(5.0)],
        ])
    if kind == "prism":
        h = np.sqrt(8.0 / 3.0)
        return np.array([
            [0.0, 0.0, 0.0],
            [2.0, 0.0, 0.0],
            [1.0, _S3, 0.0],
            [0.0, 0.0, h],
            [2.0, 0.0, h],
            [1.0, _S3, h],
        ])
    if kind == "hexahedron":
        return np.array([
            [0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [1.0, 1.0, 0.0], [0.0, 1.0, 0.0],
            [0.0, 0.0, 1.0], [1.0, 0.0, 1.0], [1.0, 1.0, 1.0], [0.0, 1.0, 1.0],
        ])
    if kind == "octahedron":
        return np.array([
            [0.0, 0.0, 1.0],
            [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [-1.0, 0.0, 0.0], [0.0, -1.0, 0.0],
            [0.0, 0.0, -1.0],
        ])
    raise ValueError(f"unknown element kind {kind!r}")


# Mean volume of pi(reference_optimal(kind)): the per-kind quality ceiling.
Q_MAX = {
    "tetrahedron": np.sqrt(6.0) / 108.0,
    "pyramid": np.sqrt(35.0) / 294.0,
    "prism": _S3 / 72.0,
    "hexahedron": _S3 / 72.0,
    "octahedron": _S3 / 324.0,
}

# Canonical edges (1-based vertex pairs) per kind, used by shape metrics.
EDGES = {
    "tetrahedron": ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)),
    "pyramid": ((1, 2), (2, 3), (3, 4), (4, 1), (1, 5), (2, 5), (3, 5), (4, 5)),
    "prism": ((1, 2), (2, 3), (3, 1), (4, 5), (5, 6), (6, 4), (1, 4), (2, 5), (3, 6)),
    "hexahedron": ((1, 2), (2, 3), (3, 4), (4, 1), (5, 6), (6, 7), (7, 8), (8, 5),
                   (1, 5), (2, 6), (3, 7), (4, 8)),
    "octahedron": ((1, 2), (1, 3), (1, 4), (1, 5), (6, 2), (6, 3), (6, 4), (6, 5),
                   (2, 3), (3, 4), (4, 5), (5, 2)),
}

# Planar faces with 4 or more vertices (1-based cycles) per kind.
QUAD_FACES = {
    "tetrahedron": (),
    "pyramid": ((1, 2, 3, 4),),
    "prism": ((1, 2, 5, 4), (2, 3, 6, 5), (3, 1, 4, 6)),
    "hexahedron": ((1, 2, 3, 4), (5, 6, 7, 8), (1, 2, 6, 5), (2, 3, 7, 6),
                   (3, 4, 8, 7), (4, 1, 5, 8)),
    "octahedron": (),
}


def level0_pyramid(span: float = 2.0, apex_x: float = 0.7, apex_y: float = 0.4,
                   corner_x: float = 1.3) -> np.ndarray:
    """A planar pyramid constellation where the field vanishes identically.

    Vertices 2 and 4 coincide in the plane of vertices 1, 3, 5; the
    triangle over the doubled corner (1, 4, 3) has twice the height of
    the apex triangle (1, 5, 3).  Both triangulations then produce
    volumes of equal magnitude and opposite sign, the mean volume is
    zero, and the configuration is a zero-level singular point.

    Parameters
    ----------
    span : float
        Distance from vertex 1 to vertex 3 along the x axis.
    apex_x, apex_y : float
        Position of vertex 5; ``apex_y`` must be nonzero.
    corner_x : float
        x position of the doubled corner (vertices 2 and 4), which sits
        at height ``2 * apex_y``.
    """
    p4 = [corner_x, 2.0 * apex_y, 0.0]
    return np.array([
        [0.0, 0.0, 0.0],
        p4,
        [span, 0.0, 0.0],
        p4,
        [apex_x, apex_y, 0.0],
    ])


def collinear_tetrahedron(spacings=(1.0, 2.0, 3.0), direction=(1.0, 0.0, 0.0)) -> np.ndarray:
    """Four distinct points on a line, as a tetrahedron configuration on N."""
    d = np.asarray(direction, dtype=float)
    d = d / np.linalg.norm(d)
    t = np.concatenate([[0.0], np.cumsum(np.asarray(spacings, dtype=float))])
    return _pi(np.outer(t, d))
