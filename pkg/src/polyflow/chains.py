"""Cyclic cross-product chains and signed simplex volume.

The whole library is built from one algebraic primitive: the cyclic sum
of cross products of consecutive points in an index loop.  Closed over
the loop, these sums are translation invariant, and for planar loops
their norm is twice the enclosed area.
"""

from __future__ import annotations

import numpy as np


def cross(a, b):
    """Right-handed cross product of two 3-vectors.

    Thin wrapper over ``numpy.cross`` that always returns a float array.
    """
    return np.cross(np.asarray(a, dtype=float), np.asarray(b, dtype=float))


def nu(points, indices) -> np.ndarray:
    """Cyclic cross-product sum over an index loop.

    For indices ``(i1, ..., ik)`` returns ``p_i1 x p_i2 + p_i2 x p_i3 +
    ... + p_ik x p_i1``.  Indices are 1-based, matching the canonical
    vertex numbering used throughout; repeated indices are allowed
    (degenerate fixtures need them).

    Parameters
    ----------
    points : (n, 3) array_like
        Vertex positions.
    indices : sequence of int
        1-based loop, length >= 3.

    Returns
    -------
    (3,) ndarray

    Raises
    ------
    IndexError
        If any index is outside ``1..n``.
    ValueError
        If fewer than 3 indices are given.
    """
    pts = np.asarray(points, dtype=float)
    idx = list(indices)
    if len(idx) < 3:
        raise ValueError("index loop needs at least 3 entries")
    n = pts.shape[0]
    for i in idx:
        if not 1 <= i <= n:
            raise IndexError(f"index {i} out of range 1..{n}")
    a = pts[[i - 1 for i in idx]]
    b = pts[[idx[(t + 1) % len(idx)] - 1 for t in range(len(idx))]]
    return np.cross(a, b).sum(axis=0)


def tet_signed_volume(p1, p2, p3, p4) -> float:
    """Signed volume of the tetrahedron (p1, p2, p3, p4).

    Positive for positively oriented vertex order.
    """
    p1 = np.asarray(p1, dtype=float)
    d = np.dot(np.cross(np.asarray(p2, float) - p1, np.asarray(p3, float) - p1),
               np.asarray(p4, float) - p1)
    return float(d) / 6.0
