"""Spectral diagnostics of the flow at critical configurations.

The second-order structure of the restricted volume at a singularity is
read off the Jacobian of the pinned-and-projected field.  The ambient
finite-difference Jacobian of that field, evaluated at a representative
on N, has real spectrum at the optimal shapes; its nonzero eigenvalues
and their multiplicities identify the critical manifold, and exactly six
eigenvalues vanish (three translation directions, three rotations).

Whether a field variant is a gradient is a property of the raw field,
not of the projection: the raw field Jacobian is symmetric exactly for
gradient fields, so the asymmetry ratio reported here is computed from
the unprojected field.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import elements
from .sphere import pi, tau, is_collinear

FD_STEP = 1e-5
GROUPING_TOL = 1e-4
ZERO_TOL = 1e-6


def _thread_count() -> int:
    try:
        return max(1, int(os.environ.get("POLYFLOW_THREADS", "1")))
    except ValueError:
        return 1


def _pinned_projected(kind, variant, q):
    # Extension of the pushforward off N used for differentiation: the
    # projection is taken against the un-normalized pinned configuration.
    # Re-normalizing here changes the ambient Jacobian's normal block and
    # scrambles the spectrum; this extension keeps it real and clean.
    X = elements.field(kind, variant, q)
    t = tau(X)
    u = tau(q)
    return t - np.vdot(t, u) * u


def pushed_field(kind: str, variant: str, p) -> np.ndarray:
    """The field pushed onto the tangent space of N at pi(p).

    Vanishes exactly at critical configurations; always orthogonal to
    pi(p) with last vertex zero.
    """
    return _pinned_projected(kind, variant, pi(p))


def _fd_jacobian(fun, q, step):
    """Central-difference Jacobian of fun over all 3n ambient coordinates."""
    flat = q.ravel()
    m = flat.size

    def column(k):
        d = np.zeros(m)
        d[k] = step
        hi = fun((flat + d).reshape(q.shape)).ravel()
        lo = fun((flat - d).reshape(q.shape)).ravel()
        return (hi - lo) / (2.0 * step)

    workers = _thread_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            cols = list(ex.map(column, range(m)))
    else:
        cols = [column(k) for k in range(m)]
    return np.column_stack(cols)


def field_jacobian(kind: str, variant: str, p, step: float = FD_STEP) -> np.ndarray:
    """Finite-difference Jacobian of the raw (unprojected) field at p."""
    p = np.asarray(p, dtype=float)
    return _fd_jacobian(lambda q: elements.field(kind, variant, q), p, step)


def asymmetry_ratio(kind: str, variant: str, p, step: float = FD_STEP) -> float:
    """Frobenius ratio |J - J^T| / |J| of the raw field Jacobian.

    Near zero for gradient fields; order one for the prism y variant.
    """
    J = field_jacobian(kind, variant, p, step)
    nj = np.linalg.norm(J)
    if nj == 0.0:
        return 0.0
    return float(np.linalg.norm(J - J.T) / nj)


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues of the projected-field Jacobian at a point of N."""

    eigenvalues: np.ndarray  # sorted ascending, real parts
    groups: tuple  # ((value, multiplicity), ...) grouped at GROUPING_TOL
    zero_count: int  # |eigenvalue| < ZERO_TOL
    asymmetry_ratio: float  # of the raw field Jacobian at the same point
    max_imag: float  # largest imaginary part magnitude before discarding

    def to_json(self) -> str:
        return json.dumps({
            "eigenvalues": [{"value": float(v), "multiplicity": int(m)}
                            for v, m in self.groups],
            "zero_count": int(self.zero_count),
            "asymmetry_ratio": float(self.asymmetry_ratio),
        }, indent=2)


def _group(values, tol):
    groups = []
    for v in values:
        if groups and abs(v - groups[-1][0]) < tol:
            groups[-1][1] += 1
        else:
            groups.append([float(v), 1])
    return tuple((v, m) for v, m in groups)


def hessian_spectrum(kind: str, variant: str, p, step: float = FD_STEP,
                     grouping_tol: float = GROUPING_TOL,
                     zero_tol: float = ZERO_TOL) -> Spectrum:
    """Spectrum of the ambient Jacobian of the projected field at pi(p).

    The Jacobian is differenced centrally (default step 1e-5) over all
    3n ambient coordinates and its eigenvalues are taken as computed,
    without symmetrization; at the singular shapes the spectrum is real
    to rounding and symmetrizing would mix the normal block into it.
    Eigenvalues are sorted ascending and grouped at ``grouping_tol``.
    """
    q = pi(p)
    J = _fd_jacobian(lambda x: _pinned_projected(kind, variant, x), q, step)
    if not np.all(np.isfinite(J)):
        raise FloatingPointError("non-finite Jacobian")
    ev = np.linalg.eigvals(J)
    order = np.argsort(ev.real)
    ev = ev[order]
    values = ev.real.copy()
    return Spectrum(
        eigenvalues=values,
        groups=_group(values, grouping_tol),
        zero_count=int(np.count_nonzero(np.abs(values) < zero_tol)),
        asymmetry_ratio=asymmetry_ratio(kind, variant, q, step),
        max_imag=float(np.abs(ev.imag).max()) if ev.size else 0.0,
    )


def collinear_signature(p, tol: float = ZERO_TOL) -> tuple[int, int]:
    """Counts of positive and negative eigenvalues at a collinear tetrahedron.

    Precondition: p is a collinear 4-vertex configuration; raises
    ValueError otherwise.
    """
    p = np.asarray(p, dtype=float)
    if p.shape != (4, 3):
        raise ValueError("collinear signature is defined for tetrahedra")
    if not is_collinear(p):
        raise ValueError("configuration is not collinear")
    spec = hessian_spectrum("tetrahedron", elements.GRADIENT, p)
    pos = int(np.count_nonzero(spec.eigenvalues > tol))
    neg = int(np.count_nonzero(spec.eigenvalues < -tol))
    return pos, neg
