import numpy as np
import pytest
from hypothesis import given, settings, assume
from hypothesis import strategies as st

import polyflow as pf

from conftest import finite_points


def test_tau_pins_last_vertex():
    p = np.array([[1.0, 1, 1], [2, 2, 2]])
    assert np.allclose(pf.tau(p), [[-1, -1, -1], [0, 0, 0]])
    q = np.array([[1.0, 2, 3], [0, 0, 0]])
    assert np.array_equal(pf.tau(q), q)


def test_sigma_normalizes():
    p = np.array([[3.0, 0, 0], [0, 4, 0]])
    assert np.allclose(pf.sigma(p), [[0.6, 0, 0], [0, 0.8, 0]])
    assert np.allclose(pf.sigma(pf.sigma(p)), pf.sigma(p))
    with pytest.raises(pf.DegenerateConfigurationError):
        pf.sigma(np.zeros((2, 3)))


def test_pi_degenerate():
    with pytest.raises(pf.DegenerateConfigurationError):
        pf.pi(np.ones((4, 3)))


@settings(max_examples=150)
@given(finite_points(5), st.floats(0.1, 10.0), finite_points(1))
def test_pi_invariance(p, lam, c):
    assume(np.linalg.norm(pf.tau(p)) > 1e-6)
    a = pf.pi(p)
    b = pf.pi(lam * p + c[0])
    assert np.allclose(a, b, atol=1e-12)
    # p already on N is untouched
    assert np.allclose(pf.pi(a), a, atol=1e-12)


def test_push_tangent_kills_radial_and_translation(rng):
    p = pf.pi(rng.normal(size=(4, 3)))
    assert np.allclose(pf.push_tangent(p, 3.7 * p), 0.0, atol=1e-12)
    const = np.tile(rng.normal(size=3), (4, 1))
    assert np.allclose(pf.push_tangent(p, const), 0.0, atol=1e-12)


def test_push_tangent_orthogonal(rng):
    p = pf.pi(rng.normal(size=(5, 3)))
    v = rng.normal(size=(5, 3))
    w = pf.push_tangent(p, v)
    assert abs(np.vdot(w, p)) < 1e-12
    assert np.allclose(w[-1], 0.0)


def test_push_tangent_projector(rng):
    # idempotent linear map of the 3n ambient space; oblique, not
    # orthogonal: pinning kills translations along non-orthogonal
    # directions, so no symmetry assertion here
    p = pf.pi(rng.normal(size=(4, 3)))
    m = 12
    basis = np.eye(m)
    P = np.column_stack([
        pf.push_tangent(p, basis[:, k].reshape(4, 3)).ravel() for k in range(m)])
    assert np.allclose(P @ P, P, atol=1e-12)
    # translations lie in the kernel, the image is tangent at p
    for c in np.eye(3):
        assert np.allclose(P @ np.tile(c, 4), 0.0, atol=1e-12)
    v = rng.normal(size=m)
    assert abs(np.dot(P @ v, p.ravel())) < 1e-12


def test_psi_cases(rng):
    v = rng.normal(size=(4, 3))
    v *= 4.0 / np.linalg.norm(v)
    assert np.allclose(pf.psi(v), v / 2.0)
    assert np.allclose(pf.psi(np.zeros((4, 3))), 0.0)
    t = 1.7
    assert np.allclose(pf.psi(t * t * v), t * pf.psi(v), atol=1e-12)


def test_is_collinear():
    line = np.outer([0.0, 1.0, 2.0, 5.0], [1.0, 2.0, -1.0])
    assert pf.is_collinear(line)
    assert not pf.is_collinear(pf.reference_optimal("tetrahedron"))
    wiggled = line + 1e-12 * np.arange(12).reshape(4, 3)
    assert pf.is_collinear(wiggled, tol=1e-9)


def test_quotient_field_well_defined(rng):
    # pushing the rescaled field at the pinned (unnormalized)
    # representative is representative independent: the square-root
    # rescaling contributes one factor of scale, the division by the
    # representative norm inside push_tangent removes it
    kind = "prism"
    p = rng.normal(size=(6, 3))
    q = 2.5 * p + rng.normal(size=3)
    a = pf.push_tangent(pf.tau(p), pf.psi(pf.field(kind, pf.GRADIENT, p)))
    b = pf.push_tangent(pf.tau(q), pf.psi(pf.field(kind, pf.GRADIENT, q)))
    assert np.allclose(a, b, atol=1e-10)
