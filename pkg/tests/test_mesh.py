"""Tests for mesh containers, quality reporting, smoothing, and mesh JSON."""

import json

import numpy as np
import pytest

import polyflow as pf


def _single(kind, vertices, fixed=()):
    n = pf.VERTEX_COUNT[kind]
    return pf.Mesh(vertices=vertices, elements=((kind, tuple(range(n))),),
                   fixed=frozenset(fixed))


def _corner_tets():
    # two disjoint translated copies of the unit corner tetrahedron
    v = np.array([[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1],
                  [2, 0, 0], [3, 0, 0], [2, 1, 0], [2, 0, 1]], float)
    return pf.Mesh(vertices=v,
                   elements=(("tetrahedron", (0, 1, 2, 3)),
                             ("tetrahedron", (4, 5, 6, 7))),
                   fixed=frozenset())


def _mmv_of_projected(m):
    return pf.mesh_mean_volume(m.with_vertices(pf.pi(m.vertices)))


class TestMeshContainer:
    def test_validation_errors(self):
        v = np.zeros((4, 3))
        with pytest.raises(pf.MeshFormatError):
            pf.Mesh(vertices=np.zeros((4, 2)), elements=(), fixed=frozenset())
        with pytest.raises(pf.MeshFormatError):
            pf.Mesh(vertices=v, elements=(("blob", (0, 1, 2, 3)),),
                    fixed=frozenset())
        with pytest.raises(pf.MeshFormatError):
            pf.Mesh(vertices=v, elements=(("tetrahedron", (0, 1, 2)),),
                    fixed=frozenset())
        with pytest.raises(pf.MeshFormatError):
            pf.Mesh(vertices=v, elements=(("tetrahedron", (0, 1, 2, 9)),),
                    fixed=frozenset())
        with pytest.raises(pf.MeshFormatError):
            pf.Mesh(vertices=v, elements=(("tetrahedron", (0, 1, 2, 3)),),
                    fixed=frozenset({17}))

    def test_with_vertices_keeps_structure(self):
        m = _corner_tets()
        m2 = m.with_vertices(m.vertices + 1.0)
        assert m2.elements == m.elements
        assert m2.fixed == m.fixed


class TestMeshMeanVolume:
    def test_two_corner_tets(self):
        assert pf.mesh_mean_volume(_corner_tets()) == pytest.approx(1.0 / 3.0)

    def test_unit_cube(self):
        m = _single("hexahedron", pf.reference_optimal("hexahedron"))
        assert pf.mesh_mean_volume(m) == pytest.approx(1.0)

    def test_inverted_pair_cancels(self):
        v = np.array([[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1],
                      [0, 0, -1]], float)
        m = pf.Mesh(vertices=v,
                    elements=(("tetrahedron", (0, 1, 2, 3)),
                              ("tetrahedron", (0, 1, 2, 4))),
                    fixed=frozenset())
        assert pf.mesh_mean_volume(m) == pytest.approx(0.0, abs=1e-15)


class TestQualityReport:
    def test_reference_cube(self):
        rep = pf.quality_report(
            _single("hexahedron", pf.reference_optimal("hexahedron")))
        assert rep.per_element_q[0] == pytest.approx(1.0)
        assert rep.min_q == rep.max_q == rep.per_element_q[0]
        assert rep.inverted_count == 0

    def test_inverted_element_counted(self):
        v = np.array([[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1],
                      [0, 0, -1]], float)
        m = pf.Mesh(vertices=v,
                    elements=(("tetrahedron", (0, 1, 2, 3)),
                              ("tetrahedron", (0, 1, 2, 4))),
                    fixed=frozenset())
        rep = pf.quality_report(m)
        assert rep.inverted_count == 1
        assert rep.per_element_q[0] == pytest.approx(-rep.per_element_q[1])

    def test_scale_and_translation_invariant(self):
        m = _corner_tets()
        a = pf.quality_report(m).per_element_q
        b = pf.quality_report(m.with_vertices(7.0 * m.vertices - 3.0)
                              ).per_element_q
        assert a == pytest.approx(b)


class TestSmoothStep:
    def test_optimal_mesh_moves_only_radially(self):
        m = _single("hexahedron", pf.reference_optimal("hexahedron"))
        m2 = pf.smooth_step(m, pf.FlowSettings(step=0.01))
        d = m2.vertices - m.vertices
        c = m.vertices.mean(axis=0)
        r = m.vertices - c
        dc = d - d.mean(axis=0)
        coef = np.vdot(dc, r) / np.vdot(r, r)
        assert np.abs(dc - coef * r).max() < 1e-14
        assert coef > 0.0  # volume ascent inflates the free element

    def test_centroid_preserved_when_all_free(self):
        m = _single("hexahedron",
                    pf.reference_optimal("hexahedron")
                    + np.random.default_rng(1).uniform(-0.1, 0.1, (8, 3)))
        m2 = pf.smooth_step(m, pf.FlowSettings(step=1e-2))
        drift = np.abs(m2.vertices.mean(axis=0) - m.vertices.mean(axis=0))
        assert drift.max() < 1e-12

    def test_single_free_vertex_gets_averaged_field(self):
        # vertex 2 is shared by both tets; everything else fixed
        v = np.array([[0, 0, 0], [1, 0, 0], [0.4, 0.9, 0.1], [0, 0, 1],
                      [1, 1, 1]], float)
        m = pf.Mesh(vertices=v,
                    elements=(("tetrahedron", (0, 1, 2, 3)),
                              ("tetrahedron", (1, 0, 2, 4))),
                    fixed=frozenset({0, 1, 3, 4}))
        step = 0.03
        m2 = pf.smooth_step(m, pf.FlowSettings(step=step))
        contrib = np.zeros(3)
        for kind, nodes in m.elements:
            F = pf.psi(pf.field(kind, pf.GRADIENT, v[list(nodes)]))
            contrib += F[nodes.index(2)]
        expected = v[2] + step * contrib / 2.0
        assert np.allclose(m2.vertices[2], expected, atol=1e-15)
        assert np.array_equal(m2.vertices[[0, 1, 3, 4]], v[[0, 1, 3, 4]])

    def test_fixed_vertices_bitwise_unchanged(self, rng):
        v = rng.normal(size=(8, 3))
        m = pf.Mesh(vertices=v,
                    elements=(("hexahedron", tuple(range(8))),),
                    fixed=frozenset({0, 3, 5}))
        m2 = pf.smooth_step(m, pf.FlowSettings())
        for i in (0, 3, 5):
            assert m2.vertices[i].tobytes() == v[i].tobytes()

    def test_raw_volume_monotone_even_when_projected_dips(self):
        # the sweep ascends the raw volume sum; the projected volume
        # can still dip because the quotient representative drifts in
        # the gauge (translation/scale) directions
        base = np.array([[0.0, 0.0, 0.0], [1.0, 0.0, 0.0],
                         [0.5, np.sqrt(3.0) / 2.0, 0.0]])
        c = base.mean(axis=0)
        h = np.sqrt(2.0 / 3.0)
        tt = np.vstack([base, c + [0, 0, h], c - [0, 0, h]])
        saw_dip = False
        for s in range(40):
            rng = np.random.default_rng(4000 + s)
            m = pf.Mesh(vertices=tt + rng.uniform(-0.15, 0.15, (5, 3)),
                        elements=(("tetrahedron", (0, 1, 2, 3)),
                                  ("tetrahedron", (1, 0, 2, 4))),
                        fixed=frozenset())
            m2 = pf.smooth_step(m, pf.FlowSettings(step=1e-2))
            assert pf.mesh_mean_volume(m2) > pf.mesh_mean_volume(m)
            if _mmv_of_projected(m2) < _mmv_of_projected(m) - 1e-15:
                saw_dip = True
        assert saw_dip

    def test_flattened_pair_gains_projected_volume(self):
        v = np.array([[0, 0, 0], [1, 0, 0], [0.5, 1, 0],
                      [0.5, 0.4, 0.08], [0.5, 0.4, -0.08]], float)
        m = pf.Mesh(vertices=v,
                    elements=(("tetrahedron", (0, 1, 2, 3)),
                              ("tetrahedron", (1, 0, 2, 4))),
                    fixed=frozenset())
        before = _mmv_of_projected(m)
        after = _mmv_of_projected(pf.smooth_step(m, pf.FlowSettings(step=1e-3)))
        assert after > before


class TestSmooth:
    def test_perturbed_cube_recovers(self):
        rng = np.random.default_rng(11)
        m = _single("hexahedron",
                    pf.reference_optimal("hexahedron")
                    + rng.uniform(-0.1, 0.1, (8, 3)))
        assert pf.quality_report(m).min_q < 0.99
        m2, reports = pf.smooth(m, pf.FlowSettings())
        assert reports[-1].min_q >= 0.99
        assert len(reports) - 1 <= 10 ** 4

    def test_optimal_mesh_stops_at_window(self):
        m = _single("hexahedron", pf.reference_optimal("hexahedron"))
        _, reports = pf.smooth(m, pf.FlowSettings())
        assert len(reports) - 1 == 10
        assert all(r.min_q == pytest.approx(1.0) for r in reports)

    def test_fixed_boundary_improves_quality(self):
        base = np.array([[0, 0, 0], [1, 0, 0], [0.5, np.sqrt(3) / 2, 0]])
        v = np.vstack([base, [[0.5, 0.28, 0.25]], [[0.5, 0.3, -0.2]]])
        m = pf.Mesh(vertices=v,
                    elements=(("tetrahedron", (0, 1, 2, 3)),
                              ("tetrahedron", (1, 0, 2, 4))),
                    fixed=frozenset({0, 1, 2}))
        start = pf.quality_report(m).min_q
        m2, reports = pf.smooth(m, pf.FlowSettings(step=0.01))
        assert reports[-1].min_q > start
        assert np.array_equal(m2.vertices[:3], v[:3])

    def test_all_fixed_warns_identity(self):
        m = _single("hexahedron", pf.reference_optimal("hexahedron"),
                    fixed=range(8))
        with pytest.warns(UserWarning, match="fixed"):
            m2, reports = pf.smooth(m, pf.FlowSettings())
        assert m2.vertices.tobytes() == m.vertices.tobytes()
        assert len(reports) == 1

    def test_blowup_raises_divergence(self):
        v = np.array([[0, 0, 0], [1, 0, 0], [0.5, 1, 0],
                      [0.5, 0.4, 0.08], [0.5, 0.4, -0.08]], float) * 1e3
        m = pf.Mesh(vertices=v,
                    elements=(("tetrahedron", (0, 1, 2, 3)),
                              ("tetrahedron", (1, 0, 2, 4))),
                    fixed=frozenset())
        with pytest.raises(pf.FlowDivergenceError):
            pf.smooth(m, pf.FlowSettings(step=1e6, normalization="none"),
                      max_iters=100)


class TestMeshJson:
    def test_round_trip(self, tmp_path, rng):
        m = pf.Mesh(vertices=rng.normal(size=(8, 3)),
                    elements=(("tetrahedron", (0, 1, 2, 3)),
                              ("pyramid", (3, 4, 5, 6, 7))),
                    fixed=frozenset({0, 7}))
        path = tmp_path / "mesh.json"
        pf.save_mesh(m, path)
        m2 = pf.load_mesh(path)
        assert m2.vertices.tobytes() == m.vertices.tobytes()
        assert m2.elements == m.elements
        assert m2.fixed == m.fixed

    def test_dict_schema(self):
        d = pf.mesh_to_dict(_corner_tets())
        assert set(d) == {"vertices", "elements", "fixed"}
        assert d["elements"][0] == {"type": "tetrahedron",
                                    "nodes": [0, 1, 2, 3]}
        assert d["fixed"] == []
        json.dumps(d)  # serializable without custom encoders

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            pf.load_mesh(tmp_path / "nope.json")

    def test_malformed_json_has_position(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"vertices": [[0, 0, 0],\n  "elements": []}\n')
        with pytest.raises(pf.MeshFormatError) as err:
            pf.load_mesh(path)
        assert err.value.line == 2
        assert "line 2" in str(err.value)

    def test_schema_errors(self):
        with pytest.raises(pf.MeshFormatError):
            pf.mesh_from_dict([1, 2, 3])
        with pytest.raises(pf.MeshFormatError):
            pf.mesh_from_dict({"vertices": [[0, 0, 0]]})
        with pytest.raises(pf.MeshFormatError):
            pf.mesh_from_dict({"vertices": [[0, 0]], "elements": []})
        with pytest.raises(pf.MeshFormatError):
            pf.mesh_from_dict({"vertices": [], "elements": [{"type": "x"}]})


def test_quality_csv(tmp_path):
    m = _corner_tets()
    rep = pf.quality_report(m)
    path = tmp_path / "q.csv"
    pf.quality_to_csv(rep, m, path)
    lines = path.read_text().splitlines()
    assert lines[0] == "index,type,q"
    assert len(lines) == 3
    idx, kind, q = lines[1].split(",")
    assert (idx, kind) == ("0", "tetrahedron")
    assert float(q) == pytest.approx(rep.per_element_q[0], rel=1e-16)
