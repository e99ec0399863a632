"""Polyhedral meshes, quality reporting, and field-averaged smoothing.

A mesh couples a shared vertex pool with typed elements (canonical
vertex numbering per kind) and a set of fixed vertices.  Smoothing
evaluates every element's gradient field, scatter-averages the
per-vertex contributions, and displaces the free vertices; element
shapes drift toward their optimal forms while fixed boundaries stay
put.  Meshes live in ambient space: there is no whole-mesh projection,
and scale control comes from the per-element square-root rescaling.
"""

from __future__ import annotations

import csv
import json
import warnings
from dataclasses import dataclass, replace

import numpy as np

from . import elements as el
from .flow import FlowDivergenceError, FlowSettings
from .sphere import DegenerateConfigurationError, pi, psi


class MeshFormatError(ValueError):
    """Malformed mesh JSON; carries position diagnostics when available."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Mesh:
    """Vertex pool, typed elements, and immobile vertex set.

    ``elements`` holds (kind, nodes) pairs with 0-based node indices in
    canonical order; ``fixed`` is a frozenset of 0-based vertex indices.
    """

    vertices: np.ndarray
    elements: tuple
    fixed: frozenset

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 3:
            raise MeshFormatError("vertices must be an (n, 3) array")
        object.__setattr__(self, "vertices", v)
        elems = []
        for k, (kind, nodes) in enumerate(self.elements):
            if kind not in el.KINDS:
                raise MeshFormatError(f"elements[{k}]: unknown type {kind!r}")
            nodes = tuple(int(i) for i in nodes)
            if len(nodes) != el.VERTEX_COUNT[kind]:
                raise MeshFormatError(
                    f"elements[{k}]: {kind} needs {el.VERTEX_COUNT[kind]} nodes, "
                    f"got {len(nodes)}")
            for i in nodes:
                if not 0 <= i < len(v):
                    raise MeshFormatError(f"elements[{k}]: node index {i} out of range")
            elems.append((kind, nodes))
        object.__setattr__(self, "elements", tuple(elems))
        fixed = frozenset(int(i) for i in self.fixed)
        for i in fixed:
            if not 0 <= i < len(v):
                raise MeshFormatError(f"fixed vertex index {i} out of range")
        object.__setattr__(self, "fixed", fixed)

    def with_vertices(self, vertices) -> "Mesh":
        return replace(self, vertices=np.asarray(vertices, dtype=float))


@dataclass(frozen=True)
class QualityReport:
    """Per-element normalized quality and mesh-level summary."""

    per_element_q: tuple
    mesh_mean_volume: float
    min_q: float
    mean_q: float
    max_q: float
    inverted_count: int


def mesh_mean_volume(m: Mesh) -> float:
    """Sum of element mean volumes (signed; additive over elements)."""
    return float(sum(el.mean_volume(kind, m.vertices[list(nodes)])
                     for kind, nodes in m.elements))


def quality_report(m: Mesh) -> QualityReport:
    """Normalized per-element quality: mean volume on N over the kind's ceiling.

    q = 1 at the optimal shape, q < 0 for inverted elements; the
    ``inverted_count`` counts q < 0.
    """
    qs = []
    for kind, nodes in m.elements:
        p = m.vertices[list(nodes)]
        qs.append(el.mean_volume(kind, pi(p)) / el.Q_MAX[kind])
    qs = tuple(float(q) for q in qs)
    return QualityReport(
        per_element_q=qs,
        mesh_mean_volume=mesh_mean_volume(m),
        min_q=min(qs),
        mean_q=float(np.mean(qs)),
        max_q=max(qs),
        inverted_count=sum(1 for q in qs if q < 0),
    )


def smooth_step(m: Mesh, settings: FlowSettings = FlowSettings()) -> Mesh:
    """One smoothing sweep: scatter-average element fields, displace free vertices.

    Every element's gradient field is evaluated (square-root rescaled
    per element under the ``psi`` normalization); each vertex averages
    the contributions of the elements containing it; free vertices move
    by step times that average.  Fixed vertices are returned bitwise
    unchanged.
    """
    acc = np.zeros_like(m.vertices)
    count = np.zeros(len(m.vertices))
    for kind, nodes in m.elements:
        idx = list(nodes)
        F = el.field(kind, el.GRADIENT, m.vertices[idx])
        if settings.normalization == "psi":
            F = psi(F)
        acc[idx] += F
        count[idx] += 1
    count[count == 0] = 1.0
    shift = settings.step * acc / count[:, None]
    out = m.vertices.copy()
    free = np.ones(len(out), dtype=bool)
    free[list(m.fixed)] = False
    out[free] += shift[free]
    return m.with_vertices(out)


def smooth(m: Mesh, settings: FlowSettings = FlowSettings(),
           max_iters: int = 10 ** 4, quality_tol: float = 1e-10):
    """Repeat smooth_step until min-quality stagnates over a 10-iteration window.

    Returns ``(mesh, reports)`` where ``reports[i]`` is the
    :class:`QualityReport` after i steps (``reports[0]`` is the input
    state).  A mesh with every vertex fixed is returned unchanged with a
    warning.  Non-finite vertices raise :class:`FlowDivergenceError`
    with the failing iteration.
    """
    reports = [quality_report(m)]
    if len(m.fixed) >= len(m.vertices):
        warnings.warn("all vertices fixed; smoothing is the identity", stacklevel=2)
        return m, reports
    window = 10
    for it in range(1, max_iters + 1):
        m = smooth_step(m, settings)
        if not np.all(np.isfinite(m.vertices)):
            raise FlowDivergenceError(it)
        try:
            reports.append(quality_report(m))
        except DegenerateConfigurationError as exc:
            # an element collapsed to a point; the sweep cannot continue
            raise FlowDivergenceError(it) from exc
        if it >= window:
            if reports[-1].min_q - reports[-1 - window].min_q < quality_tol:
                break
    return m, reports


_KIND_SET = set(el.KINDS)


def mesh_from_dict(data) -> Mesh:
    """Build a Mesh from the parsed JSON structure, validating the schema."""
    if not isinstance(data, dict):
        raise MeshFormatError("top level must be an object")
    for key in ("vertices", "elements"):
        if key not in data:
            raise MeshFormatError(f"missing required key {key!r}")
    verts = data["vertices"]
    if (not isinstance(verts, list)
            or any(not isinstance(v, list) or len(v) != 3 for v in verts)):
        raise MeshFormatError("vertices must be a list of [x, y, z] triples")
    elems = []
    if not isinstance(data["elements"], list):
        raise MeshFormatError("elements must be a list")
    for k, entry in enumerate(data["elements"]):
        if not isinstance(entry, dict) or "type" not in entry or "nodes" not in entry:
            raise MeshFormatError(f"elements[{k}] must have 'type' and 'nodes'")
        if entry["type"] not in _KIND_SET:
            raise MeshFormatError(f"elements[{k}]: unknown type {entry['type']!r}")
        elems.append((entry["type"], tuple(entry["nodes"])))
    fixed = data.get("fixed", [])
    if not isinstance(fixed, list):
        raise MeshFormatError("fixed must be a list of vertex indices")
    return Mesh(vertices=np.array(verts, dtype=float),
                elements=tuple(elems), fixed=frozenset(fixed))


def load_mesh(path) -> Mesh:
    """Read a mesh from its JSON schema; malformed input raises MeshFormatError."""
    with open(path) as fh:
        text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MeshFormatError(exc.msg, line=exc.lineno, column=exc.colno) from exc
    return mesh_from_dict(data)


def mesh_to_dict(m: Mesh) -> dict:
    return {
        "vertices": [[float(x) for x in row] for row in m.vertices],
        "elements": [{"type": kind, "nodes": list(nodes)}
                     for kind, nodes in m.elements],
        "fixed": sorted(m.fixed),
    }


def save_mesh(m: Mesh, path) -> None:
    """Write the JSON schema; floats use shortest round-trip representation."""
    with open(path, "w") as fh:
        json.dump(mesh_to_dict(m), fh, indent=2)
        fh.write("\n")


def quality_to_csv(report: QualityReport, m: Mesh, path) -> None:
    """One CSV row per element: index, type, q (17 significant digits)."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["index", "type", "q"])
        for k, ((kind, _), q) in enumerate(zip(m.elements, report.per_element_q)):
            writer.writerow([k, kind, format(q, ".17g")])
