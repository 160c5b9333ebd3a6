from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import TYPE_CHECKING

import numpy as np
from matplotlib.tri import Triangulation
from scipy.spatial import Delaunay, cKDTree

from nbubble.enums import DomainKind
from nbubble.errors import InvalidParameterError, InvalidResolutionError

from .domain import TABLE_SIZE, Domain

if TYPE_CHECKING:
    from numpy.typing import ArrayLike, NDArray

logger = logging.getLogger(__name__)

REFINED_ZONE = 10.0  # radius of the finest zone, in units of h_target
GRADING_LAYERS = 3  # rows of each intermediate spacing between two zones
BOUNDARY_CLEARANCE = 0.5  # lattice points closer than this times the size are dropped
BOUNDARY_ANGLE_STEP = 0.3  # largest turning angle between consecutive boundary nodes
DEDUPE_TOL = 1e-9  # relative to the finest spacing
AREA_FLOOR = 1e-12  # relative to the finest spacing squared


def unique_edges(triangles: NDArray[np.int64]) -> NDArray[np.int64]:
    pairs = np.concatenate([triangles[:, [0, 1]], triangles[:, [1, 2]], triangles[:, [2, 0]]])
    return np.unique(np.sort(pairs, axis=1), axis=0)


def signed_areas(nodes: NDArray[np.float64], triangles: NDArray[np.int64]) -> NDArray[np.float64]:
    a, b, c = nodes[triangles[:, 0]], nodes[triangles[:, 1]], nodes[triangles[:, 2]]
    ab, ac = b - a, c - a
    return 0.5 * (ab[:, 0] * ac[:, 1] - ab[:, 1] * ac[:, 0])


@dataclass(frozen=True, eq=False)
class Mesh:
    """A conforming triangulation with its boundary nodes flagged."""

    nodes: NDArray[np.float64]
    triangles: NDArray[np.int64]
    boundary_nodes: NDArray[np.int64]
    h_max: float
    domain: Domain | None = field(default=None, repr=False)

    @classmethod
    def from_arrays(
        cls,
        nodes: ArrayLike,
        triangles: ArrayLike,
        boundary_nodes: ArrayLike,
        domain: Domain | None = None,
    ) -> Mesh:
        nodes = np.ascontiguousarray(nodes, dtype=float).reshape(-1, 2)
        triangles = np.ascontiguousarray(triangles, dtype=np.int64).reshape(-1, 3)
        edges = unique_edges(triangles)
        lengths = np.linalg.norm(nodes[edges[:, 0]] - nodes[edges[:, 1]], axis=1)
        return cls(
            nodes=nodes,
            triangles=triangles,
            boundary_nodes=np.unique(np.asarray(boundary_nodes, dtype=np.int64)),
            h_max=float(lengths.max(initial=0.0)),
            domain=domain,
        )

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    @property
    def n_triangles(self) -> int:
        return len(self.triangles)

    @cached_property
    def edges(self) -> NDArray[np.int64]:
        return unique_edges(self.triangles)

    @cached_property
    def edge_lengths(self) -> NDArray[np.float64]:
        return np.linalg.norm(self.nodes[self.edges[:, 0]] - self.nodes[self.edges[:, 1]], axis=1)

    @cached_property
    def signed_areas(self) -> NDArray[np.float64]:
        return signed_areas(self.nodes, self.triangles)

    @property
    def area(self) -> float:
        return float(np.sum(self.signed_areas))

    @cached_property
    def boundary_mask(self) -> NDArray[np.bool_]:
        mask = np.zeros(self.n_nodes, dtype=bool)
        mask[self.boundary_nodes] = True
        return mask

    @cached_property
    def triangulation(self) -> Triangulation:
        return Triangulation(self.nodes[:, 0], self.nodes[:, 1], self.triangles)

    @cached_property
    def _tree(self) -> cKDTree:
        return cKDTree(self.nodes)

    @cached_property
    def _boundary_tree(self) -> cKDTree:
        return cKDTree(self.nodes[self.boundary_nodes])

    def nearest_node(self, x: ArrayLike) -> int:
        _, index = self._tree.query(np.asarray(x, dtype=float))
        return int(index)

    def nearest_nodes(self, points: ArrayLike) -> NDArray[np.int64]:
        _, index = self._tree.query(np.asarray(points, dtype=float))
        return np.asarray(index, dtype=np.int64)

    def distance_to_boundary(self, x: ArrayLike) -> float:
        if self.domain is not None:
            return float(self.domain.distance_to_boundary(x))
        distance, _ = self._boundary_tree.query(np.asarray(x, dtype=float))
        return float(distance)

    def local_h(self, point: ArrayLike, radius: float) -> float:
        """Median edge length over the edges whose midpoint lies within radius of point."""
        point = np.asarray(point, dtype=float)
        midpoints = 0.5 * (self.nodes[self.edges[:, 0]] + self.nodes[self.edges[:, 1]])
        distance = np.linalg.norm(midpoints - point, axis=1)
        inside = distance <= radius
        if not inside.any():
            inside = distance <= np.sort(distance)[min(7, len(distance) - 1)]
        return float(np.median(self.edge_lengths[inside]))


class _Sizing:
    """Target edge length: nested zones around the refine point, halving per level."""

    def __init__(self, h_target: float, center: NDArray[np.float64] | None, levels: int) -> None:
        self.h_target = h_target
        self.center = center
        self.levels = levels if center is not None else 0
        self.spacing = h_target / 2.0 ** np.arange(self.levels + 1)
        reach = np.full(self.levels + 1, np.inf)
        for k in range(1, self.levels + 1):
            buffer = GRADING_LAYERS * self.spacing[k : self.levels].sum()
            reach[k] = REFINED_ZONE * h_target + buffer
        self.reach = reach

    @property
    def finest(self) -> float:
        return float(self.spacing[-1])

    def level(self, x: NDArray[np.float64]) -> NDArray[np.int64]:
        if self.center is None or self.levels == 0:
            return np.zeros(x.shape[:-1], dtype=np.int64)
        distance = np.linalg.norm(x - self.center, axis=-1)
        return np.sum(distance[..., None] <= self.reach[1:], axis=-1)

    def __call__(self, x: NDArray[np.float64]) -> NDArray[np.float64]:
        return self.spacing[self.level(x)]


def _hex_lattice(
    anchor: NDArray[np.float64],
    spacing: float,
    lo: NDArray[np.float64],
    hi: NDArray[np.float64],
) -> NDArray[np.float64]:
    row = spacing * np.sqrt(3.0) / 2.0
    j = np.arange(np.floor((lo[1] - anchor[1]) / row), np.ceil((hi[1] - anchor[1]) / row) + 1)
    i = np.arange(
        np.floor((lo[0] - anchor[0]) / spacing) - 1,
        np.ceil((hi[0] - anchor[0]) / spacing) + 1,
    )
    I, J = np.meshgrid(i, j)
    points = np.stack(
        [anchor[0] + (I + 0.5 * np.mod(J, 2)) * spacing, anchor[1] + J * row],
        axis=-1,
    ).reshape(-1, 2)
    inside = np.all((points >= lo) & (points <= hi), axis=1)
    return points[inside]


def _boundary_points(domain: Domain, sizing: _Sizing) -> NDArray[np.float64]:
    start = 0.0 if sizing.center is None else float(domain.boundary_parameter(sizing.center))
    count = max(TABLE_SIZE, int(np.ceil(8 * domain.perimeter / sizing.finest)))
    s = start + np.linspace(0.0, domain.perimeter, count + 1)
    radius = 1.0 / np.maximum(np.abs(domain.curvature(s)), 2 * np.pi / domain.perimeter)
    step = np.minimum(sizing(domain.point(s)), BOUNDARY_ANGLE_STEP * radius)
    density = 1.0 / step
    increments = 0.5 * (density[1:] + density[:-1]) * np.diff(s)
    cumulative = np.concatenate([[0.0], np.cumsum(increments)])
    n = max(int(np.ceil(cumulative[-1])), 3)
    s_nodes = np.interp(np.arange(n) * cumulative[-1] / n, cumulative, s)
    return domain.point(s_nodes)


def _interior_points(domain: Domain, sizing: _Sizing) -> NDArray[np.float64]:
    polygon = domain.polygon
    box_lo, box_hi = polygon.min(axis=0), polygon.max(axis=0)
    anchor = sizing.center if sizing.center is not None else 0.5 * (box_lo + box_hi)
    chunks = []
    for k, spacing in enumerate(sizing.spacing):
        lo, hi = box_lo, box_hi
        if np.isfinite(sizing.reach[k]):
            lo = np.maximum(lo, anchor - sizing.reach[k])
            hi = np.minimum(hi, anchor + sizing.reach[k])
        points = _hex_lattice(anchor, float(spacing), lo, hi)
        points = points[sizing.level(points) == k]
        points = points[domain.contains(points)]
        if len(points):
            clear = domain.distance_to_boundary(points) >= BOUNDARY_CLEARANCE * spacing
            points = points[clear]
        chunks.append(points)
    return np.concatenate(chunks) if chunks else np.empty((0, 2))


def _dedupe(nodes: NDArray[np.float64], tol: float) -> NDArray[np.bool_]:
    keep = np.ones(len(nodes), dtype=bool)
    pairs = cKDTree(nodes).query_pairs(tol, output_type="ndarray")
    if len(pairs):
        keep[pairs.max(axis=1)] = False
    return keep


def _check_resolution(domain: Domain, h_target: float, refine_levels: int) -> None:
    if h_target <= 0:
        raise InvalidParameterError(f"Target mesh size must be positive, got {h_target}.")
    if refine_levels < 0:
        raise InvalidParameterError(f"Refinement levels must be nonnegative, got {refine_levels}.")
    radius = domain.radius if domain.radius is not None else 0.5 * domain.diameter
    if h_target > radius:
        raise InvalidResolutionError(
            f"Target mesh size {h_target:g} exceeds the domain radius {radius:g}.",
        )


def build_mesh(
    domain: Domain,
    h_target: float,
    refine_point: ArrayLike | None = None,
    refine_levels: int = 0,
) -> Mesh:
    _check_resolution(domain, h_target, refine_levels)
    center = None if refine_point is None else np.asarray(refine_point, dtype=float)
    sizing = _Sizing(h_target, center, refine_levels)

    boundary = _boundary_points(domain, sizing)
    interior = _interior_points(domain, sizing)
    nodes = np.concatenate([boundary, interior])
    keep = _dedupe(nodes, DEDUPE_TOL * sizing.finest)
    is_boundary = np.arange(len(nodes)) < len(boundary)
    nodes, is_boundary = nodes[keep], is_boundary[keep]

    triangles = Delaunay(nodes).simplices.astype(np.int64)
    area = signed_areas(nodes, triangles)
    flip = area < 0
    triangles[flip] = triangles[flip][:, [0, 2, 1]]
    keep = np.abs(area) > AREA_FLOOR * sizing.finest**2
    if domain.kind is DomainKind.GENERIC_CURVE:
        keep &= domain.contains(nodes[triangles].mean(axis=1))
    triangles = triangles[keep]

    # drop nodes left without a triangle
    used = np.unique(triangles)
    remap = np.full(len(nodes), -1, dtype=np.int64)
    remap[used] = np.arange(len(used))
    mesh = Mesh.from_arrays(
        nodes[used],
        remap[triangles],
        remap[np.flatnonzero(is_boundary & (remap >= 0))],
        domain=domain,
    )
    logger.debug(
        "mesh with %d nodes, %d triangles, %d boundary nodes, h_max %.4g",
        mesh.n_nodes,
        mesh.n_triangles,
        len(mesh.boundary_nodes),
        mesh.h_max,
    )
    return mesh


def build_disk_mesh(
    radius: float,
    h_target: float,
    refine_point: ArrayLike | None = None,
    refine_levels: int = 0,
) -> Mesh:
    return build_mesh(Domain.disk(radius), h_target, refine_point, refine_levels)
