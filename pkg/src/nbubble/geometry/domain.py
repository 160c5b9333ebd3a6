from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import TYPE_CHECKING, Protocol

import numpy as np
from matplotlib.path import Path as PolygonPath
from numpy.polynomial.legendre import leggauss
from scipy.spatial import ConvexHull, cKDTree
from scipy.spatial.distance import pdist

from nbubble.enums import DomainKind
from nbubble.errors import InvalidParameterError
from nbubble.settings import settings

if TYPE_CHECKING:
    from collections.abc import Callable

    from numpy.typing import ArrayLike, NDArray

logger = logging.getLogger(__name__)

TABLE_SIZE = 4096
NEWTON_STEPS = 8
_GL_NODES, _GL_WEIGHTS = leggauss(6)


class BoundaryCurve(Protocol):
    """A closed curve t -> (x, y) with period 1, oriented counter-clockwise."""

    def __call__(self, t: NDArray[np.float64]) -> NDArray[np.float64]: ...


def _five_point_first(
    fn: Callable[[NDArray[np.float64]], NDArray[np.float64]],
    t: NDArray[np.float64],
    h: float,
) -> NDArray[np.float64]:
    return (-fn(t + 2 * h) + 8 * fn(t + h) - 8 * fn(t - h) + fn(t - 2 * h)) / (12 * h)


def _five_point_second(
    fn: Callable[[NDArray[np.float64]], NDArray[np.float64]],
    t: NDArray[np.float64],
    h: float,
) -> NDArray[np.float64]:
    return (
        -fn(t + 2 * h) + 16 * fn(t + h) - 30 * fn(t) + 16 * fn(t - h) - fn(t - 2 * h)
    ) / (12 * h * h)


class _Arclength:
    """Numerical arclength reparameterisation of a period-1 curve."""

    def __init__(
        self,
        curve: BoundaryCurve,
        derivative: Callable[[NDArray[np.float64]], NDArray[np.float64]] | None,
    ) -> None:
        self.curve = curve
        self.derivative = derivative or (
            lambda t: _five_point_first(curve, t, 1e-4)
        )
        self.t_table = np.linspace(0.0, 1.0, TABLE_SIZE + 1)
        lengths = np.array(
            [self._segment(a, b) for a, b in zip(self.t_table[:-1], self.t_table[1:], strict=True)],
        )
        self.s_table = np.concatenate([[0.0], np.cumsum(lengths)])
        self.perimeter = float(self.s_table[-1])

    def speed(self, t: NDArray[np.float64]) -> NDArray[np.float64]:
        return np.linalg.norm(self.derivative(t), axis=-1)

    def _segment(self, a: float, b: float) -> float:
        nodes = 0.5 * (b - a) * _GL_NODES + 0.5 * (a + b)
        return float(0.5 * (b - a) * np.dot(_GL_WEIGHTS, self.speed(nodes)))

    def _partial(self, t0: NDArray[np.float64], t: NDArray[np.float64]) -> NDArray[np.float64]:
        half = 0.5 * (t - t0)
        nodes = half[..., None] * _GL_NODES + (0.5 * (t + t0))[..., None]
        return half * (self.speed(nodes) @ _GL_WEIGHTS)

    def parameter(self, s: NDArray[np.float64]) -> NDArray[np.float64]:
        s = np.mod(s, self.perimeter)
        k = np.clip(np.searchsorted(self.s_table, s, side="right") - 1, 0, TABLE_SIZE - 1)
        t0 = self.t_table[k]
        s0 = self.s_table[k]
        t = np.interp(s, self.s_table, self.t_table)
        for _ in range(NEWTON_STEPS):
            t = t - (s0 + self._partial(t0, t) - s) / self.speed(t)
        return t


@dataclass(frozen=True, eq=False)
class Domain:
    """A smooth planar region given by its arclength-parameterised boundary."""

    kind: DomainKind
    perimeter: float
    radius: float | None = None
    _arclength: _Arclength | None = field(default=None, repr=False)

    @classmethod
    def disk(cls, radius: float = 1.0) -> Domain:
        if radius <= 0:
            raise InvalidParameterError(f"Disk radius must be positive, got {radius}.")
        return cls(kind=DomainKind.UNIT_DISK, perimeter=2 * np.pi * radius, radius=radius)

    @classmethod
    def from_curve(
        cls,
        curve: BoundaryCurve,
        derivative: Callable[[NDArray[np.float64]], NDArray[np.float64]] | None = None,
    ) -> Domain:
        arclength = _Arclength(curve, derivative)
        logger.debug("generic boundary with perimeter %.12g", arclength.perimeter)
        return cls(
            kind=DomainKind.GENERIC_CURVE,
            perimeter=arclength.perimeter,
            _arclength=arclength,
        )

    @classmethod
    def ellipse(cls, a: float, b: float) -> Domain:
        if a <= 0 or b <= 0:
            raise InvalidParameterError(f"Ellipse semi-axes must be positive, got {a}, {b}.")

        def curve(t: NDArray[np.float64]) -> NDArray[np.float64]:
            theta = 2 * np.pi * np.asarray(t)
            return np.stack([a * np.cos(theta), b * np.sin(theta)], axis=-1)

        def derivative(t: NDArray[np.float64]) -> NDArray[np.float64]:
            theta = 2 * np.pi * np.asarray(t)
            return 2 * np.pi * np.stack([-a * np.sin(theta), b * np.cos(theta)], axis=-1)

        return cls.from_curve(curve, derivative)

    # boundary curve

    def point(self, s: ArrayLike) -> NDArray[np.float64]:
        s = np.asarray(s, dtype=float)
        if self._arclength is None:
            assert self.radius is not None
            theta = s / self.radius
            return self.radius * np.stack([-np.sin(theta), np.cos(theta)], axis=-1)
        return self._arclength.curve(self._arclength.parameter(s))

    def tangent(self, s: ArrayLike) -> NDArray[np.float64]:
        s = np.asarray(s, dtype=float)
        if self._arclength is None:
            assert self.radius is not None
            theta = s / self.radius
            return np.stack([-np.cos(theta), -np.sin(theta)], axis=-1)
        raw = self._arclength.derivative(self._arclength.parameter(s))
        return raw / np.linalg.norm(raw, axis=-1, keepdims=True)

    def inner_normal(self, s: ArrayLike) -> NDArray[np.float64]:
        t = self.tangent(s)
        return np.stack([-t[..., 1], t[..., 0]], axis=-1)

    def curvature(self, s: ArrayLike) -> NDArray[np.float64]:
        """Signed curvature, positive where the domain is convex."""
        s = np.asarray(s, dtype=float)
        if self._arclength is None:
            assert self.radius is not None
            return np.full(s.shape, 1.0 / self.radius)
        h = settings.CURVATURE_STEP_FRACTION * self.perimeter
        d1 = _five_point_first(self.point, s, h)
        d2 = _five_point_second(self.point, s, h)
        return d1[..., 0] * d2[..., 1] - d1[..., 1] * d2[..., 0]

    @cached_property
    def samples(self) -> NDArray[np.float64]:
        return np.linspace(0.0, self.perimeter, TABLE_SIZE, endpoint=False)

    @cached_property
    def polygon(self) -> NDArray[np.float64]:
        return self.point(self.samples)

    @cached_property
    def _tree(self) -> cKDTree:
        return cKDTree(self.polygon)

    @cached_property
    def max_curvature_parameter(self) -> float:
        """Arclength of the boundary point of maximum curvature (first on ties)."""
        return float(self.samples[int(np.argmax(self.curvature(self.samples)))])

    def radius_of_curvature(self, s: float) -> float:
        """1 / |curvature| at s, capped at the radius of the circle of equal perimeter."""
        kappa = abs(float(self.curvature(s)))
        return 1.0 / max(kappa, 2 * np.pi / self.perimeter)

    # region queries

    def boundary_parameter(self, x: ArrayLike) -> NDArray[np.float64]:
        """Arclength of the boundary point closest to x."""
        x = np.asarray(x, dtype=float)
        if self._arclength is None:
            assert self.radius is not None
            theta = np.arctan2(-x[..., 0], x[..., 1])
            return np.mod(theta * self.radius, self.perimeter)
        _, index = self._tree.query(x)
        s = self.samples[index]
        # Gauss-Newton on the foot point, contraction rate |curvature * distance|
        for _ in range(NEWTON_STEPS):
            offset = self.point(s) - x
            s = s - np.sum(offset * self.tangent(s), axis=-1)
        return np.mod(s, self.perimeter)

    def distance_to_boundary(self, x: ArrayLike) -> NDArray[np.float64]:
        x = np.asarray(x, dtype=float)
        if self._arclength is None:
            assert self.radius is not None
            return np.abs(self.radius - np.linalg.norm(x, axis=-1))
        return np.linalg.norm(self.point(self.boundary_parameter(x)) - x, axis=-1)

    def contains(self, x: ArrayLike) -> NDArray[np.bool_]:
        x = np.atleast_2d(np.asarray(x, dtype=float))
        if self._arclength is None:
            assert self.radius is not None
            return np.linalg.norm(x, axis=-1) <= self.radius * (1 + settings.BOUNDARY_TOL)
        return PolygonPath(self.polygon).contains_points(x)

    def on_boundary(self, x: ArrayLike, tol: float | None = None) -> bool:
        tol = settings.BOUNDARY_TOL if tol is None else tol
        return bool(np.all(self.distance_to_boundary(x) <= tol))

    @property
    def area(self) -> float:
        if self.radius is not None:
            return float(np.pi * self.radius**2)
        xy = self.polygon
        x, y = xy[:, 0], xy[:, 1]
        return float(0.5 * np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))

    @cached_property
    def diameter(self) -> float:
        """Largest distance between two boundary points."""
        if self.radius is not None:
            return 2.0 * self.radius
        hull = self.polygon[ConvexHull(self.polygon).vertices]
        return float(np.max(pdist(hull)))
