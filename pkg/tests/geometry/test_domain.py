from __future__ import annotations

import numpy as np
import pytest
from nbubble.enums import DomainKind
from nbubble.errors import InvalidParameterError
from nbubble.geometry import Domain

ELLIPSE_PERIMETER = 9.688448220547675


class TestDisk:
    def test_parameterisation(self, disk: Domain) -> None:
        assert disk.kind is DomainKind.UNIT_DISK
        assert np.allclose(disk.point(0.0), [0.0, 1.0])
        assert np.allclose(disk.tangent(0.0), [-1.0, 0.0])
        assert np.allclose(disk.inner_normal(0.0), [0.0, -1.0])
        assert np.allclose(disk.point(np.pi / 2), [-1.0, 0.0])

    def test_constants(self, disk: Domain) -> None:
        assert disk.perimeter == pytest.approx(2 * np.pi)
        assert disk.area == pytest.approx(np.pi)
        assert disk.diameter == pytest.approx(2.0)
        assert np.all(disk.curvature(np.linspace(0.0, 6.0, 7)) == 1.0)
        assert disk.radius_of_curvature(1.0) == pytest.approx(1.0)

    def test_scaled_disk(self) -> None:
        domain = Domain.disk(2.0)
        assert np.allclose(domain.point(0.0), [0.0, 2.0])
        assert float(domain.curvature(0.3)) == pytest.approx(0.5)

    def test_boundary_parameter(self, disk: Domain) -> None:
        s = np.linspace(0.1, 6.1, 25)
        assert np.allclose(disk.boundary_parameter(disk.point(s)), s)

    def test_region_queries(self, disk: Domain) -> None:
        assert disk.distance_to_boundary([0.0, 0.5]) == pytest.approx(0.5)
        assert disk.contains([[0.0, 0.0], [0.0, 1.1]]).tolist() == [True, False]
        assert disk.on_boundary([0.6, 0.8])
        assert not disk.on_boundary([0.6, 0.7])

    def test_bad_radius(self) -> None:
        with pytest.raises(InvalidParameterError):
            Domain.disk(0.0)


class TestEllipse:
    def test_perimeter(self, ellipse: Domain) -> None:
        assert ellipse.kind is DomainKind.GENERIC_CURVE
        assert ellipse.perimeter == pytest.approx(ELLIPSE_PERIMETER, rel=1e-9)

    def test_axis_points(self, ellipse: Domain) -> None:
        quarter = ellipse.perimeter / 4
        assert np.allclose(ellipse.point(0.0), [2.0, 0.0], atol=1e-12)
        assert np.allclose(ellipse.point(quarter), [0.0, 1.0], atol=1e-10)
        assert np.allclose(ellipse.point(2 * quarter), [-2.0, 0.0], atol=1e-10)

    def test_curvature(self, ellipse: Domain) -> None:
        assert float(ellipse.curvature(0.0)) == pytest.approx(2.0, rel=1e-6)
        assert float(ellipse.curvature(ellipse.perimeter / 4)) == pytest.approx(0.25, rel=1e-6)
        assert ellipse.radius_of_curvature(0.0) == pytest.approx(0.5, rel=1e-6)

    def test_max_curvature_on_major_axis(self, ellipse: Domain) -> None:
        x = ellipse.point(ellipse.max_curvature_parameter)
        assert abs(x[0]) == pytest.approx(2.0, abs=1e-9)

    def test_unit_speed(self, ellipse: Domain) -> None:
        s = np.linspace(0.0, ellipse.perimeter, 50)
        assert np.allclose(np.linalg.norm(ellipse.tangent(s), axis=-1), 1.0)
        step = 1e-6
        chord = np.linalg.norm(ellipse.point(s + step) - ellipse.point(s), axis=-1)
        assert np.allclose(chord / step, 1.0, atol=1e-6)

    def test_inner_normal_points_inward(self, ellipse: Domain) -> None:
        s = np.linspace(0.0, ellipse.perimeter, 40, endpoint=False)
        inside = ellipse.point(s) + 0.05 * ellipse.inner_normal(s)
        assert ellipse.contains(inside).all()

    def test_boundary_parameter(self, ellipse: Domain) -> None:
        s = np.linspace(0.1, ellipse.perimeter - 0.1, 30)
        assert np.allclose(ellipse.boundary_parameter(ellipse.point(s)), s, atol=1e-10)

    def test_region_queries(self, ellipse: Domain) -> None:
        assert float(ellipse.distance_to_boundary([0.0, 0.0])) == pytest.approx(1.0)
        assert ellipse.contains([[1.9, 0.0], [0.0, 1.05]]).tolist() == [True, False]
        assert ellipse.area == pytest.approx(2 * np.pi, rel=1e-5)
        assert ellipse.diameter == pytest.approx(4.0)

    @pytest.mark.parametrize(("a", "b"), [(0.0, 1.0), (1.0, -1.0)])
    def test_bad_axes(self, a: float, b: float) -> None:
        with pytest.raises(InvalidParameterError):
            Domain.ellipse(a, b)


class TestFromCurve:
    def test_circle_curve_matches_disk(self) -> None:
        def circle(t: np.ndarray) -> np.ndarray:
            theta = 2 * np.pi * np.asarray(t)
            return np.stack([np.cos(theta), np.sin(theta)], axis=-1)

        domain = Domain.from_curve(circle)
        assert domain.perimeter == pytest.approx(2 * np.pi, rel=1e-8)
        s = np.linspace(0.0, domain.perimeter, 9)
        assert np.allclose(domain.curvature(s), 1.0, rtol=1e-5)

    def test_squashed_curve(self) -> None:
        def squash(t: np.ndarray) -> np.ndarray:
            theta = 2 * np.pi * np.asarray(t)
            return np.stack([1.5 * np.cos(theta), np.sin(theta)], axis=-1)

        domain = Domain.from_curve(squash)
        assert float(domain.curvature(0.0)) == pytest.approx(1.5, rel=1e-5)

    def test_diameter_of_tilted_curve(self) -> None:
        def tilted(t: np.ndarray) -> np.ndarray:
            theta = 2 * np.pi * np.asarray(t)
            x, y = 2.0 * np.cos(theta), np.sin(theta)
            c = s = np.sqrt(0.5)
            return np.stack([c * x - s * y, s * x + c * y], axis=-1)

        domain = Domain.from_curve(tilted)
        width = float(np.max(np.ptp(domain.polygon, axis=0)))
        assert width == pytest.approx(np.sqrt(10.0), rel=1e-4)
        assert domain.diameter == pytest.approx(4.0, rel=1e-6)

    def test_radius_of_curvature_is_capped(self) -> None:
        def flat_sided(t: np.ndarray) -> np.ndarray:
            theta = 2 * np.pi * np.asarray(t)
            r = 1.0 + 0.2 * np.cos(2 * theta)
            return np.stack([r * np.cos(theta), r * np.sin(theta)], axis=-1)

        domain = Domain.from_curve(flat_sided)
        s = np.linspace(0.0, domain.perimeter, 64, endpoint=False)
        radii = np.array([domain.radius_of_curvature(float(value)) for value in s])
        assert np.all(radii <= domain.perimeter / (2 * np.pi) * (1 + 1e-12))
        kappa = np.abs(domain.curvature(s))
        assert np.allclose(radii, 1.0 / np.maximum(kappa, 2 * np.pi / domain.perimeter))
