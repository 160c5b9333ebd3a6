from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np
import pytest
from nbubble.asymptotics import (
    TestFunctionSpec,
    build_test_function,
    bump_chart,
    check_resolution,
    ray_level,
)
from nbubble.errors import InvalidParameterError, ResolutionError
from nbubble.geometry import chart_forward
from nbubble.ground_state import max_over_ray, nehari_scale

if TYPE_CHECKING:
    from nbubble.fem import Field
    from nbubble.geometry import Domain, Mesh
    from nbubble.radial import RadialProfile


class TestBumpChart:
    def test_disk(self, disk: Domain) -> None:
        chart = bump_chart(disk)
        assert np.allclose(chart.P, [0.0, 1.0])
        assert chart.radius == pytest.approx(0.9)
        assert chart.phi2_at_0 == pytest.approx(1.0)

    def test_ellipse_takes_the_sharpest_point(self, ellipse: Domain) -> None:
        chart = bump_chart(ellipse)
        assert abs(chart.P[0]) == pytest.approx(2.0, abs=1e-9)
        assert chart.radius == pytest.approx(0.45, rel=1e-5)
        assert chart.phi2_at_0 == pytest.approx(2.0, rel=1e-5)

    def test_explicit_point(self, disk: Domain) -> None:
        chart = bump_chart(disk, np.pi)
        assert np.allclose(chart.P, [0.0, -1.0])


class TestTestFunctionSpec:
    def test_defaults(self, disk: Domain, ground_state: RadialProfile) -> None:
        spec = TestFunctionSpec(chart=bump_chart(disk), profile=ground_state, d=0.04)
        assert spec.k == pytest.approx(0.45)
        assert spec.sqrt_d == pytest.approx(0.2)

    @pytest.mark.parametrize(("d", "k"), [(0.0, 0.1), (-0.1, 0.1), (0.01, 0.0), (0.01, 0.5)])
    def test_invalid(
        self,
        disk: Domain,
        ground_state: RadialProfile,
        d: float,
        k: float,
    ) -> None:
        with pytest.raises(InvalidParameterError):
            TestFunctionSpec(chart=bump_chart(disk), profile=ground_state, d=d, k=k)

    def test_value_at_base_point(self, disk: Domain, ground_state: RadialProfile) -> None:
        spec = TestFunctionSpec(chart=bump_chart(disk), profile=ground_state, d=0.01)
        assert float(spec.evaluate([0.0, 1.0])) == pytest.approx(ground_state.amplitude, rel=1e-9)
        assert float(spec.evaluate([0.0, -1.0])) == 0.0

    def test_compact_support(self, disk: Domain, ground_state: RadialProfile) -> None:
        spec = TestFunctionSpec(chart=bump_chart(disk), profile=ground_state, d=0.01)
        r = np.array([0.0, spec.k, 2.0 * spec.k, 3.0 * spec.k])
        values = spec.radial(r)
        assert values[0] == pytest.approx(ground_state.amplitude)
        assert values[1] > 0.0
        assert values[2] == 0.0
        assert values[3] == 0.0

    def test_support_beyond_chart_radius(self, disk: Domain, ground_state: RadialProfile) -> None:
        spec = TestFunctionSpec(chart=bump_chart(disk), profile=ground_state, d=0.25)
        z = np.array([0.85, 0.01])
        x = chart_forward(spec.chart, z)
        assert np.linalg.norm(x - spec.chart.P) > spec.chart.radius
        expected = float(spec.radial(np.linalg.norm(z)))
        assert expected > 0.0
        assert float(spec.evaluate(x)) == pytest.approx(expected, rel=1e-8)

    def test_radial_derivative(self, disk: Domain, ground_state: RadialProfile) -> None:
        spec = TestFunctionSpec(chart=bump_chart(disk), profile=ground_state, d=0.04)
        r = np.array([0.05, 0.15, 0.3, 0.4, 0.6, 0.8])
        h = 1e-6
        fd = (spec.radial(r + h) - spec.radial(r - h)) / (2 * h)
        assert np.allclose(spec.radial_derivative(r), fd, rtol=1e-5, atol=1e-9)


class TestBuildTestFunction:
    def test_resolution(self, disk: Domain, ground_state: RadialProfile, coarse_mesh: Mesh) -> None:
        fine = TestFunctionSpec(chart=bump_chart(disk), profile=ground_state, d=0.01)
        with pytest.raises(ResolutionError) as exc:
            check_resolution(fine, coarse_mesh)
        assert exc.value.h_required == pytest.approx(0.025)
        wide = TestFunctionSpec(chart=bump_chart(disk), profile=ground_state, d=1.0)
        assert check_resolution(wide, coarse_mesh) <= 0.25

    def test_unresolved_build(
        self,
        disk: Domain,
        ground_state: RadialProfile,
        coarse_mesh: Mesh,
    ) -> None:
        spec = TestFunctionSpec(chart=bump_chart(disk), profile=ground_state, d=0.01)
        phi = build_test_function(spec, coarse_mesh, resolved=False)
        assert np.allclose(phi.peak, [0.0, 1.0])
        assert phi.max == pytest.approx(ground_state.amplitude, rel=1e-9)
        far = np.linalg.norm(coarse_mesh.nodes - [0.0, 1.0], axis=1) > 1.1
        assert np.all(phi.values[far] == 0.0)
        assert phi.min == 0.0
        with pytest.raises(ResolutionError):
            build_test_function(spec, coarse_mesh)


class TestRayLevel:
    def test_golden_agrees_with_nehari(self, bump: Field) -> None:
        level = ray_level(bump, 0.1)
        assert level.t0 == pytest.approx(nehari_scale(bump, 0.1))
        assert level.discrepancy <= 1e-6 * level.t0
        assert level.M == pytest.approx(max_over_ray(bump, 0.1).M)
