from __future__ import annotations

import numpy as np
import pytest
from nbubble.errors import BracketingError, NegativeFieldError, ZeroFieldError
from nbubble.fem import Field, energy_J, nehari_G, quadratic_part
from nbubble.geometry import Mesh
from nbubble.ground_state import (
    max_over_ray,
    nehari_lower_bound,
    nehari_project,
    nehari_root,
    nehari_scale,
    positive_part,
)


class TestNehariRoot:
    def test_single_weight(self) -> None:
        # expm1(t^2) = q has the root sqrt(log1p(q))
        t = nehari_root(1.0, np.array([1.0]), np.array([1.0]))
        assert t == pytest.approx(np.sqrt(np.log(2.0)), rel=1e-14)
        t = nehari_root(3.0, np.array([2.0]), np.array([0.5]))
        assert (t * 0.5) ** 2 == pytest.approx(np.log1p(3.0 / (2.0 * 0.25)), rel=1e-12)

    def test_zero(self) -> None:
        with pytest.raises(ZeroFieldError):
            nehari_root(1.0, np.ones(3), np.zeros(3))
        with pytest.raises(ZeroFieldError):
            nehari_root(0.0, np.ones(3), np.ones(3))

    def test_root_beyond_overflow(self) -> None:
        with pytest.raises(BracketingError):
            nehari_root(1e300, np.array([1.0]), np.array([1.0]))


class TestNehariScale:
    def test_lands_on_nehari_set(self, bump: Field) -> None:
        d = 0.1
        t = nehari_scale(bump, d)
        scaled = bump.scaled(t)
        assert t > 0
        assert abs(nehari_G(scaled, d)) <= 1e-10 * quadratic_part(scaled, d)

    def test_constant(self, coarse_mesh: Mesh) -> None:
        t = nehari_scale(Field.constant(coarse_mesh, 1.0), 0.3)
        assert t == pytest.approx(np.sqrt(np.log(2.0)), rel=1e-10)

    def test_negative(self, bump: Field) -> None:
        values = bump.values.copy()
        values[7] = -0.1
        with pytest.raises(NegativeFieldError) as exc:
            nehari_scale(bump.with_values(values), 0.1)
        assert exc.value.node == 7

    def test_zero(self, coarse_mesh: Mesh) -> None:
        with pytest.raises(ZeroFieldError):
            nehari_scale(Field.constant(coarse_mesh, 0.0), 0.1)


class TestRayMaximum:
    def test_verified(self, bump: Field) -> None:
        d = 0.1
        result = max_over_ray(bump, d)
        assert result.verified
        assert result.t_star == pytest.approx(nehari_scale(bump, d))
        assert result.M == pytest.approx(energy_J(bump.scaled(result.t_star), d))
        assert result.M > 0
        assert result.scan_max <= result.M + 1e-12

    def test_scale_invariant(self, bump: Field) -> None:
        assert max_over_ray(bump.scaled(3.0), 0.1).M == pytest.approx(
            max_over_ray(bump, 0.1).M,
            rel=1e-10,
        )


class TestProjection:
    def test_positive_part(self, bump: Field) -> None:
        shifted = bump.with_values(bump.values - 0.5)
        clamped = positive_part(shifted)
        assert clamped.min == 0.0
        assert np.array_equal(clamped.values > 0, shifted.values > 0)

    def test_project(self, bump: Field) -> None:
        d = 0.2
        projected = nehari_project(bump.with_values(bump.values - 0.5), d)
        assert projected.min == 0.0
        assert abs(nehari_G(projected, d)) <= 1e-10 * quadratic_part(projected, d)

    def test_lower_bound(self, bump: Field) -> None:
        d = 0.1
        on_nehari = nehari_project(bump, d)
        bound = nehari_lower_bound(on_nehari)
        assert 0 < bound <= energy_J(on_nehari, d)
