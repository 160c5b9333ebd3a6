from __future__ import annotations

import numpy as np
import pytest
from nbubble.errors import InvalidParameterError, OverflowNumericalError
from nbubble.fem import (
    Field,
    energy_J,
    gradient_energy,
    gradient_J,
    h1_inner,
    l2_energy,
    nehari_G,
    nonlinear_mass,
    potential,
    quadratic_part,
    ray_energy,
    residual,
)
from nbubble.geometry import Mesh

SQRT_LN2 = float(np.sqrt(np.log(2.0)))


class TestConstantStates:
    def test_zero(self, coarse_mesh: Mesh) -> None:
        zero = Field.constant(coarse_mesh, 0.0)
        assert energy_J(zero, 0.1) == 0.0
        assert nehari_G(zero, 0.1) == 0.0

    def test_nontrivial_constant(self, coarse_mesh: Mesh) -> None:
        field = Field.constant(coarse_mesh, SQRT_LN2)
        expected = (np.log(2.0) - 0.5) * coarse_mesh.area
        assert energy_J(field, 0.05) == pytest.approx(expected, rel=1e-12)
        assert energy_J(field, 0.05) == pytest.approx((np.log(2.0) - 0.5) * np.pi, rel=3e-3)
        assert abs(nehari_G(field, 0.05)) <= 1e-12
        assert np.max(np.abs(residual(field, 0.05))) <= 1e-12


class TestEnergy:
    def test_quadratic_split(self, bump: Field) -> None:
        d = 0.2
        assert quadratic_part(bump, d) == pytest.approx(
            d * gradient_energy(bump) + l2_energy(bump),
            rel=1e-12,
        )
        assert energy_J(bump, d) == pytest.approx(0.5 * quadratic_part(bump, d) - potential(bump))
        assert nehari_G(bump, d) == pytest.approx(quadratic_part(bump, d) - nonlinear_mass(bump))

    def test_h1_inner_symmetric(self, bump: Field) -> None:
        other = bump.with_values(np.sin(3 * bump.mesh.nodes[:, 0]))
        assert h1_inner(bump, other, 0.1) == pytest.approx(h1_inner(other, bump, 0.1))

    def test_residual_is_directional_derivative(self, bump: Field) -> None:
        d = 0.1
        direction = bump.with_values(np.cos(2 * bump.mesh.nodes[:, 1]))
        eps = 1e-6
        plus = energy_J(bump.with_values(bump.values + eps * direction.values), d)
        minus = energy_J(bump.with_values(bump.values - eps * direction.values), d)
        fd = (plus - minus) / (2 * eps)
        assert residual(bump, d) @ direction.values == pytest.approx(fd, rel=1e-6)

    def test_gradient_is_riesz_representative(self, bump: Field) -> None:
        d = 0.1
        direction = bump.with_values(np.cos(2 * bump.mesh.nodes[:, 1]))
        assert h1_inner(gradient_J(bump, d), direction, d) == pytest.approx(
            residual(bump, d) @ direction.values,
            rel=1e-8,
        )

    def test_ray_energy(self, bump: Field) -> None:
        d = 0.1
        values = ray_energy(bump, d, [0.0, 1.0, 2.0])
        assert values[0] == 0.0
        assert values[1] == pytest.approx(energy_J(bump, d), rel=1e-12)
        assert values[2] == pytest.approx(energy_J(bump.scaled(2.0), d), rel=1e-12)
        assert ray_energy(bump, d, np.zeros((2, 3))).shape == (2, 3)

    def test_bad_diffusion(self, bump: Field) -> None:
        for d in (0.0, -1.0):
            with pytest.raises(InvalidParameterError):
                energy_J(bump, d)
            with pytest.raises(InvalidParameterError):
                nehari_G(bump, d)

    def test_overflow(self, bump: Field) -> None:
        with pytest.raises(OverflowNumericalError):
            nonlinear_mass(bump.scaled(30.0))
        with pytest.raises(OverflowNumericalError):
            ray_energy(bump, 0.1, [1.0, 40.0])


class TestGradientAgainstDifferences:
    @pytest.mark.parametrize("seed", range(20))
    def test_random_fields(self, coarse_mesh: Mesh, seed: int) -> None:
        rng = np.random.default_rng(seed)
        d = float(rng.choice([0.5, 0.1, 0.01]))
        x = coarse_mesh.nodes
        center = rng.uniform(-0.5, 0.5, size=2)
        bump = np.exp(-np.sum((x - center) ** 2, axis=1) / rng.uniform(0.05, 0.5))
        u = Field(coarse_mesh, rng.uniform(0.5, 1.5) * bump + rng.uniform(0.0, 0.2, len(x)))
        v = u.with_values(rng.standard_normal(len(x)))

        eps = 1e-6
        plus = energy_J(u.with_values(u.values + eps * v.values), d)
        minus = energy_J(u.with_values(u.values - eps * v.values), d)
        fd = (plus - minus) / (2 * eps)
        g = gradient_J(u, d)
        scale = np.sqrt(h1_inner(g, g, d) * h1_inner(v, v, d))
        assert abs(h1_inner(g, v, d) - fd) <= 1e-4 * scale
