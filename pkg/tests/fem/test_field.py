from __future__ import annotations

import numpy as np
import pytest
from nbubble.errors import InvalidParameterError
from nbubble.fem import Field, FieldInterpolator, recovered_gradient, triangle_gradients
from nbubble.geometry import Mesh


def linear(x: np.ndarray) -> np.ndarray:
    return 2.0 * x[:, 0] - x[:, 1] + 1.0


class TestField:
    def test_wrong_length(self, coarse_mesh: Mesh) -> None:
        with pytest.raises(InvalidParameterError):
            Field(coarse_mesh, np.zeros(coarse_mesh.n_nodes - 1))

    def test_not_finite(self, coarse_mesh: Mesh) -> None:
        values = np.zeros(coarse_mesh.n_nodes)
        values[5] = np.nan
        with pytest.raises(InvalidParameterError, match="node 5"):
            Field(coarse_mesh, values)

    def test_constant(self, coarse_mesh: Mesh) -> None:
        field = Field.constant(coarse_mesh, 0.5)
        assert field.is_constant()
        assert field.max == field.min == 0.5
        assert field.scaled(4.0).max == 2.0
        assert not field.with_values(np.arange(coarse_mesh.n_nodes)).is_constant()

    def test_peak(self, bump: Field) -> None:
        assert np.allclose(bump.peak, [0.0, 1.0])
        assert bump.max == pytest.approx(1.0)
        assert bump.min > 0

    def test_peak_tie_takes_first_node(self, coarse_mesh: Mesh) -> None:
        assert Field.constant(coarse_mesh, 1.0).peak_node == 0


class TestInterpolation:
    def test_linear_exact(self, coarse_mesh: Mesh) -> None:
        interpolate = FieldInterpolator(Field.from_function(coarse_mesh, linear))
        rng = np.random.default_rng(11)
        radius = 0.9 * np.sqrt(rng.uniform(size=200))
        angle = rng.uniform(0.0, 2 * np.pi, size=200)
        points = np.stack([radius * np.cos(angle), radius * np.sin(angle)], axis=-1)
        assert np.allclose(interpolate(points), linear(points), atol=1e-12)
        assert interpolate.inside(points).all()

    def test_outside_takes_nearest_node(self, coarse_mesh: Mesh) -> None:
        field = Field.from_function(coarse_mesh, linear)
        interpolate = FieldInterpolator(field)
        value = interpolate([[0.0, 1.5]])
        assert not interpolate.inside([[0.0, 1.5]]).any()
        assert value[0] == field.values[coarse_mesh.nearest_node([0.0, 1.5])]


class TestRecovery:
    def test_linear_gradient(self, coarse_mesh: Mesh) -> None:
        field = Field.from_function(coarse_mesh, linear)
        assert np.allclose(triangle_gradients(field), [2.0, -1.0])
        assert np.allclose(recovered_gradient(field), [2.0, -1.0])
