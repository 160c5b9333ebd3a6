from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

from .assembly import element_gradients

if TYPE_CHECKING:
    from numpy.typing import NDArray

    from .field import Field


def triangle_gradients(field: Field) -> NDArray[np.float64]:
    gradients, _ = element_gradients(field.mesh)
    return np.einsum("tik,ti->tk", gradients, field.values[field.mesh.triangles])


def recovered_gradient(field: Field) -> NDArray[np.float64]:
    """Nodal gradients: area-weighted average of the constant gradients of adjacent triangles."""
    mesh = field.mesh
    per_triangle = triangle_gradients(field)
    weights = np.abs(mesh.signed_areas)
    total = np.zeros((mesh.n_nodes, 2))
    weight = np.zeros(mesh.n_nodes)
    for corner in range(3):
        np.add.at(total, mesh.triangles[:, corner], weights[:, None] * per_triangle)
        np.add.at(weight, mesh.triangles[:, corner], weights)
    return total / np.maximum(weight, np.finfo(float).tiny)[:, None]
