from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import TYPE_CHECKING

import numpy as np
from scipy import sparse
from scipy.sparse.linalg import splu

from nbubble.errors import AssemblyError, SolverError

if TYPE_CHECKING:
    from numpy.typing import NDArray
    from scipy.sparse.linalg import SuperLU

    from nbubble.geometry import Mesh

logger = logging.getLogger(__name__)

AREA_FLOOR = 1e-14  # relative to h_max squared
LOCAL_MASS = (np.ones((3, 3)) + np.eye(3)) / 12.0


@dataclass(frozen=True, eq=False)
class AssembledOperators:
    stiffness: sparse.csr_matrix
    mass: sparse.csr_matrix
    lumped_mass: NDArray[np.float64]

    def h1_matrix(self, d: float) -> sparse.csr_matrix:
        return (d * self.stiffness + self.mass).tocsr()


def element_gradients(mesh: Mesh) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Constant gradients of the three barycentric basis functions per triangle, and areas."""
    xy = mesh.nodes[mesh.triangles]
    x, y = xy[..., 0], xy[..., 1]
    area = mesh.signed_areas
    b = np.stack([y[:, 1] - y[:, 2], y[:, 2] - y[:, 0], y[:, 0] - y[:, 1]], axis=1)
    c = np.stack([x[:, 2] - x[:, 1], x[:, 0] - x[:, 2], x[:, 1] - x[:, 0]], axis=1)
    gradients = np.stack([b, c], axis=-1) / (2.0 * area[:, None, None])
    return gradients, area


def assemble(mesh: Mesh) -> AssembledOperators:
    area = mesh.signed_areas
    floor = AREA_FLOOR * mesh.h_max**2
    degenerate = np.flatnonzero(area <= floor)
    if len(degenerate):
        index = int(degenerate[0])
        raise AssemblyError(index, float(area[index]))

    gradients, area = element_gradients(mesh)
    local_stiffness = area[:, None, None] * np.einsum("tik,tjk->tij", gradients, gradients)
    local_mass = area[:, None, None] * LOCAL_MASS

    # triangle-major COO order; duplicates are summed in that fixed order
    rows = np.repeat(mesh.triangles, 3, axis=1).ravel()
    cols = np.tile(mesh.triangles, (1, 3)).ravel()
    shape = (mesh.n_nodes, mesh.n_nodes)
    stiffness = sparse.coo_matrix((local_stiffness.ravel(), (rows, cols)), shape=shape).tocsr()
    mass = sparse.coo_matrix((local_mass.ravel(), (rows, cols)), shape=shape).tocsr()
    lumped = np.asarray(mass.sum(axis=1)).ravel()
    logger.debug("assembled %d triangles, area %.12g", mesh.n_triangles, lumped.sum())
    return AssembledOperators(stiffness=stiffness, mass=mass, lumped_mass=lumped)


@lru_cache(maxsize=16)
def operators(mesh: Mesh) -> AssembledOperators:
    return assemble(mesh)


@lru_cache(maxsize=16)
def h1_factor(mesh: Mesh, d: float) -> SuperLU:
    """Sparse LU of d K + M, reused by every gradient at this (mesh, d)."""
    matrix = operators(mesh).h1_matrix(d).tocsc()
    try:
        return splu(matrix, permc_spec="MMD_AT_PLUS_A")
    except RuntimeError as ex:
        raise SolverError(f"Factorisation of d K + M failed: {ex}") from ex
