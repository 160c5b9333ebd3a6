from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

from nbubble.errors import InvalidParameterError, SolverError
from nbubble.radial.nonlinearity import NONLINEARITY

from .assembly import h1_factor, operators
from .field import Field

if TYPE_CHECKING:
    from numpy.typing import ArrayLike, NDArray

RAY_CHUNK = 32


def _check_d(d: float) -> None:
    if not d > 0:
        raise InvalidParameterError(f"Diffusion d must be positive, got {d}.")


def h1_inner(u: Field, v: Field, d: float) -> float:
    """<u, v> in the d-weighted H1 inner product, u^T (d K + M) v."""
    ops = operators(u.mesh)
    return float(d * (u.values @ (ops.stiffness @ v.values)) + u.values @ (ops.mass @ v.values))


def quadratic_part(field: Field, d: float) -> float:
    """int d|grad u|^2 + u^2."""
    return h1_inner(field, field, d)


def gradient_energy(field: Field) -> float:
    return float(field.values @ (operators(field.mesh).stiffness @ field.values))


def l2_energy(field: Field) -> float:
    return float(field.values @ (operators(field.mesh).mass @ field.values))


def nonlinear_mass(field: Field) -> float:
    """Lumped quadrature of int u^2 (e^{u^2} - 1)."""
    NONLINEARITY.check(field.values)
    return float(operators(field.mesh).lumped_mass @ NONLINEARITY.wf(field.values))


def potential(field: Field) -> float:
    """Lumped quadrature of int F(u)."""
    NONLINEARITY.check(field.values)
    return float(operators(field.mesh).lumped_mass @ NONLINEARITY.F(field.values))


def energy_J(field: Field, d: float) -> float:
    _check_d(d)
    return 0.5 * quadratic_part(field, d) - potential(field)


def nehari_G(field: Field, d: float) -> float:
    _check_d(d)
    return quadratic_part(field, d) - nonlinear_mass(field)


def residual(field: Field, d: float) -> NDArray[np.float64]:
    """Discrete J_d'(u) as a vector: d K u + M u - m f(u), m the lumped mass."""
    _check_d(d)
    ops = operators(field.mesh)
    u = field.values
    NONLINEARITY.check(u)
    return d * (ops.stiffness @ u) + ops.mass @ u - ops.lumped_mass * NONLINEARITY.f(u)


def gradient_J(field: Field, d: float) -> Field:
    """Riesz representative of J_d'(u) in the d-weighted H1 inner product."""
    r = residual(field, d)
    g = h1_factor(field.mesh, float(d)).solve(r)
    if not np.all(np.isfinite(g)):
        raise SolverError("Gradient solve returned non-finite values.")
    return field.with_values(g)


def ray_energy(field: Field, d: float, t: ArrayLike) -> NDArray[np.float64]:
    """h(t) = J_d(t u) for every t, with one quadratic form evaluation."""
    _check_d(d)
    t = np.asarray(t, dtype=float)
    u = field.values
    NONLINEARITY.check(np.max(np.abs(t)) * np.max(np.abs(u)) if u.size and t.size else 0.0)
    lumped = operators(field.mesh).lumped_mass
    quadratic = quadratic_part(field, d)
    flat = t.ravel()
    potentials = np.empty_like(flat)
    for start in range(0, flat.size, RAY_CHUNK):
        chunk = flat[start : start + RAY_CHUNK]
        values = NONLINEARITY.F(np.multiply.outer(chunk, u))
        potentials[start : start + RAY_CHUNK] = values @ lumped
    potentials = potentials.reshape(t.shape)
    return 0.5 * t**2 * quadratic - potentials
