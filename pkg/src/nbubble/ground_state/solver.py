from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, TypedDict

import humanize
import numpy as np

from nbubble.enums import InitPreset
from nbubble.errors import InvalidParameterError, LineSearchError
from nbubble.fem import Field, energy_J, gradient_J, h1_inner, nehari_G, quadratic_part
from nbubble.settings import settings

from .nehari import nehari_project, nehari_scale, positive_part

if TYPE_CHECKING:
    from numpy.typing import NDArray

    from nbubble.geometry import Mesh
    from nbubble.radial import RadialProfile

logger = logging.getLogger(__name__)

PROGRESS_EVERY = 50
# J is summed over every node, so comparisons carry this much relative rounding
ENERGY_ROUNDOFF = 64 * np.finfo(float).eps


class SolveReportDict(TypedDict):
    d: float
    m_d: float
    peak_x: float
    peak_y: float
    peak_on_boundary: bool
    dist_to_boundary: float
    iterations: int
    grad_norm: float


@dataclass(frozen=True, eq=False)
class SolveReport:
    d: float
    u: Field
    m_d: float
    peak: NDArray[np.float64]
    peak_on_boundary: bool
    dist_to_boundary: float
    iterations: int
    grad_norm: float
    converged: bool = True
    energies: tuple[float, ...] = field(default=(), repr=False)

    @property
    def peak_node(self) -> int:
        return self.u.peak_node

    def to_dict(self) -> SolveReportDict:
        return {
            "d": self.d,
            "m_d": self.m_d,
            "peak_x": float(self.peak[0]),
            "peak_y": float(self.peak[1]),
            "peak_on_boundary": self.peak_on_boundary,
            "dist_to_boundary": self.dist_to_boundary,
            "iterations": self.iterations,
            "grad_norm": self.grad_norm,
        }


def initial_field(
    mesh: Mesh,
    d: float,
    preset: InitPreset,
    profile: RadialProfile | None = None,
) -> Field:
    if preset is InitPreset.CONSTANT:
        return Field.constant(mesh, 1.0)
    if preset is InitPreset.CURVATURE_BUMP:
        # imported here, the asymptotics package itself builds on ground states
        from nbubble.asymptotics.bump import TestFunctionSpec, build_test_function, bump_chart
        from nbubble.radial import cached_ground_state

        if mesh.domain is None:
            raise InvalidParameterError("The curvature-bump start needs a mesh with a domain.")
        spec = TestFunctionSpec(
            chart=bump_chart(mesh.domain),
            profile=profile if profile is not None else cached_ground_state(),
            d=d,
        )
        return build_test_function(spec, mesh, resolved=False)
    raise InvalidParameterError(f"Preset {preset} needs an explicit initial field.")


def _grad_norm(g: Field, d: float) -> float:
    return float(np.sqrt(max(h1_inner(g, g, d), 0.0)))


def _line_search(
    u: Field,
    g: Field,
    d: float,
    energy: float,
    grad_norm: float,
    iteration: int,
) -> tuple[Field, float]:
    alpha = settings.ARMIJO_ALPHA
    slack = ENERGY_ROUNDOFF * abs(energy)
    for _ in range(settings.ARMIJO_MAX_BACKTRACKS + 1):
        trial = positive_part(u.with_values(u.values - alpha * g.values))
        if np.any(trial.values > 0.0):
            candidate = trial.scaled(nehari_scale(trial, d))
            trial_energy = energy_J(candidate, d)
            if trial_energy <= energy - settings.ARMIJO_SLOPE * alpha * grad_norm**2 + slack:
                return candidate, trial_energy
        alpha *= settings.ARMIJO_FACTOR
    raise LineSearchError(iteration)


def solve_ground_state(
    d: float,
    mesh: Mesh,
    init: Field | InitPreset = InitPreset.CURVATURE_BUMP,
    *,
    profile: RadialProfile | None = None,
    max_iter: int | None = None,
    grad_tol: float | None = None,
) -> SolveReport:
    """
    Minimize J_d over the discrete Nehari set by projected gradient descent.

    Every step takes u - alpha g with g the d-weighted H1 gradient, clamps it at zero
    and rescales it back onto G_d = 0; alpha is found by Armijo backtracking.
    """
    if not d > 0:
        raise InvalidParameterError(f"Diffusion d must be positive, got {d}.")
    max_iter = settings.DESCENT_MAX_ITER if max_iter is None else max_iter
    grad_tol = settings.DESCENT_GRAD_TOL if grad_tol is None else grad_tol
    started = time.monotonic()

    start = init if isinstance(init, Field) else initial_field(mesh, d, init, profile)
    if start.mesh is not mesh:
        raise InvalidParameterError("Initial field lives on a different mesh.")
    if np.any(start.values < 0.0):
        logger.debug("initial field has negative values, using its positive part")
    u = nehari_project(start, d)
    energy = energy_J(u, d)
    energies = [energy]

    g = gradient_J(u, d)
    grad_norm = _grad_norm(g, d)
    iteration = 0
    converged = grad_norm <= grad_tol * np.sqrt(max(energy, 0.0))
    while not converged and iteration < max_iter:
        iteration += 1
        u, energy = _line_search(u, g, d, energy, grad_norm, iteration)
        energies.append(energy)
        g = gradient_J(u, d)
        grad_norm = _grad_norm(g, d)
        converged = grad_norm <= grad_tol * np.sqrt(max(energy, 0.0))
        if iteration % PROGRESS_EVERY == 0:
            logger.debug(
                "descent d=%g iteration %d: J=%.15g, gradient norm %.3g, G/quad %.2g",
                d,
                iteration,
                energy,
                grad_norm,
                nehari_G(u, d) / quadratic_part(u, d),
            )

    if not converged:
        logger.warning(
            "warning: descent at d=%g stopped after %d iterations with gradient norm %.3g",
            d,
            iteration,
            grad_norm,
        )
    peak = u.peak.copy()
    report = SolveReport(
        d=d,
        u=u,
        m_d=energy,
        peak=peak,
        peak_on_boundary=bool(mesh.boundary_mask[u.peak_node]),
        dist_to_boundary=mesh.distance_to_boundary(peak),
        iterations=iteration,
        grad_norm=grad_norm,
        converged=converged,
        energies=tuple(energies),
    )
    logger.info(
        "solved d=%g: m_d=%.12g, peak (%.4f, %.4f)%s after %d iterations (%s)",
        d,
        report.m_d,
        peak[0],
        peak[1],
        " on the boundary" if report.peak_on_boundary else "",
        iteration,
        humanize.naturaldelta(time.monotonic() - started),
    )
    return report
