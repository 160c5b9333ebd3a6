from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from functools import lru_cache
from typing import TYPE_CHECKING

import humanize
import numpy as np
from scipy.integrate import quad, simpson, solve_ivp
from scipy.special import k0, k1

from nbubble.enums import StopReason
from nbubble.errors import (
    BracketingError,
    BracketRangeError,
    FitError,
    InvalidParameterError,
    SolverError,
)
from nbubble.settings import settings

from .nonlinearity import NONLINEARITY
from .profile import DECAY_WINDOW, RadialProfile, decay_rate

if TYPE_CHECKING:
    from collections.abc import Callable

    from numpy.typing import NDArray
    from scipy.integrate import OdeSolution

logger = logging.getLogger(__name__)

MIN_RMAX = 20.0
SERIES_SCALE = 1e-3
ATOL_SCALE = 1e-2
TAIL_EXTENSION = 5.0
MAX_EXTENSIONS = 20


@dataclass(frozen=True)
class _Event:
    reason: StopReason
    fn: Callable[[float, NDArray[np.float64]], float]
    direction: float
    terminal: bool = True

    def __call__(self, r: float, y: NDArray[np.float64]) -> float:
        return self.fn(r, y)


@dataclass(frozen=True, eq=False)
class RadialTrajectory:
    """One shot of w'' + w'/r = w(2 - e^{w^2}) from w(0) = amplitude, w'(0) = 0."""

    amplitude: float
    r: NDArray[np.float64]
    w: NDArray[np.float64]
    dw: NDArray[np.float64]
    reason: StopReason
    dense: OdeSolution

    @property
    def r_stop(self) -> float:
        return float(self.r[-1])

    @property
    def curvature(self) -> float:
        """w''(0), from the series start."""
        return 0.5 * self.amplitude * (2.0 - np.exp(self.amplitude**2))

    def evaluate(self, r: NDArray[np.float64]) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
        r = np.asarray(r, dtype=float)
        start = float(self.r[1])
        near = r < start
        clipped = np.clip(r, start, self.r_stop)
        w, dw = self.dense(clipped)
        w = np.where(near, self.amplitude + 0.5 * self.curvature * r * r, w)
        dw = np.where(near, self.curvature * r, dw)
        return w, dw


def integrate_radial(
    amplitude: float,
    r_max: float,
    tol: float | None = None,
) -> RadialTrajectory:
    tol = settings.SHOOT_RTOL if tol is None else tol
    if amplitude <= 0:
        raise InvalidParameterError(f"Amplitude must be positive, got {amplitude}.")
    if not 1e-14 < tol < 1e-6:
        raise InvalidParameterError(f"Integrator tolerance must lie in (1e-14, 1e-6), got {tol}.")
    if r_max <= settings.SERIES_START:
        raise InvalidParameterError(f"r_max must exceed {settings.SERIES_START:g}, got {r_max}.")
    NONLINEARITY.check(amplitude)

    # w(r) = a + a(2 - e^{a^2}) r^2 / 4 near the removable singularity of w'/r
    curvature = 0.5 * amplitude * (2.0 - np.exp(amplitude**2))
    # the series only holds well inside the radius where the r^2 term reaches a
    r0 = settings.SERIES_START
    if curvature != 0.0:
        r0 = min(r0, SERIES_SCALE * np.sqrt(amplitude / abs(curvature)))
    y0 = np.array([amplitude + 0.5 * curvature * r0**2, curvature * r0])
    floor = settings.DECAY_FLOOR
    # dw must rise clearly above zero, otherwise rounding noise at an equilibrium counts
    slack = 1e-12 * amplitude

    def rhs(r: float, y: NDArray[np.float64]) -> NDArray[np.float64]:
        w, dw = y
        NONLINEARITY.check(w)
        return np.array([dw, w * (2.0 - np.exp(w * w)) - dw / r])

    events = [
        _Event(StopReason.CROSSED_ZERO, lambda r, y: y[0], direction=-1),
        _Event(StopReason.TURNED_UP, lambda r, y: y[1] - slack, direction=1),
        _Event(StopReason.TURNED_UP, lambda r, y: y[0] - 2.0 * amplitude, direction=1),
        _Event(StopReason.DECAYED, lambda r, y: max(y[0], abs(y[1])) - floor, direction=-1),
    ]
    solution = solve_ivp(
        rhs,
        (r0, r_max),
        y0,
        method="DOP853",
        rtol=tol,
        atol=tol * ATOL_SCALE,
        events=events,
        dense_output=True,
    )
    if solution.status == -1:
        raise SolverError(f"Radial integration failed: {solution.message}")

    reason = StopReason.REACHED_RMAX
    if solution.status == 1:
        hits = [
            (float(t[0]), event.reason)
            for event, t in zip(events, solution.t_events, strict=True)
            if len(t)
        ]
        reason = min(hits, key=lambda hit: hit[0])[1]

    return RadialTrajectory(
        amplitude=amplitude,
        r=np.concatenate([[0.0], solution.t]),
        w=np.concatenate([[amplitude], solution.y[0]]),
        dw=np.concatenate([[0.0], solution.y[1]]),
        reason=reason,
        dense=solution.sol,
    )


def _bracket(r_max: float, tol: float | None) -> tuple[RadialTrajectory, RadialTrajectory]:
    low = np.sqrt(np.log(2.0)) + settings.SHOOT_SCAN_OFFSET
    amplitudes = np.linspace(low, settings.SHOOT_SCAN_TOP, settings.SHOOT_SCAN_POINTS)
    previous: RadialTrajectory | None = None
    for amplitude in amplitudes:
        shot = integrate_radial(float(amplitude), r_max, tol)
        logger.debug("scan amplitude %.6f: %s at r=%.3f", amplitude, shot.reason, shot.r_stop)
        if shot.reason is StopReason.CROSSED_ZERO:
            if previous is None:
                break
            return previous, shot
        previous = shot
    raise BracketingError(
        f"No change from {StopReason.TURNED_UP} to {StopReason.CROSSED_ZERO} for amplitudes "
        f"in ({low:.4f}, {settings.SHOOT_SCAN_TOP:g}) with r_max={r_max:g}.",
    )


def _tail_fraction(profile: RadialProfile) -> float:
    c = profile.tail_coefficient
    if c == 0.0:
        return 0.0
    tail, _ = quad(lambda r: (k0(r) ** 2 + k1(r) ** 2) * r, profile.r_max, np.inf)
    total = simpson((profile.dw**2 + profile.w**2) * profile.r, x=profile.r)
    return float(c * c * tail / total)


def _splice(lower: RadialTrajectory, upper: RadialTrajectory, r_max: float) -> RadialProfile:
    step = settings.PROFILE_STEP
    limit = min(lower.r_stop, upper.r_stop)
    radii = np.arange(0.0, limit, step)
    w_lo, _ = lower.evaluate(radii)
    w_hi, _ = upper.evaluate(radii)
    apart = np.abs(w_hi - w_lo) > settings.SEPARATION_TOL * np.abs(0.5 * (w_lo + w_hi))
    r_trusted = float(radii[np.argmax(apart)]) if apart.any() else limit

    # least-squares match of c K0(r) over the last unit before the splice
    window = radii[(radii >= max(r_trusted - 1.0, 0.5 * r_trusted)) & (radii <= r_trusted)]
    w_lo, _ = lower.evaluate(window)
    w_hi, _ = upper.evaluate(window)
    if len(window) < 2:
        raise FitError(f"Shooting bracket separates too early to fit the tail (r={r_trusted:.3g}).")
    basis = k0(window)
    c = float(np.dot(0.5 * (w_lo + w_hi), basis) / np.dot(basis, basis))

    for _ in range(MAX_EXTENSIONS):
        r = np.linspace(0.0, r_max, round(r_max / step) + 1)
        trusted = r <= r_trusted
        w_lo, dw_lo = lower.evaluate(r[trusted])
        w_hi, dw_hi = upper.evaluate(r[trusted])
        tail = r[~trusted]
        profile = RadialProfile(
            r=r,
            w=np.concatenate([0.5 * (w_lo + w_hi), c * k0(tail)]),
            dw=np.concatenate([0.5 * (dw_lo + dw_hi), -c * k1(tail)]),
            amplitude=0.5 * (lower.amplitude + upper.amplitude),
            r_trusted=r_trusted,
            tail_coefficient=c,
        )
        fraction = _tail_fraction(profile)
        if fraction <= settings.TAIL_TOL:
            return profile
        logger.warning(
            "warning: tail beyond r_max=%g carries %.3g of the energy, extending the grid",
            r_max,
            fraction,
        )
        r_max += TAIL_EXTENSION
    raise FitError(f"Tail contribution still above {settings.TAIL_TOL:g} at r_max={r_max:g}.")


def shoot_ground_state(
    tol_amplitude: float = 1e-10,
    r_max: float = 25.0,
    tol: float | None = None,
) -> RadialProfile:
    if r_max < MIN_RMAX:
        raise BracketRangeError(r_max, MIN_RMAX)
    if tol_amplitude <= 0:
        raise InvalidParameterError(f"Amplitude tolerance must be positive, got {tol_amplitude}.")
    started = time.monotonic()

    lower, upper = _bracket(r_max, tol)
    steps = 0
    while upper.amplitude - lower.amplitude > tol_amplitude:
        shot = integrate_radial(0.5 * (lower.amplitude + upper.amplitude), r_max, tol)
        if shot.reason is StopReason.CROSSED_ZERO:
            upper = shot
        else:
            lower = shot
        steps += 1
        logger.debug(
            "bisection step %d: [%.14f, %.14f] lower end %s",
            steps,
            lower.amplitude,
            upper.amplitude,
            lower.reason,
        )

    profile = _splice(lower, upper, r_max)
    theta = decay_rate(profile, DECAY_WINDOW)
    profile = RadialProfile(
        r=profile.r,
        w=profile.w,
        dw=profile.dw,
        amplitude=profile.amplitude,
        theta=theta,
        r_trusted=profile.r_trusted,
        tail_coefficient=profile.tail_coefficient,
    )
    elapsed = time.monotonic() - started
    logger.info(
        "ground state amplitude %.12f after %d bisection steps, trusted to r=%.2f, theta %.4f (%s)",
        profile.amplitude,
        steps,
        profile.r_trusted,
        theta,
        humanize.naturaldelta(elapsed),
    )
    return profile


@lru_cache(maxsize=4)
def cached_ground_state(tol_amplitude: float = 1e-10, r_max: float = 25.0) -> RadialProfile:
    """shoot_ground_state, computed once per process for each argument pair."""
    return shoot_ground_state(tol_amplitude, r_max)
