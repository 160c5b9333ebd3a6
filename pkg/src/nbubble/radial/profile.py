from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import TYPE_CHECKING, TypedDict

import numpy as np
from scipy.interpolate import CubicHermiteSpline
from scipy.special import k0, k1

from nbubble.errors import FitError, InvalidParameterError

if TYPE_CHECKING:
    from numpy.typing import ArrayLike, NDArray

logger = logging.getLogger(__name__)

DECAY_WINDOW = (10.0, 15.0)
MIN_WINDOW_START = 5.0


class ProfileDict(TypedDict):
    amplitude: float
    theta: float
    r_max: float
    r_trusted: float
    tail_coefficient: float


@dataclass(frozen=True, eq=False)
class RadialProfile:
    """
    The radial ground state w of -Δw + w = w(e^{w^2} - 1) on a uniform grid.

    Beyond r_trusted the samples follow the decaying Bessel tail c K0(r), which is
    also used to evaluate w past r_max.
    """

    r: NDArray[np.float64]
    w: NDArray[np.float64]
    dw: NDArray[np.float64]
    amplitude: float
    theta: float = float("nan")
    r_trusted: float = float("nan")
    tail_coefficient: float = 0.0

    @classmethod
    def from_samples(
        cls,
        r: ArrayLike,
        w: ArrayLike,
        dw: ArrayLike,
        amplitude: float | None = None,
        theta: float = float("nan"),
    ) -> RadialProfile:
        r = np.asarray(r, dtype=float)
        w = np.asarray(w, dtype=float)
        dw = np.asarray(dw, dtype=float)
        if r.ndim != 1 or r.shape != w.shape or r.shape != dw.shape or len(r) < 2:
            raise InvalidParameterError("Profile samples must be matching 1-D arrays.")
        if np.any(np.diff(r) <= 0):
            raise InvalidParameterError("Profile grid must be strictly increasing.")
        # match the Bessel tail at the last sample
        tail = float(w[-1] / k0(r[-1])) if r[-1] > 0 and w[-1] > 0 else 0.0
        return cls(
            r=r,
            w=w,
            dw=dw,
            amplitude=float(w[0]) if amplitude is None else amplitude,
            theta=theta,
            tail_coefficient=tail,
        )

    @classmethod
    def zero(cls, r_max: float = 25.0, step: float = 0.005) -> RadialProfile:
        r = np.linspace(0.0, r_max, round(r_max / step) + 1)
        return cls(r=r, w=np.zeros_like(r), dw=np.zeros_like(r), amplitude=0.0)

    @property
    def r_max(self) -> float:
        return float(self.r[-1])

    @cached_property
    def _spline(self) -> CubicHermiteSpline:
        return CubicHermiteSpline(self.r, self.w, self.dw, extrapolate=False)

    def __call__(self, r: ArrayLike) -> NDArray[np.float64]:
        r = np.abs(np.asarray(r, dtype=float))
        outside = r > self.r_max
        values = self._spline(np.minimum(r, self.r_max))
        if outside.any():
            tail = self.tail_coefficient * k0(np.maximum(r, self.r_max))
            values = np.where(outside, tail, values)
        return values

    def derivative(self, r: ArrayLike) -> NDArray[np.float64]:
        r = np.abs(np.asarray(r, dtype=float))
        outside = r > self.r_max
        values = self._spline(np.minimum(r, self.r_max), 1)
        if outside.any():
            tail = -self.tail_coefficient * k1(np.maximum(r, self.r_max))
            values = np.where(outside, tail, values)
        return values

    def to_dict(self) -> ProfileDict:
        return {
            "amplitude": self.amplitude,
            "theta": self.theta,
            "r_max": self.r_max,
            "r_trusted": self.r_trusted,
            "tail_coefficient": self.tail_coefficient,
        }


def decay_rate(
    profile: RadialProfile,
    fit_window: tuple[float, float] = DECAY_WINDOW,
    *,
    bessel: bool = False,
) -> float:
    """
    Least-squares slope of -log w against r over the window.

    With bessel=True the fit is of -log(w sqrt(r)), which removes the algebraic
    factor of the e^{-r}/sqrt(r) decay and should give a slope close to 1.
    """
    r_lo, r_hi = fit_window
    if r_lo < MIN_WINDOW_START or r_hi > profile.r_max * (1 + 1e-12) or r_hi <= r_lo:
        raise InvalidParameterError(
            f"Decay window ({r_lo:g}, {r_hi:g}) must satisfy {MIN_WINDOW_START:g} <= r_lo "
            f"< r_hi <= r_max = {profile.r_max:g}.",
        )
    inside = (profile.r >= r_lo) & (profile.r <= r_hi)
    r, w = profile.r[inside], profile.w[inside]
    if len(r) < 2:
        raise FitError(f"Decay window ({r_lo:g}, {r_hi:g}) holds fewer than two samples.")
    if np.any(w <= 0):
        raise FitError(f"Profile is not positive on the decay window ({r_lo:g}, {r_hi:g}).")
    target = -np.log(w * np.sqrt(r)) if bessel else -np.log(w)
    slope, _ = np.polyfit(r, target, 1)
    return float(slope)
