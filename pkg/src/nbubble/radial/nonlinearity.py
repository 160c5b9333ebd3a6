from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from nbubble.errors import OverflowNumericalError
from nbubble.settings import settings

if TYPE_CHECKING:
    from numpy.typing import ArrayLike, NDArray


@dataclass(frozen=True)
class Nonlinearity:
    """f(w) = w(e^{w^2} - 1) and its primitive F(w) = (e^{w^2} - w^2 - 1) / 2."""

    overflow_threshold: float = settings.OVERFLOW_THRESHOLD

    def check(self, w: ArrayLike) -> None:
        w = np.asarray(w, dtype=float)
        if w.size == 0:
            return
        worst = float(np.max(np.abs(w)))
        if not worst <= self.overflow_threshold:
            raise OverflowNumericalError(worst)

    def f(self, w: ArrayLike) -> NDArray[np.float64]:
        w = np.asarray(w, dtype=float)
        return w * np.expm1(w * w)

    def F(self, w: ArrayLike) -> NDArray[np.float64]:
        w = np.asarray(w, dtype=float)
        return 0.5 * (np.expm1(w * w) - w * w)

    def df(self, w: ArrayLike) -> NDArray[np.float64]:
        w = np.asarray(w, dtype=float)
        return np.exp(w * w) * (1.0 + 2.0 * w * w) - 1.0

    def wf(self, w: ArrayLike) -> NDArray[np.float64]:
        """w f(w) = w^2 (e^{w^2} - 1), the Nehari integrand."""
        w = np.asarray(w, dtype=float)
        return w * w * np.expm1(w * w)


NONLINEARITY = Nonlinearity()
